#ifndef FHLAB_PAINLEVE_HPP
#define FHLAB_PAINLEVE_HPP

#include <complex>
#include <vector>

#include "fhlab/symbol.hpp"

namespace fhlab::painleve {

using cplx = std::complex<double>;
using symbol::SymbolSpec;

// Parameters of the Painleve V equation tied to (alpha, beta).
struct PVParams {
    cplx A, B, C, D;
};
PVParams pv_params(cplx alpha, cplx beta);

// The Gamma-ratio constant entering the small-x asymptotics; even in beta.
cplx small_x_constant(cplx alpha, cplx beta);

// Leading small-x asymptote of v; requires 2*alpha not an integer, x < 0.1.
cplx v_asymptote_small(cplx alpha, cplx beta, double x);

// sigma = a^2-b^2 + (a^2-b^2)/(2a) {x - x^{1+2a} C(a,b)} for small x.
cplx sigma_series_small(cplx alpha, cplx beta, double x);

// Leading large-x asymptote -x^{2a-1} e^{-x} / (Gamma(a-b) Gamma(a+b)).
cplx v_asymptote_large(cplx alpha, cplx beta, double x);

struct PvSolveOptions {
    double x_min = 0.01;
    double x_max = 40.0;
    double tol = 1e-12;
    int nodes_per_decade = 96;
};

struct BoundaryReport {
    double small_x_mismatch = 0.0;   // NaN when 2*alpha is an integer
    double large_x_mismatch = 0.0;   // |v/v_asym - 1| at x = min(30, x_max)
    double omega_infinity_mismatch = 0.0;
    double intv_mismatch = 0.0;      // |integral of v - (a^2-b^2)|
    double sigma_tail = 0.0;         // |tail| folded into sigma at x_max
    bool u_init_perturbed = false;   // a+b == 0 path taken
};

// Solution arrays on an x-grid uniform in log x (ascending). The grid may
// extend below the requested x_min when the small-x series is unavailable.
struct PainleveSolution {
    cplx alpha, beta;
    double x_min_requested = 0.0;
    double tol = 0.0;
    std::vector<double> x_grid;
    std::vector<cplx> v, u, sigma;
    std::vector<cplx> dv, du;  // ODE right-hand sides at the nodes
    std::vector<cplx> omega_raw;  // integral of (sigma - a^2 + b^2)/x from x_max, negated
    std::vector<double> sigma_form_residual;
    BoundaryReport boundary_report;
    cplx omega_lower;  // contribution of (0, x_grid.front()) to Omega

    // Cubic Hermite interpolation on the grid.
    cplx v_at(double x) const;
    cplx u_at(double x) const;
    cplx sigma_at(double x) const;
    double max_residual() const;
};

// Integrates the (u, v) system backward from x_max with asymptotic initial
// data, accumulating sigma and the Omega integrand. Throws on pole
// proximity or invalid parameters.
PainleveSolution pv_solve(cplx alpha, cplx beta, const PvSolveOptions& opts = {});

// Omega(x) = int_0^x (sigma - a^2 + b^2)/xi dxi + (a^2-b^2) ln x.
cplx omega(const PainleveSolution& sol, double x);

// sigma(x) recovered from exact Toeplitz determinants at order n via the
// centered difference of the transition expansion; independent of pv_solve.
cplx sigma_oracle_from_determinants(const SymbolSpec& spec, int n, double x,
                                    double h_rel);

// Max residual of the Painleve V equation for u over interior nodes
// (finite differences); non-finite residuals count as +inf.
double pv_equation_check(const PainleveSolution& sol);

}  // namespace fhlab::painleve

#endif
