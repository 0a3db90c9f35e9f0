#ifndef FHLAB_TOEPLITZ_HPP
#define FHLAB_TOEPLITZ_HPP

#include <complex>
#include <vector>

#include "fhlab/symbol.hpp"

namespace fhlab::toeplitz {

using cplx = std::complex<double>;
using symbol::FourierTable;
using symbol::SymbolSpec;

struct DeterminantRecord {
    int n = 0;
    double t = 0.0;
    cplx log_det{0.0, 0.0};  // imaginary part reduced to (-pi, pi]
    double pivot_min = 0.0;  // smallest |pivot| seen in the LU
    int branch_note = 0;     // 2*pi windings removed from Im(log_det)
};

struct OrthoPolyPair {
    int n = 0;
    std::vector<cplx> phi;      // coefficients of phi_n, degree n
    std::vector<cplx> phi_hat;  // coefficients of phi_hat_n
    cplx chi{0.0, 0.0};         // shared leading coefficient
    double cond_est = 0.0;      // 1-norm condition estimate of the moment system
    bool ill_conditioned = false;
};

struct YMatrix {
    cplx y11, y12, y21, y22;
    cplx det() const { return y11 * y22 - y12 * y21; }
};

// ln det(f_{j-k})_{j,k=0..n-1} by dense LU with partial pivoting.
// Requires table.n_max >= n-1. Throws on a numerically zero pivot.
DeterminantRecord log_toeplitz_det(const FourierTable& table, int n);

// Log-determinants for all orders 1..n in one pass (independent LUs,
// OpenMP-parallel). Serial variant is bit-identical.
std::vector<DeterminantRecord> log_toeplitz_det_range(const FourierTable& table, int n);
std::vector<DeterminantRecord> log_toeplitz_det_range_serial(const FourierTable& table,
                                                             int n);

// Orthogonal polynomials phi_n, phi_hat_n from the moment linear systems,
// with chi_n = sqrt(D_n/D_{n+1}) taken from the supplied records
// (ln D_0 = 0 by convention; no record needed for n = 0).
OrthoPolyPair ortho_poly(const FourierTable& table,
                         const std::vector<DeterminantRecord>& dets, int n);

// The 2x2 Riemann-Hilbert matrix built from phi_n, phi_hat_{n-1} and the
// Cauchy transforms over the table's quadrature rule; |z| != 1.
YMatrix y_matrix(const OrthoPolyPair& pair_n, const OrthoPolyPair& pair_nm1,
                 const FourierTable& table, cplx z);

// |d/dt ln D_n - rhs| where rhs couples the Y-matrix at e^t and e^-t;
// both sides by central differences (t-step h, z-step with Richardson).
double verify_differential_identity(const SymbolSpec& spec, int n, double t, double h);

// Horner evaluation of a coefficient vector (ascending powers).
cplx eval_poly(const std::vector<cplx>& coeffs, cplx z);

}  // namespace fhlab::toeplitz

#endif
