#ifndef FHLAB_ASYMPTOTICS_HPP
#define FHLAB_ASYMPTOTICS_HPP

#include <complex>
#include <string>
#include <vector>

#include "fhlab/painleve.hpp"
#include "fhlab/symbol.hpp"
#include "fhlab/toeplitz.hpp"

namespace fhlab::asymptotics {

using cplx = std::complex<double>;
using painleve::PainleveSolution;
using symbol::FourierTable;
using symbol::SymbolSpec;

enum class Regime { szego, fisher_hartwig, transition };

// Predicted ln D_n split into the named terms it is assembled from;
// value always equals their sum.
struct AsymptoticEstimate {
    Regime regime;
    cplx value;
    cplx n_term;      // linear-in-n part
    cplx sum_term;    // closed-form Szego sum
    cplx barnes;      // Barnes-G constant
    cplx omega_term;  // transition integral
    cplx log_n_term;  // (a^2-b^2) ln n
};

// Szego regime, t > 0 fixed.
AsymptoticEstimate szego_asymptote(const SymbolSpec& spec, int n);

// Fisher-Hartwig regime at t = 0.
AsymptoticEstimate fh_asymptote(const SymbolSpec& spec, int n);

// Uniform transition regime; sol must carry the symbol's (alpha, beta) and
// cover x = 2nt. Requires 0 < t < t_max.
AsymptoticEstimate transition_asymptote(const SymbolSpec& spec, int n,
                                        const PainleveSolution& sol,
                                        double t_max = 0.7);

// <s_00 s_nn> = e^{nt/2} D_n(t) for the Ising symbol table.
double ising_correlation(int n, double t, const FourierTable& table);

// ln D_n(0) for the Ising symbol from the explicit product.
double ising_product_d0(int n);

// The Ising parameter point alpha = 0, beta = -1/2, V = 0.
SymbolSpec ising_spec(double t);

// CSV rows with one column pair per named term.
std::string estimate_csv(const std::vector<AsymptoticEstimate>& estimates);

}  // namespace fhlab::asymptotics

#endif
