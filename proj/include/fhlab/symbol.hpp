#ifndef FHLAB_SYMBOL_HPP
#define FHLAB_SYMBOL_HPP

#include <complex>
#include <map>
#include <vector>

namespace fhlab::symbol {

using cplx = std::complex<double>;

// Parameters of the circle symbol
//   f(z) = (z-e^t)^(a+b) (z-e^-t)^(a-b) z^(-a+b) e^(-i pi(a+b)) e^V(z),
// all powers taken with arguments in [0, 2pi). V has finite Fourier
// support |k| <= kMaxVSupport.
struct SymbolSpec {
    static constexpr int kMaxVSupport = 16;

    cplx alpha{0.0, 0.0};
    cplx beta{0.0, 0.0};
    double t = 0.0;
    std::map<int, cplx> v_coeffs;

    // Throws fhlab::Error if Re alpha <= -1/2, alpha +/- beta is a negative
    // integer, t < 0, or V has support beyond kMaxVSupport.
    void validate() const;

    cplx v_at(int k) const;
    // Real alpha, imaginary beta, Hermitian V: the symbol is positive on the
    // circle and downstream quantities are real.
    bool positive_flag() const;
};

// Quadrature rule and Fourier coefficients f_j, |j| <= n_max.
struct FourierTable {
    int n_max = 0;
    int quadrature_nodes = 0;
    double est_error = 0.0;
    double t = 0.0;  // transition parameter the table was built at
    std::vector<cplx> coeffs;  // index j + n_max

    // The rule the coefficients were computed with; reused for the Cauchy
    // transforms of the Y-matrix and for diagnostics.
    std::vector<double> node_theta;
    std::vector<double> node_weight;  // normalized: sum = 1
    std::vector<cplx> node_value;

    cplx f(int j) const;
};

// Value of the symbol at e^(i theta), theta in (0, 2pi).
cplx symbol_eval(const SymbolSpec& spec, double theta);

// Fourier coefficients by quadrature with node-doubling error control.
// nodes must be >= 8*(n_max + K + 1). OpenMP-parallel over j.
FourierTable fourier_coeffs(const SymbolSpec& spec, int n_max, int nodes);

// Serial reference implementation; bit-identical to fourier_coeffs.
FourierTable fourier_coeffs_serial(const SymbolSpec& spec, int n_max, int nodes);

// Winding number of the symbol along the quadrature nodes (0 for t > 0).
double winding_number(const FourierTable& table);

// Fourier coefficients (log f)_k, |k| <= k_max, from the stored node values
// with the phase unwrapped along the circle.
std::vector<cplx> log_fourier_coeffs(const FourierTable& table, int k_max);

// JSON document {"alpha":[re,im],"beta":[re,im],"t":t,"V":[[k,re,im],...]};
// the same schema the CLI config embeds. Unknown keys are rejected.
std::string symbol_spec_to_json(const SymbolSpec& spec);
SymbolSpec symbol_spec_from_json(const std::string& text);

// Closed form of sum_k k [V_k - (a+b)e^{-tk}/k][V_{-k} - (a-b)e^{-tk}/k]
// for t > 0: the finite V sums plus geometric series.
cplx szego_sum_closed(const SymbolSpec& spec, double t);

// sum_k k V_k V_{-k} - (a-b) sum_k V_k - (a+b) sum_k V_{-k}  (k >= 1).
cplx fh_v_sum(const SymbolSpec& spec);

}  // namespace fhlab::symbol

#endif
