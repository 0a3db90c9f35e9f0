#include "fhlab/asymptotics.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "fhlab/io.hpp"

#include "fhlab/error.hpp"
#include "fhlab/specialfn.hpp"

namespace fhlab::asymptotics {

namespace {

AsymptoticEstimate finish(AsymptoticEstimate e) {
    e.value = e.n_term + e.sum_term + e.barnes + e.omega_term + e.log_n_term;
    return e;
}

}  // namespace

AsymptoticEstimate szego_asymptote(const SymbolSpec& spec, int n) {
    spec.validate();
    if (!(spec.t > 0.0))
        throw Error("asymptotics", "szego_asymptote", "requires t > 0",
                    {{"t", std::to_string(spec.t)}});
    AsymptoticEstimate e{};
    e.regime = Regime::szego;
    e.n_term = double(n) * (spec.t * (spec.alpha + spec.beta) + spec.v_at(0));
    e.sum_term = symbol::szego_sum_closed(spec, spec.t);
    return finish(e);
}

AsymptoticEstimate fh_asymptote(const SymbolSpec& spec, int n) {
    spec.validate();
    AsymptoticEstimate e{};
    e.regime = Regime::fisher_hartwig;
    e.n_term = double(n) * spec.v_at(0);
    e.sum_term = symbol::fh_v_sum(spec);
    e.log_n_term =
        (spec.alpha * spec.alpha - spec.beta * spec.beta) * std::log(double(n));
    e.barnes = specialfn::fh_constant(spec.alpha, spec.beta);
    return finish(e);
}

AsymptoticEstimate transition_asymptote(const SymbolSpec& spec, int n,
                                        const PainleveSolution& sol,
                                        double t_max) {
    spec.validate();
    if (!(spec.t > 0.0 && spec.t < t_max))
        throw Error("asymptotics", "transition_asymptote", "requires 0 < t < t_max",
                    {{"t", std::to_string(spec.t)}, {"t_max", std::to_string(t_max)}});
    if (sol.alpha != spec.alpha || sol.beta != spec.beta)
        throw Error("asymptotics", "transition_asymptote",
                    "Painleve solution parameters do not match the symbol");
    AsymptoticEstimate e{};
    e.regime = Regime::transition;
    e.n_term = double(n) * (spec.v_at(0) + (spec.alpha + spec.beta) * spec.t);
    e.sum_term = symbol::szego_sum_closed(spec, spec.t);
    e.barnes = specialfn::fh_constant(spec.alpha, spec.beta);
    e.omega_term = painleve::omega(sol, 2.0 * n * spec.t);
    return finish(e);
}

double ising_correlation(int n, double t, const FourierTable& table) {
    if (table.t != t)
        throw Error("asymptotics", "ising_correlation",
                    "table was built at a different t",
                    {{"t", std::to_string(t)}, {"table_t", std::to_string(table.t)}});
    const auto rec = toeplitz::log_toeplitz_det(table, n);
    const cplx corr = std::exp(0.5 * n * t + rec.log_det);
    return corr.real();
}

double ising_product_d0(int n) {
    if (n < 1)
        throw Error("asymptotics", "ising_product_d0", "n must be >= 1",
                    {{"n", std::to_string(n)}});
    double sum = n * std::log(2.0 / M_PI);
    for (int k = 1; k < n; ++k)
        sum += (k - n) * std::log1p(-1.0 / (4.0 * double(k) * k));
    return sum;
}

SymbolSpec ising_spec(double t) {
    SymbolSpec spec;
    spec.alpha = 0.0;
    spec.beta = -0.5;
    spec.t = t;
    return spec;
}

std::string estimate_csv(const std::vector<AsymptoticEstimate>& estimates) {
    std::ostringstream out;
    out << "regime,re_value,im_value,re_n_term,im_n_term,re_sum_term,im_sum_term,"
           "re_barnes,im_barnes,re_omega,im_omega,re_log_n,im_log_n\n";
    for (const auto& e : estimates) {
        switch (e.regime) {
            case Regime::szego: out << "szego"; break;
            case Regime::fisher_hartwig: out << "fisher_hartwig"; break;
            case Regime::transition: out << "transition"; break;
        }
        out << ',' << io::fmt(e.value) << ',' << io::fmt(e.n_term) << ','
            << io::fmt(e.sum_term) << ',' << io::fmt(e.barnes) << ','
            << io::fmt(e.omega_term) << ',' << io::fmt(e.log_n_term) << '\n';
    }
    return out.str();
}

}  // namespace fhlab::asymptotics
