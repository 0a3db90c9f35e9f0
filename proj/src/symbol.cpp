#include "fhlab/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fhlab/error.hpp"
#include "fhlab/parallel.hpp"
#include "fhlab/specialfn.hpp"

namespace fhlab::symbol {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

bool is_negative_integer(cplx z) {
    return z.imag() == 0.0 && z.real() < 0.0 && z.real() == std::round(z.real());
}

struct QuadratureRule {
    std::vector<double> theta;
    std::vector<double> weight;
};

// Midpoint rule for t > 0 (the symbol is analytic on the circle).
QuadratureRule midpoint_rule(int n) {
    QuadratureRule rule;
    rule.theta.resize(n);
    rule.weight.assign(n, 1.0 / n);
    for (int m = 0; m < n; ++m) rule.theta[m] = kTwoPi * (m + 0.5) / n;
    return rule;
}

// Graded midpoint rule for t = 0: theta = 2*pi*w(s) with the Kress grading
// w(s) = s^p/(s^p + (1-s)^p), clustering nodes at the singular endpoint
// theta = 0 (== 2*pi). p grows as Re(alpha) approaches -1/2.
QuadratureRule graded_rule(int n, double re_alpha) {
    const double p =
        std::clamp(std::ceil(8.0 / (1.0 + 2.0 * re_alpha)), 3.0, 24.0);
    QuadratureRule rule;
    rule.theta.resize(n);
    rule.weight.resize(n);
    for (int m = 0; m < n; ++m) {
        const double s = (m + 0.5) / n;
        const double a = std::pow(s, p);
        const double b = std::pow(1.0 - s, p);
        const double denom = a + b;
        // Keep nodes strictly inside (0, 2pi); the clamped tail carries a
        // negligible weight.
        rule.theta[m] = std::clamp(kTwoPi * a / denom, kTwoPi * 1e-300,
                                   kTwoPi * (1.0 - 1e-16));
        rule.weight[m] =
            p * std::pow(s, p - 1.0) * std::pow(1.0 - s, p - 1.0) / (denom * denom) / n;
    }
    return rule;
}

FourierTable table_from_rule(const SymbolSpec& spec, int n_max,
                             QuadratureRule rule, bool parallel) {
    const int n = (int)rule.theta.size();
    FourierTable table;
    table.n_max = n_max;
    table.quadrature_nodes = n;
    table.t = spec.t;
    table.node_theta = std::move(rule.theta);
    table.node_weight = std::move(rule.weight);
    table.node_value.resize(n);

    const int nt = thread_count();
    std::exception_ptr failure = nullptr;
#pragma omp parallel for schedule(static) num_threads(nt) if (parallel)
    for (int m = 0; m < n; ++m) {
        try {
            table.node_value[m] = symbol_eval(spec, table.node_theta[m]);
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);

    table.coeffs.assign(2 * n_max + 1, cplx(0.0));
#pragma omp parallel for schedule(static) num_threads(nt) if (parallel)
    for (int idx = 0; idx < 2 * n_max + 1; ++idx) {
        const int j = idx - n_max;
        cplx sum = 0.0;
        for (int m = 0; m < n; ++m) {
            const double phase = -j * table.node_theta[m];
            sum += table.node_weight[m] * table.node_value[m] *
                   cplx(std::cos(phase), std::sin(phase));
        }
        table.coeffs[idx] = sum;
    }
    return table;
}

FourierTable fourier_coeffs_impl(const SymbolSpec& spec, int n_max, int nodes,
                                 bool parallel) {
    spec.validate();
    int support = 0;
    for (const auto& [k, v] : spec.v_coeffs) support = std::max(support, std::abs(k));
    if (nodes < 8 * (n_max + support + 1))
        throw Error("symbol", "fourier_coeffs", "too few quadrature nodes",
                    {{"nodes", std::to_string(nodes)},
                     {"required", std::to_string(8 * (n_max + support + 1))}});

    const bool graded = spec.t == 0.0;
    int n = nodes;
    FourierTable coarse = table_from_rule(
        spec, n_max, graded ? graded_rule(n, spec.alpha.real()) : midpoint_rule(n),
        parallel);
    for (int attempt = 0; attempt < 6; ++attempt) {
        FourierTable fine = table_from_rule(
            spec, n_max,
            graded ? graded_rule(2 * n, spec.alpha.real()) : midpoint_rule(2 * n),
            parallel);
        double delta = 0.0;
        for (int idx = 0; idx < 2 * n_max + 1; ++idx)
            delta = std::max(delta, std::abs(fine.coeffs[idx] - coarse.coeffs[idx]));
        fine.est_error = delta * (1.0 + 1e-12) + 1e-300;
        if (delta <= 1e-8) return fine;
        n *= 2;
        coarse = std::move(fine);
    }
    throw Error("symbol", "fourier_coeffs",
                "quadrature failed to converge below 1e-8 within the retry budget",
                {{"nodes", std::to_string(n)},
                 {"est_error", std::to_string(coarse.est_error)}});
}

}  // namespace

void SymbolSpec::validate() const {
    if (!(alpha.real() > -0.5))
        throw Error("symbol", "SymbolSpec", "Re(alpha) must exceed -1/2",
                    {{"alpha_re", std::to_string(alpha.real())}});
    if (is_negative_integer(alpha + beta) || is_negative_integer(alpha - beta))
        throw Error("symbol", "SymbolSpec",
                    "alpha +/- beta must not be a negative integer");
    if (!(t >= 0.0))
        throw Error("symbol", "SymbolSpec", "t must be >= 0",
                    {{"t", std::to_string(t)}});
    for (const auto& [k, v] : v_coeffs)
        if (std::abs(k) > kMaxVSupport)
            throw Error("symbol", "SymbolSpec", "V support exceeds the maximum",
                        {{"k", std::to_string(k)}});
}

cplx SymbolSpec::v_at(int k) const {
    auto it = v_coeffs.find(k);
    return it == v_coeffs.end() ? cplx(0.0) : it->second;
}

bool SymbolSpec::positive_flag() const {
    if (alpha.imag() != 0.0 || beta.real() != 0.0) return false;
    // For t > 0 an imaginary jump exponent already makes ln D_n complex
    // (its imaginary part is n t Im(beta)), so only beta = 0 qualifies there.
    if (t > 0.0 && beta != cplx(0.0)) return false;
    for (const auto& [k, v] : v_coeffs)
        if (v_at(-k) != std::conj(v)) return false;
    return true;
}

cplx FourierTable::f(int j) const {
    if (std::abs(j) > n_max)
        throw Error("symbol", "FourierTable", "coefficient index out of range",
                    {{"j", std::to_string(j)}, {"n_max", std::to_string(n_max)}});
    return coeffs[j + n_max];
}

cplx symbol_eval(const SymbolSpec& spec, double theta) {
    using specialfn::branched_pow;
    if (!(theta > 0.0 && theta < kTwoPi))
        throw Error("symbol", "symbol_eval", "theta must lie in (0, 2pi)",
                    {{"theta", std::to_string(theta)}});
    const cplx z = std::polar(1.0, theta);
    const cplx a = spec.alpha, b = spec.beta;
    cplx v = 0.0;
    for (const auto& [k, vk] : spec.v_coeffs) v += vk * std::pow(z, k);
    return branched_pow(z - std::exp(spec.t), a + b) *
           branched_pow(z - std::exp(-spec.t), a - b) * branched_pow(z, -a + b) *
           std::exp(cplx(0.0, -kPi) * (a + b)) * std::exp(v);
}

FourierTable fourier_coeffs(const SymbolSpec& spec, int n_max, int nodes) {
    return fourier_coeffs_impl(spec, n_max, nodes, true);
}

FourierTable fourier_coeffs_serial(const SymbolSpec& spec, int n_max, int nodes) {
    return fourier_coeffs_impl(spec, n_max, nodes, false);
}

double winding_number(const FourierTable& table) {
    const int n = (int)table.node_value.size();
    double total = 0.0;
    for (int m = 0; m < n; ++m) {
        const cplx ratio = table.node_value[(m + 1) % n] / table.node_value[m];
        total += std::atan2(ratio.imag(), ratio.real());
    }
    return total / kTwoPi;
}

cplx szego_sum_closed(const SymbolSpec& spec, double t) {
    if (!(t > 0.0))
        throw Error("symbol", "szego_sum_closed", "the sum diverges at t = 0",
                    {{"t", std::to_string(t)}});
    const cplx a = spec.alpha, b = spec.beta;
    cplx pair = 0.0, pos = 0.0, neg = 0.0;
    for (const auto& [k, vk] : spec.v_coeffs) {
        if (k > 0) {
            pair += double(k) * vk * spec.v_at(-k);
            pos += vk * std::exp(-t * k);
        } else if (k < 0) {
            neg += vk * std::exp(t * k);
        }
    }
    return pair - (a - b) * pos - (a + b) * neg -
           (a * a - b * b) * std::log(1.0 - std::exp(-2.0 * t));
}

cplx fh_v_sum(const SymbolSpec& spec) {
    const cplx a = spec.alpha, b = spec.beta;
    cplx pair = 0.0, pos = 0.0, neg = 0.0;
    for (const auto& [k, vk] : spec.v_coeffs) {
        if (k > 0) {
            pair += double(k) * vk * spec.v_at(-k);
            pos += vk;
        } else if (k < 0) {
            neg += vk;
        }
    }
    return pair - (a - b) * pos - (a + b) * neg;
}

std::vector<cplx> log_fourier_coeffs(const FourierTable& table, int k_max) {
    const int n = (int)table.node_value.size();
    std::vector<cplx> logf(n);
    double phase_offset = 0.0;
    double prev_arg = 0.0;
    for (int m = 0; m < n; ++m) {
        const cplx val = table.node_value[m];
        double arg = std::atan2(val.imag(), val.real());
        if (m > 0) {
            while (arg + phase_offset - prev_arg > kPi) phase_offset -= kTwoPi;
            while (arg + phase_offset - prev_arg < -kPi) phase_offset += kTwoPi;
        }
        prev_arg = arg + phase_offset;
        logf[m] = cplx(std::log(std::abs(val)), prev_arg);
    }
    std::vector<cplx> out(2 * k_max + 1, cplx(0.0));
    for (int idx = 0; idx < 2 * k_max + 1; ++idx) {
        const int k = idx - k_max;
        cplx sum = 0.0;
        for (int m = 0; m < n; ++m) {
            const double phase = -k * table.node_theta[m];
            sum += table.node_weight[m] * logf[m] * cplx(std::cos(phase), std::sin(phase));
        }
        out[idx] = sum;
    }
    return out;
}

}  // namespace fhlab::symbol
