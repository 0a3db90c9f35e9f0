#include "fhlab/specialfn.hpp"

#include <cmath>
#include <vector>

#include "fhlab/error.hpp"

namespace fhlab::specialfn {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLog2Pi = 1.8378770664093454836;  // ln(2*pi)
constexpr double kZetaPrimeMinusOne = -0.16542114370045092;

// B_{2k}/(2k(2k-1)), k = 1..9, for the Stirling series.
constexpr double kStirling[] = {
    1.0 / 12.0,     -1.0 / 360.0,       1.0 / 1260.0,
    -1.0 / 1680.0,  1.0 / 1188.0,       -691.0 / 360360.0,
    1.0 / 156.0,    -3617.0 / 122400.0, 43867.0 / 244188.0,
};

// B_{2j+2}/(4j(j+1)), j = 1..6, for the Barnes G expansion.
constexpr double kBarnesTail[] = {
    -1.0 / 240.0, 1.0 / 1008.0,       -1.0 / 1440.0,
    1.0 / 1056.0, -691.0 / 327600.0,  1.0 / 144.0,
};

bool is_nonpositive_integer(cplx z) {
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::round(z.real());
}

// zeta(k) for integer k >= 2, Euler-Maclaurin with a short direct sum.
double zeta_int(int k) {
    const int kDirect = 20;
    double s = 0.0;
    for (int j = kDirect - 1; j >= 1; --j) s += std::pow(j, -k);
    const double J = kDirect;
    double tail = std::pow(J, 1.0 - k) / (k - 1.0) + 0.5 * std::pow(J, -(double)k);
    tail += k / 12.0 * std::pow(J, -(double)k - 1.0);
    tail -= k * (k + 1.0) * (k + 2.0) / 720.0 * std::pow(J, -(double)k - 3.0);
    tail += k * (k + 1.0) * (k + 2.0) * (k + 3.0) * (k + 4.0) / 30240.0 *
            std::pow(J, -(double)k - 5.0);
    return s + tail;
}

const std::vector<double>& zeta_table() {
    static const std::vector<double> table = [] {
        std::vector<double> t(201, 0.0);
        for (int k = 2; k <= 200; ++k) t[k] = zeta_int(k);
        return t;
    }();
    return table;
}

// Stirling series; requires |w| large and Re w > 0.
cplx log_gamma_stirling(cplx w) {
    cplx result = (w - 0.5) * std::log(w) - w + 0.5 * kLog2Pi;
    const cplx w2 = w * w;
    cplx p = 1.0 / w;
    for (double c : kStirling) {
        result += c * p;
        p /= w2;
    }
    return result;
}

cplx log_gamma_upper(cplx z) {
    // Im z >= 0 here. Ladder until Stirling applies.
    cplx shift = 0.0;
    int guard = 0;
    while (std::abs(z) < 20.0 || z.real() < 1.0) {
        shift += std::log(z);
        z += 1.0;
        if (++guard > 300)
            throw Error("specialfn", "log_gamma", "argument reduction failed");
    }
    return log_gamma_stirling(z) - shift;
}

// Taylor series of ln G(1+zeta) on |zeta| < 1.
cplx log_barnes_g_series(cplx zeta) {
    constexpr double kEulerGamma = 0.57721566490153286;
    const auto& zt = zeta_table();
    cplx sum = 0.5 * zeta * kLog2Pi - 0.5 * zeta * (zeta + 1.0) -
               0.5 * kEulerGamma * zeta * zeta;
    cplx p = zeta * zeta;  // zeta^(n-1) for n = 3 below
    double sign = 1.0;     // (-1)^(n-1)
    for (int n = 3; n <= 200; ++n) {
        p *= zeta;
        const cplx term = sign * zt[n - 1] / double(n) * p;
        sum += term;
        if (std::abs(term) < 1e-18 * (1.0 + std::abs(sum))) break;
        sign = -sign;
    }
    return sum;
}

// Barnes expansion of ln G(1+y) for large |y|, |arg y| < pi.
cplx log_barnes_g_large(cplx y) {
    const cplx logy = std::log(y);
    cplx result = 0.5 * y * y * logy - 0.75 * y * y + 0.5 * y * kLog2Pi -
                  logy / 12.0 + kZetaPrimeMinusOne;
    const cplx y2 = y * y;
    cplx p = 1.0 / y2;
    for (double c : kBarnesTail) {
        result += c * p;
        p /= y2;
    }
    return result;
}

cplx log_barnes_g_upper(cplx z, bool force_asymptotic) {
    // Im z >= 0 here.
    if (!force_asymptotic && z.imag() <= 0.5) {
        // Reduce onto the base disk around 1 and use the Taylor series.
        const int m = (int)std::lround(z.real() - 1.0);
        const cplx z0 = z - (double)m;
        cplx ladder = 0.0;
        if (m > 0) {
            for (int j = 0; j < m; ++j) ladder += log_gamma(z0 + (double)j);
        } else {
            for (int j = 0; j < -m; ++j) ladder -= log_gamma(z + (double)j);
        }
        return log_barnes_g_series(z0 - 1.0) + ladder;
    }
    // Ladder up until the large-argument expansion converges.
    cplx ladder = 0.0;
    cplx w = z;
    int guard = 0;
    while (std::abs(w - 1.0) < 25.0 || w.real() < 1.0) {
        ladder += log_gamma(w);
        w += 1.0;
        if (++guard > 300)
            throw Error("specialfn", "log_barnes_g", "argument reduction failed");
    }
    return log_barnes_g_large(w - 1.0) - ladder;
}

}  // namespace

BranchedComplex branched_log(cplx w) {
    double im = std::atan2(w.imag(), w.real());
    if (im < 0.0) im += 2.0 * kPi;
    return BranchedComplex{w, cplx(std::log(std::abs(w)), im)};
}

cplx branched_pow(cplx base, cplx expo) {
    if (expo == cplx(0.0)) return 1.0;
    return std::exp(expo * branched_log(base).log);
}

cplx log_gamma(cplx z) {
    if (is_nonpositive_integer(z))
        throw Error("specialfn", "log_gamma", "pole at nonpositive integer",
                    {{"z_re", std::to_string(z.real())}});
    if (z.imag() < 0.0) return std::conj(log_gamma(std::conj(z)));
    return log_gamma_upper(z);
}

cplx gamma(cplx z) { return std::exp(log_gamma(z)); }

cplx log_barnes_g(cplx z) {
    if (is_nonpositive_integer(z))
        throw Error("specialfn", "log_barnes_g", "G vanishes at nonpositive integers",
                    {{"z_re", std::to_string(z.real())}});
    if (z.imag() < 0.0) return std::conj(log_barnes_g(std::conj(z)));
    return log_barnes_g_upper(z, false);
}

cplx log_barnes_g_asymptotic_route(cplx z) {
    if (is_nonpositive_integer(z))
        throw Error("specialfn", "log_barnes_g", "G vanishes at nonpositive integers");
    if (z.imag() < 0.0) return std::conj(log_barnes_g_asymptotic_route(std::conj(z)));
    return log_barnes_g_upper(z, true);
}

cplx fh_constant(cplx alpha, cplx beta) {
    for (cplx s : {alpha + beta, alpha - beta}) {
        if (s.imag() == 0.0 && s.real() < 0.0 && s.real() == std::round(s.real()))
            throw Error("specialfn", "fh_constant",
                        "degenerate Fisher-Hartwig parameters: alpha +/- beta is a "
                        "negative integer",
                        {{"alpha_re", std::to_string(alpha.real())},
                         {"beta_re", std::to_string(beta.real())}});
    }
    return log_barnes_g(1.0 + alpha + beta) + log_barnes_g(1.0 + alpha - beta) -
           log_barnes_g(1.0 + 2.0 * alpha);
}

}  // namespace fhlab::specialfn
