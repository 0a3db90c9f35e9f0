#include <cmath>
#include <complex>
#include <random>

#include <doctest.h>

#include "fhlab/error.hpp"
#include "fhlab/specialfn.hpp"

using namespace fhlab::specialfn;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

double wrap_mod_2pi(double x) { return std::remainder(x, kTwoPi); }

// Random points in |z| <= radius staying clear of the nonpositive integers.
std::vector<cplx> sample_points(int count, double radius, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-radius, radius);
    std::vector<cplx> points;
    while ((int)points.size() < count) {
        const cplx z(dist(rng), dist(rng));
        if (std::abs(z) > radius) continue;
        bool near_pole = false;
        for (int k = 0; k <= (int)radius + 2; ++k)
            if (std::abs(z + double(k)) < 0.1) near_pole = true;
        if (!near_pole) points.push_back(z);
    }
    return points;
}

}  // namespace

TEST_CASE("branched log keeps the argument in [0, 2pi)") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(-3.0, 3.0);
    for (int i = 0; i < 500; ++i) {
        const cplx w(dist(rng), dist(rng));
        if (std::abs(w) < 1e-12) continue;
        const auto bl = branched_log(w);
        CHECK(bl.log.imag() >= 0.0);
        CHECK(bl.log.imag() < kTwoPi);
        CHECK(std::abs(std::exp(bl.log) - w) <= 1e-12 * std::abs(w));
    }
    // Just below the positive real axis the branched argument approaches 2pi.
    CHECK(branched_log(cplx(1.0, -1e-9)).log.imag() == doctest::Approx(kTwoPi));
    CHECK(branched_pow(cplx(4.0, 0.0), cplx(0.5, 0.0)).real() == doctest::Approx(2.0));
}

TEST_CASE("log_gamma anchors") {
    CHECK(std::abs(log_gamma(cplx(1.0, 0.0))) < 1e-14);
    CHECK(std::abs(log_gamma(cplx(2.0, 0.0))) < 1e-14);
    CHECK(log_gamma(cplx(0.5, 0.0)).real() ==
          doctest::Approx(std::log(std::sqrt(kPi))).epsilon(1e-14));
    CHECK(log_gamma(cplx(5.0, 0.0)).real() ==
          doctest::Approx(std::log(24.0)).epsilon(1e-14));
    // Gamma(-1/2) = -2 sqrt(pi), approached from above the cut.
    const cplx g = std::exp(log_gamma(cplx(-0.5, 0.0)));
    CHECK(g.real() == doctest::Approx(-2.0 * std::sqrt(kPi)).epsilon(1e-13));
    CHECK(std::abs(g.imag()) < 1e-12);
}

TEST_CASE("log_gamma recurrence self-consistency at 0.3+0.2i") {
    const cplx z(0.3, 0.2);
    const cplx ratio = std::exp(log_gamma(z + 1.0) - log_gamma(z));
    CHECK(std::abs(ratio - z) < 1e-12);
}

TEST_CASE("log_gamma pole error") {
    CHECK_THROWS_AS((void)log_gamma(cplx(0.0, 0.0)), fhlab::Error);
    CHECK_THROWS_AS((void)log_gamma(cplx(-3.0, 0.0)), fhlab::Error);
}

TEST_CASE("log_gamma recurrence and conjugation invariants on random samples") {
    const auto points = sample_points(1000, 20.0, 12345);
    for (const cplx& z : points) {
        const cplx ratio = std::exp(log_gamma(z + 1.0) - log_gamma(z));
        CHECK(std::abs(ratio - z) < 1e-10 * std::abs(z));
        if (std::abs(z.imag()) > 1e-3) {
            const cplx sym = log_gamma(std::conj(z)) - std::conj(log_gamma(z));
            CHECK(std::abs(sym) == 0.0);
        }
    }
}

TEST_CASE("log_gamma agrees with Stirling-only evaluation at larger arguments") {
    // |z| = 50 sanity: recurrence exp-check again, plus a real anchor
    // ln Gamma(50) = ln(49!).
    double ln49 = 0.0;
    for (int k = 2; k <= 49; ++k) ln49 += std::log((double)k);
    CHECK(log_gamma(cplx(50.0, 0.0)).real() == doctest::Approx(ln49).epsilon(1e-13));
    const cplx z(3.0, 49.0);
    const cplx ratio = std::exp(log_gamma(z + 1.0) - log_gamma(z));
    CHECK(std::abs(ratio - z) < 1e-11 * std::abs(z));
}

TEST_CASE("log_barnes_g anchors") {
    CHECK(std::abs(log_barnes_g(cplx(1.0, 0.0))) < 1e-14);
    CHECK(std::abs(log_barnes_g(cplx(2.0, 0.0))) < 1e-14);  // G(2) = 1
    CHECK(std::abs(log_barnes_g(cplx(3.0, 0.0))) < 1e-13);  // G(3) = Gamma(2) G(2) = 1
    CHECK(log_barnes_g(cplx(4.0, 0.0)).real() ==
          doctest::Approx(std::log(2.0)).epsilon(1e-13));
    CHECK(std::abs(log_barnes_g(cplx(4.0, 0.0)).imag()) < 1e-13);
}

TEST_CASE("log_barnes_g dual representations agree") {
    // Series route vs the independent large-argument route.
    for (const cplx z : {cplx(0.5, 0.0), cplx(1.7, 0.3), cplx(0.8, -0.4),
                         cplx(2.5, 0.0), cplx(1.0, 2.0), cplx(3.2, 4.0)}) {
        const cplx a = log_barnes_g(z);
        const cplx b = log_barnes_g_asymptotic_route(z);
        CHECK(std::abs(a - b) < 1e-10 * (1.0 + std::abs(a)));
    }
    // Functional-equation descent from 5/2: ln G(1/2) = ln G(5/2)
    // - ln Gamma(3/2) - ln Gamma(1/2).
    const cplx descent = log_barnes_g(cplx(2.5, 0.0)) - log_gamma(cplx(1.5, 0.0)) -
                         log_gamma(cplx(0.5, 0.0));
    CHECK(std::abs(descent - log_barnes_g(cplx(0.5, 0.0))) < 1e-10);
}

TEST_CASE("log_barnes_g at 1/2 matches the Glaisher-constant closed form") {
    // G(1/2) = 2^(1/24) e^(1/8) pi^(-1/4) A^(-3/2), ln A = 1/12 - zeta'(-1).
    const double ln_a = 0.24875447703378426;
    const double expected =
        std::log(2.0) / 24.0 + 0.125 - 0.25 * std::log(kPi) - 1.5 * ln_a;
    CHECK(log_barnes_g(cplx(0.5, 0.0)).real() ==
          doctest::Approx(expected).epsilon(1e-12));
    CHECK(std::abs(log_barnes_g(cplx(0.5, 0.0)).imag()) < 1e-12);
}

TEST_CASE("Barnes functional equation and conjugation on random samples") {
    const auto points = sample_points(1000, 20.0, 999);
    for (const cplx& z : points) {
        cplx d = log_barnes_g(z + 1.0) - log_barnes_g(z) - log_gamma(z);
        d = {d.real(), wrap_mod_2pi(d.imag())};
        CHECK(std::abs(d) < 1e-10);
        if (std::abs(z.imag()) > 1e-3) {
            const cplx sym = log_barnes_g(std::conj(z)) - std::conj(log_barnes_g(z));
            CHECK(std::abs(sym) == 0.0);
        }
    }
}

TEST_CASE("log_barnes_g zero error") {
    CHECK_THROWS_AS((void)log_barnes_g(cplx(0.0, 0.0)), fhlab::Error);
    CHECK_THROWS_AS((void)log_barnes_g(cplx(-2.0, 0.0)), fhlab::Error);
}

TEST_CASE("fh_constant anchors") {
    CHECK(std::abs(fh_constant(cplx(0.0, 0.0), cplx(0.0, 0.0))) < 1e-14);
    // (0, -1/2): ln(sqrt(pi) G(1/2)^2) via the ladder G(3/2) = Gamma(1/2) G(1/2).
    const cplx expected = std::log(std::sqrt(kPi)) +
                          2.0 * log_barnes_g(cplx(0.5, 0.0));
    const cplx got = fh_constant(cplx(0.0, 0.0), cplx(-0.5, 0.0));
    CHECK(std::abs(got - expected) < 1e-12);
    CHECK(std::abs(got.imag()) < 1e-12);
}

TEST_CASE("fh_constant dual-representation check at (0.3, 0.2i)") {
    const cplx alpha(0.3, 0.0), beta(0.0, 0.2);
    const cplx got = fh_constant(alpha, beta);
    CHECK(std::isfinite(got.real()));
    // Independent route: force the asymptotic representation of each factor.
    const cplx indep = log_barnes_g_asymptotic_route(1.0 + alpha + beta) +
                       log_barnes_g_asymptotic_route(1.0 + alpha - beta) -
                       log_barnes_g_asymptotic_route(1.0 + 2.0 * alpha);
    CHECK(std::abs(got - indep) < 1e-10);
    // exp/log round trip.
    CHECK(std::abs(std::log(std::exp(got)) - got) < 1e-12);
    // Real for real alpha, imaginary beta (conjugate G pair).
    CHECK(std::abs(got.imag()) < 1e-12);
}

TEST_CASE("fh_constant degenerate parameters") {
    CHECK_THROWS_AS((void)fh_constant(cplx(0.0, 0.0), cplx(-1.0, 0.0)), fhlab::Error);
    CHECK_THROWS_AS((void)fh_constant(cplx(-1.5, 0.0), cplx(0.5, 0.0)), fhlab::Error);
}
