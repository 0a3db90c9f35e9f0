#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <doctest.h>

#include "fhlab/asymptotics.hpp"
#include "fhlab/error.hpp"
#include "fhlab/painleve.hpp"
#include "fhlab/specialfn.hpp"
#include "fhlab/symbol.hpp"
#include "fhlab/toeplitz.hpp"

using namespace fhlab::asymptotics;
using fhlab::symbol::fourier_coeffs;
using fhlab::toeplitz::log_toeplitz_det;

namespace {

SymbolSpec make_spec(cplx alpha, cplx beta, double t) {
    SymbolSpec spec;
    spec.alpha = alpha;
    spec.beta = beta;
    spec.t = t;
    return spec;
}

double bookkeeping_gap(const AsymptoticEstimate& e) {
    return std::abs(e.value -
                    (e.n_term + e.sum_term + e.barnes + e.omega_term + e.log_n_term));
}

}  // namespace

TEST_CASE("szego estimate: trivial symbol and the Ising closed form") {
    CHECK(std::abs(szego_asymptote(make_spec(0.0, 0.0, 0.4), 10).value) < 1e-14);

    // Ising: ln D_n ~ -nt/2 + (1/4) ln(1 - e^{-2t}).
    const int n = 32;
    const double t = 0.6;
    const auto est = szego_asymptote(ising_spec(t), n);
    const double expected = -0.5 * n * t + 0.25 * std::log(1.0 - std::exp(-2.0 * t));
    CHECK(est.value.real() == doctest::Approx(expected).epsilon(1e-12));
    CHECK(std::abs(est.value.imag()) < 1e-12);
    CHECK(bookkeeping_gap(est) < 1e-12);
    CHECK_THROWS_AS((void)szego_asymptote(make_spec(0.1, 0.0, 0.0), 8), fhlab::Error);
}

TEST_CASE("szego estimate matches the exact determinant with a V perturbation") {
    SymbolSpec spec = make_spec(cplx(0.25, 0.0), 0.0, 0.5);
    spec.v_coeffs[1] = cplx(0.2, 0.0);
    spec.v_coeffs[-1] = cplx(0.2, 0.0);
    const int n = 64;
    const auto table = fourier_coeffs(spec, n, 8 * (n + 2));
    const auto rec = log_toeplitz_det(table, n);
    const auto est = szego_asymptote(spec, n);
    CHECK(std::abs(rec.log_det - est.value) < 1e-3);
}

TEST_CASE("fh estimate: trivial symbol and the Ising critical law") {
    CHECK(std::abs(fh_asymptote(make_spec(0.0, 0.0, 0.0), 100).value) < 1e-14);

    // Ising at t = 0: -(1/4) ln n + ln(sqrt(pi) G(1/2)^2).
    const int n = 64;
    const auto est = fh_asymptote(ising_spec(0.0), n);
    const double constant = fhlab::specialfn::fh_constant(0.0, -0.5).real();
    CHECK(est.value.real() ==
          doctest::Approx(-0.25 * std::log((double)n) + constant).epsilon(1e-12));
    CHECK(bookkeeping_gap(est) < 1e-12);
}

TEST_CASE("fh estimate converges to the exact determinant as n doubles") {
    const SymbolSpec spec = make_spec(cplx(0.3, 0.0), 0.0, 0.0);
    double prev = 1e300;
    for (int n : {64, 128, 256}) {
        const auto table = fourier_coeffs(spec, n, 8 * (n + 1));
        const auto rec = log_toeplitz_det(table, n);
        const double gap = std::abs(rec.log_det - fh_asymptote(spec, n).value);
        CHECK(gap < prev);
        prev = gap;
    }
    CHECK(prev < 0.02);
}

TEST_CASE("transition estimate approaches the szego estimate for fixed t") {
    const SymbolSpec spec = make_spec(cplx(0.3, 0.0), cplx(0.0, 0.2), 0.15);
    const auto sol = fhlab::painleve::pv_solve(spec.alpha, spec.beta, {});
    const auto trans = transition_asymptote(spec, 128, sol);  // x = 38.4
    const auto szego = szego_asymptote(spec, 128);
    CHECK(std::abs(trans.value - szego.value) < 1e-3);
    CHECK(bookkeeping_gap(trans) < 1e-12);
}

TEST_CASE("transition estimate approaches the fh estimate as nt -> 0") {
    const cplx a(0.3, 0.0), b(0.0, 0.2);
    const auto sol = fhlab::painleve::pv_solve(a, b, {});
    const int n = 64;
    double prev = 1e300;
    for (double t : {2e-3, 5e-4, 2e-4}) {
        const SymbolSpec spec = make_spec(a, b, t);
        const auto trans = transition_asymptote(spec, n, sol);
        const auto fh = fh_asymptote(spec, n);
        const double gap = std::abs(trans.value - fh.value);
        CHECK(gap < prev);
        prev = gap;
    }
    CHECK(prev < 1e-2);
}

TEST_CASE("transition estimate tracks the exact determinant and improves in n") {
    const cplx a(0.3, 0.0);
    const auto sol = fhlab::painleve::pv_solve(a, 0.0, {});
    double prev = 1e300;
    for (int n : {128, 256}) {
        const double t = 3.0 / (2.0 * n);  // x = 2nt = 3
        const SymbolSpec spec = make_spec(a, 0.0, t);
        const auto table = fourier_coeffs(spec, n, 8 * (n + 1));
        const auto rec = log_toeplitz_det(table, n);
        const auto est = transition_asymptote(spec, n, sol);
        const double gap = std::abs(rec.log_det - est.value);
        CHECK(gap < 0.05);
        CHECK(gap < prev);
        prev = gap;
    }
}

TEST_CASE("transition estimate pre-checks") {
    const auto sol = fhlab::painleve::pv_solve(cplx(0.3, 0.0), 0.0, {});
    CHECK_THROWS_AS(
        (void)transition_asymptote(make_spec(cplx(0.3, 0.0), 0.0, 0.8), 16, sol),
        fhlab::Error);  // t >= t_max
    CHECK_THROWS_AS(
        (void)transition_asymptote(make_spec(cplx(0.2, 0.0), 0.0, 0.1), 16, sol),
        fhlab::Error);  // parameter mismatch
}

TEST_CASE("ising correlations decrease to the long-range-order plateau") {
    const double t = 0.6;
    const double limit = std::pow(1.0 - std::exp(-2.0 * t), 0.25);
    double prev_corr = 1e300;
    for (int n : {2, 4, 8, 16}) {
        const auto table = fourier_coeffs(ising_spec(t), n, 8 * (n + 1));
        const double corr = ising_correlation(n, t, table);
        CHECK(corr > limit - 1e-9);
        CHECK(corr < prev_corr);
        prev_corr = corr;
    }
    CHECK(std::abs(prev_corr - limit) < 1e-3);
}

TEST_CASE("ising correlation at criticality decays like n^{-1/4}") {
    const int n = 64;
    const auto table = fourier_coeffs(ising_spec(0.0), n, 8 * (n + 1));
    const double corr = ising_correlation(n, 0.0, table);
    const double constant = std::exp(fhlab::specialfn::fh_constant(0.0, -0.5).real());
    CHECK(std::abs(corr * std::pow((double)n, 0.25) / constant - 1.0) < 0.02);
}

TEST_CASE("ising correlation at n = 1 equals e^{t/2} f_0") {
    const double t = 0.5;
    const auto table = fourier_coeffs(ising_spec(t), 1, 32);
    const double corr = ising_correlation(1, t, table);
    CHECK(corr == doctest::Approx(std::exp(0.5 * t) * table.f(0).real()).epsilon(1e-12));
    CHECK_THROWS_AS((void)ising_correlation(1, 0.4, table), fhlab::Error);
}

TEST_CASE("magnetization law: sqrt of the correlation approaches the 1/8 power") {
    for (double t : {0.4, 0.8}) {
        const int n = 256;
        const auto table = fourier_coeffs(ising_spec(t), n, 8 * (n + 1));
        const double m2 = ising_correlation(n, t, table);
        CHECK(std::abs(std::sqrt(m2) - std::pow(1.0 - std::exp(-2.0 * t), 0.125)) <
              1e-6);
    }
}

TEST_CASE("ising explicit product for D_n(0)") {
    CHECK(ising_product_d0(1) ==
          doctest::Approx(std::log(2.0 / M_PI)).epsilon(1e-15));
    CHECK(ising_product_d0(2) ==
          doctest::Approx(std::log(16.0 / (3.0 * M_PI * M_PI))).epsilon(1e-15));
    const auto table = fourier_coeffs(ising_spec(0.0), 6, 64);
    const auto rec = log_toeplitz_det(table, 6);
    CHECK(std::abs(ising_product_d0(6) - rec.log_det.real()) < 1e-8);
    CHECK(std::abs(rec.log_det.imag()) < 1e-9);
}

TEST_CASE("estimate CSV carries one column pair per named term") {
    std::vector<AsymptoticEstimate> rows;
    rows.push_back(szego_asymptote(ising_spec(0.5), 16));
    rows.push_back(fh_asymptote(ising_spec(0.0), 16));
    const std::string csv = estimate_csv(rows);
    CHECK(csv.rfind("regime,re_value,im_value,re_n_term,im_n_term,re_sum_term,"
                    "im_sum_term,re_barnes,im_barnes,re_omega,im_omega,re_log_n,"
                    "im_log_n\n",
                    0) == 0);
    CHECK(csv.find("szego,") != std::string::npos);
    CHECK(csv.find("fisher_hartwig,") != std::string::npos);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}
