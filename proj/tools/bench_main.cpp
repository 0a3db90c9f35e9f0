// Benchmark of the OpenMP kernels against their serial reference
// implementations. --quick shrinks the problem sizes and asserts that the
// parallel and serial results are bit-identical.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>

#include "fhlab/sweep.hpp"
#include "fhlab/symbol.hpp"
#include "fhlab/toeplitz.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

template <typename F>
double time_best_of(int reps, F&& fn) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto start = Clock::now();
        fn();
        best = std::min(best, seconds_since(start));
    }
    return best;
}

bool tables_identical(const fhlab::symbol::FourierTable& a,
                      const fhlab::symbol::FourierTable& b) {
    if (a.coeffs.size() != b.coeffs.size()) return false;
    for (size_t i = 0; i < a.coeffs.size(); ++i)
        if (std::memcmp(&a.coeffs[i], &b.coeffs[i], sizeof(a.coeffs[i])) != 0)
            return false;
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    const bool quick = argc > 1 && std::string(argv[1]) == "--quick";

    fhlab::symbol::SymbolSpec spec;
    spec.alpha = {0.3, 0.0};
    spec.beta = {0.0, 0.2};
    spec.t = 0.4;
    spec.v_coeffs[1] = {0.1, 0.0};
    spec.v_coeffs[-1] = {0.1, 0.0};

    const int n_max = quick ? 64 : 256;
    const int nodes = 8 * (n_max + 2);
    const int reps = quick ? 1 : 3;

    const double fc_par = time_best_of(
        reps, [&] { (void)fhlab::symbol::fourier_coeffs(spec, n_max, nodes); });
    const double fc_ser = time_best_of(
        reps, [&] { (void)fhlab::symbol::fourier_coeffs_serial(spec, n_max, nodes); });
    const auto table_par = fhlab::symbol::fourier_coeffs(spec, n_max, nodes);
    const auto table_ser = fhlab::symbol::fourier_coeffs_serial(spec, n_max, nodes);
    if (!tables_identical(table_par, table_ser)) {
        std::fprintf(stderr, "FAIL: parallel and serial Fourier tables differ\n");
        return 1;
    }

    const int n_det = quick ? 48 : 192;
    const double det_par = time_best_of(reps, [&] {
        (void)fhlab::toeplitz::log_toeplitz_det_range(table_par, n_det);
    });
    const double det_ser = time_best_of(reps, [&] {
        (void)fhlab::toeplitz::log_toeplitz_det_range_serial(table_par, n_det);
    });
    const auto dets_par = fhlab::toeplitz::log_toeplitz_det_range(table_par, n_det);
    const auto dets_ser =
        fhlab::toeplitz::log_toeplitz_det_range_serial(table_par, n_det);
    for (size_t i = 0; i < dets_par.size(); ++i)
        if (std::memcmp(&dets_par[i].log_det, &dets_ser[i].log_det,
                        sizeof(dets_par[i].log_det)) != 0) {
            std::fprintf(stderr, "FAIL: parallel and serial determinants differ\n");
            return 1;
        }

    fhlab::sweep::RunConfig config;
    config.spec = spec;
    config.n_list = quick ? std::vector<int>{16, 24} : std::vector<int>{64, 96, 128};
    config.t_list = quick ? std::vector<double>{0.3, 0.5}
                          : std::vector<double>{0.2, 0.3, 0.4, 0.5};
    const double sweep_par =
        time_best_of(reps, [&] { (void)fhlab::sweep::run_det(config); });
    const double sweep_ser =
        time_best_of(reps, [&] { (void)fhlab::sweep::run_det_serial(config); });
    const auto rows_par = fhlab::sweep::run_det(config).rows;
    const auto rows_ser = fhlab::sweep::run_det_serial(config).rows;
    for (size_t i = 0; i < rows_par.size(); ++i)
        if (std::memcmp(&rows_par[i].exact, &rows_ser[i].exact,
                        sizeof(rows_par[i].exact)) != 0) {
            std::fprintf(stderr, "FAIL: parallel and serial sweeps differ\n");
            return 1;
        }

    std::printf("kernel                    serial [s]   parallel [s]   speedup\n");
    std::printf("fourier_coeffs n=%-4d     %10.4f   %12.4f   %7.2fx\n", n_max, fc_ser,
                fc_par, fc_ser / fc_par);
    std::printf("log_det range n=%-4d      %10.4f   %12.4f   %7.2fx\n", n_det, det_ser,
                det_par, det_ser / det_par);
    std::printf("det sweep %zux%zu            %10.4f   %12.4f   %7.2fx\n",
                config.n_list.size(), config.t_list.size(), sweep_ser, sweep_par,
                sweep_ser / sweep_par);
    std::printf("parallel results are bit-identical to the serial reference\n");
    return 0;
}
