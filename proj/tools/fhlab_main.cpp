// fhlab: Toeplitz determinants with an emerging singularity, their
// asymptotic regimes, and the Painleve V transition function.
//
// Subcommands: det, compare, pv, ising, verify.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "fhlab/asymptotics.hpp"
#include "fhlab/error.hpp"
#include "fhlab/io.hpp"
#include "fhlab/painleve.hpp"
#include "fhlab/specialfn.hpp"
#include "fhlab/sweep.hpp"
#include "fhlab/symbol.hpp"
#include "fhlab/toeplitz.hpp"

namespace {

using fhlab::Error;
using fhlab::sweep::ConfigKind;
using fhlab::sweep::OutputFormat;
using fhlab::sweep::RunConfig;
using cplx = std::complex<double>;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cli", "read_config", "cannot open config", {{"path", path}});
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunConfig load_config(const std::string& path, ConfigKind kind,
                      const std::string& out_override,
                      const std::string& format_override) {
    RunConfig config = fhlab::sweep::parse_run_config(read_file(path), kind);
    if (!out_override.empty()) config.out_path = out_override;
    if (!format_override.empty()) {
        if (format_override == "csv")
            config.format = OutputFormat::csv;
        else if (format_override == "json")
            config.format = OutputFormat::json;
        else
            throw Error("cli", "run", "format must be csv or json");
    }
    if (config.out_path.empty())
        throw Error("cli", "run", "no output path (config output.path or --out)");
    return config;
}

int run_det(const std::string& config_path, const std::string& out,
            const std::string& format) {
    const RunConfig config = load_config(config_path, ConfigKind::det, out, format);
    const auto report = fhlab::sweep::run_det(config);
    fhlab::io::atomic_write(config.out_path,
                            config.format == OutputFormat::csv
                                ? fhlab::sweep::det_csv(report)
                                : fhlab::sweep::report_json(report, false));
    return 0;
}

int run_compare(const std::string& config_path, const std::string& out,
                const std::string& format) {
    const RunConfig config = load_config(config_path, ConfigKind::compare, out, format);
    const auto report = fhlab::sweep::run_compare(config);
    fhlab::io::atomic_write(config.out_path,
                            config.format == OutputFormat::csv
                                ? fhlab::sweep::compare_csv(report)
                                : fhlab::sweep::report_json(report, true));
    return 0;
}

int run_pv(const std::string& config_path, const std::string& out,
           const std::string& format) {
    const RunConfig config = load_config(config_path, ConfigKind::pv, out, format);
    const auto sol =
        fhlab::painleve::pv_solve(config.spec.alpha, config.spec.beta, config.pv);
    fhlab::io::atomic_write(config.out_path, fhlab::sweep::pv_csv(sol, true));
    fhlab::io::atomic_write(config.out_path + ".boundary.json",
                            fhlab::sweep::pv_boundary_json(sol));
    return 0;
}

int run_ising(const std::string& config_path, const std::string& out,
              const std::string& format) {
    const RunConfig config = load_config(config_path, ConfigKind::ising, out, format);
    const auto rows = fhlab::sweep::run_ising(config);
    fhlab::io::atomic_write(config.out_path, config.format == OutputFormat::csv
                                                 ? fhlab::sweep::ising_csv(rows)
                                                 : fhlab::sweep::ising_json(rows));
    return 0;
}

// ---- verify: the differential identity plus the module invariant suites ----

struct VerifyState {
    int failures = 0;
    void check(const std::string& name, bool ok, double metric, double gate) {
        std::printf("%s %s (metric=%.3e, gate=%.3e)\n", ok ? "PASS" : "FAIL",
                    name.c_str(), metric, gate);
        if (!ok) ++failures;
    }
};

void verify_specialfn(VerifyState& state) {
    using namespace fhlab::specialfn;
    std::mt19937 rng(20240811);
    std::uniform_real_distribution<double> dist(-20.0, 20.0);
    double worst_gamma = 0.0, worst_barnes = 0.0, worst_conj = 0.0;
    int done = 0;
    while (done < 1000) {
        const cplx z(dist(rng), dist(rng));
        if (std::abs(z) > 20.0) continue;
        bool near_pole = false;
        for (int k = 0; k <= 21; ++k)
            if (std::abs(z + double(k)) < 0.1) near_pole = true;
        if (near_pole) continue;
        ++done;
        worst_gamma = std::max(
            worst_gamma,
            std::abs(std::exp(log_gamma(z + 1.0) - log_gamma(z)) - z) / std::abs(z));
        cplx d = log_barnes_g(z + 1.0) - log_barnes_g(z) - log_gamma(z);
        d = {d.real(), std::remainder(d.imag(), 6.283185307179586)};
        worst_barnes = std::max(worst_barnes, std::abs(d));
        worst_conj = std::max(worst_conj, std::abs(log_gamma(std::conj(z)) -
                                                   std::conj(log_gamma(z))));
    }
    state.check("specialfn: Gamma recurrence (1000 samples)", worst_gamma < 1e-10,
                worst_gamma, 1e-10);
    state.check("specialfn: Barnes functional equation (1000 samples)",
                worst_barnes < 1e-10, worst_barnes, 1e-10);
    state.check("specialfn: conjugation symmetry", worst_conj == 0.0, worst_conj, 0.0);
}

void verify_symbol(VerifyState& state) {
    using namespace fhlab::symbol;
    SymbolSpec spec;
    spec.alpha = cplx(0.25, 0.0);
    spec.beta = cplx(0.0, 0.1);
    spec.t = 0.5;
    const auto table = fourier_coeffs(spec, 16, 512);
    state.check("symbol: winding number vanishes for t > 0",
                std::abs(winding_number(table)) < 1e-8,
                std::abs(winding_number(table)), 1e-8);
    const auto logf = log_fourier_coeffs(table, 8);
    double worst = 0.0;
    for (int k = 1; k <= 8; ++k) {
        const cplx expect_pos =
            -(spec.alpha + spec.beta) * std::exp(-spec.t * k) / double(k);
        const cplx expect_neg =
            -(spec.alpha - spec.beta) * std::exp(-spec.t * k) / double(k);
        worst = std::max(worst, std::abs(logf[8 + k] - expect_pos));
        worst = std::max(worst, std::abs(logf[8 - k] - expect_neg));
    }
    state.check("symbol: Szego log-coefficients match closed form", worst < 1e-8,
                worst, 1e-8);
}

void verify_identity(VerifyState& state) {
    for (const double t : {0.3, 0.6}) {
        for (const int n : {4, 8, 12}) {
            const auto ising = fhlab::asymptotics::ising_spec(t);
            const double d1 =
                fhlab::toeplitz::verify_differential_identity(ising, n, t, 1e-4);
            state.check("identity: Ising n=" + std::to_string(n) +
                            " t=" + std::to_string(t),
                        d1 < 1e-6, d1, 1e-6);
            fhlab::symbol::SymbolSpec spec;
            spec.alpha = cplx(0.25, 0.0);
            spec.beta = cplx(0.0, 0.1);
            spec.t = t;
            const double d2 =
                fhlab::toeplitz::verify_differential_identity(spec, n, t, 1e-4);
            state.check("identity: (0.25,0.1i) n=" + std::to_string(n) +
                            " t=" + std::to_string(t),
                        d2 < 1e-6, d2, 1e-6);
        }
    }
}

void verify_painleve(VerifyState& state) {
    const auto sol = fhlab::painleve::pv_solve(0.3, 0.0, {});
    state.check("painleve: sigma-form residual (0.3, 0)",
                sol.max_residual() < 1e-6, sol.max_residual(), 1e-6);
    state.check("painleve: Omega(inf) connection identity",
                sol.boundary_report.omega_infinity_mismatch < 1e-3,
                sol.boundary_report.omega_infinity_mismatch, 1e-3);
    state.check("painleve: integral of v", sol.boundary_report.intv_mismatch < 1e-3,
                sol.boundary_report.intv_mismatch, 1e-3);
}

int run_verify() {
    VerifyState state;
    verify_specialfn(state);
    verify_symbol(state);
    verify_identity(state);
    verify_painleve(state);
    std::printf("%s\n", state.failures == 0 ? "ALL CHECKS PASSED" : "CHECKS FAILED");
    return state.failures == 0 ? 0 : 1;
}

void print_error(const Error& e) {
    nlohmann::json j;
    j["error"]["module"] = e.module();
    j["error"]["operation"] = e.operation();
    j["error"]["message"] = e.message();
    for (const auto& [key, value] : e.params()) j["error"]["params"][key] = value;
    std::cerr << j.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Toeplitz determinant laboratory: exact determinants, asymptotic "
                 "regimes, and the Painleve V transition"};
    app.require_subcommand(1);

    std::string config_path, out_path, format;
    auto add_common = [&](CLI::App* cmd, bool need_config) {
        if (need_config)
            cmd->add_option("--config", config_path, "JSON config path")->required();
        cmd->add_option("--out", out_path, "output path (overrides config)");
        cmd->add_option("--format", format, "csv or json (overrides config)");
    };

    auto* det = app.add_subcommand("det", "exact log-determinants over the grid");
    add_common(det, true);
    auto* compare =
        app.add_subcommand("compare", "exact vs asymptotic regimes over the grid");
    add_common(compare, true);
    auto* pv = app.add_subcommand("pv", "Painleve V solution and boundary report");
    add_common(pv, true);
    auto* ising = app.add_subcommand("ising", "Ising diagonal correlation tables");
    add_common(ising, true);
    app.add_subcommand("verify", "run the differential-identity and invariant checks");

    CLI11_PARSE(app, argc, argv);

    try {
        if (det->parsed()) return run_det(config_path, out_path, format);
        if (compare->parsed()) return run_compare(config_path, out_path, format);
        if (pv->parsed()) return run_pv(config_path, out_path, format);
        if (ising->parsed()) return run_ising(config_path, out_path, format);
        return run_verify();
    } catch (const Error& e) {
        print_error(e);
        return 1;
    } catch (const std::exception& e) {
        nlohmann::json j;
        j["error"]["module"] = "cli";
        j["error"]["operation"] = "run";
        j["error"]["message"] = e.what();
        std::cerr << j.dump() << "\n";
        return 1;
    }
}
