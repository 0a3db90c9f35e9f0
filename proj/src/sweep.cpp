#include "fhlab/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <sstream>
#include <string>

#include <json.hpp>

#include "fhlab/asymptotics.hpp"
#include "fhlab/error.hpp"
#include "fhlab/io.hpp"
#include "fhlab/parallel.hpp"
#include "fhlab/specialfn.hpp"
#include "fhlab/toeplitz.hpp"

namespace fhlab::sweep {

using nlohmann::json;

namespace {

constexpr const char* kVersion = "fhlab 0.1.0";
constexpr double kTwoPi = 6.283185307179586;

int v_support(const SymbolSpec& spec) {
    int support = 0;
    for (const auto& [k, v] : spec.v_coeffs) support = std::max(support, std::abs(k));
    return support;
}

std::vector<double> parse_double_list(const json& j, const char* name) {
    if (!j.is_array() || j.empty())
        throw Error("cli", "parse_run_config",
                    std::string(name) + " must be a nonempty array");
    std::vector<double> out;
    for (const auto& e : j) {
        if (!e.is_number())
            throw Error("cli", "parse_run_config",
                        std::string(name) + " entries must be numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

struct RowTask {
    int n;
    double t;
    double x;
};

std::vector<RowTask> build_tasks(const RunConfig& config, const char* operation) {
    if (config.n_list.empty())
        throw Error("cli", operation, "n_list must be nonempty");
    for (int n : config.n_list)
        if (n < 1) throw Error("cli", operation, "all n must be >= 1");
    const auto& grid = config.use_x_list ? config.x_list : config.t_list;
    if (grid.empty())
        throw Error("cli", operation, "t_list or x_list must be nonempty");
    std::vector<RowTask> tasks;
    for (int n : config.n_list)
        for (double g : grid) {
            RowTask task;
            task.n = n;
            task.t = config.use_x_list ? g / (2.0 * n) : g;
            task.x = config.use_x_list ? g : 2.0 * n * g;
            tasks.push_back(task);
        }
    return tasks;
}

SweepReport det_impl(const RunConfig& config, bool parallel) {
    config.spec.validate();
    const auto tasks = build_tasks(config, "cmd_det");
    SweepReport report;
    report.version = kVersion;
    report.spec_json = symbol::symbol_spec_to_json(config.spec);
    report.rows.resize(tasks.size());
    const int support = v_support(config.spec);
    std::exception_ptr failure = nullptr;
    const int nt = thread_count();
    const int count = (int)tasks.size();
#pragma omp parallel for schedule(dynamic) num_threads(nt) if (parallel)
    for (int i = 0; i < count; ++i) {
        try {
            const RowTask& task = tasks[i];
            SymbolSpec s = config.spec;
            s.t = task.t;
            const auto table =
                symbol::fourier_coeffs(s, task.n, 8 * (task.n + support + 1));
            const auto rec = toeplitz::log_toeplitz_det(table, task.n);
            SweepRow& row = report.rows[i];
            row.n = task.n;
            row.t = task.t;
            row.x = task.x;
            row.exact = rec.log_det;
            row.pivot_min = rec.pivot_min;
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return report;
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text, ConfigKind kind) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw Error("cli", "parse_run_config", e.what());
    }
    if (!j.is_object())
        throw Error("cli", "parse_run_config", "config must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (key != "spec" && key != "n_list" && key != "t_list" && key != "x_list" &&
            key != "pv" && key != "t_max" && key != "output")
            throw Error("cli", "parse_run_config", "unknown key: " + key);
    }

    RunConfig config;
    if (j.contains("spec"))
        config.spec = symbol::symbol_spec_from_json(j["spec"].dump());
    else if (kind != ConfigKind::ising)
        throw Error("cli", "parse_run_config", "spec is required");

    if (kind == ConfigKind::ising) {
        if (j.contains("spec") &&
            (config.spec.alpha != cplx(0.0) || config.spec.beta != cplx(-0.5) ||
             !config.spec.v_coeffs.empty()))
            throw Error("cli", "parse_run_config",
                        "ising requires alpha = 0, beta = -1/2, V = 0");
        config.spec = asymptotics::ising_spec(0.0);
    }

    if (j.contains("n_list")) {
        if (!j["n_list"].is_array() || j["n_list"].empty())
            throw Error("cli", "parse_run_config", "n_list must be a nonempty array");
        for (const auto& e : j["n_list"]) {
            if (!e.is_number_integer() || e.get<int>() < 1)
                throw Error("cli", "parse_run_config", "n_list entries must be integers >= 1");
            config.n_list.push_back(e.get<int>());
        }
    }
    if (j.contains("t_list") && j.contains("x_list"))
        throw Error("cli", "parse_run_config", "t_list and x_list are mutually exclusive");
    if (j.contains("t_list")) config.t_list = parse_double_list(j["t_list"], "t_list");
    if (j.contains("x_list")) {
        config.x_list = parse_double_list(j["x_list"], "x_list");
        config.use_x_list = true;
        for (double x : config.x_list)
            if (!(x > 0.0))
                throw Error("cli", "parse_run_config", "x_list entries must be > 0");
    }
    for (double t : config.t_list)
        if (t < 0.0) throw Error("cli", "parse_run_config", "t values must be >= 0");

    const bool need_grid = kind != ConfigKind::pv;
    if (need_grid) {
        if (config.n_list.empty())
            throw Error("cli", "parse_run_config", "n_list is required");
        if (config.t_list.empty() && config.x_list.empty())
            throw Error("cli", "parse_run_config",
                        "exactly one of t_list/x_list is required");
    }

    if (j.contains("pv")) {
        const json& p = j["pv"];
        if (!p.is_object())
            throw Error("cli", "parse_run_config", "pv must be an object");
        for (const auto& [key, value] : p.items()) {
            (void)value;
            if (key != "x_min" && key != "x_max" && key != "tol" &&
                key != "nodes_per_decade")
                throw Error("cli", "parse_run_config", "unknown pv key: " + key);
        }
        if (p.contains("x_min")) config.pv.x_min = p["x_min"].get<double>();
        if (p.contains("x_max")) config.pv.x_max = p["x_max"].get<double>();
        if (p.contains("tol")) config.pv.tol = p["tol"].get<double>();
        if (p.contains("nodes_per_decade"))
            config.pv.nodes_per_decade = p["nodes_per_decade"].get<int>();
        config.has_pv = true;
    }
    if (j.contains("t_max")) config.t_max = j["t_max"].get<double>();

    if (j.contains("output")) {
        const json& o = j["output"];
        if (!o.is_object())
            throw Error("cli", "parse_run_config", "output must be an object");
        for (const auto& [key, value] : o.items()) {
            (void)value;
            if (key != "path" && key != "format")
                throw Error("cli", "parse_run_config", "unknown output key: " + key);
        }
        if (o.contains("path")) config.out_path = o["path"].get<std::string>();
        if (o.contains("format")) {
            const std::string f = o["format"].get<std::string>();
            if (f == "csv")
                config.format = OutputFormat::csv;
            else if (f == "json")
                config.format = OutputFormat::json;
            else
                throw Error("cli", "parse_run_config", "format must be csv or json");
        }
    }
    return config;
}

SweepReport run_det(const RunConfig& config) { return det_impl(config, true); }

SweepReport run_det_serial(const RunConfig& config) { return det_impl(config, false); }

SweepReport run_compare(const RunConfig& config) {
    config.spec.validate();
    const auto tasks = build_tasks(config, "cmd_compare");

    SweepReport report;
    report.version = kVersion;
    report.spec_json = symbol::symbol_spec_to_json(config.spec);
    report.rows.resize(tasks.size());

    painleve::PainleveSolution sol;
    if (config.has_pv) {
        sol = painleve::pv_solve(config.spec.alpha, config.spec.beta, config.pv);
        report.pv_used = true;
        report.pv_max_residual = sol.max_residual();
        report.pv_omega_mismatch = sol.boundary_report.omega_infinity_mismatch;
    }

    const int support = v_support(config.spec);
    std::exception_ptr failure = nullptr;
    const int nt = thread_count();
    const int count = (int)tasks.size();
#pragma omp parallel for schedule(dynamic) num_threads(nt)
    for (int i = 0; i < count; ++i) {
        try {
            const RowTask& task = tasks[i];
            SymbolSpec s = config.spec;
            s.t = task.t;
            SweepRow& row = report.rows[i];
            row.n = task.n;
            row.t = task.t;
            row.x = task.x;
            const auto table =
                symbol::fourier_coeffs(s, task.n, 8 * (task.n + support + 1));
            row.exact = toeplitz::log_toeplitz_det(table, task.n).log_det;

            if (task.t > 0.0) {
                row.szego = asymptotics::szego_asymptote(s, task.n).value;
                row.has_szego = true;
                row.note += "fh skipped at t>0;";
            } else {
                row.fh = asymptotics::fh_asymptote(s, task.n).value;
                row.has_fh = true;
                row.note += "szego skipped at t=0;";
            }
            if (config.has_pv && task.t > 0.0 && task.t < config.t_max &&
                task.x >= sol.x_grid.front() && task.x <= sol.x_grid.back()) {
                row.transition =
                    asymptotics::transition_asymptote(s, task.n, sol, config.t_max)
                        .value;
                row.has_transition = true;
                const cplx delta = row.exact - row.transition;
                row.trans_err =
                    std::hypot(delta.real(), std::remainder(delta.imag(), kTwoPi));
            } else {
                row.note += "transition skipped;";
            }
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return report;
}

std::vector<IsingRow> run_ising(const RunConfig& config) {
    const auto tasks = build_tasks(config, "cmd_ising");
    std::vector<IsingRow> rows(tasks.size());
    const double critical_const =
        std::exp(specialfn::fh_constant(0.0, -0.5).real());  // sqrt(pi) G(1/2)^2
    std::exception_ptr failure = nullptr;
    const int nt = thread_count();
    const int count = (int)tasks.size();
#pragma omp parallel for schedule(dynamic) num_threads(nt)
    for (int i = 0; i < count; ++i) {
        try {
            const RowTask& task = tasks[i];
            const SymbolSpec s = asymptotics::ising_spec(task.t);
            const auto table = symbol::fourier_coeffs(s, task.n, 8 * (task.n + 1));
            IsingRow& row = rows[i];
            row.n = task.n;
            row.t = task.t;
            row.correlation = asymptotics::ising_correlation(task.n, task.t, table);
            if (task.t == 0.0) {
                row.product_log_d0 = asymptotics::ising_product_d0(task.n);
                row.critical_ratio = row.correlation *
                                     std::pow(double(task.n), 0.25) / critical_const;
            } else {
                row.product_log_d0 = std::numeric_limits<double>::quiet_NaN();
                row.critical_ratio = std::numeric_limits<double>::quiet_NaN();
            }
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return rows;
}

namespace {

std::string csv_cell(double v) {
    return std::isnan(v) ? std::string() : io::fmt(v);
}

}  // namespace

std::string det_csv(const SweepReport& report) {
    std::ostringstream out;
    out << "n,t,re_logdet,im_logdet,pivot_min\n";
    for (const auto& row : report.rows)
        out << row.n << ',' << io::fmt(row.t) << ',' << io::fmt(row.exact) << ','
            << io::fmt(row.pivot_min) << '\n';
    return out.str();
}

std::string compare_csv(const SweepReport& report) {
    std::ostringstream out;
    out << "n,t,x,re_exact,im_exact,re_szego,im_szego,re_fh,im_fh,"
           "re_transition,im_transition,abs_err_transition,note\n";
    for (const auto& row : report.rows) {
        out << row.n << ',' << io::fmt(row.t) << ',' << io::fmt(row.x) << ','
            << io::fmt(row.exact) << ',';
        out << (row.has_szego ? io::fmt(row.szego) : ",") << ',';
        out << (row.has_fh ? io::fmt(row.fh) : ",") << ',';
        out << (row.has_transition ? io::fmt(row.transition) : ",") << ',';
        out << (row.has_transition ? io::fmt(row.trans_err) : "") << ',';
        out << row.note << '\n';
    }
    return out.str();
}

std::string report_json(const SweepReport& report, bool compare_columns) {
    json j;
    j["meta"]["version"] = report.version;
    j["meta"]["spec"] = json::parse(report.spec_json);
    if (report.pv_used) {
        j["meta"]["pv_max_residual"] = report.pv_max_residual;
        j["meta"]["pv_omega_mismatch"] = report.pv_omega_mismatch;
    }
    j["rows"] = json::array();
    for (const auto& row : report.rows) {
        json r;
        r["n"] = row.n;
        r["t"] = row.t;
        r["x"] = row.x;
        r["exact"] = {row.exact.real(), row.exact.imag()};
        if (compare_columns) {
            if (row.has_szego) r["szego"] = {row.szego.real(), row.szego.imag()};
            if (row.has_fh) r["fh"] = {row.fh.real(), row.fh.imag()};
            if (row.has_transition) {
                r["transition"] = {row.transition.real(), row.transition.imag()};
                r["abs_err_transition"] = row.trans_err;
            }
            if (!row.note.empty()) r["note"] = row.note;
        } else {
            r["pivot_min"] = row.pivot_min;
        }
        j["rows"].push_back(r);
    }
    return j.dump(2) + "\n";
}

std::string ising_csv(const std::vector<IsingRow>& rows) {
    std::ostringstream out;
    out << "n,t,correlation,log_d0_product,critical_ratio\n";
    for (const auto& row : rows)
        out << row.n << ',' << io::fmt(row.t) << ',' << io::fmt(row.correlation) << ','
            << csv_cell(row.product_log_d0) << ',' << csv_cell(row.critical_ratio)
            << '\n';
    return out.str();
}

std::string ising_json(const std::vector<IsingRow>& rows) {
    json j;
    j["meta"]["version"] = kVersion;
    j["rows"] = json::array();
    for (const auto& row : rows) {
        json r;
        r["n"] = row.n;
        r["t"] = row.t;
        r["correlation"] = row.correlation;
        if (!std::isnan(row.product_log_d0)) {
            r["log_d0_product"] = row.product_log_d0;
            r["critical_ratio"] = row.critical_ratio;
        }
        j["rows"].push_back(r);
    }
    return j.dump(2) + "\n";
}

std::string pv_csv(const painleve::PainleveSolution& sol, bool with_omega) {
    std::ostringstream out;
    out << "x,re_v,im_v,re_u,im_u,re_sigma,im_sigma,residual";
    if (with_omega) out << ",re_omega,im_omega";
    out << '\n';
    for (size_t i = 0; i < sol.x_grid.size(); ++i) {
        out << io::fmt(sol.x_grid[i]) << ',' << io::fmt(sol.v[i]) << ','
            << io::fmt(sol.u[i]) << ',' << io::fmt(sol.sigma[i]) << ','
            << io::fmt(sol.sigma_form_residual[i]);
        if (with_omega) out << ',' << io::fmt(painleve::omega(sol, sol.x_grid[i]));
        out << '\n';
    }
    return out.str();
}

std::string pv_boundary_json(const painleve::PainleveSolution& sol) {
    const auto& rep = sol.boundary_report;
    json j;
    j["alpha"] = {sol.alpha.real(), sol.alpha.imag()};
    j["beta"] = {sol.beta.real(), sol.beta.imag()};
    j["x_min"] = sol.x_grid.front();
    j["x_max"] = sol.x_grid.back();
    j["x_min_requested"] = sol.x_min_requested;
    j["max_sigma_form_residual"] = sol.max_residual();
    if (std::isnan(rep.small_x_mismatch))
        j["small_x_mismatch"] = nullptr;
    else
        j["small_x_mismatch"] = rep.small_x_mismatch;
    j["large_x_mismatch"] = rep.large_x_mismatch;
    j["omega_infinity_mismatch"] = rep.omega_infinity_mismatch;
    j["intv_mismatch"] = rep.intv_mismatch;
    j["sigma_tail"] = rep.sigma_tail;
    j["u_init_perturbed"] = rep.u_init_perturbed;
    return j.dump(2) + "\n";
}

}  // namespace fhlab::sweep
