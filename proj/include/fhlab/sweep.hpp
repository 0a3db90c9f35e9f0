#ifndef FHLAB_SWEEP_HPP
#define FHLAB_SWEEP_HPP

#include <complex>
#include <string>
#include <vector>

#include "fhlab/painleve.hpp"
#include "fhlab/symbol.hpp"

namespace fhlab::sweep {

using cplx = std::complex<double>;
using painleve::PvSolveOptions;
using symbol::SymbolSpec;

enum class OutputFormat { csv, json };

struct RunConfig {
    SymbolSpec spec;
    std::vector<int> n_list;
    std::vector<double> t_list;
    std::vector<double> x_list;  // x = 2nt; exactly one of t_list/x_list
    bool use_x_list = false;
    PvSolveOptions pv;
    bool has_pv = false;
    double t_max = 0.7;  // transition regime validity bound
    std::string out_path;
    OutputFormat format = OutputFormat::csv;
};

// What a subcommand needs from the config.
enum class ConfigKind { det, compare, pv, ising };

// Parses the JSON config, rejecting unknown keys at every level.
RunConfig parse_run_config(const std::string& json_text, ConfigKind kind);

struct SweepRow {
    int n = 0;
    double t = 0.0;
    double x = 0.0;  // 2*n*t
    cplx exact{0.0, 0.0};
    double pivot_min = 0.0;
    bool has_szego = false, has_fh = false, has_transition = false;
    cplx szego{0.0, 0.0}, fh{0.0, 0.0}, transition{0.0, 0.0};
    double trans_err = 0.0;  // |exact - transition|, Im part mod 2*pi
    std::string note;
};

struct SweepReport {
    std::vector<SweepRow> rows;  // n-major, then grid order
    std::string spec_json;
    std::string version;
    bool pv_used = false;
    double pv_max_residual = 0.0;
    double pv_omega_mismatch = 0.0;
};

// Exact determinants over the grid (OpenMP-parallel over rows).
SweepReport run_det(const RunConfig& config);
SweepReport run_det_serial(const RunConfig& config);  // bit-identical reference

// Exact plus every asymptotic regime defined at each grid point.
SweepReport run_compare(const RunConfig& config);

// Ising tables: correlation e^{nt/2} D_n(t), the critical-law ratio at t=0.
struct IsingRow {
    int n = 0;
    double t = 0.0;
    double correlation = 0.0;
    double product_log_d0 = 0.0;  // explicit product, t = 0 rows only
    double critical_ratio = 0.0;  // corr * n^{1/4} / (sqrt(pi) G(1/2)^2), t = 0
};
std::vector<IsingRow> run_ising(const RunConfig& config);

std::string det_csv(const SweepReport& report);
std::string compare_csv(const SweepReport& report);
std::string report_json(const SweepReport& report, bool compare_columns);
std::string ising_csv(const std::vector<IsingRow>& rows);
std::string ising_json(const std::vector<IsingRow>& rows);

// PainleveSolution CSV (x, v, u, sigma, residual[, Omega]) and the boundary
// report as JSON.
std::string pv_csv(const painleve::PainleveSolution& sol, bool with_omega);
std::string pv_boundary_json(const painleve::PainleveSolution& sol);

}  // namespace fhlab::sweep

#endif
