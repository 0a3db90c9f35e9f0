// End-to-end tests of the fhlab binary: subcommands, exit codes, output
// determinism, and the machine-readable error object. The binary path
// arrives as the first positional argument from ctest.

#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string g_binary;
std::filesystem::path g_dir;

int run_cli(const std::string& args, const std::string& stdout_to = "",
            const std::string& stderr_to = "") {
    std::string cmd = g_binary + " " + args;
    if (!stdout_to.empty()) cmd += " >" + stdout_to;
    if (!stderr_to.empty()) cmd += " 2>" + stderr_to;
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
}

}  // namespace

TEST_CASE("det: deterministic output, byte-identical across runs and threads") {
    const auto cfg = g_dir / "det.json";
    write_file(cfg, R"({
      "spec": {"alpha": [0.3, 0.0], "beta": [0.0, 0.2], "t": 0.0,
               "V": [[1, 0.1, 0.0], [-1, 0.1, 0.0]]},
      "n_list": [4, 8, 16],
      "t_list": [0.1, 0.4]
    })");
    const auto out1 = g_dir / "det1.csv";
    const auto out2 = g_dir / "det2.csv";
    REQUIRE(run_cli("det --config " + cfg.string() + " --out " + out1.string()) == 0);
    REQUIRE(run_cli("det --config " + cfg.string() + " --out " + out2.string()) == 0);
    const std::string first = slurp(out1);
    CHECK(first == slurp(out2));
    CHECK(first.rfind("n,t,re_logdet,im_logdet,pivot_min\n", 0) == 0);
    CHECK(std::count(first.begin(), first.end(), '\n') == 7);  // header + 6 rows

    // Same bytes under a different worker count.
    const auto out3 = g_dir / "det3.csv";
    REQUIRE(std::system(("FHLAB_THREADS=1 " + g_binary + " det --config " +
                         cfg.string() + " --out " + out3.string())
                            .c_str()) == 0);
    CHECK(first == slurp(out3));
}

TEST_CASE("det: json format via flag override") {
    const auto cfg = g_dir / "detj.json";
    write_file(cfg, R"({
      "spec": {"alpha": [0.0, 0.0], "beta": [0.0, 0.0]},
      "n_list": [1, 2],
      "t_list": [0.3]
    })");
    const auto out = g_dir / "det.json.out";
    REQUIRE(run_cli("det --config " + cfg.string() + " --out " + out.string() +
                    " --format json") == 0);
    const std::string body = slurp(out);
    CHECK(body.find("\"rows\"") != std::string::npos);
    CHECK(body.find("\"exact\"") != std::string::npos);
}

TEST_CASE("unknown config keys exit nonzero with a machine-readable error") {
    const auto cfg = g_dir / "bad.json";
    write_file(cfg, R"({
      "spec": {"alpha": [0.3, 0.0], "beta": [0.0, 0.0]},
      "n_list": [4],
      "t_list": [0.1],
      "surprise": true
    })");
    const auto err = g_dir / "err.json";
    const auto out = g_dir / "never.csv";
    CHECK(run_cli("det --config " + cfg.string() + " --out " + out.string(), "",
                  err.string()) != 0);
    const std::string body = slurp(err);
    CHECK(body.find("\"error\"") != std::string::npos);
    CHECK(body.find("\"module\"") != std::string::npos);
    CHECK(body.find("\"operation\"") != std::string::npos);
    CHECK(body.find("surprise") != std::string::npos);
    CHECK(!std::filesystem::exists(out));
}

TEST_CASE("invalid spec parameters are rejected through the CLI") {
    const auto cfg = g_dir / "badspec.json";
    write_file(cfg, R"({
      "spec": {"alpha": [-0.9, 0.0], "beta": [0.0, 0.0]},
      "n_list": [4],
      "t_list": [0.1]
    })");
    const auto err = g_dir / "err2.json";
    CHECK(run_cli("det --config " + cfg.string() + " --out x.csv", "",
                  err.string()) != 0);
    CHECK(slurp(err).find("alpha") != std::string::npos);
}

TEST_CASE("pv: solution csv plus boundary report") {
    const auto cfg = g_dir / "pv.json";
    write_file(cfg, R"({
      "spec": {"alpha": [0.3, 0.0], "beta": [0.0, 0.0]},
      "pv": {"x_min": 0.01, "x_max": 20.0, "tol": 1e-10, "nodes_per_decade": 48}
    })");
    const auto out = g_dir / "pv.csv";
    REQUIRE(run_cli("pv --config " + cfg.string() + " --out " + out.string()) == 0);
    const std::string csv = slurp(out);
    CHECK(csv.rfind("x,re_v,im_v,re_u,im_u,re_sigma,im_sigma,residual,re_omega,"
                    "im_omega\n",
                    0) == 0);
    const std::string boundary = slurp(out.string() + ".boundary.json");
    CHECK(boundary.find("omega_infinity_mismatch") != std::string::npos);
    // The connection identity is reported well under its acceptance gate.
    const auto pos = boundary.find("\"omega_infinity_mismatch\":");
    const double mismatch = std::strtod(boundary.c_str() + pos + 27, nullptr);
    CHECK(mismatch < 1e-3);
}

TEST_CASE("ising: correlation table with critical columns") {
    const auto cfg = g_dir / "ising.json";
    write_file(cfg, R"({
      "n_list": [2, 4],
      "t_list": [0.0, 0.6]
    })");
    const auto out = g_dir / "ising.csv";
    REQUIRE(run_cli("ising --config " + cfg.string() + " --out " + out.string()) == 0);
    const std::string csv = slurp(out);
    CHECK(csv.rfind("n,t,correlation,log_d0_product,critical_ratio\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
}

TEST_CASE("compare: regime columns present") {
    const auto cfg = g_dir / "cmp.json";
    write_file(cfg, R"({
      "spec": {"alpha": [0.3, 0.0], "beta": [0.0, 0.0]},
      "n_list": [16],
      "x_list": [2.0],
      "pv": {"x_min": 0.01, "x_max": 20.0, "tol": 1e-10, "nodes_per_decade": 48}
    })");
    const auto out = g_dir / "cmp.csv";
    REQUIRE(run_cli("compare --config " + cfg.string() + " --out " + out.string()) ==
            0);
    const std::string csv = slurp(out);
    CHECK(csv.find("abs_err_transition") != std::string::npos);
    CHECK(csv.find("fh skipped") != std::string::npos);
}

TEST_CASE("compare output is independent of the worker count") {
    const auto cfg = g_dir / "cmpthreads.json";
    write_file(cfg, R"({
      "spec": {"alpha": [0.3, 0.0], "beta": [0.0, 0.2]},
      "n_list": [8, 16],
      "t_list": [0.0, 0.2, 0.4],
      "pv": {"x_min": 0.01, "x_max": 20.0, "tol": 1e-10, "nodes_per_decade": 48}
    })");
    const auto out1 = g_dir / "cmp1.csv";
    const auto out2 = g_dir / "cmp2.csv";
    REQUIRE(std::system(("FHLAB_THREADS=1 " + g_binary + " compare --config " +
                         cfg.string() + " --out " + out1.string())
                            .c_str()) == 0);
    REQUIRE(std::system(("FHLAB_THREADS=2 " + g_binary + " compare --config " +
                         cfg.string() + " --out " + out2.string())
                            .c_str()) == 0);
    CHECK(slurp(out1) == slurp(out2));
}

TEST_CASE("verify: identity check and invariant suites pass") {
    const auto out = g_dir / "verify.txt";
    REQUIRE(run_cli("verify", out.string()) == 0);
    const std::string body = slurp(out);
    CHECK(body.find("ALL CHECKS PASSED") != std::string::npos);
    CHECK(body.find("FAIL") == std::string::npos);
}

int main(int argc, char** argv) {
    if (argc > 1 && argv[argc - 1][0] != '-') {
        g_binary = argv[argc - 1];
        --argc;
    } else {
        std::fprintf(stderr, "usage: test_cli [doctest options] <fhlab binary>\n");
        return 1;
    }
    g_dir = std::filesystem::temp_directory_path() / "fhlab_cli_test";
    std::filesystem::create_directories(g_dir);
    doctest::Context context(argc, argv);
    const int rc = context.run();
    std::filesystem::remove_all(g_dir);
    return rc;
}
