#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <cmath>
#include <fstream>
#include <sstream>

#include "advstab/field_io.hpp"
#include "advstab/run_config.hpp"

using namespace advstab;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("advstab_cli_" + std::to_string(std::rand()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

void write_text(const fs::path& p, const std::string& s) {
    std::ofstream os(p);
    os << s;
}

std::string read_text(const fs::path& p) {
    std::ifstream is(p);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

int run_cli(const std::string& args, const fs::path& stderr_to = {}) {
    std::string cmd = std::string(ADVSTAB_CLI_PATH) + " " + args;
    if (!stderr_to.empty()) cmd += " 2>" + stderr_to.string();
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

} // namespace

TEST_CASE("config parser: canonical round trip and unknown-key rejection") {
    const std::string text = R"(
command = solve

[grid]
dim = 1
n = 256
length = 2.0

[solver]
kappa = 0.01
t_final = 0.5
)";
    RunConfig c = RunConfig::parse(text);
    CHECK(c.command() == "solve");
    CHECK(c.get_number("grid.n", 0) == 256);

    // serialize(parse(file)) is a fixed point
    RunConfig c2 = RunConfig::parse(c.to_config_text());
    CHECK(c2.to_config_text() == c.to_config_text());
    CHECK(c2.to_json() == c.to_json());

    CHECK_THROWS_AS(RunConfig::parse("command = solve\n[grid]\nbogus = 1\n"),
                    InvalidParameter);
    CHECK_THROWS_AS(RunConfig::parse("[grid]\nn = 4\n"), InvalidParameter); // no command
    CHECK_THROWS_AS(RunConfig::parse("command = fly\n"), InvalidParameter);
    CHECK_THROWS_AS(RunConfig::parse("command = solve\n[solver]\nkappa = -1\n"),
                    InvalidParameter);
    CHECK_THROWS_AS(RunConfig::parse("command = solve\n[solver]\ncfl = 1.5\n"),
                    InvalidParameter);
}

TEST_CASE("cli solve: writes diagnostics, final field, and the config echo") {
    TempDir tmp;
    write_text(tmp.path / "run.cfg", R"(
command = solve
[grid]
dim = 1
n = 256
length = 2.0
[solver]
kappa = 0.01
t_final = 0.2
[data]
kind = gaussian
x0 = 1.0
sigma = 0.1
[velocity]
kind = uniform
amplitude = 0.2
)");
    int rc = run_cli("--config " + (tmp.path / "run.cfg").string() + " --out " +
                     (tmp.path / "out").string());
    CHECK(rc == 0);
    CHECK(fs::exists(tmp.path / "out/diagnostics.csv"));
    CHECK(fs::exists(tmp.path / "out/theta_final.fld"));
    CHECK(fs::exists(tmp.path / "out/theta_final.csv"));
    CHECK(fs::exists(tmp.path / "out/config.json"));

    ScalarField final_theta = read_field((tmp.path / "out/theta_final.fld").string());
    CHECK(final_theta.grid().n() == 256);
    std::string diag = read_text(tmp.path / "out/diagnostics.csv");
    CHECK(diag.rfind("t,mass,l1,lq,linf,entropy,fisher,moment1,gradl1\n", 0) == 0);
}

TEST_CASE("cli validation failures exit 1 and name the offending field") {
    TempDir tmp;
    write_text(tmp.path / "bad.cfg", "command = solve\n[solver]\nkappa = -0.5\n");
    fs::path err = tmp.path / "stderr.txt";
    int rc = run_cli("--config " + (tmp.path / "bad.cfg").string(), err);
    CHECK(rc == 1);
    CHECK(read_text(err).find("solver.kappa") != std::string::npos);

    write_text(tmp.path / "unknown.cfg", "command = solve\n[grid]\nwidth = 3\n");
    rc = run_cli("--config " + (tmp.path / "unknown.cfg").string(), err);
    CHECK(rc == 1);
    CHECK(read_text(err).find("grid.width") != std::string::npos);

    rc = run_cli("--config " + (tmp.path / "missing.cfg").string(), err);
    CHECK(rc == 1);
}

TEST_CASE("cli numerical failures exit 2") {
    TempDir tmp;
    write_text(tmp.path / "cfl.cfg", R"(
command = solve
[grid]
dim = 1
n = 128
[solver]
t_final = 1.0
dt = 0.5
[velocity]
kind = uniform
amplitude = 1.0
)");
    int rc = run_cli("--config " + (tmp.path / "cfl.cfg").string(), tmp.path / "e.txt");
    CHECK(rc == 2);
}

TEST_CASE("cli distance: field pair to report with provenance and plan") {
    TempDir tmp;
    Grid g(1, 128, 1.0);
    ScalarField a = ScalarField::from_function(g, [](double x, double) {
        double d = x - 0.3;
        return std::exp(-200.0 * d * d);
    });
    ScalarField b = a.shift_cells(20);
    write_field(a, (tmp.path / "a.fld").string());
    write_field(b, (tmp.path / "b.fld").string());
    write_text(tmp.path / "dist.cfg", "command = distance\n[distance]\ntheta1 = " +
                                          (tmp.path / "a.fld").string() + "\ntheta2 = " +
                                          (tmp.path / "b.fld").string() +
                                          "\n[cost]\nkind = log_delta\ndelta = 0.01\n");
    int rc = run_cli("--config " + (tmp.path / "dist.cfg").string() + " --out " +
                     (tmp.path / "out").string());
    CHECK(rc == 0);
    std::string report = read_text(tmp.path / "out/report.json");
    CHECK(report.find("\"value\"") != std::string::npos);
    CHECK(report.find("\"provenance\"") != std::string::npos);
    CHECK(report.find("\"duality_gap\"") != std::string::npos);
    CHECK(fs::exists(tmp.path / "out/plan.csv"));
    CHECK(fs::exists(tmp.path / "out/potential.csv"));
}

TEST_CASE("cli experiment: degenerate eps = 0 sweep reports a zero distance") {
    TempDir tmp;
    write_text(tmp.path / "exp.cfg", R"(
command = experiment
[experiment]
channel = velocity
epsilons = 0.0
[grid]
n = 256
[solver]
t_final = 0.25
)");
    int rc = run_cli("--config " + (tmp.path / "exp.cfg").string() + " --out " +
                     (tmp.path / "out").string());
    CHECK(rc == 0);
    std::string report = read_text(tmp.path / "out/report.json");
    CHECK(report.find("\"d_matched\": 0.0") != std::string::npos);
    CHECK(fs::exists(tmp.path / "out/report.csv"));
    CHECK(fs::exists(tmp.path / "out/config.json"));
}

TEST_CASE("cli experiment end to end: rate fit lands at one, svg plots emitted") {
    TempDir tmp;
    write_text(tmp.path / "exp.cfg", R"(
command = experiment
[experiment]
channel = diffusivity
epsilons = 1e-1, 3e-2, 1e-2, 1e-3
kappa2 = 2e-3
sigma0 = 0.05
kappa_sum = 0.5
[grid]
n = 256
length = 4.0
[solver]
t_final = 0.5
scheme = imex
)");
    int rc = run_cli("--config " + (tmp.path / "exp.cfg").string() + " --out " +
                     (tmp.path / "out").string() + " --jobs 2 --plot svg");
    CHECK(rc == 0);
    CHECK(fs::exists(tmp.path / "out/report.json"));
    CHECK(fs::exists(tmp.path / "out/plot_w1.svg"));
    std::string svg = read_text(tmp.path / "out/plot_w1.svg");
    CHECK(svg.rfind("<svg", 0) == 0);

    // the fitted W1 rate at fixed kappa sum is written with slope near 1
    std::string report = read_text(tmp.path / "out/report.json");
    auto pos = report.find("\"w1_rate_at_fixed_sum\"");
    REQUIRE(pos != std::string::npos);
    auto spos = report.find("\"slope\": ", pos);
    REQUIRE(spos != std::string::npos);
    double slope = std::stod(report.substr(spos + 9));
    CHECK(slope >= 0.95);
    CHECK(slope <= 1.05);
}

TEST_CASE("cli solve with a kernel velocity built from a stored vorticity") {
    TempDir tmp;
    Grid g(2, 64, 1.0);
    ScalarField omega = ScalarField::from_function(g, [](double x, double y) {
        double dx = x - 0.5, dy = y - 0.5;
        return std::exp(-80.0 * (dx * dx + dy * dy));
    });
    write_field(omega, (tmp.path / "omega.fld").string());
    write_text(tmp.path / "bs.cfg",
               std::string("command = solve\n[grid]\ndim = 2\nn = 64\n[solver]\n") +
                   "kappa = 1e-3\nt_final = 0.1\n[data]\nkind = gaussian\n" +
                   "x0 = 0.65\ny0 = 0.5\nsigma = 0.06\n[velocity]\n" +
                   "kind = biot_savart\nvorticity_path = " +
                   (tmp.path / "omega.fld").string() + "\n");
    int rc = run_cli("--config " + (tmp.path / "bs.cfg").string() + " --out " +
                     (tmp.path / "out").string());
    CHECK(rc == 0);
    CHECK(fs::exists(tmp.path / "out/theta_final.fld"));

    // a kernel velocity without a vorticity source is a validation error
    write_text(tmp.path / "bad.cfg",
               "command = solve\n[grid]\ndim = 2\nn = 64\n[velocity]\nkind = biot_savart\n");
    fs::path err = tmp.path / "e.txt";
    CHECK(run_cli("--config " + (tmp.path / "bad.cfg").string(), err) == 1);
    CHECK(read_text(err).find("vorticity_path") != std::string::npos);
}

TEST_CASE("cli check subcommand: suites pass, unknown suite exits 1") {
    CHECK(run_cli("check rates") == 0);
    CHECK(run_cli("check oracles") == 0);
    TempDir tmp;
    CHECK(run_cli("check nonsense", tmp.path / "e.txt") == 1);
}
