#include "advstab/run_config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "advstab/field_io.hpp"
#include "advstab/kernel.hpp"
#include "advstab/oracles.hpp"
#include "advstab/svg.hpp"

namespace advstab {

namespace {

using ordered_json = nlohmann::ordered_json;

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys = {
        "command",
        "grid.dim", "grid.n", "grid.length",
        "solver.kappa", "solver.t_final", "solver.dt", "solver.scheme", "solver.cfl",
        "solver.lq_exponent", "solver.sample_every",
        "data.kind", "data.x0", "data.y0", "data.sigma", "data.mass", "data.lambda_cells",
        "data.stripe_cells", "data.path",
        "velocity.kind", "velocity.amplitude", "velocity.mode", "velocity.phase",
        "velocity.center_x", "velocity.center_y", "velocity.radius", "velocity.circulation",
        "velocity.path", "velocity.vorticity_path", "velocity.kernel_exponent",
        "velocity.kernel_amplitude",
        "cost.kind", "cost.delta",
        "ot.method", "ot.support_cap", "ot.reg", "ot.max_iter", "ot.threshold",
        "distance.theta1", "distance.theta2",
        "experiment.channel", "experiment.epsilons", "experiment.p_exponent",
        "experiment.delta_policy", "experiment.delta_fixed",
        "experiment.base_amplitude", "experiment.perturbation_gain",
        "experiment.envelope_sigma", "experiment.packet_wavelength_cells",
        "experiment.kappa2", "experiment.sigma0", "experiment.kappa_sum",
        "experiment.stripe_cells", "experiment.data_meshes",
        "experiment.patch_radius_cells", "experiment.bound_exponents",
        "experiment.ball_fraction", "experiment.seed", "experiment.jobs",
        "check.suite",
    };
    return keys;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::string& origin, const std::string& what) {
    throw InvalidParameter(origin + ": " + what);
}

} // namespace

RunConfig RunConfig::parse(const std::string& text, const std::string& origin) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto comment = line.find('#');
        if (comment != std::string::npos) line = line.substr(0, comment);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(origin, "malformed section at line " + std::to_string(lineno));
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            fail(origin, "expected key = value at line " + std::to_string(lineno));
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (!section.empty()) key = section + "." + key;
        if (!known_keys().count(key)) fail(origin, "unknown key '" + key + "'");
        if (cfg.entries_.count(key)) fail(origin, "duplicate key '" + key + "'");
        cfg.entries_[key] = value;
    }
    auto it = cfg.entries_.find("command");
    if (it == cfg.entries_.end()) fail(origin, "missing 'command'");
    cfg.command_ = it->second;
    cfg.validate();
    return cfg;
}

RunConfig RunConfig::parse_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw InvalidParameter("config file not found: " + path);
    std::stringstream buf;
    buf << is.rdbuf();
    return parse(buf.str(), path);
}

std::string RunConfig::get_string(const std::string& key, const std::string& fallback) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? fallback : it->second;
}

double RunConfig::get_number(const std::string& key, double fallback) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    try {
        std::size_t pos = 0;
        double v = std::stod(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw InvalidParameter("config: field '" + key + "' is not a number: " + it->second);
    }
}

std::vector<double> RunConfig::get_list(const std::string& key,
                                        std::vector<double> fallback) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    std::vector<double> out;
    std::stringstream ss(it->second);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (tok.empty()) continue;
        try {
            out.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw InvalidParameter("config: field '" + key + "' has a bad entry: " + tok);
        }
    }
    if (out.empty())
        throw InvalidParameter("config: field '" + key + "' is an empty list");
    return out;
}

void RunConfig::validate() const {
    const std::set<std::string> commands = {"solve", "distance", "experiment", "check"};
    if (!commands.count(command_))
        throw InvalidParameter("config: unknown command '" + command_ + "'");

    auto check_positive = [&](const std::string& key) {
        if (has(key) && !(get_number(key, 1.0) > 0.0))
            throw InvalidParameter("config: field '" + key + "' must be > 0");
    };
    auto check_nonneg = [&](const std::string& key) {
        if (has(key) && get_number(key, 0.0) < 0.0)
            throw InvalidParameter("config: field '" + key + "' must be >= 0");
    };
    check_nonneg("solver.kappa");
    check_positive("solver.t_final");
    check_nonneg("solver.dt");
    check_positive("grid.n");
    check_positive("grid.length");
    check_positive("cost.delta");
    check_positive("ot.reg");
    check_positive("experiment.sigma0");
    if (has("solver.cfl")) {
        double cfl = get_number("solver.cfl", 1.0);
        if (!(cfl > 0.0 && cfl <= 1.0))
            throw InvalidParameter("config: field 'solver.cfl' must be in (0,1]");
    }
    if (has("solver.scheme")) {
        const std::string s = get_string("solver.scheme", "");
        if (s != "explicit" && s != "imex")
            throw InvalidParameter("config: field 'solver.scheme' must be explicit or imex");
    }
    if (has("grid.dim")) {
        double d = get_number("grid.dim", 1);
        if (d != 1.0 && d != 2.0)
            throw InvalidParameter("config: field 'grid.dim' must be 1 or 2");
    }
    if (has("cost.kind")) {
        const std::string s = get_string("cost.kind", "");
        if (s != "w1" && s != "log_delta" && s != "tanh")
            throw InvalidParameter("config: field 'cost.kind' must be w1, log_delta or tanh");
    }
    if (has("ot.method")) {
        const std::string s = get_string("ot.method", "");
        if (s != "exact" && s != "sinkhorn")
            throw InvalidParameter("config: field 'ot.method' must be exact or sinkhorn");
    }
    if (command_ == "experiment") {
        const std::string c = get_string("experiment.channel", "");
        if (c != "velocity" && c != "diffusivity" && c != "initial_data" && c != "rough_field")
            throw InvalidParameter("config: field 'experiment.channel' must be one of "
                                   "velocity, diffusivity, initial_data, rough_field");
    }
    if (command_ == "check" && !has("check.suite"))
        throw InvalidParameter("config: command 'check' requires field 'check.suite'");
}

std::string RunConfig::to_config_text() const {
    std::string out = "command = " + command_ + "\n";
    std::string current;
    for (const auto& [key, value] : entries_) {
        if (key == "command") continue;
        const auto dot = key.find('.');
        const std::string section = key.substr(0, dot);
        const std::string name = key.substr(dot + 1);
        if (section != current) {
            out += "\n[" + section + "]\n";
            current = section;
        }
        out += name + " = " + value + "\n";
    }
    return out;
}

std::string RunConfig::to_json() const {
    ordered_json j;
    j["command"] = command_;
    for (const auto& [key, value] : entries_) {
        if (key == "command") continue;
        const auto dot = key.find('.');
        j[key.substr(0, dot)][key.substr(dot + 1)] = value;
    }
    return j.dump(2) + "\n";
}

SweepSpec RunConfig::to_sweep_spec() const {
    SweepSpec spec;
    const std::string channel = get_string("experiment.channel", "velocity");
    if (channel == "velocity") spec.channel = SweepSpec::Channel::velocity;
    else if (channel == "diffusivity") spec.channel = SweepSpec::Channel::diffusivity;
    else if (channel == "initial_data") spec.channel = SweepSpec::Channel::initial_data;
    else spec.channel = SweepSpec::Channel::rough_field;

    spec.epsilons = get_list("experiment.epsilons", {1e-1, 3e-2, 1e-2, 3e-3, 1e-3});
    spec.dim = static_cast<int>(get_number("grid.dim", spec.channel == SweepSpec::Channel::rough_field ? 2 : 1));
    spec.n = static_cast<int>(get_number("grid.n", spec.dim == 2 ? 128 : 1024));
    spec.length = get_number("grid.length", 1.0);
    spec.kappa = get_number("solver.kappa", 0.0);
    spec.t_final = get_number("solver.t_final", 1.0);
    spec.scheme = get_string("solver.scheme", "explicit") == "imex"
                      ? SolverConfig::Scheme::imex
                      : SolverConfig::Scheme::explicit_euler;
    spec.cfl = get_number("solver.cfl", 0.95);
    spec.method = get_string("ot.method", "exact") == "sinkhorn" ? OtMethod::sinkhorn
                                                                 : OtMethod::exact;
    spec.support_cap = static_cast<std::size_t>(get_number("ot.support_cap", 2048));
    spec.p_exponent = get_number("experiment.p_exponent", 2.0);
    spec.delta_policy = get_string("experiment.delta_policy", "matched") == "fixed"
                            ? SweepSpec::DeltaPolicy::fixed
                            : SweepSpec::DeltaPolicy::matched;
    spec.delta_fixed = get_number("experiment.delta_fixed", 1e-4);
    spec.base_amplitude = get_number("experiment.base_amplitude", spec.base_amplitude);
    spec.perturbation_gain = get_number("experiment.perturbation_gain", spec.perturbation_gain);
    spec.envelope_sigma = get_number("experiment.envelope_sigma", spec.envelope_sigma);
    spec.packet_wavelength_cells = static_cast<int>(
        get_number("experiment.packet_wavelength_cells", spec.packet_wavelength_cells));
    spec.kappa2 = get_number("experiment.kappa2", spec.kappa2);
    spec.sigma0 = get_number("experiment.sigma0", spec.sigma0);
    spec.kappa_sum = get_number("experiment.kappa_sum", spec.kappa_sum);
    spec.stripe_cells = get_number("experiment.stripe_cells", spec.stripe_cells);
    if (has("experiment.data_meshes")) {
        spec.data_meshes.clear();
        for (double v : get_list("experiment.data_meshes", {}))
            spec.data_meshes.push_back(static_cast<int>(v));
    }
    spec.patch_radius_cells = get_number("experiment.patch_radius_cells", spec.patch_radius_cells);
    if (has("experiment.bound_exponents"))
        spec.bound_exponents = get_list("experiment.bound_exponents", spec.bound_exponents);
    spec.ball_fraction = get_number("experiment.ball_fraction", spec.ball_fraction);
    spec.seed = static_cast<std::uint64_t>(get_number("experiment.seed", 1));
    spec.jobs = static_cast<int>(get_number("experiment.jobs", 1));
    return spec;
}

// --------------------------------------------------------------------------
// execution
// --------------------------------------------------------------------------

namespace {

Grid grid_from(const RunConfig& c) {
    return Grid(static_cast<int>(c.get_number("grid.dim", 1)),
                static_cast<int>(c.get_number("grid.n", 1024)),
                c.get_number("grid.length", 1.0));
}

ScalarField datum_from(const RunConfig& c, const Grid& g) {
    const std::string kind = c.get_string("data.kind", "gaussian");
    const double L = g.length();
    const double x0 = c.get_number("data.x0", 0.5 * L);
    const double y0 = c.get_number("data.y0", 0.5 * L);
    const double sigma = c.get_number("data.sigma", 0.05 * L);
    const double mass = c.get_number("data.mass", 1.0);
    if (kind == "file") return read_field(c.get_string("data.path", ""));
    if (kind == "gaussian") {
        ScalarField f = ScalarField::from_function(g, [&](double x, double y) {
            double dx = g.wrap_delta(x - x0);
            double dy = g.dim() == 2 ? g.wrap_delta(y - y0) : 0.0;
            return std::exp(-0.5 * (dx * dx + dy * dy) / (sigma * sigma));
        });
        double m = f.mass();
        if (m > 0) f *= mass / m;
        return f;
    }
    if (kind == "wavepacket") {
        const double lambda = c.get_number("data.lambda_cells", 16) * g.spacing();
        ScalarField f = ScalarField::from_function(g, [&](double x, double) {
            double dx = g.wrap_delta(x - x0);
            double env = std::exp(-0.5 * dx * dx / (sigma * sigma));
            return env * (1.0 + std::cos(2.0 * std::numbers::pi * dx / lambda));
        });
        double m = f.mass();
        if (m > 0) f *= mass / m;
        return f;
    }
    if (kind == "stripes") {
        const double sw = c.get_number("data.stripe_cells", 4) * g.spacing();
        return ScalarField::from_function(g, [&](double x, double) {
            if (x < 0.3 * L || x >= 0.7 * L) return 0.0;
            return static_cast<long>(std::floor((x - 0.3 * L) / sw)) % 2 == 0 ? 1.0 : 0.0;
        });
    }
    throw InvalidParameter("config: field 'data.kind' has unknown value '" + kind + "'");
}

VectorField velocity_from(const RunConfig& c, const Grid& g) {
    const std::string kind = c.get_string("velocity.kind", "uniform");
    if (kind == "file") return read_vector_field(c.get_string("velocity.path", ""), g.dim());
    if (kind == "biot_savart" || kind == "radial_kernel") {
        const std::string wpath = c.get_string("velocity.vorticity_path", "");
        if (wpath.empty())
            throw InvalidParameter(
                "config: field 'velocity.vorticity_path' is required for kernel velocities");
        ScalarField omega = read_field(wpath);
        KernelSpec kernel;
        if (kind == "radial_kernel") {
            kernel.kind = KernelSpec::Kind::custom_radial;
            const double expo = c.get_number("velocity.kernel_exponent", 1.0);
            const double amp = c.get_number("velocity.kernel_amplitude",
                                            1.0 / (2.0 * std::numbers::pi));
            kernel.profile = [expo, amp](double r) { return amp / std::pow(r, expo); };
        }
        return kernel_convolve(kernel, omega);
    }
    FieldFamilySpec spec;
    if (kind == "uniform") spec.kind = FieldFamilySpec::Kind::uniform;
    else if (kind == "shear") spec.kind = FieldFamilySpec::Kind::shear;
    else if (kind == "rotation") spec.kind = FieldFamilySpec::Kind::rotation;
    else if (kind == "oscillatory") spec.kind = FieldFamilySpec::Kind::oscillatory;
    else if (kind == "vortex_patch") spec.kind = FieldFamilySpec::Kind::vortex_patch;
    else throw InvalidParameter("config: field 'velocity.kind' has unknown value '" + kind + "'");
    spec.amplitude = c.get_number("velocity.amplitude", 1.0);
    spec.mode = static_cast<int>(c.get_number("velocity.mode", 1));
    spec.phase = c.get_number("velocity.phase", 0.0);
    spec.center = {c.get_number("velocity.center_x", 0.5 * g.length()),
                   c.get_number("velocity.center_y", 0.5 * g.length())};
    spec.radius = c.get_number("velocity.radius", 0.25 * g.length());
    spec.circulation = c.get_number("velocity.circulation", 1.0);
    return generate_field(spec, g);
}

SolverConfig solver_from(const RunConfig& c) {
    SolverConfig cfg;
    cfg.kappa = c.get_number("solver.kappa", 0.0);
    cfg.t_final = c.get_number("solver.t_final", 1.0);
    cfg.dt = c.get_number("solver.dt", 0.0);
    cfg.scheme = c.get_string("solver.scheme", "explicit") == "imex"
                     ? SolverConfig::Scheme::imex
                     : SolverConfig::Scheme::explicit_euler;
    cfg.cfl_target = c.get_number("solver.cfl", 0.9);
    cfg.lq_exponent = c.get_number("solver.lq_exponent", 2.0);
    cfg.sample_every = static_cast<int>(c.get_number("solver.sample_every", 0));
    return cfg;
}

CostFunction cost_from(const RunConfig& c) {
    const std::string kind = c.get_string("cost.kind", "w1");
    if (kind == "w1") return CostFunction::w1();
    if (kind == "tanh") return CostFunction::tanh_bounded();
    return CostFunction::log_delta(c.get_number("cost.delta", 1e-2));
}

DistanceOptions ot_from(const RunConfig& c) {
    DistanceOptions opt;
    opt.method = c.get_string("ot.method", "exact") == "sinkhorn" ? OtMethod::sinkhorn
                                                                  : OtMethod::exact;
    opt.support_cap = static_cast<std::size_t>(c.get_number("ot.support_cap", 2048));
    opt.reg = c.get_number("ot.reg", 1e-3);
    opt.max_iter = static_cast<int>(c.get_number("ot.max_iter", 20000));
    opt.threshold = c.get_number("ot.threshold", -1.0);
    return opt;
}

void write_echo(const RunConfig& c, const std::string& out_dir) {
    atomic_write_text(out_dir + "/config.json", c.to_json());
}

int run_solve(const RunConfig& c, const RunOptions& opt) {
    Grid g = grid_from(c);
    ScalarField theta0 = datum_from(c, g);
    VectorField u = velocity_from(c, g);
    SolveResult res = solve(theta0, u, solver_from(c));
    atomic_write_text(opt.out_dir + "/diagnostics.csv", res.diagnostics.to_csv());
    write_field(res.theta, opt.out_dir + "/theta_final.fld");
    write_field_csv(res.theta, opt.out_dir + "/theta_final.csv");
    write_echo(c, opt.out_dir);
    return 0;
}

int run_distance(const RunConfig& c, const RunOptions& opt) {
    ScalarField t1 = read_field(c.get_string("distance.theta1", ""));
    ScalarField t2 = read_field(c.get_string("distance.theta2", ""));
    CostFunction cost = cost_from(c);
    DistanceResult res = distance(t1, t2, cost, ot_from(c));

    ordered_json j;
    j["value"] = res.value;
    ordered_json prov;
    prov["method"] = res.provenance.method;
    prov["cost"] = res.provenance.cost_kind;
    prov["delta"] = res.provenance.delta;
    prov["reg"] = res.provenance.reg;
    prov["split_threshold"] = res.provenance.split_threshold;
    prov["rebalance_factor"] = res.provenance.rebalance_factor;
    prov["aggregation_block"] = res.provenance.aggregation_block;
    prov["support_size"] = res.provenance.support_size;
    prov["support_cap"] = res.provenance.support_cap;
    prov["mass_tolerance"] = res.provenance.mass_tolerance;
    prov["duality_gap_tol"] = res.provenance.duality_gap_tol;
    prov["feasibility_tol"] = res.provenance.feasibility_tol;
    prov["cs_tol"] = res.provenance.cs_tol;
    prov["sinkhorn_marginal_tol"] = res.provenance.sinkhorn_marginal_tol;
    j["provenance"] = prov;
    if (res.exact) {
        j["duality_gap"] = res.exact->duality_gap;
        j["feasibility_slack"] = res.exact->feasibility_slack;
        j["complementary_slackness"] = res.exact->complementary_slackness;
        j["pivots"] = res.exact->pivots;
    }
    if (res.entropic) {
        j["debiased_value"] = res.entropic->debiased_value;
        j["iterations"] = res.entropic->iterations;
        j["marginal_violation"] = res.entropic->marginal_violation;
    }
    atomic_write_text(opt.out_dir + "/report.json", j.dump(2) + "\n");

    if (res.exact) {
        std::string plan = "i,j,mass\n";
        char line[96];
        for (const PlanEntry& e : res.exact->plan.entries) {
            std::snprintf(line, sizeof(line), "%d,%d,%.17g\n", e.i, e.j, e.mass);
            plan += line;
        }
        atomic_write_text(opt.out_dir + "/plan.csv", plan);
        std::string pot = "side,index,zeta\n";
        for (std::size_t i = 0; i < res.exact->potential.source_values.size(); ++i) {
            std::snprintf(line, sizeof(line), "source,%zu,%.17g\n", i,
                          res.exact->potential.source_values[i]);
            pot += line;
        }
        for (std::size_t jx = 0; jx < res.exact->potential.target_values.size(); ++jx) {
            std::snprintf(line, sizeof(line), "target,%zu,%.17g\n", jx,
                          res.exact->potential.target_values[jx]);
            pot += line;
        }
        atomic_write_text(opt.out_dir + "/potential.csv", pot);
    }
    write_echo(c, opt.out_dir);
    return 0;
}

int run_experiment(const RunConfig& c, const RunOptions& opt) {
    SweepSpec spec = c.to_sweep_spec();
    if (opt.jobs > 1) spec.jobs = opt.jobs;
    if (opt.seed != 0) spec.seed = opt.seed;
    ExperimentReport rep = run_sweep(spec);
    write_echo(c, opt.out_dir);
    atomic_write_text(opt.out_dir + "/report.json", rep.to_json());
    atomic_write_text(opt.out_dir + "/report.csv", rep.to_csv());
    if (opt.plot_svg && !rep.rows.empty() && !rep.rows.front().values.empty()) {
        // one log-log plot per row column against eps
        for (const auto& [name, first] : rep.rows.front().values) {
            std::vector<std::pair<double, double>> pts;
            for (const auto& row : rep.rows) pts.emplace_back(row.eps, row.get(name));
            atomic_write_text(opt.out_dir + "/plot_" + name + ".svg",
                              svg_loglog_plot(rep.channel + ": " + name + " vs eps", pts, 0.0,
                                              0.0, false));
        }
    }
    return 0;
}

} // namespace

int run_config(const RunConfig& config, const RunOptions& options) {
    std::filesystem::create_directories(options.out_dir);
    if (config.command() == "solve") return run_solve(config, options);
    if (config.command() == "distance") return run_distance(config, options);
    if (config.command() == "experiment") return run_experiment(config, options);
    if (config.command() == "check")
        return run_check_suite(config.get_string("check.suite", "all"));
    throw InvalidParameter("run_config: unknown command " + config.command());
}

// --------------------------------------------------------------------------
// invariant suites
// --------------------------------------------------------------------------

namespace {

struct SuiteState {
    int failures = 0;
    void check(const std::string& name, bool ok, double lhs, double rhs) {
        std::printf("%-44s %s   lhs=%.6g rhs=%.6g\n", name.c_str(), ok ? "ok  " : "FAIL", lhs,
                    rhs);
        if (!ok) ++failures;
    }
};

void suite_conservation(SuiteState& st) {
    Grid g(2, 64, 1.0);
    FieldFamilySpec shear;
    shear.kind = FieldFamilySpec::Kind::shear;
    shear.amplitude = 0.5;
    VectorField u = generate_field(shear, g);
    ScalarField theta0 = ScalarField::from_function(g, [&](double x, double y) {
        double dx = g.wrap_delta(x - 0.5), dy = g.wrap_delta(y - 0.5);
        return std::exp(-40.0 * (dx * dx + dy * dy));
    });
    SolverConfig cfg;
    cfg.kappa = 5e-4;
    cfg.t_final = 0.5;
    SolveResult res = solve(theta0, u, cfg);
    const double drift = std::abs(res.theta.mass() - theta0.mass());
    st.check("conservation.mass_drift", drift <= 1e-12 * std::abs(theta0.mass()), drift,
             1e-12 * theta0.mass());

    const double div_mass = std::abs(upwind_divergence(u, theta0).mass());
    st.check("conservation.upwind_divergence_mass", div_mass <= 1e-12, div_mass, 1e-12);
    const double lap_mass = std::abs(laplacian(theta0).mass());
    st.check("conservation.laplacian_mass", lap_mass <= 1e-12, lap_mass, 1e-12);

    double lq_prev = std::numeric_limits<double>::infinity();
    bool monotone = true;
    for (const auto& row : res.diagnostics.rows) {
        if (row.lq > lq_prev + 1e-10) monotone = false;
        lq_prev = row.lq;
    }
    st.check("conservation.lq_monotone_divfree", monotone, lq_prev,
             res.diagnostics.rows.front().lq);
}

void suite_duality(SuiteState& st) {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double worst_gap = 0.0, worst_feas = 0.0, worst_cs = 0.0;
    for (int rep = 0; rep < 24; ++rep) {
        OtInstance inst;
        inst.dim = 2;
        inst.length = 1.0;
        const int m = 8 + static_cast<int>(unif(rng) * 56);
        const int n = 8 + static_cast<int>(unif(rng) * 56);
        double ma = 0.0, mb = 0.0;
        for (int i = 0; i < m; ++i) {
            inst.src.push_back({unif(rng), unif(rng)});
            inst.a.push_back(0.1 + unif(rng));
            ma += inst.a.back();
        }
        for (int j = 0; j < n; ++j) {
            inst.tgt.push_back({unif(rng), unif(rng)});
            inst.b.push_back(0.1 + unif(rng));
            mb += inst.b.back();
        }
        for (double& v : inst.b) v *= ma / mb;
        const CostFunction costs[3] = {CostFunction::w1(), CostFunction::log_delta(1e-2),
                                       CostFunction::tanh_bounded()};
        ExactOtResult r = exact_ot(inst, costs[rep % 3]);
        worst_gap = std::max(worst_gap, r.duality_gap / (1.0 + r.value));
        worst_feas = std::max(worst_feas, r.feasibility_slack);
        worst_cs = std::max(worst_cs, r.complementary_slackness);
    }
    st.check("duality.gap_relative", worst_gap <= 1e-8, worst_gap, 1e-8);
    st.check("duality.feasibility_slack", worst_feas <= 1e-9, worst_feas, 1e-9);
    st.check("duality.complementary_slackness", worst_cs <= 1e-7, worst_cs, 1e-7);
}

void suite_oracles(SuiteState& st) {
    // exact LP against the 1D cumulative-function formula
    std::mt19937_64 rng(777);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Grid g(1, 128, 1.0);
    double worst = 0.0;
    for (int rep = 0; rep < 8; ++rep) {
        ScalarField mu(g), nu(g);
        for (int i = 32; i < 96; ++i) {
            mu[i] = std::abs(gauss(rng));
            nu[i] = std::abs(gauss(rng));
        }
        double sm = mu.mass(), sn = nu.mass();
        nu *= sm / sn;
        const double oracle = w1_1d_oracle(mu, nu);
        const double lp = distance(mu, nu, CostFunction::w1()).value;
        worst = std::max(worst, std::abs(oracle - lp));
    }
    st.check("oracles.w1_1d_vs_lp", worst <= 1e-8, worst, 1e-8);

    // exact LP against vertex enumeration on 3x3 instances
    std::uniform_real_distribution<double> unif(0.1, 1.0);
    double worst33 = 0.0;
    for (int rep = 0; rep < 16; ++rep) {
        OtInstance inst;
        inst.dim = 2;
        inst.length = 0.0;
        double ma = 0.0, mb = 0.0;
        for (int i = 0; i < 3; ++i) {
            inst.src.push_back({unif(rng), unif(rng)});
            inst.a.push_back(unif(rng));
            ma += inst.a.back();
            inst.tgt.push_back({unif(rng), unif(rng)});
            inst.b.push_back(unif(rng));
            mb += inst.b.back();
        }
        for (double& v : inst.b) v *= ma / mb;
        const CostFunction costs[3] = {CostFunction::w1(), CostFunction::log_delta(1e-1),
                                       CostFunction::tanh_bounded()};
        const CostFunction& cost = costs[rep % 3];
        const double brute = ot_value_by_vertex_enumeration(inst, cost);
        const double lp = exact_ot(inst, cost).value;
        worst33 = std::max(worst33, std::abs(brute - lp));
    }
    st.check("oracles.vertex_enumeration_3x3", worst33 <= 1e-10, worst33, 1e-10);
}

void suite_rates(SuiteState& st) {
    std::vector<std::pair<double, double>> sq, lin;
    for (double e : {1e-1, 3e-2, 1e-2, 3e-3, 1e-3}) {
        sq.emplace_back(e, e * e);
        lin.emplace_back(e, e * (1.0 + 0.01 * std::sin(1.0 / e)));
    }
    LineFit f1 = fit_loglog_rate(sq);
    st.check("rates.exact_square", std::abs(f1.slope - 2.0) <= 1e-9, f1.slope, 2.0);
    LineFit f2 = fit_loglog_rate(lin);
    st.check("rates.perturbed_linear", std::abs(f2.slope - 1.0) <= 0.05, f2.slope, 1.0);
}

} // namespace

int run_check_suite(const std::string& suite) {
    SuiteState st;
    bool known = false;
    if (suite == "conservation" || suite == "all") {
        suite_conservation(st);
        known = true;
    }
    if (suite == "duality" || suite == "all") {
        suite_duality(st);
        known = true;
    }
    if (suite == "oracles" || suite == "all") {
        suite_oracles(st);
        known = true;
    }
    if (suite == "rates" || suite == "all") {
        suite_rates(st);
        known = true;
    }
    if (!known) {
        std::fprintf(stderr, "unknown check suite '%s' (conservation|duality|oracles|rates|all)\n",
                     suite.c_str());
        return 1;
    }
    return st.failures == 0 ? 0 : 1;
}

} // namespace advstab
