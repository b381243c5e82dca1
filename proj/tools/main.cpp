// Command-line front end: parse an experiment config, dispatch to the
// library, and persist results. Exit codes: 0 success, 1 validation
// failure, 2 numerical failure (CFL violation, divergence, non-convergence).

#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "advstab/run_config.hpp"

int main(int argc, char** argv) {
    CLI::App app{"advstab - advection-diffusion stability laboratory"};
    app.require_subcommand(0, 1);

    std::string config_path;
    std::string out_dir = ".";
    int jobs = 1;
    std::uint64_t seed = 0;
    std::string plot = "none";
    app.add_option("--config", config_path, "run configuration file");
    app.add_option("--out", out_dir, "output directory (created if missing)");
    app.add_option("--jobs", jobs, "max concurrent sweep points")->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "override the config seed (0 keeps it)");
    app.add_option("--plot", plot, "plot output: none|svg")
        ->check(CLI::IsMember({"none", "svg"}));

    auto* check_cmd = app.add_subcommand("check", "run a named invariant suite headlessly");
    std::string suite = "all";
    check_cmd->add_option("suite", suite, "conservation|duality|oracles|rates|all");

    CLI11_PARSE(app, argc, argv);

    try {
        if (check_cmd->parsed()) return advstab::run_check_suite(suite);
        if (config_path.empty()) {
            std::fprintf(stderr, "error: --config PATH is required (or use the check subcommand)\n");
            return 1;
        }
        advstab::RunConfig config = advstab::RunConfig::parse_file(config_path);
        advstab::RunOptions options;
        options.out_dir = out_dir;
        options.jobs = jobs;
        options.seed = seed;
        options.plot_svg = plot == "svg";
        return advstab::run_config(config, options);
    } catch (const advstab::InvalidParameter& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const advstab::DimensionMismatch& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const advstab::MassMismatch& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const advstab::CflViolation& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 2;
    } catch (const advstab::SolverDivergence& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 2;
    } catch (const advstab::NoConvergence& e) {
        std::fprintf(stderr, "numerical failure: %s (residual %.3e)\n", e.what(), e.residual);
        return 2;
    } catch (const advstab::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
