// vdx: experiment and verification front end.
//
//   vdx <subcommand> [--config <path>] [--seeds a,b,c] [--out <dir>]
//
// Subcommands: verify | bandit | converge | converge-sweep | mdp-sweep |
// entropy.  Exit codes: 0 success, 1 verification failure, 2 config or I/O
// error.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vdx/config.hpp"
#include "vdx/harness.hpp"
#include "vdx/verify.hpp"

namespace {

int do_verify(const vdx::ExperimentConfig& cfg) {
    std::vector<vdx::CheckResult> results = vdx::run_verify({cfg.verify.tol_scale, {}});
    for (const auto& r : results)
        std::printf("%s %s measured=%.6g tolerance=%.6g\n", r.pass ? "PASS" : "FAIL",
                    r.name.c_str(), r.measured, r.tolerance);
    std::error_code ec;
    std::filesystem::create_directories(cfg.out_dir, ec);
    if (ec)
        throw vdx::io_error("cannot create directory " + cfg.out_dir + ": " + ec.message());
    std::string report = cfg.out_dir + "/verify_report.txt";
    vdx::write_verify_report(results, report);
    int failed = 0;
    for (const auto& r : results)
        if (!r.pass) ++failed;
    std::printf("%zu checks, %d failed; report: %s\n", results.size(), failed,
                report.c_str());
    return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"interval-bandit exploration experiments"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::vector<std::uint64_t> seeds;
    double tol_scale = 0.0;  // 0 = not given

    auto add_common = [&](CLI::App* sub, bool with_seeds) {
        sub->add_option("--config", config_path, "JSON config file (defaults built in)");
        sub->add_option("--out", out_dir, "output directory (overrides config out_dir)");
        if (with_seeds)
            sub->add_option("--seeds", seeds, "comma-separated seed list override")
                ->delimiter(',');
    };

    CLI::App* verify = app.add_subcommand("verify", "run the self-check suite");
    add_common(verify, false);
    verify->add_option("--tol-scale", tol_scale, "scale every check tolerance")
        ->check(CLI::PositiveNumber);

    CLI::App* bandit =
        app.add_subcommand("bandit", "two-stage bandit runs; trace + summary CSV");
    add_common(bandit, true);

    CLI::App* converge =
        app.add_subcommand("converge", "stationary width-learning run; trace CSV");
    add_common(converge, true);

    CLI::App* converge_sweep =
        app.add_subcommand("converge-sweep", "width-learning finals across distances");
    add_common(converge_sweep, true);

    CLI::App* mdp_sweep =
        app.add_subcommand("mdp-sweep", "profile sweep: monotonicity table + clipping bound");
    add_common(mdp_sweep, false);

    CLI::App* entropy =
        app.add_subcommand("entropy", "clipped-entropy table over a (mu, sigma) grid");
    add_common(entropy, false);

    CLI11_PARSE(app, argc, argv);

    try {
        vdx::ExperimentConfig cfg =
            config_path.empty() ? vdx::default_config() : vdx::load_config(config_path);
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (!seeds.empty()) {
            cfg.bandit.seeds = seeds;
            cfg.converge.seeds = seeds;
        }
        if (tol_scale > 0.0) cfg.verify.tol_scale = tol_scale;
        vdx::validate(cfg);

        if (verify->parsed()) return do_verify(cfg);
        if (bandit->parsed()) {
            vdx::run_bandit(cfg.bandit, cfg.out_dir);
            std::printf("wrote %s/bandit_trace.csv and %s/bandit_summary.csv\n",
                        cfg.out_dir.c_str(), cfg.out_dir.c_str());
        } else if (converge->parsed()) {
            vdx::run_convergence(cfg.converge, cfg.out_dir);
            std::printf("wrote %s/converge_trace.csv\n", cfg.out_dir.c_str());
        } else if (converge_sweep->parsed()) {
            vdx::run_convergence_sweep(cfg.converge_sweep, cfg.converge, cfg.out_dir);
            std::printf("wrote %s/converge_sweep.csv\n", cfg.out_dir.c_str());
        } else if (mdp_sweep->parsed()) {
            vdx::run_mdp_sweep(cfg.mdp_sweep, cfg.out_dir);
            std::printf("wrote %s/mdp_monotonicity.csv and %s/mdp_hdr.csv\n",
                        cfg.out_dir.c_str(), cfg.out_dir.c_str());
        } else if (entropy->parsed()) {
            vdx::run_entropy_table(cfg.entropy, cfg.out_dir);
            std::printf("wrote %s/entropy_table.csv\n", cfg.out_dir.c_str());
        }
        return 0;
    } catch (const vdx::config_error& e) {
        std::cerr << e.what() << '\n';
        return 2;
    } catch (const vdx::io_error& e) {
        std::cerr << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
