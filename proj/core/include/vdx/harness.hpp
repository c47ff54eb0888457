#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "vdx/config.hpp"
#include "vdx/learner.hpp"

// Experiment drivers: multi-seed runs and their CSV trace/summary files.
// Seeds always execute (and are written) in ascending order, so identical
// configs produce byte-identical files.

namespace vdx {

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TraceRow {
    std::uint64_t seed = 0;
    long iteration = 0;
    Variant variant = Variant::fixed;
    double mean_reward = 0.0;  // of the batch sampled this iteration
    double mu = 0.0;           // post-update parameters
    double sigma = 0.0;
    double w_hat = 0.0;  // NaN when the variant has no w_hat
    double v_hat = 0.0;
    double clipped_entropy = 0.0;  // recomputed from this row's mu, sigma
};

struct SeedRun {
    std::vector<TraceRow> rows;
    bool diverged = false;  // true if a non-finite parameter cut the run short
};

// One seed of the two-stage bandit under the given variant.  On divergence
// the offending iteration is still recorded (non-finite fields flag it) and
// the run stops there.
SeedRun run_bandit_seed(const BanditConfig& cfg, Variant variant, std::uint64_t seed);

// One seed of the stationary convergence run: mean frozen at mu0, interval
// [mu0 + d, mu0 + d + w_true], variant vd-inverse.
SeedRun run_converge_seed(const ConvergeConfig& cfg, std::uint64_t seed);

// Percentile by linear interpolation at rank (n-1)*q over a nonempty sample.
double percentile(std::vector<double> xs, double q);

// Fixed "%.17g" rendering for every numeric CSV field: round-trips doubles
// exactly and is byte-stable across runs.
std::string fmt17(double x);

// Writers.  Each creates out_dir if needed and reports failures as io_error
// with the path.  See README for the file formats.
//
// bandit_trace.csv + bandit_summary.csv (per-iteration cross-seed p25/p50/p75)
void run_bandit(const BanditConfig& cfg, const std::string& out_dir);
// converge_trace.csv (trace columns plus a constant sigma_star_ref column)
void run_convergence(const ConvergeConfig& cfg, const std::string& out_dir);
// converge_sweep.csv: one row per d with cross-seed median finals
void run_convergence_sweep(const ConvergeSweepConfig& sweep, const ConvergeConfig& base,
                           const std::string& out_dir);
// mdp_monotonicity.csv + mdp_hdr.csv (profiles unit-mass normalized for the
// HDR bound, whose premise is total mass <= 1)
void run_mdp_sweep(const MdpSweepConfig& cfg, const std::string& out_dir);
// entropy_table.csv over the configured (mu, sigma) grid
void run_entropy_table(const EntropyConfig& cfg, const std::string& out_dir);

}  // namespace vdx
