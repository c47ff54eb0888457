#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "vdx/bandit.hpp"
#include "vdx/learner.hpp"

// Experiment configuration: built-in defaults, optionally overlaid by a JSON
// file whose top-level sections mirror the CLI subcommands.  Unknown keys are
// rejected so a typo cannot silently fall back to a default.

namespace vdx {

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BanditConfig {
    std::vector<std::string> variants{"fixed", "vpg", "vd-inverse", "vd-sigmoid"};
    std::vector<Stage> stages;  // empty means the default two-stage schedule
    long batch_size = 128;
    long iterations = 4000;
    std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
    AdamParams adam;
    double value_alpha = 0.05;
    double value_floor = 0.01;
    double mu0 = 0.0;
    double sigma0 = 1.0;
    // Chosen so the first batch is sampled at sigma0: w_hat0 = sqrt(2 pi e) *
    // value_floor * sigma0 with the defaults above.
    double w_hat0 = 0.041327313541224929;
    SigmoidMapping sigmoid;
    double clip_lo = -1.0;  // entropy diagnostic bounds; actions are never clipped
    double clip_hi = 1.0;

    BanditSchedule schedule() const;
};

struct ConvergeConfig {
    double d = 3.0;
    double w_true = 0.01;
    long batch_size = 10000;
    long iterations = 500;
    std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
    AdamParams adam;
    double value_alpha = 0.05;
    double value_floor = 1e-4;
    double mu0 = 0.0;
    double sigma0 = 1.0;
    double w_hat0 = 1e-3;
    double clip_lo = -1.0;
    double clip_hi = 1.0;
};

struct ConvergeSweepConfig {
    std::vector<double> d_values{1.0, 2.0, 3.0, 4.0, 5.0};
};

struct MdpSweepConfig {
    double w = 0.2;
    std::vector<double> d_grid{1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 4.5, 5.0};
    std::vector<double> alphas{0.8, 0.9, 0.95};
    std::vector<double> hdr_d{1.0, 2.0};
    std::vector<std::string> profiles{"boxcar", "triangular", "gaussian-bump"};
    std::string profile_file;  // optional extra profile loaded from disk
};

struct EntropyConfig {
    std::vector<double> mu_grid{-2.0, -0.5, 0.0, 0.5, 2.0};
    std::vector<double> sigma_grid{0.05, 0.2, 0.5, 1.0, 2.0};
    double clip_lo = -1.0;
    double clip_hi = 1.0;
};

struct VerifyConfig {
    double tol_scale = 1.0;
};

struct ExperimentConfig {
    BanditConfig bandit;
    ConvergeConfig converge;
    ConvergeSweepConfig converge_sweep;
    MdpSweepConfig mdp_sweep;
    EntropyConfig entropy;
    VerifyConfig verify;
    std::string out_dir = "out";
};

ExperimentConfig default_config();

// Parses a JSON document (see README for the schema).  Every present key
// overrides the default; absent keys keep it.  Throws config_error on unknown
// keys, wrong types, or values violating the invariants below.
ExperimentConfig parse_config_json(const std::string& text);

// Reads and parses a config file; file errors surface as config_error with
// the path in the message.
ExperimentConfig load_config(const std::string& path);

// Invariant checks shared by defaults, JSON loading, and CLI overrides.
// iterations >= 0 (0 produces a header-only trace), batch_size >= 1, seeds
// nonempty, sigma0/w_hat0 > 0, alpha in (0,1], floor > 0, clip_lo < clip_hi.
void validate(const ExperimentConfig& cfg);

}  // namespace vdx
