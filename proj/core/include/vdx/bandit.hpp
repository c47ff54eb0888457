#pragma once

// Non-stationary continuous bandit: a scalar action drawn from a Gaussian
// policy earns reward 1 inside the active stage's closed interval, else 0.

#include <vector>

#include "vdx/rng.hpp"

namespace vdx {

struct Stage {
    long t_start;      // inclusive
    long t_end;        // inclusive
    double reward_lo;  // closed interval endpoints, reward_lo < reward_hi
    double reward_hi;
};

// Contiguous, non-overlapping stages covering [t_start of first, t_end of
// last]. Validated on construction; throws std::invalid_argument.
class BanditSchedule {
public:
    explicit BanditSchedule(std::vector<Stage> stages);

    // Stage I: t in [1, 2000] rewards [-10, -1]; stage II: t in [2001, 4000]
    // rewards [1, 10].
    static BanditSchedule default_two_stage();

    const std::vector<Stage>& stages() const { return stages_; }
    long t_begin() const { return stages_.front().t_start; }
    long t_end() const { return stages_.back().t_end; }

    // Throws std::out_of_range for t outside every stage.
    const Stage& stage_for(long t) const;

private:
    std::vector<Stage> stages_;
};

// 1 if a lies in the active stage's closed interval (endpoints included).
double reward(const BanditSchedule& schedule, long t, double a);

struct RolloutBatch {
    std::vector<double> actions;
    std::vector<double> rewards;  // each 0 or 1
    double mean_reward;
};

// n iid draws a_i ~ N(mu, sigma^2) at time t, unclipped, scored against the
// schedule. Deterministic given the rng state; consumes the rng via
// Rng::gaussian only. Throws std::invalid_argument if sigma <= 0 or n < 1.
RolloutBatch sample_batch(double mu, double sigma, const BanditSchedule& schedule,
                          long t, long n, Rng& rng);

}  // namespace vdx
