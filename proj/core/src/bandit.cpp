#include "vdx/bandit.hpp"

#include <stdexcept>

namespace vdx {

BanditSchedule::BanditSchedule(std::vector<Stage> stages) : stages_(std::move(stages)) {
    if (stages_.empty()) throw std::invalid_argument("BanditSchedule: no stages");
    for (size_t i = 0; i < stages_.size(); ++i) {
        const Stage& s = stages_[i];
        if (s.t_start > s.t_end) throw std::invalid_argument("BanditSchedule: t_start > t_end");
        if (!(s.reward_lo < s.reward_hi))
            throw std::invalid_argument("BanditSchedule: reward_lo must be < reward_hi");
        if (i > 0 && s.t_start != stages_[i - 1].t_end + 1)
            throw std::invalid_argument("BanditSchedule: stages must be contiguous and non-overlapping");
    }
}

BanditSchedule BanditSchedule::default_two_stage() {
    return BanditSchedule({{1, 2000, -10.0, -1.0}, {2001, 4000, 1.0, 10.0}});
}

const Stage& BanditSchedule::stage_for(long t) const {
    for (const Stage& s : stages_)
        if (t >= s.t_start && t <= s.t_end) return s;
    throw std::out_of_range("BanditSchedule: t outside every stage");
}

double reward(const BanditSchedule& schedule, long t, double a) {
    const Stage& s = schedule.stage_for(t);
    return (a >= s.reward_lo && a <= s.reward_hi) ? 1.0 : 0.0;
}

RolloutBatch sample_batch(double mu, double sigma, const BanditSchedule& schedule,
                          long t, long n, Rng& rng) {
    if (!(sigma > 0.0)) throw std::invalid_argument("sample_batch: sigma must be > 0");
    if (n < 1) throw std::invalid_argument("sample_batch: n must be >= 1");
    const Stage& s = schedule.stage_for(t);
    RolloutBatch batch;
    batch.actions.reserve(n);
    batch.rewards.reserve(n);
    double sum = 0.0;
    for (long i = 0; i < n; ++i) {
        double a = mu + sigma * rng.gaussian();
        double r = (a >= s.reward_lo && a <= s.reward_hi) ? 1.0 : 0.0;
        batch.actions.push_back(a);
        batch.rewards.push_back(r);
        sum += r;
    }
    batch.mean_reward = sum / static_cast<double>(n);
    return batch;
}

}  // namespace vdx
