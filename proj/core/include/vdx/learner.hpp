#pragma once

#include <string>

#include "vdx/bandit.hpp"
#include "vdx/rng.hpp"

// Policy-gradient learners for the interval bandit: a Gaussian policy whose
// standard deviation is either a free parameter, held fixed, or driven by a
// running value estimate through one of two mappings.

namespace vdx {

// Gradient-ascent Adam.  delta = lr * mhat / (sqrt(vhat) + eps), applied as
// param += delta by the caller.
struct AdamParams {
    double lr = 0.01;
    double beta1 = 0.9;
    double beta2 = 0.99;
    double eps = 1e-8;
};

struct AdamState {
    double m = 0.0;
    double v = 0.0;
    long step = 0;
};

// Advances the moment estimates one step and returns the bias-corrected
// ascent delta for this gradient.
double adam_delta(AdamState& st, double grad, const AdamParams& p);

// EMA of batch mean reward, clamped to [0, 1].
double value_ema_update(double v_hat, double batch_mean, double alpha);

// sigma(v) = max(a,0) / (exp(k (v - b)) + 1) + max(c,0).
// Decreasing in v for k > 0, a > 0: high value squashes exploration toward
// the floor max(c,0).
struct SigmoidMapping {
    double k = 5.0;
    double a = 1.2;
    double b = 0.3;
    double c = 0.1;
};

// Throws std::invalid_argument when both rectified amplitudes are zero
// (the mapped sigma would be 0 and the policy degenerate).
double sigmoid_sigma(const SigmoidMapping& m, double v);

// Partials of sigma w.r.t. the four raw parameters at fixed v.  Rectifiers
// use subgradient 0 when inactive.
struct SigmoidGrad {
    double dk = 0.0;
    double da = 0.0;
    double db = 0.0;
    double dc = 0.0;
};

SigmoidGrad sigmoid_sigma_grad(const SigmoidMapping& m, double v);

// sigma = w_hat / (sqrt(2 pi e) * max(v_hat, value_floor)).  w_hat stays
// positive by living as its logarithm.
struct InverseMapping {
    double log_w_hat = 0.0;
    double value_floor = 0.01;

    double w_hat() const;
    double sigma_for(double v_hat) const;
};

// Monte-Carlo score-function gradients of expected reward for the sampled
// batch, evaluated at the (mu, sigma) the batch was drawn with.  Empty
// batches are rejected.
double score_grad_mu(const RolloutBatch& batch, double mu, double sigma);
// Gradient with respect to ln sigma.
double score_grad_log_sigma(const RolloutBatch& batch, double mu, double sigma);
// Gradient with respect to ln w_hat.  sigma is proportional to w_hat, so
// d ln(sigma) / d ln(w_hat) = 1 and this equals score_grad_log_sigma at the
// mapped sigma.
double score_grad_wlog(const RolloutBatch& batch, double mu, const InverseMapping& m,
                       double v_hat);

enum class Variant {
    fixed,       // sigma pinned to a constant; only mu learns
    vpg,         // mu and ln sigma both learned directly
    vd_inverse,  // sigma from InverseMapping(v_hat), ln w_hat learned
    vd_sigmoid,  // sigma from SigmoidMapping(v_hat), its four parameters learned
};

const char* variant_name(Variant v);
// Accepts the names produced by variant_name; throws std::invalid_argument otherwise.
Variant parse_variant(const std::string& name);

struct LearnerConfig {
    AdamParams adam;
    double value_alpha = 0.05;
    double value_floor = 0.01;
    double fixed_sigma = 1.0;
    bool freeze_mu = false;
};

struct PolicyState {
    double mu = 0.0;
    double sigma = 1.0;      // stddev the NEXT batch will be sampled with
    double log_sigma = 0.0;  // vpg parameter
    InverseMapping inverse;  // vd_inverse parameters
    SigmoidMapping sigmoid;  // vd_sigmoid parameters
    double v_hat = 0.0;

    AdamState adam_mu, adam_log_sigma, adam_log_w_hat;
    AdamState adam_k, adam_a, adam_b, adam_c;
};

// Initial state with sigma set consistently with the variant's own mapping
// at v_hat0: vpg samples at sigma0, vd_inverse at the sigma implied by
// w_hat0, vd_sigmoid at the sigma implied by its initial parameters, fixed
// at cfg.fixed_sigma.
PolicyState make_policy(Variant variant, double mu0, double sigma0, double w_hat0,
                        const SigmoidMapping& mapping, double v_hat0,
                        const LearnerConfig& cfg);

struct StepResult {
    double mean_reward = 0.0;
    bool finite = true;  // false once any learned quantity stops being finite
};

// One iteration: sample a batch at the current (mu, sigma), take Adam ascent
// steps on the variant's parameters using gradients evaluated at the sampling
// point, then update the value estimate, then refresh sigma from the mapping
// so the next batch sees the new value.
StepResult train_step(Variant variant, PolicyState& st, const BanditSchedule& schedule,
                      long t, long n, Rng& rng, const LearnerConfig& cfg);

// w_hat as reported in traces: exp(log_w_hat) for vd_inverse, NaN otherwise.
double trace_w_hat(Variant variant, const PolicyState& st);

}  // namespace vdx
