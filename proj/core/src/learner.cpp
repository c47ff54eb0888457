#include "vdx/learner.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "vdx/variance.hpp"

namespace vdx {

double adam_delta(AdamState& st, double grad, const AdamParams& p) {
    st.step += 1;
    st.m = p.beta1 * st.m + (1.0 - p.beta1) * grad;
    st.v = p.beta2 * st.v + (1.0 - p.beta2) * grad * grad;
    double mhat = st.m / (1.0 - std::pow(p.beta1, static_cast<double>(st.step)));
    double vhat = st.v / (1.0 - std::pow(p.beta2, static_cast<double>(st.step)));
    return p.lr * mhat / (std::sqrt(vhat) + p.eps);
}

double value_ema_update(double v_hat, double batch_mean, double alpha) {
    double v = (1.0 - alpha) * v_hat + alpha * batch_mean;
    if (v < 0.0) v = 0.0;
    if (v > 1.0) v = 1.0;
    return v;
}

namespace {

// Logistic 1/(exp(x)+1) without overflow for large |x|.
double inv_one_plus_exp(double x) {
    if (x > 0.0) {
        double e = std::exp(-x);
        return e / (1.0 + e);
    }
    return 1.0 / (1.0 + std::exp(x));
}

void require_nonempty(const RolloutBatch& batch) {
    if (batch.actions.empty()) throw std::invalid_argument("score gradient: empty batch");
}

}  // namespace

double sigmoid_sigma(const SigmoidMapping& m, double v) {
    double amp = m.a > 0.0 ? m.a : 0.0;
    double floor = m.c > 0.0 ? m.c : 0.0;
    if (amp == 0.0 && floor == 0.0)
        throw std::invalid_argument("sigmoid_sigma: both rectified terms are zero");
    return amp * inv_one_plus_exp(m.k * (v - m.b)) + floor;
}

SigmoidGrad sigmoid_sigma_grad(const SigmoidMapping& m, double v) {
    double amp = m.a > 0.0 ? m.a : 0.0;
    double s = inv_one_plus_exp(m.k * (v - m.b));
    double bell = s * (1.0 - s);  // = E/(E+1)^2, overflow-free
    SigmoidGrad g;
    g.dk = -amp * (v - m.b) * bell;
    g.db = amp * m.k * bell;
    g.da = m.a > 0.0 ? s : 0.0;
    g.dc = m.c > 0.0 ? 1.0 : 0.0;
    return g;
}

double InverseMapping::w_hat() const { return std::exp(log_w_hat); }

double InverseMapping::sigma_for(double v_hat) const {
    return inverse_value_sigma(w_hat(), v_hat, value_floor);
}

double score_grad_mu(const RolloutBatch& batch, double mu, double sigma) {
    require_nonempty(batch);
    double sum = 0.0;
    size_t n = batch.actions.size();
    for (size_t i = 0; i < n; ++i)
        sum += batch.rewards[i] * (batch.actions[i] - mu);
    return sum / (sigma * sigma * static_cast<double>(n));
}

double score_grad_log_sigma(const RolloutBatch& batch, double mu, double sigma) {
    require_nonempty(batch);
    double sum = 0.0;
    size_t n = batch.actions.size();
    for (size_t i = 0; i < n; ++i) {
        double z = (batch.actions[i] - mu) / sigma;
        sum += batch.rewards[i] * (z * z - 1.0);
    }
    return sum / static_cast<double>(n);
}

double score_grad_wlog(const RolloutBatch& batch, double mu, const InverseMapping& m,
                       double v_hat) {
    return score_grad_log_sigma(batch, mu, m.sigma_for(v_hat));
}

const char* variant_name(Variant v) {
    switch (v) {
        case Variant::fixed: return "fixed";
        case Variant::vpg: return "vpg";
        case Variant::vd_inverse: return "vd-inverse";
        case Variant::vd_sigmoid: return "vd-sigmoid";
    }
    return "?";
}

Variant parse_variant(const std::string& name) {
    if (name == "fixed") return Variant::fixed;
    if (name == "vpg") return Variant::vpg;
    if (name == "vd-inverse") return Variant::vd_inverse;
    if (name == "vd-sigmoid") return Variant::vd_sigmoid;
    throw std::invalid_argument("unknown variant: " + name);
}

PolicyState make_policy(Variant variant, double mu0, double sigma0, double w_hat0,
                        const SigmoidMapping& mapping, double v_hat0,
                        const LearnerConfig& cfg) {
    if (!(sigma0 > 0.0)) throw std::invalid_argument("make_policy: sigma0 must be > 0");
    if (!(w_hat0 > 0.0)) throw std::invalid_argument("make_policy: w_hat0 must be > 0");
    PolicyState st;
    st.mu = mu0;
    st.log_sigma = std::log(sigma0);
    st.inverse.log_w_hat = std::log(w_hat0);
    st.inverse.value_floor = cfg.value_floor;
    st.sigmoid = mapping;
    st.v_hat = v_hat0;
    switch (variant) {
        case Variant::fixed: st.sigma = cfg.fixed_sigma; break;
        case Variant::vpg: st.sigma = sigma0; break;
        case Variant::vd_inverse: st.sigma = st.inverse.sigma_for(v_hat0); break;
        case Variant::vd_sigmoid: st.sigma = sigmoid_sigma(mapping, v_hat0); break;
    }
    return st;
}

StepResult train_step(Variant variant, PolicyState& st, const BanditSchedule& schedule,
                      long t, long n, Rng& rng, const LearnerConfig& cfg) {
    RolloutBatch batch = sample_batch(st.mu, st.sigma, schedule, t, n, rng);

    // Gradients at the sampling point, before any parameter moves.
    double g_mu = score_grad_mu(batch, st.mu, st.sigma);
    double g_ls = score_grad_log_sigma(batch, st.mu, st.sigma);

    if (!cfg.freeze_mu) st.mu += adam_delta(st.adam_mu, g_mu, cfg.adam);

    switch (variant) {
        case Variant::fixed:
            break;
        case Variant::vpg:
            st.log_sigma += adam_delta(st.adam_log_sigma, g_ls, cfg.adam);
            break;
        case Variant::vd_inverse:
            // d ln(sigma) / d ln(w_hat) = 1, so g_ls is already the w-log gradient.
            st.inverse.log_w_hat += adam_delta(st.adam_log_w_hat, g_ls, cfg.adam);
            break;
        case Variant::vd_sigmoid: {
            // Mapping partials at the v_hat that produced the sampling sigma.
            SigmoidGrad gd = sigmoid_sigma_grad(st.sigmoid, st.v_hat);
            double scale = g_ls / st.sigma;
            st.sigmoid.k += adam_delta(st.adam_k, scale * gd.dk, cfg.adam);
            st.sigmoid.a += adam_delta(st.adam_a, scale * gd.da, cfg.adam);
            st.sigmoid.b += adam_delta(st.adam_b, scale * gd.db, cfg.adam);
            st.sigmoid.c += adam_delta(st.adam_c, scale * gd.dc, cfg.adam);
            break;
        }
    }

    // Value learns from this batch only after the policy step consumed it.
    st.v_hat = value_ema_update(st.v_hat, batch.mean_reward, cfg.value_alpha);

    switch (variant) {
        case Variant::fixed: st.sigma = cfg.fixed_sigma; break;
        case Variant::vpg: st.sigma = std::exp(st.log_sigma); break;
        case Variant::vd_inverse: st.sigma = st.inverse.sigma_for(st.v_hat); break;
        case Variant::vd_sigmoid: st.sigma = sigmoid_sigma(st.sigmoid, st.v_hat); break;
    }

    bool finite = std::isfinite(st.mu) && std::isfinite(st.sigma) && st.sigma > 0.0 &&
                  std::isfinite(st.v_hat);
    if (variant == Variant::vpg) finite = finite && std::isfinite(st.log_sigma);
    if (variant == Variant::vd_inverse) finite = finite && std::isfinite(st.inverse.log_w_hat);
    if (variant == Variant::vd_sigmoid)
        finite = finite && std::isfinite(st.sigmoid.k) && std::isfinite(st.sigmoid.a) &&
                 std::isfinite(st.sigmoid.b) && std::isfinite(st.sigmoid.c);

    return {batch.mean_reward, finite};
}

double trace_w_hat(Variant variant, const PolicyState& st) {
    if (variant == Variant::vd_inverse) return st.inverse.w_hat();
    return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace vdx
