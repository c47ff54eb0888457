#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "vdx/gauss.hpp"
#include "vdx/learner.hpp"
#include "vdx/variance.hpp"

using namespace vdx;

namespace {

// Surrogate whose exact partials are the score-function gradient estimators:
// mean of r_i * ln N(a_i | mu, sigma^2) with the batch held fixed.
double surrogate(const RolloutBatch& batch, double mu, double sigma) {
    double sum = 0.0;
    for (size_t i = 0; i < batch.actions.size(); ++i) {
        double z = (batch.actions[i] - mu) / sigma;
        sum += batch.rewards[i] * (-0.5 * z * z - std::log(sigma)
                                   - 0.5 * std::log(2.0 * M_PI));
    }
    return sum / static_cast<double>(batch.actions.size());
}

RolloutBatch fixed_batch(double mu, double sigma, long t, long n, std::uint64_t seed) {
    BanditSchedule s = BanditSchedule::default_two_stage();
    Rng r(seed);
    return sample_batch(mu, sigma, s, t, n, r);
}

}  // namespace

TEST_SUITE("learner") {

TEST_CASE("adam first step moves by the learning rate regardless of scale") {
    AdamParams p;
    for (double g : {1e-3, 1.0, 42.0, 1e12, -5.0}) {
        AdamState st;
        double delta = adam_delta(st, g, p);
        // sqrt(g*g) rounding can overshoot |g| by an ulp once eps is absorbed
        CHECK(std::fabs(delta) <= p.lr * (1.0 + 1e-15));
        CHECK(std::fabs(delta) >= p.lr * (1.0 - 1e-4));
        CHECK((delta > 0) == (g > 0));
        CHECK(st.step == 1);
    }
    // eps damps the step once the gradient is comparable to it
    AdamState tiny;
    CHECK(std::fabs(adam_delta(tiny, 1e-12, p)) < p.lr * 1e-3);
    AdamState st;
    CHECK(adam_delta(st, 0.0, p) == 0.0);
}

TEST_CASE("adam constant gradient keeps unit-rate steps") {
    AdamParams p;
    AdamState st;
    for (int i = 0; i < 100; ++i) {
        double delta = adam_delta(st, 1.0, p);
        CHECK(delta <= p.lr * 1.000001);
        CHECK(delta >= p.lr * 0.9);
    }
    CHECK(st.step == 100);
}

TEST_CASE("adam steps are invariant to gradient scale") {
    AdamParams p;
    std::mt19937 gen(3);
    std::normal_distribution<double> nd;
    AdamState a, b;
    for (int i = 0; i < 50; ++i) {
        double g = nd(gen);
        double da = adam_delta(a, g, p);
        double db = adam_delta(b, 1e6 * g, p);
        if (da != 0.0) CHECK(std::fabs(db / da - 1.0) < 1e-6);
    }
}

TEST_CASE("adam step magnitude is bounded for arbitrary gradient histories") {
    // hard bound lr * sqrt(1 / (1 - beta1^2/beta2)) = lr * sqrt(5.5) for the
    // default (0.9, 0.99) pair; the bias corrections only shrink it
    AdamParams p;
    const double bound = p.lr * 2.36;
    std::mt19937 gen(11);
    std::normal_distribution<double> nd;
    std::uniform_real_distribution<double> mag(-3.0, 3.0);
    for (int h = 0; h < 20; ++h) {
        AdamState st;
        for (int i = 0; i < 200; ++i) {
            double g = nd(gen) * std::pow(10.0, mag(gen));
            CHECK(std::fabs(adam_delta(st, g, p)) <= bound);
        }
    }
    // adversarial geometric history aimed at the bound
    AdamState st;
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        double g = std::pow(std::sqrt(0.99) / 0.9, i);  // grows like (beta2/beta1^2)^(i/2)
        worst = std::max(worst, std::fabs(adam_delta(st, g, p)));
    }
    CHECK(worst <= bound);
    CHECK(worst > p.lr);  // the plain-lr bound genuinely overshoots here
}

TEST_CASE("value ema") {
    CHECK(std::fabs(value_ema_update(0.5, 0.5, 0.05) - 0.5) < 1e-16);
    CHECK(value_ema_update(0.3, 0.8, 1.0) == 0.8);
    double v = 1.0;
    for (int i = 0; i < 100; ++i) v = value_ema_update(v, 0.0, 0.05);
    CHECK(std::fabs(v - 0.0059205292203340254829) < 1e-13);
    CHECK(value_ema_update(0.01, -5.0, 0.5) == 0.0);  // clamped below
    CHECK(value_ema_update(0.9, 10.0, 0.5) == 1.0);   // clamped above
}

TEST_CASE("sigmoid mapping values") {
    SigmoidMapping m;  // k=5, a=1.2, b=0.3, c=0.1
    CHECK(std::fabs(sigmoid_sigma(m, 0.3) - 0.7) < 1e-16);
    CHECK(std::fabs(sigmoid_sigma(m, 0.0) - 1.0810893714323723915) < 1e-12);
    SigmoidMapping steep{100.0, 1.2, 0.3, 0.1};
    CHECK(std::fabs(sigmoid_sigma(steep, 1.0) - 0.1) < 1e-25);
    // extreme arguments neither overflow nor produce nan
    CHECK(std::fabs(sigmoid_sigma(m, -1000.0) - 1.3) < 1e-15);
    CHECK(std::fabs(sigmoid_sigma(m, 1000.0) - 0.1) < 1e-15);
}

TEST_CASE("sigmoid mapping is non-increasing in the value") {
    std::mt19937 gen(19);
    std::uniform_real_distribution<double> uk(0.1, 10.0), ua(0.01, 5.0), ub(-1.0, 2.0),
        uc(0.001, 1.0), uv(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        SigmoidMapping m{uk(gen), ua(gen), ub(gen), uc(gen)};
        double v1 = uv(gen), v2 = uv(gen);
        if (v1 > v2) std::swap(v1, v2);
        CHECK(sigmoid_sigma(m, v1) >= sigmoid_sigma(m, v2));
    }
}

TEST_CASE("sigmoid mapping rejects a fully rectified-away sigma") {
    CHECK_THROWS_AS((void)sigmoid_sigma(SigmoidMapping{5.0, 0.0, 0.3, 0.0}, 0.5),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)sigmoid_sigma(SigmoidMapping{5.0, -1.0, 0.3, -0.2}, 0.5),
                    std::invalid_argument);
    // one active rectifier is enough
    CHECK(sigmoid_sigma(SigmoidMapping{5.0, -1.0, 0.3, 0.1}, 0.5) == 0.1);
}

TEST_CASE("sigmoid gradient matches central differences") {
    const double h = 1e-6;
    auto fd_check = [&](SigmoidMapping m, double v) {
        SigmoidGrad g = sigmoid_sigma_grad(m, v);
        SigmoidMapping mk = m;
        mk.k = m.k + h;
        SigmoidMapping mk2 = m;
        mk2.k = m.k - h;
        CHECK(std::fabs((sigmoid_sigma(mk, v) - sigmoid_sigma(mk2, v)) / (2 * h) - g.dk) < 1e-6);
        SigmoidMapping ma = m, ma2 = m;
        ma.a += h;
        ma2.a -= h;
        CHECK(std::fabs((sigmoid_sigma(ma, v) - sigmoid_sigma(ma2, v)) / (2 * h) - g.da) < 1e-6);
        SigmoidMapping mb = m, mb2 = m;
        mb.b += h;
        mb2.b -= h;
        CHECK(std::fabs((sigmoid_sigma(mb, v) - sigmoid_sigma(mb2, v)) / (2 * h) - g.db) < 1e-6);
        SigmoidMapping mc = m, mc2 = m;
        mc.c += h;
        mc2.c -= h;
        CHECK(std::fabs((sigmoid_sigma(mc, v) - sigmoid_sigma(mc2, v)) / (2 * h) - g.dc) < 1e-6);
    };
    fd_check(SigmoidMapping{}, 0.0);
    fd_check(SigmoidMapping{}, 0.3);
    fd_check(SigmoidMapping{}, 0.9);
    fd_check(SigmoidMapping{2.0, 0.5, -0.2, 0.05}, 0.5);
}

TEST_CASE("sigmoid gradient uses subgradient zero on inactive rectifiers") {
    SigmoidGrad g = sigmoid_sigma_grad(SigmoidMapping{5.0, -0.5, 0.3, 0.1}, 0.5);
    CHECK(g.da == 0.0);
    CHECK(g.dk == 0.0);  // amplitude term is gone entirely
    CHECK(g.db == 0.0);
    CHECK(g.dc == 1.0);
    SigmoidGrad g2 = sigmoid_sigma_grad(SigmoidMapping{5.0, 1.2, 0.3, -0.1}, 0.5);
    CHECK(g2.dc == 0.0);
    CHECK(g2.da > 0.0);
}

TEST_CASE("inverse mapping") {
    InverseMapping m{0.0, 0.01};
    CHECK(m.w_hat() == 1.0);
    InverseMapping m2{std::log(0.01), 0.01};
    CHECK(std::fabs(m2.sigma_for(1.0) - 0.0024197072451914334980) < 1e-15);
    CHECK(std::fabs(m2.sigma_for(1e-3) - 0.24197072451914334980) < 1e-13);
    CHECK(m2.sigma_for(1e-3) == m2.sigma_for(0.005));  // both floored
}

TEST_CASE("score gradients on hand-checkable batches") {
    RolloutBatch b;
    b.actions = {1.0, -1.0};
    b.rewards = {1.0, 0.0};
    b.mean_reward = 0.5;
    CHECK(score_grad_mu(b, 0.0, 1.0) == 0.5);

    RolloutBatch z;
    z.actions = {0.7, -2.0, 3.0};
    z.rewards = {0.0, 0.0, 0.0};
    z.mean_reward = 0.0;
    CHECK(score_grad_mu(z, 0.0, 1.0) == 0.0);
    CHECK(score_grad_log_sigma(z, 0.0, 1.0) == 0.0);

    RolloutBatch one;
    one.actions = {2.0};
    one.rewards = {1.0};
    one.mean_reward = 1.0;
    CHECK(score_grad_mu(one, 0.0, 1.0) == 2.0);
    CHECK(score_grad_log_sigma(one, 0.0, 1.0) == 3.0);  // z^2 - 1 at z = 2

    RolloutBatch sym;  // one sigma away on both sides: ln-sigma gradient cancels
    sym.actions = {1.5, -0.5};
    sym.rewards = {1.0, 1.0};
    sym.mean_reward = 1.0;
    CHECK(score_grad_log_sigma(sym, 0.5, 1.0) == 0.0);

    RolloutBatch empty;
    CHECK_THROWS_AS((void)score_grad_mu(empty, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS((void)score_grad_log_sigma(empty, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("w-log gradient is the ln-sigma gradient at the mapped sigma") {
    RolloutBatch b = fixed_batch(0.0, 1.0, 100, 500, 23);
    InverseMapping m{std::log(0.05), 0.01};
    for (double v : {0.0, 0.02, 0.3}) {
        CHECK(score_grad_wlog(b, 0.0, m, v)
              == score_grad_log_sigma(b, 0.0, m.sigma_for(v)));
    }
}

TEST_CASE("score gradients match finite differences of the surrogate") {
    const double h = 1e-5;
    RolloutBatch b = fixed_batch(0.2, 0.8, 100, 1000, 17);
    REQUIRE(b.mean_reward > 0.0);  // some rewards, or the test is vacuous

    double g_mu = score_grad_mu(b, 0.2, 0.8);
    double fd_mu = (surrogate(b, 0.2 + h, 0.8) - surrogate(b, 0.2 - h, 0.8)) / (2 * h);
    CHECK(std::fabs(fd_mu - g_mu) < 1e-4 * std::max(0.01, std::fabs(g_mu)));

    double g_ls = score_grad_log_sigma(b, 0.2, 0.8);
    double s = std::log(0.8);
    double fd_ls = (surrogate(b, 0.2, std::exp(s + h)) - surrogate(b, 0.2, std::exp(s - h)))
                 / (2 * h);
    CHECK(std::fabs(fd_ls - g_ls) < 1e-4 * std::max(0.01, std::fabs(g_ls)));

    // through the value mapping: sigma(l) = exp(l) / (sqrt(2 pi e) max(v, floor))
    double v_hat = 0.05;
    InverseMapping m{std::log(0.8 * sqrt_two_pi_e * v_hat), 0.01};
    REQUIRE(std::fabs(m.sigma_for(v_hat) - 0.8) < 1e-12);  // batch was sampled here
    double g_wl = score_grad_wlog(b, 0.2, m, v_hat);
    InverseMapping mp = m, mm = m;
    mp.log_w_hat += h;
    mm.log_w_hat -= h;
    double fd_wl = (surrogate(b, 0.2, mp.sigma_for(v_hat))
                    - surrogate(b, 0.2, mm.sigma_for(v_hat))) / (2 * h);
    CHECK(std::fabs(fd_wl - g_wl) < 1e-4 * std::max(0.01, std::fabs(g_wl)));
}

TEST_CASE("variant names round-trip") {
    for (Variant v : {Variant::fixed, Variant::vpg, Variant::vd_inverse, Variant::vd_sigmoid}) {
        CHECK(parse_variant(variant_name(v)) == v);
    }
    CHECK_THROWS_AS((void)parse_variant("bogus"), std::invalid_argument);
}

TEST_CASE("make_policy seeds sigma from the variant's own mapping") {
    LearnerConfig cfg;
    cfg.fixed_sigma = 0.75;
    SigmoidMapping sm;
    PolicyState fx = make_policy(Variant::fixed, 0.0, 1.0, 0.04, sm, 0.0, cfg);
    CHECK(fx.sigma == 0.75);
    PolicyState pg = make_policy(Variant::vpg, 0.0, 1.3, 0.04, sm, 0.0, cfg);
    CHECK(pg.sigma == 1.3);
    CHECK(pg.log_sigma == std::log(1.3));
    PolicyState vi = make_policy(Variant::vd_inverse, 0.0, 1.0,
                                 0.041327313541224929, sm, 0.0, cfg);
    CHECK(vi.sigma == vi.inverse.sigma_for(0.0));
    CHECK(std::fabs(vi.sigma - 1.0) < 1e-14);  // w_hat0 chosen to start at sigma0
    PolicyState vs = make_policy(Variant::vd_sigmoid, 0.0, 1.0, 0.04, sm, 0.0, cfg);
    CHECK(vs.sigma == sigmoid_sigma(sm, 0.0));

    CHECK_THROWS_AS((void)make_policy(Variant::vpg, 0.0, 0.0, 0.04, sm, 0.0, cfg),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)make_policy(Variant::vpg, 0.0, 1.0, 0.0, sm, 0.0, cfg),
                    std::invalid_argument);
}

TEST_CASE("train_step replays exactly: gradients first, then value, then sigma") {
    LearnerConfig cfg;
    BanditSchedule sched = BanditSchedule::default_two_stage();
    SigmoidMapping sm;
    PolicyState st = make_policy(Variant::vd_inverse, 0.0, 1.0,
                                 0.041327313541224929, sm, 0.0, cfg);
    PolicyState before = st;

    Rng r1(99), r2(99);
    StepResult res = train_step(Variant::vd_inverse, st, sched, 1, 128, r1, cfg);
    CHECK(res.finite);

    // manual replay of the documented order
    RolloutBatch batch = sample_batch(before.mu, before.sigma, sched, 1, 128, r2);
    double g_mu = score_grad_mu(batch, before.mu, before.sigma);
    double g_ls = score_grad_log_sigma(batch, before.mu, before.sigma);
    AdamState am = before.adam_mu, aw = before.adam_log_w_hat;
    double mu_next = before.mu + adam_delta(am, g_mu, cfg.adam);
    double lw_next = before.inverse.log_w_hat + adam_delta(aw, g_ls, cfg.adam);
    double v_next = value_ema_update(before.v_hat, batch.mean_reward, cfg.value_alpha);
    InverseMapping mapped{lw_next, cfg.value_floor};

    CHECK(res.mean_reward == batch.mean_reward);
    CHECK(st.mu == mu_next);
    CHECK(st.inverse.log_w_hat == lw_next);
    CHECK(st.v_hat == v_next);
    CHECK(st.sigma == mapped.sigma_for(v_next));
}

TEST_CASE("train_step replays exactly for the sigmoid variant") {
    LearnerConfig cfg;
    BanditSchedule sched = BanditSchedule::default_two_stage();
    SigmoidMapping sm;
    PolicyState st = make_policy(Variant::vd_sigmoid, 0.0, 1.0, 0.04, sm, 0.0, cfg);
    PolicyState before = st;

    Rng r1(7), r2(7);
    train_step(Variant::vd_sigmoid, st, sched, 1, 128, r1, cfg);

    RolloutBatch batch = sample_batch(before.mu, before.sigma, sched, 1, 128, r2);
    double g_ls = score_grad_log_sigma(batch, before.mu, before.sigma);
    SigmoidGrad gd = sigmoid_sigma_grad(before.sigmoid, before.v_hat);
    double scale = g_ls / before.sigma;
    AdamState ak = before.adam_k, aa = before.adam_a, ab = before.adam_b, ac = before.adam_c;
    SigmoidMapping next = before.sigmoid;
    next.k += adam_delta(ak, scale * gd.dk, cfg.adam);
    next.a += adam_delta(aa, scale * gd.da, cfg.adam);
    next.b += adam_delta(ab, scale * gd.db, cfg.adam);
    next.c += adam_delta(ac, scale * gd.dc, cfg.adam);
    double v_next = value_ema_update(before.v_hat, batch.mean_reward, cfg.value_alpha);

    CHECK(st.sigmoid.k == next.k);
    CHECK(st.sigmoid.a == next.a);
    CHECK(st.sigmoid.b == next.b);
    CHECK(st.sigmoid.c == next.c);
    CHECK(st.v_hat == v_next);
    CHECK(st.sigma == sigmoid_sigma(next, v_next));
}

TEST_CASE("fixed variant never moves sigma, vpg keeps sigma = exp(log_sigma)") {
    LearnerConfig cfg;
    BanditSchedule sched = BanditSchedule::default_two_stage();
    SigmoidMapping sm;
    PolicyState fx = make_policy(Variant::fixed, 0.0, 1.0, 0.04, sm, 0.0, cfg);
    PolicyState pg = make_policy(Variant::vpg, 0.0, 1.0, 0.04, sm, 0.0, cfg);
    Rng r(31);
    for (long t = 1; t <= 10; ++t) {
        train_step(Variant::fixed, fx, sched, t, 64, r, cfg);
        CHECK(fx.sigma == cfg.fixed_sigma);
        CHECK(fx.adam_log_sigma.step == 0);
        train_step(Variant::vpg, pg, sched, t, 64, r, cfg);
        CHECK(pg.sigma == std::exp(pg.log_sigma));
    }
    CHECK(fx.mu != 0.0);  // mu does learn under the fixed variant
}

TEST_CASE("freeze_mu pins the mean bitwise") {
    LearnerConfig cfg;
    cfg.freeze_mu = true;
    BanditSchedule sched = BanditSchedule::default_two_stage();
    SigmoidMapping sm;
    PolicyState st = make_policy(Variant::vd_inverse, 0.25, 1.0, 0.04, sm, 0.0, cfg);
    Rng r(5);
    for (long t = 1; t <= 5; ++t) train_step(Variant::vd_inverse, st, sched, t, 64, r, cfg);
    CHECK(st.mu == 0.25);
    CHECK(st.adam_mu.step == 0);
}

TEST_CASE("vd-inverse sigma stays positive through long runs") {
    LearnerConfig cfg;
    BanditSchedule sched = BanditSchedule::default_two_stage();
    SigmoidMapping sm;
    PolicyState st = make_policy(Variant::vd_inverse, 0.0, 1.0,
                                 0.041327313541224929, sm, 0.0, cfg);
    Rng r(77);
    for (long t = 1; t <= 300; ++t) {
        StepResult res = train_step(Variant::vd_inverse, st, sched, t, 64, r, cfg);
        CHECK(res.finite);
        CHECK(st.sigma > 0.0);
        CHECK(st.v_hat >= 0.0);
        CHECK(st.v_hat <= 1.0);
    }
}

TEST_CASE("trace_w_hat reports only the inverse variant") {
    PolicyState st;
    st.inverse.log_w_hat = std::log(0.25);
    CHECK(std::fabs(trace_w_hat(Variant::vd_inverse, st) - 0.25) < 1e-16);
    CHECK(std::isnan(trace_w_hat(Variant::vpg, st)));
    CHECK(std::isnan(trace_w_hat(Variant::fixed, st)));
    CHECK(std::isnan(trace_w_hat(Variant::vd_sigmoid, st)));
}

}  // TEST_SUITE
