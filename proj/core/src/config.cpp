#include "vdx/config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace vdx {

using nlohmann::json;

BanditSchedule BanditConfig::schedule() const {
    if (stages.empty()) return BanditSchedule::default_two_stage();
    return BanditSchedule(stages);
}

ExperimentConfig default_config() { return ExperimentConfig{}; }

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw config_error("config: " + where + ": " + what);
}

double as_number(const json& j, const std::string& where) {
    if (!j.is_number()) fail(where, "expected a number");
    return j.get<double>();
}

long as_integer(const json& j, const std::string& where) {
    if (!j.is_number_integer()) fail(where, "expected an integer");
    return j.get<long>();
}

std::string as_string(const json& j, const std::string& where) {
    if (!j.is_string()) fail(where, "expected a string");
    return j.get<std::string>();
}

std::vector<double> as_number_list(const json& j, const std::string& where) {
    if (!j.is_array()) fail(where, "expected an array of numbers");
    std::vector<double> out;
    for (const auto& e : j) out.push_back(as_number(e, where));
    return out;
}

std::vector<std::uint64_t> as_seed_list(const json& j, const std::string& where) {
    if (!j.is_array()) fail(where, "expected an array of integers");
    std::vector<std::uint64_t> out;
    for (const auto& e : j) {
        if (!e.is_number_unsigned() && !e.is_number_integer())
            fail(where, "expected an array of integers");
        long long v = e.get<long long>();
        if (v < 0) fail(where, "seeds must be nonnegative");
        out.push_back(static_cast<std::uint64_t>(v));
    }
    return out;
}

std::vector<std::string> as_string_list(const json& j, const std::string& where) {
    if (!j.is_array()) fail(where, "expected an array of strings");
    std::vector<std::string> out;
    for (const auto& e : j) out.push_back(as_string(e, where));
    return out;
}

void parse_adam(const json& j, const std::string& where, AdamParams& adam) {
    if (!j.is_object()) fail(where, "expected an object");
    for (const auto& [key, val] : j.items()) {
        std::string loc = where + "." + key;
        if (key == "lr") adam.lr = as_number(val, loc);
        else if (key == "beta1") adam.beta1 = as_number(val, loc);
        else if (key == "beta2") adam.beta2 = as_number(val, loc);
        else if (key == "eps") adam.eps = as_number(val, loc);
        else fail(loc, "unknown key");
    }
}

void parse_sigmoid(const json& j, const std::string& where, SigmoidMapping& m) {
    if (!j.is_object()) fail(where, "expected an object");
    for (const auto& [key, val] : j.items()) {
        std::string loc = where + "." + key;
        if (key == "k") m.k = as_number(val, loc);
        else if (key == "a") m.a = as_number(val, loc);
        else if (key == "b") m.b = as_number(val, loc);
        else if (key == "c") m.c = as_number(val, loc);
        else fail(loc, "unknown key");
    }
}

std::vector<Stage> parse_stages(const json& j, const std::string& where) {
    if (!j.is_array()) fail(where, "expected an array of stage objects");
    std::vector<Stage> out;
    for (const auto& e : j) {
        if (!e.is_object()) fail(where, "expected an array of stage objects");
        Stage s{0, 0, 0.0, 0.0};
        bool have_start = false, have_end = false, have_lo = false, have_hi = false;
        for (const auto& [key, val] : e.items()) {
            std::string loc = where + "." + key;
            if (key == "t_start") { s.t_start = as_integer(val, loc); have_start = true; }
            else if (key == "t_end") { s.t_end = as_integer(val, loc); have_end = true; }
            else if (key == "reward_lo") { s.reward_lo = as_number(val, loc); have_lo = true; }
            else if (key == "reward_hi") { s.reward_hi = as_number(val, loc); have_hi = true; }
            else fail(loc, "unknown key");
        }
        if (!have_start || !have_end || !have_lo || !have_hi)
            fail(where, "stage needs t_start, t_end, reward_lo, reward_hi");
        out.push_back(s);
    }
    return out;
}

void parse_bandit(const json& j, BanditConfig& c) {
    if (!j.is_object()) fail("bandit", "expected an object");
    for (const auto& [key, val] : j.items()) {
        std::string loc = "bandit." + key;
        if (key == "variants") c.variants = as_string_list(val, loc);
        else if (key == "stages") c.stages = parse_stages(val, loc);
        else if (key == "batch_size") c.batch_size = as_integer(val, loc);
        else if (key == "iterations") c.iterations = as_integer(val, loc);
        else if (key == "seeds") c.seeds = as_seed_list(val, loc);
        else if (key == "adam") parse_adam(val, loc, c.adam);
        else if (key == "value_alpha") c.value_alpha = as_number(val, loc);
        else if (key == "value_floor") c.value_floor = as_number(val, loc);
        else if (key == "mu0") c.mu0 = as_number(val, loc);
        else if (key == "sigma0") c.sigma0 = as_number(val, loc);
        else if (key == "w_hat0") c.w_hat0 = as_number(val, loc);
        else if (key == "sigmoid") parse_sigmoid(val, loc, c.sigmoid);
        else if (key == "clip_lo") c.clip_lo = as_number(val, loc);
        else if (key == "clip_hi") c.clip_hi = as_number(val, loc);
        else fail(loc, "unknown key");
    }
}

void parse_converge(const json& j, ConvergeConfig& c) {
    if (!j.is_object()) fail("converge", "expected an object");
    for (const auto& [key, val] : j.items()) {
        std::string loc = "converge." + key;
        if (key == "d") c.d = as_number(val, loc);
        else if (key == "w_true") c.w_true = as_number(val, loc);
        else if (key == "batch_size") c.batch_size = as_integer(val, loc);
        else if (key == "iterations") c.iterations = as_integer(val, loc);
        else if (key == "seeds") c.seeds = as_seed_list(val, loc);
        else if (key == "adam") parse_adam(val, loc, c.adam);
        else if (key == "value_alpha") c.value_alpha = as_number(val, loc);
        else if (key == "value_floor") c.value_floor = as_number(val, loc);
        else if (key == "mu0") c.mu0 = as_number(val, loc);
        else if (key == "sigma0") c.sigma0 = as_number(val, loc);
        else if (key == "w_hat0") c.w_hat0 = as_number(val, loc);
        else if (key == "clip_lo") c.clip_lo = as_number(val, loc);
        else if (key == "clip_hi") c.clip_hi = as_number(val, loc);
        else fail(loc, "unknown key");
    }
}

void parse_converge_sweep(const json& j, ConvergeSweepConfig& c) {
    if (!j.is_object()) fail("converge_sweep", "expected an object");
    for (const auto& [key, val] : j.items()) {
        std::string loc = "converge_sweep." + key;
        if (key == "d_values") c.d_values = as_number_list(val, loc);
        else fail(loc, "unknown key");
    }
}

void parse_mdp_sweep(const json& j, MdpSweepConfig& c) {
    if (!j.is_object()) fail("mdp_sweep", "expected an object");
    for (const auto& [key, val] : j.items()) {
        std::string loc = "mdp_sweep." + key;
        if (key == "w") c.w = as_number(val, loc);
        else if (key == "d_grid") c.d_grid = as_number_list(val, loc);
        else if (key == "alphas") c.alphas = as_number_list(val, loc);
        else if (key == "hdr_d") c.hdr_d = as_number_list(val, loc);
        else if (key == "profiles") c.profiles = as_string_list(val, loc);
        else if (key == "profile_file") c.profile_file = as_string(val, loc);
        else fail(loc, "unknown key");
    }
}

void parse_entropy(const json& j, EntropyConfig& c) {
    if (!j.is_object()) fail("entropy", "expected an object");
    for (const auto& [key, val] : j.items()) {
        std::string loc = "entropy." + key;
        if (key == "mu_grid") c.mu_grid = as_number_list(val, loc);
        else if (key == "sigma_grid") c.sigma_grid = as_number_list(val, loc);
        else if (key == "clip_lo") c.clip_lo = as_number(val, loc);
        else if (key == "clip_hi") c.clip_hi = as_number(val, loc);
        else fail(loc, "unknown key");
    }
}

void parse_verify(const json& j, VerifyConfig& c) {
    if (!j.is_object()) fail("verify", "expected an object");
    for (const auto& [key, val] : j.items()) {
        std::string loc = "verify." + key;
        if (key == "tol_scale") c.tol_scale = as_number(val, loc);
        else fail(loc, "unknown key");
    }
}

void check(bool ok, const std::string& what) {
    if (!ok) throw config_error("config: " + what);
}

}  // namespace

ExperimentConfig parse_config_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw config_error(std::string("config: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw config_error("config: top level must be an object");

    ExperimentConfig cfg;
    for (const auto& [key, val] : j.items()) {
        if (key == "bandit") parse_bandit(val, cfg.bandit);
        else if (key == "converge") parse_converge(val, cfg.converge);
        else if (key == "converge_sweep") parse_converge_sweep(val, cfg.converge_sweep);
        else if (key == "mdp_sweep") parse_mdp_sweep(val, cfg.mdp_sweep);
        else if (key == "entropy") parse_entropy(val, cfg.entropy);
        else if (key == "verify") parse_verify(val, cfg.verify);
        else if (key == "out_dir") cfg.out_dir = as_string(val, "out_dir");
        else fail(key, "unknown key");
    }
    validate(cfg);
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("config: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw config_error("config: read error on " + path);
    return parse_config_json(ss.str());
}

void validate(const ExperimentConfig& cfg) {
    const BanditConfig& b = cfg.bandit;
    check(!b.variants.empty(), "bandit.variants must be nonempty");
    for (const auto& v : b.variants) {
        try {
            parse_variant(v);
        } catch (const std::invalid_argument& e) {
            throw config_error(std::string("config: bandit.variants: ") + e.what());
        }
    }
    check(b.batch_size >= 1, "bandit.batch_size must be >= 1");
    check(b.iterations >= 0, "bandit.iterations must be >= 0");
    check(!b.seeds.empty(), "bandit.seeds must be nonempty");
    check(b.value_alpha > 0.0 && b.value_alpha <= 1.0, "bandit.value_alpha must be in (0,1]");
    check(b.value_floor > 0.0, "bandit.value_floor must be > 0");
    check(b.sigma0 > 0.0, "bandit.sigma0 must be > 0");
    check(b.w_hat0 > 0.0, "bandit.w_hat0 must be > 0");
    check(b.clip_lo < b.clip_hi, "bandit clip bounds must satisfy lo < hi");
    try {
        (void)b.schedule();
    } catch (const std::invalid_argument& e) {
        throw config_error(std::string("config: bandit.stages: ") + e.what());
    }

    const ConvergeConfig& c = cfg.converge;
    check(c.d > 0.0, "converge.d must be > 0");
    check(c.w_true > 0.0, "converge.w_true must be > 0");
    check(c.batch_size >= 1, "converge.batch_size must be >= 1");
    check(c.iterations >= 0, "converge.iterations must be >= 0");
    check(!c.seeds.empty(), "converge.seeds must be nonempty");
    check(c.value_alpha > 0.0 && c.value_alpha <= 1.0, "converge.value_alpha must be in (0,1]");
    check(c.value_floor > 0.0, "converge.value_floor must be > 0");
    check(c.sigma0 > 0.0, "converge.sigma0 must be > 0");
    check(c.w_hat0 > 0.0, "converge.w_hat0 must be > 0");
    check(c.clip_lo < c.clip_hi, "converge clip bounds must satisfy lo < hi");

    for (double d : cfg.converge_sweep.d_values)
        check(d > 0.0, "converge_sweep.d_values must all be > 0");

    const MdpSweepConfig& m = cfg.mdp_sweep;
    check(m.w > 0.0, "mdp_sweep.w must be > 0");
    check(!m.d_grid.empty(), "mdp_sweep.d_grid must be nonempty");
    for (size_t i = 0; i < m.d_grid.size(); ++i) {
        check(m.d_grid[i] > 0.0, "mdp_sweep.d_grid must all be > 0");
        if (i > 0) check(m.d_grid[i] > m.d_grid[i - 1], "mdp_sweep.d_grid must be strictly increasing");
    }
    for (double a : m.alphas) check(a > 0.0 && a < 1.0, "mdp_sweep.alphas must be in (0,1)");
    for (double d : m.hdr_d) check(d > 0.0, "mdp_sweep.hdr_d must all be > 0");
    for (const auto& p : m.profiles)
        check(p == "boxcar" || p == "triangular" || p == "gaussian-bump",
              "mdp_sweep.profiles entries must be boxcar, triangular, or gaussian-bump");

    const EntropyConfig& e = cfg.entropy;
    check(!e.mu_grid.empty(), "entropy.mu_grid must be nonempty");
    check(!e.sigma_grid.empty(), "entropy.sigma_grid must be nonempty");
    for (double s : e.sigma_grid) check(s > 0.0, "entropy.sigma_grid must all be > 0");
    check(e.clip_lo < e.clip_hi, "entropy clip bounds must satisfy lo < hi");

    check(cfg.verify.tol_scale > 0.0, "verify.tol_scale must be > 0");
    check(!cfg.out_dir.empty(), "out_dir must be nonempty");
}

}  // namespace vdx
