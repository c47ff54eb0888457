#include "vdx/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>

#include "vdx/gauss.hpp"
#include "vdx/mdp.hpp"
#include "vdx/variance.hpp"

namespace vdx {

namespace fs = std::filesystem;

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double percentile(std::vector<double> xs, double q) {
    if (xs.empty()) throw std::invalid_argument("percentile: empty sample");
    if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("percentile: q outside [0,1]");
    std::sort(xs.begin(), xs.end());
    double pos = q * static_cast<double>(xs.size() - 1);
    size_t i = static_cast<size_t>(pos);
    double frac = pos - static_cast<double>(i);
    if (i + 1 >= xs.size()) return xs.back();
    return xs[i] + frac * (xs[i + 1] - xs[i]);
}

namespace {

double entropy_or_nan(double mu, double sigma, double lo, double hi) {
    if (!std::isfinite(mu) || !std::isfinite(sigma) || !(sigma > 0.0))
        return std::numeric_limits<double>::quiet_NaN();
    return clipped_gaussian_entropy(mu, sigma, {lo, hi});
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw io_error("cannot create directory " + dir.string() + ": " + ec.message());
}

std::ofstream open_out(const fs::path& p) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw io_error("cannot open " + p.string() + " for writing");
    return out;
}

void finish(std::ofstream& out, const fs::path& p) {
    out.flush();
    if (!out) throw io_error("write error on " + p.string());
}

void write_trace_row(std::ofstream& out, const TraceRow& r) {
    out << r.seed << ',' << r.iteration << ',' << variant_name(r.variant) << ','
        << fmt17(r.mean_reward) << ',' << fmt17(r.mu) << ',' << fmt17(r.sigma) << ',';
    if (r.variant == Variant::vd_inverse) out << fmt17(r.w_hat);
    out << ',' << fmt17(r.v_hat) << ',' << fmt17(r.clipped_entropy) << '\n';
}

constexpr const char* trace_header =
    "seed,iteration,variant,mean_reward,mu,sigma,w_hat,v_hat,clipped_entropy";

std::vector<std::uint64_t> sorted_seeds(std::vector<std::uint64_t> seeds) {
    std::sort(seeds.begin(), seeds.end());
    return seeds;
}

SeedRun run_seeded(Variant variant, const BanditSchedule& schedule, long iterations,
                   long batch_size, const LearnerConfig& lc, double mu0, double sigma0,
                   double w_hat0, const SigmoidMapping& mapping, double clip_lo,
                   double clip_hi, std::uint64_t seed) {
    SeedRun run;
    PolicyState st = make_policy(variant, mu0, sigma0, w_hat0, mapping, 0.0, lc);
    Rng rng(seed);
    run.rows.reserve(static_cast<size_t>(iterations));
    for (long t = 1; t <= iterations; ++t) {
        StepResult res = train_step(variant, st, schedule, t, batch_size, rng, lc);
        TraceRow row;
        row.seed = seed;
        row.iteration = t;
        row.variant = variant;
        row.mean_reward = res.mean_reward;
        row.mu = st.mu;
        row.sigma = st.sigma;
        row.w_hat = trace_w_hat(variant, st);
        row.v_hat = st.v_hat;
        row.clipped_entropy = entropy_or_nan(st.mu, st.sigma, clip_lo, clip_hi);
        run.rows.push_back(row);
        if (!res.finite) {
            run.diverged = true;
            break;
        }
    }
    return run;
}

// Median of the finite entries; NaN when there are none.
double finite_median(const std::vector<double>& xs) {
    std::vector<double> keep;
    for (double x : xs)
        if (std::isfinite(x)) keep.push_back(x);
    if (keep.empty()) return std::numeric_limits<double>::quiet_NaN();
    return percentile(std::move(keep), 0.5);
}

}  // namespace

SeedRun run_bandit_seed(const BanditConfig& cfg, Variant variant, std::uint64_t seed) {
    LearnerConfig lc;
    lc.adam = cfg.adam;
    lc.value_alpha = cfg.value_alpha;
    lc.value_floor = cfg.value_floor;
    lc.fixed_sigma = cfg.sigma0;
    lc.freeze_mu = false;
    return run_seeded(variant, cfg.schedule(), cfg.iterations, cfg.batch_size, lc, cfg.mu0,
                      cfg.sigma0, cfg.w_hat0, cfg.sigmoid, cfg.clip_lo, cfg.clip_hi, seed);
}

SeedRun run_converge_seed(const ConvergeConfig& cfg, std::uint64_t seed) {
    LearnerConfig lc;
    lc.adam = cfg.adam;
    lc.value_alpha = cfg.value_alpha;
    lc.value_floor = cfg.value_floor;
    lc.freeze_mu = true;
    BanditSchedule schedule({{1, std::max(cfg.iterations, 1L), cfg.mu0 + cfg.d,
                              cfg.mu0 + cfg.d + cfg.w_true}});
    return run_seeded(Variant::vd_inverse, schedule, cfg.iterations, cfg.batch_size, lc,
                      cfg.mu0, cfg.sigma0, cfg.w_hat0, SigmoidMapping{}, cfg.clip_lo,
                      cfg.clip_hi, seed);
}

void run_bandit(const BanditConfig& cfg, const std::string& out_dir) {
    ensure_dir(out_dir);
    std::vector<Variant> variants;
    for (const auto& name : cfg.variants) variants.push_back(parse_variant(name));
    std::vector<std::uint64_t> seeds = sorted_seeds(cfg.seeds);

    // variant-major, seed-minor; deterministic order regardless of config order
    std::vector<std::vector<SeedRun>> runs(variants.size());
    for (size_t vi = 0; vi < variants.size(); ++vi) {
        for (std::uint64_t seed : seeds) {
            runs[vi].push_back(run_bandit_seed(cfg, variants[vi], seed));
            if (runs[vi].back().diverged) {
                const TraceRow& last = runs[vi].back().rows.back();
                std::cerr << "bandit: variant " << variant_name(variants[vi]) << " seed "
                          << seed << " diverged at iteration " << last.iteration
                          << "; run aborted\n";
            }
        }
    }

    fs::path trace_path = fs::path(out_dir) / "bandit_trace.csv";
    {
        std::ofstream out = open_out(trace_path);
        out << trace_header << '\n';
        for (const auto& per_variant : runs)
            for (const auto& run : per_variant)
                for (const TraceRow& row : run.rows) write_trace_row(out, row);
        finish(out, trace_path);
    }

    fs::path summary_path = fs::path(out_dir) / "bandit_summary.csv";
    {
        std::ofstream out = open_out(summary_path);
        out << "variant,iteration";
        for (const char* metric : {"mean_reward", "mu", "sigma", "w_hat", "v_hat",
                                   "clipped_entropy"})
            out << ',' << metric << "_p25," << metric << "_p50," << metric << "_p75";
        out << '\n';
        for (size_t vi = 0; vi < variants.size(); ++vi) {
            bool has_w = variants[vi] == Variant::vd_inverse;
            for (long t = 1; t <= cfg.iterations; ++t) {
                // columns: 0 reward, 1 mu, 2 sigma, 3 w_hat, 4 v_hat, 5 entropy
                std::vector<double> cols[6];
                for (const auto& run : runs[vi]) {
                    size_t idx = static_cast<size_t>(t - 1);
                    if (idx >= run.rows.size()) continue;  // seed diverged earlier
                    const TraceRow& r = run.rows[idx];
                    cols[0].push_back(r.mean_reward);
                    cols[1].push_back(r.mu);
                    cols[2].push_back(r.sigma);
                    cols[3].push_back(r.w_hat);
                    cols[4].push_back(r.v_hat);
                    cols[5].push_back(r.clipped_entropy);
                }
                if (cols[0].empty()) continue;  // every seed diverged before t
                out << variant_name(variants[vi]) << ',' << t;
                for (int c = 0; c < 6; ++c) {
                    if (c == 3 && !has_w) {
                        out << ",,,";
                        continue;
                    }
                    std::vector<double> finite;
                    for (double x : cols[c])
                        if (std::isfinite(x)) finite.push_back(x);
                    if (finite.empty()) {
                        out << ",nan,nan,nan";
                        continue;
                    }
                    for (double q : {0.25, 0.5, 0.75})
                        out << ',' << fmt17(percentile(finite, q));
                }
                out << '\n';
            }
        }
        finish(out, summary_path);
    }
}

void run_convergence(const ConvergeConfig& cfg, const std::string& out_dir) {
    ensure_dir(out_dir);
    double sigma_star = optimal_sigma_closed({cfg.d, cfg.w_true});
    fs::path trace_path = fs::path(out_dir) / "converge_trace.csv";
    std::ofstream out = open_out(trace_path);
    out << trace_header << ",sigma_star_ref\n";
    for (std::uint64_t seed : sorted_seeds(cfg.seeds)) {
        SeedRun run = run_converge_seed(cfg, seed);
        if (run.diverged)
            std::cerr << "converge: seed " << seed << " diverged at iteration "
                      << run.rows.back().iteration << "; run aborted\n";
        for (const TraceRow& row : run.rows) {
            out << row.seed << ',' << row.iteration << ',' << variant_name(row.variant)
                << ',' << fmt17(row.mean_reward) << ',' << fmt17(row.mu) << ','
                << fmt17(row.sigma) << ',' << fmt17(row.w_hat) << ',' << fmt17(row.v_hat)
                << ',' << fmt17(row.clipped_entropy) << ',' << fmt17(sigma_star) << '\n';
        }
    }
    finish(out, trace_path);
}

void run_convergence_sweep(const ConvergeSweepConfig& sweep, const ConvergeConfig& base,
                           const std::string& out_dir) {
    ensure_dir(out_dir);
    fs::path path = fs::path(out_dir) / "converge_sweep.csv";
    std::ofstream out = open_out(path);
    out << "d,w_hat_final,w_true,sigma_final,sigma_star_closed\n";
    for (double d : sweep.d_values) {
        ConvergeConfig cfg = base;
        cfg.d = d;
        std::vector<double> final_w, final_sigma;
        for (std::uint64_t seed : sorted_seeds(cfg.seeds)) {
            SeedRun run = run_converge_seed(cfg, seed);
            if (run.rows.empty()) continue;
            final_w.push_back(run.rows.back().w_hat);
            final_sigma.push_back(run.rows.back().sigma);
        }
        out << fmt17(d) << ',' << fmt17(finite_median(final_w)) << ','
            << fmt17(cfg.w_true) << ',' << fmt17(finite_median(final_sigma)) << ','
            << fmt17(optimal_sigma_closed({d, cfg.w_true})) << '\n';
    }
    finish(out, path);
}

namespace {

std::vector<std::pair<std::string, QProfile>> build_profiles(const MdpSweepConfig& cfg) {
    std::vector<std::pair<std::string, QProfile>> out;
    for (const auto& name : cfg.profiles) {
        if (name == "boxcar") out.emplace_back(name, QProfile::boxcar(cfg.w));
        else if (name == "triangular") out.emplace_back(name, QProfile::triangular(cfg.w));
        else if (name == "gaussian-bump") out.emplace_back(name, QProfile::gaussian_bump(cfg.w));
        else throw std::invalid_argument("unknown profile: " + name);
    }
    if (!cfg.profile_file.empty())
        out.emplace_back(cfg.profile_file, QProfile::from_file(cfg.profile_file));
    return out;
}

}  // namespace

void run_mdp_sweep(const MdpSweepConfig& cfg, const std::string& out_dir) {
    ensure_dir(out_dir);
    auto profiles = build_profiles(cfg);

    fs::path mono_path = fs::path(out_dir) / "mdp_monotonicity.csv";
    {
        std::ofstream out = open_out(mono_path);
        out << "profile,d,sigma_star,v_star,ratio_ok,monotone_ok\n";
        for (const auto& [name, profile] : profiles) {
            for (const MonotonicityRow& row : monotonicity_sweep(profile, cfg.d_grid)) {
                out << name << ',' << fmt17(row.d) << ',' << fmt17(row.sigma_star) << ','
                    << fmt17(row.v_star) << ',' << (row.ratio_ok ? 1 : 0) << ','
                    << (row.monotone_ok ? 1 : 0) << '\n';
            }
        }
        finish(out, mono_path);
    }

    fs::path hdr_path = fs::path(out_dir) / "mdp_hdr.csv";
    {
        std::ofstream out = open_out(hdr_path);
        out << "profile,alpha,d,hdr_lo,hdr_hi,hdr_mass,sigma_star,sigma_hat_star,"
               "v_star,v_hat_star,gap,bound,pass\n";
        for (const auto& [name, profile] : profiles) {
            // The gap bound presumes total mass <= 1; normalize to unit mass.
            QProfile norm = profile.normalized();
            for (double alpha : cfg.alphas) {
                HdrInterval hdr = hdr_interval(norm, alpha);
                for (double d : cfg.hdr_d) {
                    HdrBoundResult res = hdr_bound_check(norm, alpha, d);
                    double bound = 1.0 - alpha;
                    out << name << ',' << fmt17(alpha) << ',' << fmt17(d) << ','
                        << fmt17(hdr.lo) << ',' << fmt17(hdr.hi) << ',' << fmt17(hdr.mass)
                        << ',' << fmt17(res.sigma_star) << ',' << fmt17(res.sigma_hat_star)
                        << ',' << fmt17(res.v_star) << ',' << fmt17(res.v_hat_star) << ','
                        << fmt17(res.gap) << ',' << fmt17(bound) << ','
                        << (res.gap <= bound ? 1 : 0) << '\n';
                }
            }
        }
        finish(out, hdr_path);
    }
}

void run_entropy_table(const EntropyConfig& cfg, const std::string& out_dir) {
    ensure_dir(out_dir);
    fs::path path = fs::path(out_dir) / "entropy_table.csv";
    std::ofstream out = open_out(path);
    out << "mu,sigma,clipped_entropy\n";
    for (double mu : cfg.mu_grid)
        for (double sigma : cfg.sigma_grid)
            out << fmt17(mu) << ',' << fmt17(sigma) << ','
                << fmt17(clipped_gaussian_entropy(mu, sigma, {cfg.clip_lo, cfg.clip_hi}))
                << '\n';
    finish(out, path);
}

}  // namespace vdx
