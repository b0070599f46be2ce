#pragma once

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "waitlaw/continued_fraction.hpp"
#include "waitlaw/digit_stream.hpp"
#include "waitlaw/distort.hpp"
#include "waitlaw/io.hpp"
#include "waitlaw/limit_laws.hpp"
#include "waitlaw/parallel.hpp"
#include "waitlaw/processes.hpp"
#include "waitlaw/renewal.hpp"
#include "waitlaw/stats.hpp"
#include "waitlaw/thaler_orbit.hpp"
#include "waitlaw/wandering.hpp"

namespace waitlaw {

using json = nlohmann::json;

// Pass bands. Fixed here rather than configurable: they are the advertised
// tolerances of the shipped verification suite.
namespace bands {
inline constexpr double ks_dynkin_lamperti = 0.02; // Y/n and V/n vs phi, eta
inline constexpr double ks_distorted = 0.03;       // Lambda..Theta vs their laws
inline constexpr double ks_critical = 0.12;        // critical-case KS to uniform at n = 1e6
inline constexpr double thaler_pointwise = 0.10;   // |P_hat - x| for log n / log V_n
inline constexpr double ld_ratio = 0.20;           // |p_hat W_n / rate - 1|
} // namespace bands

struct experiment_config {
    std::string experiment;
    std::string map = "farey";
    std::string digit_source = "chain"; // chain | dyadic
    std::vector<double> alphas = {0.3, 0.5, 0.7};
    std::vector<std::int64_t> horizons;
    std::int64_t samples = 0;
    std::uint64_t seed = 1;
    std::vector<double> x_grid = {0.5, 1.0, 2.0};
    std::vector<std::pair<double, double>> xy_grid = {{0.5, 0.5}, {0.0, 1.0}};
    std::vector<double> thaler_x = {0.5, 0.6, 0.8, 1.0};
    std::int64_t iter_cap = 1000000;
    std::int64_t bit_cap = 4096;
    std::int64_t ks_samples = 10000;     // sigma-KS subsample of the LD run
    std::int64_t records_limit = 100000; // cap on emitted CSV record rows
    std::vector<std::string> laws = {"theta"};
    double grid_max = 0.0; // 0: per-law default
    std::int64_t grid_points = 200;
    int threads = 0; // 0: all cores
    std::string out_dir;
    bool emit_records = false;

    int resolved_threads() const { return threads > 0 ? threads : default_threads(); }
};

inline void to_json(json& j, const experiment_config& c) {
    j = json{{"experiment", c.experiment},
             {"map", c.map},
             {"digit_source", c.digit_source},
             {"alphas", c.alphas},
             {"horizons", c.horizons},
             {"samples", c.samples},
             {"seed", c.seed},
             {"x_grid", c.x_grid},
             {"xy_grid", c.xy_grid},
             {"thaler_x", c.thaler_x},
             {"iter_cap", c.iter_cap},
             {"bit_cap", c.bit_cap},
             {"ks_samples", c.ks_samples},
             {"records_limit", c.records_limit},
             {"laws", c.laws},
             {"grid_max", c.grid_max},
             {"grid_points", c.grid_points},
             {"threads", c.threads},
             {"out_dir", c.out_dir},
             {"emit_records", c.emit_records}};
}

inline void from_json(const json& j, experiment_config& c) {
    auto get = [&j](const char* key, auto& field) {
        if (j.contains(key)) j.at(key).get_to(field);
    };
    get("experiment", c.experiment);
    get("map", c.map);
    get("digit_source", c.digit_source);
    get("alphas", c.alphas);
    get("horizons", c.horizons);
    get("samples", c.samples);
    get("seed", c.seed);
    get("x_grid", c.x_grid);
    get("xy_grid", c.xy_grid);
    get("thaler_x", c.thaler_x);
    get("iter_cap", c.iter_cap);
    get("bit_cap", c.bit_cap);
    get("ks_samples", c.ks_samples);
    get("records_limit", c.records_limit);
    get("laws", c.laws);
    get("grid_max", c.grid_max);
    get("grid_points", c.grid_points);
    get("threads", c.threads);
    get("out_dir", c.out_dir);
    get("emit_records", c.emit_records);
}

// One line of a run report; serialized as the JSON object
// {experiment, n, N, statistic, value, band, pass, ...extra}.
struct report_row {
    std::string statistic;
    std::int64_t n = 0;
    std::int64_t samples = 0;
    double value = 0.0;
    double band = std::numeric_limits<double>::quiet_NaN(); // NaN: informative row
    bool pass = true;
    json extra = json::object();
};

struct run_report {
    std::string experiment;
    json config;
    std::vector<report_row> rows;
    bool pass = true;
    // name -> content; written next to report.json
    std::vector<std::pair<std::string, std::string>> files;

    void add(report_row row) {
        if (!row.pass) pass = false;
        rows.push_back(std::move(row));
    }

    json to_json_obj() const {
        json rows_json = json::array();
        for (const auto& r : rows) {
            json o = r.extra;
            o["experiment"] = experiment;
            o["n"] = r.n;
            o["N"] = r.samples;
            o["statistic"] = r.statistic;
            o["value"] = r.value;
            if (std::isnan(r.band))
                o["band"] = nullptr;
            else
                o["band"] = r.band;
            o["pass"] = r.pass;
            rows_json.push_back(std::move(o));
        }
        return json{{"experiment", experiment}, {"pass", pass}, {"rows", rows_json}};
    }
};

namespace detail {

inline void require(bool ok, const std::string& message) {
    if (!ok) throw std::invalid_argument(message);
}

inline std::vector<std::int64_t> sorted_unique(std::vector<std::int64_t> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

} // namespace detail

// ---------------------------------------------------------------------------
// dynkin-lamperti: renewal surrogate, alpha in (0,1)
// ---------------------------------------------------------------------------

inline run_report run_dynkin_lamperti(const experiment_config& cfg) {
    detail::require(cfg.samples >= 1, "dynkin-lamperti: need samples >= 1");
    detail::require(!cfg.alphas.empty(), "dynkin-lamperti: need at least one alpha");
    detail::require(!cfg.horizons.empty(), "dynkin-lamperti: need at least one horizon");
    for (double a : cfg.alphas)
        detail::require(a > 0.0 && a < 1.0,
                        "dynkin-lamperti: alpha must be in (0,1); the degenerate cases are "
                        "covered by the critical-farey and critical-thaler experiments");
    for (auto n : cfg.horizons) detail::require(n >= 1, "dynkin-lamperti: horizons must be >= 1");

    run_report rep;
    rep.experiment = "dynkin-lamperti";
    rep.config = cfg;

    const auto n_samples = cfg.samples;
    std::string records_csv = waiting_record_distorted_csv_header() + "\n";
    std::int64_t records_written = 0;

    for (std::size_t ai = 0; ai < cfg.alphas.size(); ++ai) {
        const double alpha = cfg.alphas[ai];
        const wandering_sequence w = renewal_wandering(alpha);
        const limit_law laws[6] = {limit_law::phi(alpha),    limit_law::eta(alpha),
                                   limit_law::lambda(alpha), limit_law::gamma(alpha),
                                   limit_law::delta(alpha),  limit_law::theta(alpha)};
        const char* names[6] = {"KS(Y/n, phi)",      "KS(V/n, eta)",      "KS(Lambda, lambda)",
                                "KS(Gamma, gamma)",  "KS(Delta, delta)",  "KS(Theta, theta)"};
        const double band[6] = {bands::ks_dynkin_lamperti, bands::ks_dynkin_lamperti,
                                bands::ks_distorted,       bands::ks_distorted,
                                bands::ks_distorted,       bands::ks_distorted};

        for (std::size_t hi = 0; hi < cfg.horizons.size(); ++hi) {
            const std::int64_t n = cfg.horizons[hi];
            std::vector<std::vector<double>> vals(6, std::vector<double>(n_samples));
            std::vector<waiting_record> recs;
            if (cfg.emit_records) recs.resize(n_samples);
            const std::uint64_t base =
                (static_cast<std::uint64_t>(ai) * cfg.horizons.size() + hi) * n_samples;

            parallel_for(n_samples, cfg.resolved_threads(), [&](std::int64_t i) {
                tau_source src(derive_seed(cfg.seed, base + i), alpha);
                auto st = straddle_scan(src, {n}).front();
                waiting_record rec = waiting_from_renewal_straddle(st, n);
                distorted_values d = distorted(rec, w);
                vals[0][i] = static_cast<double>(rec.y) / static_cast<double>(n);
                vals[1][i] = static_cast<double>(rec.v) / static_cast<double>(n);
                vals[2][i] = d.lambda;
                vals[3][i] = d.gamma;
                vals[4][i] = d.delta;
                vals[5][i] = d.theta;
                if (cfg.emit_records) recs[i] = rec;
            });

            for (int k = 0; k < 6; ++k) {
                double ks = ks_distance(ecdf(std::move(vals[k])), laws[k]);
                report_row row;
                row.statistic = names[k];
                row.n = n;
                row.samples = n_samples;
                row.value = ks;
                row.band = band[k];
                row.pass = ks <= band[k];
                row.extra["alpha"] = alpha;
                rep.add(std::move(row));
            }
            if (cfg.emit_records) {
                for (const auto& rec : recs) {
                    if (records_written++ >= cfg.records_limit) break;
                    records_csv += to_csv(rec, distorted(rec, w)) + "\n";
                }
            }
        }
    }
    if (cfg.emit_records) rep.files.emplace_back("records.csv", records_csv);
    return rep;
}

// ---------------------------------------------------------------------------
// critical-farey: Lambda_n and Delta_n to Uniform[0,1] (slowly varying W)
// ---------------------------------------------------------------------------

namespace detail {

template <class MakeSource>
void farey_critical_pass(const experiment_config& cfg, const std::vector<std::int64_t>& horizons,
                         MakeSource&& make_source, std::vector<std::vector<double>>& lambda_vals,
                         std::vector<std::vector<double>>& delta_vals,
                         std::vector<waiting_record>* recs) {
    std::vector<std::int64_t> thresholds;
    thresholds.reserve(horizons.size());
    for (auto h : horizons) thresholds.push_back(h + 1);
    const wandering_sequence w = wandering_sequence::farey();

    parallel_for(cfg.samples, cfg.resolved_threads(), [&](std::int64_t i) {
        auto src = make_source(derive_seed(cfg.seed, i));
        auto straddles = straddle_scan(src, thresholds);
        for (std::size_t hi = 0; hi < horizons.size(); ++hi) {
            waiting_record rec = waiting_from_cf_straddle(straddles[hi], horizons[hi]);
            distorted_values d = distorted(rec, w);
            lambda_vals[hi][i] = d.lambda;
            delta_vals[hi][i] = d.delta;
            if (recs && hi + 1 == horizons.size()) (*recs)[i] = rec;
        }
    });
}

} // namespace detail

inline run_report run_critical_farey(const experiment_config& cfg) {
    detail::require(cfg.samples >= 1, "critical-farey: need samples >= 1");
    detail::require(!cfg.horizons.empty(), "critical-farey: need at least one horizon");
    detail::require(cfg.map == "farey", "critical-farey: map must be farey");
    detail::require(cfg.digit_source == "chain" || cfg.digit_source == "dyadic",
                    "critical-farey: digit_source must be chain or dyadic");
    for (auto n : cfg.horizons) detail::require(n >= 2, "critical-farey: horizons must be >= 2");
    const auto horizons = detail::sorted_unique(cfg.horizons);

    run_report rep;
    rep.experiment = "critical-farey";
    rep.config = cfg;

    std::vector<std::vector<double>> lambda_vals(horizons.size(), std::vector<double>(cfg.samples));
    std::vector<std::vector<double>> delta_vals = lambda_vals;
    std::vector<waiting_record> recs;
    if (cfg.emit_records) recs.resize(cfg.samples);
    auto* recs_ptr = cfg.emit_records ? &recs : nullptr;

    if (cfg.digit_source == "dyadic") {
        detail::farey_critical_pass(
            cfg, horizons,
            [&](std::uint64_t s) { return dyadic_digit_stream(s, cfg.bit_cap); }, lambda_vals,
            delta_vals, recs_ptr);
    } else {
        detail::farey_critical_pass(
            cfg, horizons, [&](std::uint64_t s) { return digit_chain_sampler(s); }, lambda_vals,
            delta_vals, recs_ptr);
    }

    const limit_law uniform = limit_law::uniform01();
    std::vector<double> ks_lambda(horizons.size()), ks_delta(horizons.size());
    for (std::size_t hi = 0; hi < horizons.size(); ++hi) {
        ks_lambda[hi] = ks_distance(ecdf(std::move(lambda_vals[hi])), uniform);
        ks_delta[hi] = ks_distance(ecdf(std::move(delta_vals[hi])), uniform);
        // the convergence is O(1/log n): the band gates the largest horizon,
        // smaller ones are reported as convergence-in-progress
        const bool gated = hi + 1 == horizons.size();
        for (auto [name, ks] : {std::pair<const char*, double>{"KS(Lambda, U)", ks_lambda[hi]},
                                std::pair<const char*, double>{"KS(Delta, U)", ks_delta[hi]}}) {
            report_row row;
            row.statistic = name;
            row.n = horizons[hi];
            row.samples = cfg.samples;
            row.value = ks;
            if (gated) {
                row.band = bands::ks_critical;
                row.pass = ks <= bands::ks_critical;
            }
            row.extra["W_n"] = farey_wandering(horizons[hi]);
            row.extra["digit_source"] = cfg.digit_source;
            rep.add(std::move(row));
        }
    }
    if (horizons.size() >= 2) {
        auto strictly_decreasing = [](const std::vector<double>& v) {
            for (std::size_t i = 0; i + 1 < v.size(); ++i)
                if (!(v[i] > v[i + 1])) return false;
            return true;
        };
        bool dec_lambda = strictly_decreasing(ks_lambda);
        bool dec_delta = strictly_decreasing(ks_delta);
        report_row row;
        row.statistic = "KS(Lambda, U) strictly decreasing in n";
        row.n = horizons.back();
        row.samples = cfg.samples;
        row.value = dec_lambda ? 1.0 : 0.0;
        row.band = 1.0;
        row.pass = dec_lambda;
        rep.add(std::move(row));
        row = report_row{};
        row.statistic = "KS(Delta, U) strictly decreasing in n";
        row.n = horizons.back();
        row.samples = cfg.samples;
        row.value = dec_delta ? 1.0 : 0.0;
        row.band = 1.0;
        row.pass = dec_delta;
        rep.add(std::move(row));
    }
    if (cfg.emit_records) {
        std::string csv = waiting_record_csv_header() + "\n";
        std::int64_t written = 0;
        for (const auto& rec : recs) {
            if (written++ >= cfg.records_limit) break;
            csv += to_csv(rec) + "\n";
        }
        rep.files.emplace_back("records.csv", csv);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// critical-thaler: censored pointwise CDF of log(n)/log(V_n)
// ---------------------------------------------------------------------------

inline run_report run_critical_thaler(const experiment_config& cfg) {
    detail::require(cfg.samples >= 1, "critical-thaler: need samples >= 1");
    detail::require(cfg.horizons.size() == 1, "critical-thaler: exactly one horizon");
    const std::int64_t n = cfg.horizons.front();
    detail::require(n >= 2, "critical-thaler: horizon must be >= 2");
    detail::require(cfg.iter_cap >= n, "critical-thaler: iteration cap below horizon");
    detail::require(!cfg.thaler_x.empty(), "critical-thaler: empty x grid");
    for (double x : cfg.thaler_x) {
        detail::require(x > 0.0 && x <= 1.0, "critical-thaler: x must be in (0,1]");
        double threshold = std::pow(static_cast<double>(n), 1.0 / x);
        detail::require(threshold <= static_cast<double>(cfg.iter_cap) + 0.5,
                        "critical-thaler: V threshold n^(1/x) not decidable under the cap; "
                        "raise iter_cap or x");
    }

    run_report rep;
    rep.experiment = "critical-thaler";
    rep.config = cfg;

    static const thaler_map<thaler_real> map; // bisection done once
    const std::size_t nx = cfg.thaler_x.size();
    std::vector<double> thresholds(nx);
    for (std::size_t k = 0; k < nx; ++k)
        thresholds[k] = std::pow(static_cast<double>(n), 1.0 / cfg.thaler_x[k]);

    const int threads = cfg.resolved_threads();
    std::vector<std::vector<std::int64_t>> hits(threads, std::vector<std::int64_t>(nx, 0));
    std::vector<std::int64_t> degraded(threads, 0);
    std::vector<std::int64_t> censored(threads, 0);
    std::atomic<std::int64_t> cursor{0};

    parallel_for(threads, threads, [&](std::int64_t worker) {
        for (;;) {
            std::int64_t i = cursor.fetch_add(1);
            if (i >= cfg.samples) break;
            try {
                thaler_record r = thaler_waiting(map, derive_seed(cfg.seed, i), n, cfg.iter_cap);
                double v = r.y ? static_cast<double>(*r.y - r.z)
                               : std::numeric_limits<double>::infinity();
                if (!r.y) ++censored[worker];
                for (std::size_t k = 0; k < nx; ++k)
                    if (v >= thresholds[k]) ++hits[worker][k];
            } catch (const precision_degraded_error&) {
                ++degraded[worker];
            }
        }
    });

    std::int64_t total_degraded = 0, total_censored = 0;
    for (int t = 0; t < threads; ++t) {
        total_degraded += degraded[t];
        total_censored += censored[t];
    }
    const std::int64_t effective = cfg.samples - total_degraded;
    if (total_degraded * 200 > cfg.samples)
        throw precision_degraded_error("critical-thaler: precision degradation rate above 0.5%");

    for (std::size_t k = 0; k < nx; ++k) {
        std::int64_t h = 0;
        for (int t = 0; t < threads; ++t) h += hits[t][k];
        double p_hat = static_cast<double>(h) / static_cast<double>(effective);
        report_row row;
        row.statistic = "P(log n / log V <= x)";
        row.n = n;
        row.samples = effective;
        row.value = p_hat;
        row.band = bands::thaler_pointwise;
        row.pass = std::abs(p_hat - cfg.thaler_x[k]) <= bands::thaler_pointwise;
        row.extra["x"] = cfg.thaler_x[k];
        row.extra["reference"] = cfg.thaler_x[k];
        row.extra["v_threshold"] = thresholds[k];
        auto ci = wilson_ci95(h, effective);
        row.extra["ci_lo"] = ci.lo;
        row.extra["ci_hi"] = ci.hi;
        rep.add(std::move(row));
    }
    report_row info;
    info.statistic = "censored fraction (V_n > cap)";
    info.n = n;
    info.samples = effective;
    info.value = static_cast<double>(total_censored) / static_cast<double>(effective);
    info.extra["iter_cap"] = cfg.iter_cap;
    info.extra["degraded_samples"] = total_degraded;
    rep.add(std::move(info));
    return rep;
}

// ---------------------------------------------------------------------------
// large-deviation: V_n, (Z_n, Y_n) joint, and sigma_n tails + sigma KS rows
// ---------------------------------------------------------------------------

namespace detail {

struct ld_counts {
    std::vector<std::int64_t> v_hits;     // per x
    std::vector<std::int64_t> joint_hits; // per (x,y)
    std::vector<std::int64_t> sigma_hits; // per x
};

template <class MakeSource>
void ld_pass(const experiment_config& cfg, std::int64_t n,
             const std::vector<std::int64_t>& ks_horizons, MakeSource&& make_source,
             std::vector<ld_counts>& per_thread, std::vector<std::vector<double>>& sigma_ks_vals) {
    // thresholds: h and h+1 for the sigma-KS horizons (subsample only), n and
    // n+1 for every sample.
    std::vector<std::int64_t> full_thresholds;
    for (auto h : ks_horizons) {
        full_thresholds.push_back(h);
        full_thresholds.push_back(h + 1);
    }
    full_thresholds.push_back(n);
    full_thresholds.push_back(n + 1);
    full_thresholds = sorted_unique(full_thresholds);
    const std::vector<std::int64_t> tail_thresholds = {n, n + 1};
    const double nd = static_cast<double>(n);

    const int threads = cfg.resolved_threads();
    std::atomic<std::int64_t> cursor{0};
    parallel_for(threads, threads, [&](std::int64_t worker) {
        ld_counts& counts = per_thread[worker];
        for (;;) {
            std::int64_t i = cursor.fetch_add(1);
            if (i >= cfg.samples) break;
            auto src = make_source(derive_seed(cfg.seed, i));
            const bool with_ks = i < cfg.ks_samples;
            auto straddles = straddle_scan(src, with_ks ? full_thresholds : tail_thresholds);
            const auto& ths = with_ks ? full_thresholds : tail_thresholds;
            auto straddle_of = [&](std::int64_t t) -> const sum_straddle& {
                auto it = std::lower_bound(ths.begin(), ths.end(), t);
                return straddles[static_cast<std::size_t>(it - ths.begin())];
            };

            const sum_straddle& at_n1 = straddle_of(n + 1);
            waiting_record rec = waiting_from_cf_straddle(at_n1, n);
            for (std::size_t k = 0; k < cfg.x_grid.size(); ++k)
                if (static_cast<double>(rec.v) > cfg.x_grid[k] * nd) ++counts.v_hits[k];
            for (std::size_t k = 0; k < cfg.xy_grid.size(); ++k) {
                const auto& [x, y] = cfg.xy_grid[k];
                if (static_cast<double>(n - rec.z) >= x * nd
                    && static_cast<double>(rec.y - n) > y * nd)
                    ++counts.joint_hits[k];
            }
            const sum_straddle& at_n = straddle_of(n);
            for (std::size_t k = 0; k < cfg.x_grid.size(); ++k)
                if (static_cast<double>(at_n.next_term) > cfg.x_grid[k] * nd)
                    ++counts.sigma_hits[k];

            if (with_ks) {
                for (std::size_t hi = 0; hi < ks_horizons.size(); ++hi) {
                    const sum_straddle& st = straddle_of(ks_horizons[hi]);
                    sigma_ks_vals[hi][i] = std::log(static_cast<double>(st.next_term))
                                         / std::log(static_cast<double>(ks_horizons[hi]));
                }
            }
        }
    });
}

} // namespace detail

inline run_report run_large_deviation(const experiment_config& cfg) {
    detail::require(cfg.samples >= 1, "large-deviation: need samples >= 1");
    detail::require(!cfg.horizons.empty(), "large-deviation: need at least one horizon");
    detail::require(!cfg.x_grid.empty() || !cfg.xy_grid.empty(), "large-deviation: empty grid");
    detail::require(cfg.map == "farey", "large-deviation: map must be farey");
    for (auto [x, y] : cfg.xy_grid) {
        detail::require(x >= 0.0 && x < 1.0 && y >= 0.0 && x + y > 0.0,
                        "large-deviation: joint grid needs 0 <= x < 1, y >= 0, x + y != 0");
    }
    for (double x : cfg.x_grid) detail::require(x > 0.0, "large-deviation: x grid must be > 0");
    for (auto h : cfg.horizons) detail::require(h >= 2, "large-deviation: horizons must be >= 2");

    const auto horizons = detail::sorted_unique(cfg.horizons);
    const std::int64_t n = horizons.back();
    const std::int64_t ks_n = std::min(cfg.ks_samples, cfg.samples);

    run_report rep;
    rep.experiment = "large-deviation";
    rep.config = cfg;

    const int threads = cfg.resolved_threads();
    std::vector<detail::ld_counts> per_thread(threads);
    for (auto& c : per_thread) {
        c.v_hits.assign(cfg.x_grid.size(), 0);
        c.joint_hits.assign(cfg.xy_grid.size(), 0);
        c.sigma_hits.assign(cfg.x_grid.size(), 0);
    }
    std::vector<std::vector<double>> sigma_ks_vals(horizons.size(), std::vector<double>(ks_n));

    experiment_config pass_cfg = cfg;
    pass_cfg.ks_samples = ks_n;
    if (cfg.digit_source == "dyadic") {
        detail::ld_pass(pass_cfg, n, horizons,
                        [&](std::uint64_t s) { return dyadic_digit_stream(s, cfg.bit_cap); },
                        per_thread, sigma_ks_vals);
    } else {
        detail::require(cfg.digit_source == "chain",
                        "large-deviation: digit_source must be chain or dyadic");
        detail::ld_pass(pass_cfg, n, horizons,
                        [&](std::uint64_t s) { return digit_chain_sampler(s); }, per_thread,
                        sigma_ks_vals);
    }

    auto total = [&](auto member, std::size_t k) {
        std::int64_t s = 0;
        for (const auto& c : per_thread) s += (c.*member)[k];
        return s;
    };

    for (std::size_t k = 0; k < cfg.x_grid.size(); ++k) {
        ld_estimate e = ld_v_process(n, cfg.x_grid[k], total(&detail::ld_counts::v_hits, k),
                                     cfg.samples);
        report_row row;
        row.statistic = "P(V/n > x) * W_n / H(x)";
        row.n = n;
        row.samples = cfg.samples;
        row.value = e.ratio;
        row.band = bands::ld_ratio;
        row.pass = std::abs(e.ratio - 1.0) <= bands::ld_ratio;
        row.extra["x"] = e.x;
        row.extra["p_hat"] = e.p_hat;
        row.extra["reference"] = e.reference;
        row.extra["ci_lo"] = e.ci.lo;
        row.extra["ci_hi"] = e.ci.hi;
        rep.add(std::move(row));
    }
    for (std::size_t k = 0; k < cfg.xy_grid.size(); ++k) {
        const auto& [x, y] = cfg.xy_grid[k];
        ld_estimate e = ld_joint(n, x, y, total(&detail::ld_counts::joint_hits, k), cfg.samples);
        report_row row;
        row.statistic = "P((n-Z)/n >= x, (Y-n)/n > y) * W_n / rate";
        row.n = n;
        row.samples = cfg.samples;
        row.value = e.ratio;
        row.band = bands::ld_ratio;
        row.pass = std::abs(e.ratio - 1.0) <= bands::ld_ratio;
        row.extra["x"] = x;
        row.extra["y"] = y;
        row.extra["p_hat"] = e.p_hat;
        row.extra["reference"] = e.reference;
        row.extra["ci_lo"] = e.ci.lo;
        row.extra["ci_hi"] = e.ci.hi;
        rep.add(std::move(row));
    }
    for (std::size_t k = 0; k < cfg.x_grid.size(); ++k) {
        sigma_tail_row s = sigma_tail_estimate(n, cfg.x_grid[k],
                                               total(&detail::ld_counts::sigma_hits, k),
                                               cfg.samples);
        report_row row;
        row.statistic = "P(sigma/n > x) * W_n / H(x)";
        row.n = n;
        row.samples = cfg.samples;
        row.value = s.normalized;
        row.band = bands::ld_ratio;
        row.pass = std::abs(s.normalized - 1.0) <= bands::ld_ratio;
        row.extra["x"] = s.x;
        row.extra["p_hat"] = s.p_hat;
        row.extra["reference"] = s.reference;
        row.extra["ci_lo"] = s.ci.lo;
        row.extra["ci_hi"] = s.ci.hi;
        row.extra["beyond_stated_range"] = s.beyond_stated_range;
        rep.add(std::move(row));
    }

    const limit_law uniform = limit_law::uniform01();
    std::vector<double> sigma_ks(horizons.size());
    for (std::size_t hi = 0; hi < horizons.size(); ++hi) {
        sigma_ks[hi] = ks_distance(ecdf(std::move(sigma_ks_vals[hi])), uniform);
        report_row row;
        row.statistic = "KS(log sigma / log n, U)";
        row.n = horizons[hi];
        row.samples = ks_n;
        row.value = sigma_ks[hi];
        if (hi + 1 == horizons.size()) { // band gates the largest horizon
            row.band = bands::ks_critical;
            row.pass = sigma_ks[hi] <= bands::ks_critical;
        }
        rep.add(std::move(row));
    }
    if (horizons.size() >= 2) {
        bool dec = true;
        for (std::size_t hi = 0; hi + 1 < horizons.size(); ++hi)
            dec = dec && sigma_ks[hi] > sigma_ks[hi + 1];
        report_row row;
        row.statistic = "KS(log sigma / log n, U) strictly decreasing in n";
        row.n = n;
        row.samples = ks_n;
        row.value = dec ? 1.0 : 0.0;
        row.band = 1.0;
        row.pass = dec;
        rep.add(std::move(row));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// tables: (x, pdf, cdf) grids of the analytic laws
// ---------------------------------------------------------------------------

inline double default_grid_max(law_kind k) {
    switch (k) {
        case law_kind::theta:
        case law_kind::uniform01: return 1.0;
        case law_kind::phi: return 5.0;
        default: return 4.0;
    }
}

inline run_report emit_tables(const experiment_config& cfg) {
    detail::require(!cfg.laws.empty(), "tables: empty law list");
    detail::require(cfg.grid_points >= 2, "tables: need at least 2 grid points");

    run_report rep;
    rep.experiment = "tables";
    rep.config = cfg;

    auto law_kind_of = [](const std::string& s) {
        if (s == "phi") return law_kind::phi;
        if (s == "eta") return law_kind::eta;
        if (s == "lambda") return law_kind::lambda;
        if (s == "gamma") return law_kind::gamma;
        if (s == "delta") return law_kind::delta;
        if (s == "theta") return law_kind::theta;
        if (s == "uniform01") return law_kind::uniform01;
        throw std::invalid_argument("tables: unknown law '" + s + "'");
    };

    for (const auto& name : cfg.laws) {
        law_kind k = law_kind_of(name);
        std::vector<double> alphas =
            k == law_kind::uniform01 ? std::vector<double>{0.0} : cfg.alphas;
        for (double a : alphas) {
            limit_law law = k == law_kind::uniform01 ? limit_law::uniform01()
                                                     : limit_law::make(k, a);
            detail::require(law.atomless(), "tables: degenerate (point mass) table requested");
            const double lo = k == law_kind::phi ? 1.0 : 0.0;
            const double hi = cfg.grid_max > 0.0 ? cfg.grid_max : default_grid_max(k);
            detail::require(hi > lo, "tables: grid_max below the support");
            std::string csv = "x,pdf,cdf\n";
            for (std::int64_t i = 0; i < cfg.grid_points; ++i) {
                // midpoints keep the support-boundary singularities out
                double x = lo + (static_cast<double>(i) + 0.5) * (hi - lo)
                                 / static_cast<double>(cfg.grid_points);
                csv += format_double(x) + ',' + format_double(law.pdf(x)) + ','
                     + format_double(law.cdf(x)) + "\n";
            }
            char fname[64];
            if (k == law_kind::uniform01)
                std::snprintf(fname, sizeof fname, "uniform01.csv");
            else
                std::snprintf(fname, sizeof fname, "%s_a%g.csv", law_name(k), a);
            rep.files.emplace_back(fname, csv);

            report_row row;
            row.statistic = std::string("table ") + fname;
            row.samples = cfg.grid_points;
            row.value = static_cast<double>(cfg.grid_points);
            rep.add(std::move(row));
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// dispatch + output
// ---------------------------------------------------------------------------

inline run_report run_experiment(const experiment_config& cfg) {
    if (cfg.experiment == "dynkin-lamperti") return run_dynkin_lamperti(cfg);
    if (cfg.experiment == "critical-farey") return run_critical_farey(cfg);
    if (cfg.experiment == "critical-thaler") return run_critical_thaler(cfg);
    if (cfg.experiment == "large-deviation") return run_large_deviation(cfg);
    if (cfg.experiment == "tables") return emit_tables(cfg);
    throw std::invalid_argument("unknown experiment '" + cfg.experiment + "'");
}

// Writes manifest.json (the resolved config), report.json, and any CSV files.
inline void write_report(const run_report& rep, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    json manifest = rep.config;
    write_text_file((fs::path(out_dir) / "manifest.json").string(), manifest.dump(2) + "\n");
    write_text_file((fs::path(out_dir) / "report.json").string(),
                    rep.to_json_obj().dump(2) + "\n");
    for (const auto& [name, content] : rep.files)
        write_text_file((fs::path(out_dir) / name).string(), content);
}

} // namespace waitlaw
