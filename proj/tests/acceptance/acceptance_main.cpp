// Acceptance suite: runs every advertised verification criterion at the
// stated scale and tolerance, printing one pass/fail line each. Exit code is
// the number of failed criteria.

#include <chrono>
#include <cinttypes>
#include <optional>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "support/laws_oracle.hpp"
#include "waitlaw/experiments.hpp"

using namespace waitlaw;

namespace {

int g_failures = 0;

class criterion {
public:
    criterion(int number, std::string title)
        : number_(number), title_(std::move(title)), start_(std::chrono::steady_clock::now()) {}

    void finish(bool pass, const std::string& detail) {
        auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        std::printf("%s  criterion %2d  [%7.1fs]  %s  --  %s\n", pass ? "PASS" : "FAIL", number_,
                    secs, title_.c_str(), detail.c_str());
        std::fflush(stdout);
        if (!pass) ++g_failures;
    }

private:
    int number_;
    std::string title_;
    std::chrono::steady_clock::time_point start_;
};

constexpr std::uint64_t kSeed = 20250809;

// ---------------------------------------------------------------------------
// 1. engine equivalence
// ---------------------------------------------------------------------------

void criterion_1() {
    criterion c(1, "engine equivalence (digit vs orbit, exact)");
    const map_descriptor farey = map_descriptor::make(map_kind::farey);

    std::int64_t mismatches = 0;
    std::int64_t checked = 0;
    {
        const std::int64_t qmax = 10000;
        const int threads = default_threads();
        std::vector<std::int64_t> bad(threads, 0), cnt(threads, 0);
        parallel_for(qmax - 1, threads, [&](std::int64_t idx) {
            std::int64_t q = idx + 2;
            int worker = static_cast<int>(idx % threads);
            for (std::int64_t p = 1; p < q; ++p) {
                if (std::gcd(p, q) != 1) continue;
                auto digits = cf_digits_of_rational(p, q);
                std::int64_t total = std::accumulate(digits.begin(), digits.end(), std::int64_t{0});
                auto vd = visits_from_digits(digits, true);
                auto vo = visits_from_orbit(farey, rat64(p, q), total);
                ++cnt[worker];
                if (vd.times != vo.times || !vo.terminated) ++bad[worker];
            }
        });
        for (int t = 0; t < threads; ++t) {
            mismatches += bad[t];
            checked += cnt[t];
        }
        // the shipped cross_check op on a subsample
        for (std::int64_t q = 2; q <= qmax; q += 997)
            for (std::int64_t p = 1; p < q; p += 13)
                if (std::gcd(p, q) == 1 && !cross_check(farey, rat64(p, q), 2 * q).match)
                    ++mismatches;
    }

    // seeded lazy samples: digit engine vs exact orbit of the convergent
    std::int64_t lazy_checked = 0, lazy_bad = 0;
    {
        using ratz = basic_rat<bigint>;
        const std::int64_t horizon = 1000;
        const int threads = default_threads();
        std::vector<std::int64_t> bad(threads, 0), cnt(threads, 0);
        parallel_for(1000, threads, [&](std::int64_t i) {
            int worker = static_cast<int>(i % threads);
            dyadic_digit_stream stream(derive_seed(kSeed, 1000 + i), 1 << 16);
            auto digits = digits_until_sum_exceeds(stream, horizon + 2);
            while (digits.back() == 1 && digits.size() < 4096) { // canonical CF tail
                auto d = stream.next_digit();
                if (!d) break;
                digits.push_back(*d);
            }
            auto conv = convergents<bigint>(digits).back();
            auto vo = visits_from_orbit(farey, ratz(conv.num, conv.den), horizon);
            auto vd = visits_from_digits(digits);
            std::vector<std::int64_t> vd_cut(
                vd.times.begin(), std::upper_bound(vd.times.begin(), vd.times.end(), horizon));
            ++cnt[worker];
            if (vd_cut != vo.times) ++bad[worker];
        });
        for (int t = 0; t < threads; ++t) {
            lazy_bad += bad[t];
            lazy_checked += cnt[t];
        }
    }

    char detail[160];
    std::snprintf(detail, sizeof detail,
                  "%" PRId64 " rationals q<=1e4 + %" PRId64 " lazy samples, %" PRId64
                  " mismatches",
                  checked, lazy_checked, mismatches + lazy_bad);
    c.finish(mismatches == 0 && lazy_bad == 0 && checked > 30000000 && lazy_checked == 1000,
             detail);
}

// ---------------------------------------------------------------------------
// 2. straddling-digit identity
// ---------------------------------------------------------------------------

void criterion_2() {
    criterion c(2, "sigma_n = V_{n-1} on A_{n-1}, else 1 + Y_{n-1} (exact)");
    const int threads = default_threads();
    std::vector<std::int64_t> bad(threads, 0);
    parallel_for(10000, threads, [&](std::int64_t i) {
        int worker = static_cast<int>(i % threads);
        dyadic_digit_stream stream(derive_seed(kSeed, 50000 + i), 1 << 16);
        auto digits = digits_until_sum_exceeds(stream, 1100);
        xoshiro256pp pick(derive_seed(kSeed, 90000 + i));
        for (int h = 0; h < 20; ++h) {
            auto n = static_cast<std::int64_t>(pick() % 1000) + 1;
            if (!straddle_identity_check(digits, n).pass) ++bad[worker];
        }
    });
    std::int64_t mism = std::accumulate(bad.begin(), bad.end(), std::int64_t{0});
    char detail[120];
    std::snprintf(detail, sizeof detail, "10000 streams x 20 horizons, %" PRId64 " mismatches",
                  mism);
    c.finish(mism == 0, detail);
}

// ---------------------------------------------------------------------------
// 3. analytic oracle integrity
// ---------------------------------------------------------------------------

void criterion_3() {
    criterion c(3, "analytic law integrity (normalization, identities, closed forms)");
    double worst_mass = 0.0, worst_cdf = 0.0, worst_closed = 0.0;
    const law_kind parametric[6] = {law_kind::phi,   law_kind::eta,   law_kind::lambda,
                                    law_kind::gamma, law_kind::delta, law_kind::theta};
    for (double a : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        for (law_kind k : parametric)
            worst_mass = std::max(worst_mass, std::abs(testing::direct_total_mass(k, a) - 1.0));
        for (law_kind k : {law_kind::lambda, law_kind::gamma, law_kind::delta, law_kind::theta}) {
            limit_law law = limit_law::make(k, a);
            double hi = k == law_kind::theta ? 0.99 : 4.0;
            for (int i = 1; i <= 50; ++i) {
                double x = hi * i / 50.0;
                worst_cdf = std::max(worst_cdf,
                                     std::abs(law.cdf(x) - testing::direct_cdf(k, a, x)));
            }
        }
    }
    limit_law arcsine = limit_law::theta(0.5), cauchy = limit_law::delta(0.5);
    for (int i = 1; i <= 50; ++i) {
        double x = i / 51.0;
        worst_closed = std::max(worst_closed,
                                std::abs(arcsine.cdf(x) - 2.0 / std::numbers::pi * std::asin(x)));
        double y = i / 5.0;
        worst_closed = std::max(worst_closed,
                                std::abs(cauchy.cdf(y) - 2.0 / std::numbers::pi * std::atan(y)));
    }
    char detail[160];
    std::snprintf(detail, sizeof detail,
                  "|mass-1| <= %.2e (band 1e-8), |F_id-F_quad| <= %.2e (1e-6), "
                  "|F-closed| <= %.2e (1e-9)",
                  worst_mass, worst_cdf, worst_closed);
    c.finish(worst_mass <= 1e-8 && worst_cdf <= 1e-6 && worst_closed <= 1e-9, detail);
}

// ---------------------------------------------------------------------------
// 4 + 5. Dynkin-Lamperti and the distorted laws at desk scale
// ---------------------------------------------------------------------------

void criteria_4_5(bool run4, bool run5) {
    std::optional<criterion> c4, c5;
    if (run4) c4.emplace(4, "Y/n and V/n against phi_a, eta_a (renewal surrogate)");
    if (run5) c5.emplace(5, "Lambda,Gamma,Delta,Theta against their alpha laws");
    experiment_config cfg;
    cfg.experiment = "dynkin-lamperti";
    cfg.alphas = {0.3, 0.5, 0.7};
    cfg.horizons = {100000};
    cfg.samples = 50000;
    cfg.seed = kSeed;
    auto rep = run_dynkin_lamperti(cfg);

    double worst_primary = 0.0, worst_distorted = 0.0;
    bool primary_ok = true, distorted_ok = true;
    for (const auto& row : rep.rows) {
        bool primary = row.statistic == "KS(Y/n, phi)" || row.statistic == "KS(V/n, eta)";
        if (primary) {
            worst_primary = std::max(worst_primary, row.value);
            primary_ok = primary_ok && row.pass;
        } else {
            worst_distorted = std::max(worst_distorted, row.value);
            distorted_ok = distorted_ok && row.pass;
        }
    }
    if (c4) {
        // Integer-time renewal has no visit in (n, n+1) and none of V in
        // (0,1), so KS(Y/n, phi) >= F_phi(1 + 1/n) and KS(V/n, eta) >=
        // F_eta(1/n) whatever the sampler: at alpha = 0.7, n = 1e5 that
        // floor is 0.0271, above the 0.02 band. The band is kept as stated
        // and the floor is printed next to the result.
        double floor_phi = limit_law::phi(0.7).cdf(1.0 + 1e-5);
        char d4[180];
        std::snprintf(d4, sizeof d4,
                      "max KS = %.4f over alpha in {0.3,0.5,0.7} (band 0.02; lattice floor at "
                      "alpha=0.7 is %.4f -- unattainable as stated, see ledger)",
                      worst_primary, floor_phi);
        c4->finish(primary_ok, d4);
    }
    if (c5) {
        char d5[120];
        std::snprintf(d5, sizeof d5, "max KS = %.4f over 4 laws x 3 alphas (band 0.03)",
                      worst_distorted);
        c5->finish(distorted_ok, d5);
    }
}

// ---------------------------------------------------------------------------
// 6. critical case, slowly varying W (farey)
// ---------------------------------------------------------------------------

void criterion_6() {
    criterion c(6, "Lambda, Delta to Uniform at n = 1e6 + monotone KS (farey)");
    experiment_config cfg;
    cfg.experiment = "critical-farey";
    cfg.horizons = {1000, 31623, 1000000};
    cfg.samples = 10000;
    cfg.seed = kSeed + 1;
    auto rep = run_critical_farey(cfg);
    bool ok = true;
    double ks_last = 0.0;
    std::string mono;
    for (const auto& row : rep.rows) {
        if (row.n == 1000000
            && (row.statistic == "KS(Lambda, U)" || row.statistic == "KS(Delta, U)")) {
            ok = ok && row.pass;
            ks_last = std::max(ks_last, row.value);
        }
        if (row.statistic.find("strictly decreasing") != std::string::npos) {
            ok = ok && row.pass;
            mono += row.pass ? '+' : '-';
        }
    }
    char detail[120];
    std::snprintf(detail, sizeof detail, "max KS(n=1e6) = %.4f (band 0.12), monotone [%s]",
                  ks_last, mono.c_str());
    c.finish(ok, detail);
}

// ---------------------------------------------------------------------------
// 7. critical case, W ~ n/log n (thaler0)
// ---------------------------------------------------------------------------

void criterion_7() {
    criterion c(7, "censored CDF of log n / log V_n (thaler0 orbit engine)");
    experiment_config cfg;
    cfg.experiment = "critical-thaler";
    cfg.horizons = {1000};
    cfg.samples = 1000;
    cfg.iter_cap = 1000000;
    cfg.thaler_x = {0.5, 0.6, 0.8};
    cfg.seed = kSeed + 2;
    auto rep = run_critical_thaler(cfg);
    bool ok = true;
    double worst = 0.0;
    for (const auto& row : rep.rows) {
        if (!row.extra.contains("x")) continue;
        ok = ok && row.pass;
        worst = std::max(worst, std::abs(row.value - row.extra["x"].get<double>()));
    }
    char detail[130];
    std::snprintf(detail, sizeof detail,
                  "max |P_hat - x| = %.4f at x in {0.5,0.6,0.8} (band 0.1)", worst);
    c.finish(ok, detail);
}

// ---------------------------------------------------------------------------
// 8 + 9. large deviations and continued-fraction corollaries (one heavy pass)
// ---------------------------------------------------------------------------

void criteria_8_9(bool run8, bool run9) {
    std::optional<criterion> c8, c9;
    if (run8) c8.emplace(8, "V and joint (Z,Y) large deviations at n = 1e6, N = 1e6 (farey)");
    if (run9) c9.emplace(9, "sigma_n: KS(log sigma/log n, U) decreasing + tail at x = 1");
    experiment_config cfg;
    cfg.experiment = "large-deviation";
    cfg.horizons = {1000, 31623, 1000000};
    cfg.samples = 1000000;
    cfg.ks_samples = 10000;
    cfg.x_grid = {0.5, 1.0, 2.0};
    cfg.xy_grid = {{0.5, 0.5}};
    cfg.seed = kSeed + 3;
    auto rep = run_large_deviation(cfg);

    bool ok8 = true;
    double worst8 = 0.0;
    bool ok9 = true;
    double sigma_tail_ratio = 0.0, sigma_ks = 0.0;
    std::string mono;
    for (const auto& row : rep.rows) {
        if (row.statistic == "P(V/n > x) * W_n / H(x)") {
            double x = row.extra["x"].get<double>();
            if (x == 0.5 || x == 2.0) {
                ok8 = ok8 && row.pass;
                worst8 = std::max(worst8, std::abs(row.value - 1.0));
            }
        }
        if (row.statistic.find("(n-Z)/n >= x") != std::string::npos) {
            ok8 = ok8 && row.pass;
            worst8 = std::max(worst8, std::abs(row.value - 1.0));
        }
        if (row.statistic == "P(sigma/n > x) * W_n / H(x)"
            && row.extra["x"].get<double>() == 1.0) {
            ok9 = ok9 && row.pass;
            sigma_tail_ratio = row.value;
        }
        if (row.statistic == "KS(log sigma / log n, U)" && row.n == 1000000) {
            ok9 = ok9 && row.pass;
            sigma_ks = row.value;
        }
        if (row.statistic.find("strictly decreasing") != std::string::npos) {
            ok9 = ok9 && row.pass;
            mono = row.pass ? "+" : "-";
        }
    }
    if (c8) {
        char d8[140];
        std::snprintf(d8, sizeof d8,
                      "max |pW/H - 1| = %.4f for x in {0.5,2} and (x,y)=(0.5,0.5) (band 0.2)",
                      worst8);
        c8->finish(ok8, d8);
    }
    if (c9) {
        char d9[170];
        std::snprintf(d9, sizeof d9,
                      "KS(n=1e6) = %.4f (band 0.12, monotone [%s]), |p log(n+2) - 1| = %.4f "
                      "(band 0.2)",
                      sigma_ks, mono.c_str(), std::abs(sigma_tail_ratio - 1.0));
        c9->finish(ok9, d9);
    }
}

// ---------------------------------------------------------------------------
// 10. determinism
// ---------------------------------------------------------------------------

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void criterion_10() {
    criterion c(10, "byte-identical outputs for identical config + seed");
    namespace fs = std::filesystem;
    experiment_config cfg;
    cfg.experiment = "critical-farey";
    cfg.horizons = {500, 5000};
    cfg.samples = 2000;
    cfg.seed = kSeed + 4;
    cfg.emit_records = true;

    fs::path tmp = fs::temp_directory_path() / "waitlaw_acceptance_det";
    fs::remove_all(tmp);
    cfg.threads = 1;
    write_report(run_critical_farey(cfg), (tmp / "t1").string());
    cfg.threads = 2;
    write_report(run_critical_farey(cfg), (tmp / "t2").string());

    bool ok = true;
    for (const char* name : {"report.json", "manifest.json", "records.csv"}) {
        std::string a = slurp(tmp / "t1" / name), b = slurp(tmp / "t2" / name);
        // manifests echo the configured thread count; blank it for comparison
        if (std::string(name) == "manifest.json") {
            auto ja = json::parse(a), jb = json::parse(b);
            ja["threads"] = 0;
            jb["threads"] = 0;
            a = ja.dump(2);
            b = jb.dump(2);
        }
        ok = ok && a == b && !a.empty();
    }

    // a second experiment family, repeated runs
    experiment_config ld;
    ld.experiment = "large-deviation";
    ld.horizons = {2000};
    ld.samples = 5000;
    ld.ks_samples = 1000;
    ld.seed = kSeed + 5;
    write_report(run_large_deviation(ld), (tmp / "ld1").string());
    write_report(run_large_deviation(ld), (tmp / "ld2").string());
    ok = ok && slurp(tmp / "ld1" / "report.json") == slurp(tmp / "ld2" / "report.json");

    // and the raw stream source
    dyadic_digit_stream s1(kSeed), s2(kSeed);
    for (int i = 0; i < 200; ++i) ok = ok && s1.next_digit() == s2.next_digit();

    fs::remove_all(tmp);
    c.finish(ok, "critical-farey (threads 1 vs 2), large-deviation (re-run), raw streams");
}

} // namespace

// Runs the whole suite, or only the criteria named on the command line
// (each ctest entry selects one; 8 and 9 share their Monte Carlo pass).
int main(int argc, char** argv) {
    std::vector<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));
    auto want = [&](int k) {
        return wanted.empty() || std::find(wanted.begin(), wanted.end(), k) != wanted.end();
    };

    std::printf("acceptance suite: %d hardware threads\n", default_threads());
    if (want(1)) criterion_1();
    if (want(2)) criterion_2();
    if (want(3)) criterion_3();
    if (want(4) || want(5)) criteria_4_5(want(4), want(5));
    if (want(6)) criterion_6();
    if (want(7)) criterion_7();
    if (want(8) || want(9)) criteria_8_9(want(8), want(9));
    if (want(10)) criterion_10();
    std::printf("%s (%d failed)\n", g_failures == 0 ? "ALL CRITERIA PASS" : "FAILURES PRESENT",
                g_failures);
    return g_failures;
}
