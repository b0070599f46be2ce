#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "waitlaw/limit_laws.hpp"
#include "waitlaw/maps.hpp"

namespace waitlaw {

// Empirical distribution of a sample; values kept sorted.
struct ecdf {
    std::vector<double> values;

    explicit ecdf(std::vector<double> v) : values(std::move(v)) {
        if (values.empty()) throw std::invalid_argument("ecdf: empty sample");
        std::sort(values.begin(), values.end());
    }

    std::size_t size() const { return values.size(); }

    double operator()(double x) const {
        auto it = std::upper_bound(values.begin(), values.end(), x);
        return static_cast<double>(it - values.begin()) / static_cast<double>(values.size());
    }
};

// sup_x |F_hat(x) - F(x)| against an atomless reference, evaluated as both
// one-sided gaps at each sample point. Works for any monotone CDF callable.
template <class Cdf>
    requires std::invocable<Cdf&, double>
double ks_distance(const ecdf& sample, Cdf&& reference_cdf) {
    const auto n = static_cast<double>(sample.size());
    double ks = 0.0;
    for (std::size_t i = 0; i < sample.values.size(); ++i) {
        double f = reference_cdf(sample.values[i]);
        double hi = (static_cast<double>(i) + 1.0) / n - f;
        double lo = f - static_cast<double>(i) / n;
        ks = std::max({ks, hi, lo});
    }
    return ks;
}

inline double ks_distance(const ecdf& sample, const limit_law& law) {
    if (!law.atomless())
        throw std::invalid_argument("ks_distance: reference law must be atomless");
    return ks_distance(sample, [&law](double x) { return law.cdf(x); });
}

// DKW band half-width: with probability >= 1 - delta the ECDF of N i.i.d.
// draws stays within sqrt(ln(2/delta)/(2N)) of the true CDF.
inline double dkw_epsilon(std::int64_t n, double delta) {
    if (n < 1) throw std::invalid_argument("dkw_epsilon: need N >= 1");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("dkw_epsilon: delta in (0,1)");
    return std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(n)));
}

// 95% Wilson score interval for a binomial proportion.
struct binom_ci {
    double lo;
    double hi;
};

inline binom_ci wilson_ci95(std::int64_t successes, std::int64_t n) {
    if (n < 1 || successes < 0 || successes > n)
        throw std::invalid_argument("wilson_ci95: bad counts");
    const double z = 1.959963984540054;
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(successes) / nn;
    const double z2n = z * z / nn;
    const double center = (p + z2n / 2.0) / (1.0 + z2n);
    const double half = z * std::sqrt(p * (1.0 - p) / nn + z2n / (4.0 * nn)) / (1.0 + z2n);
    binom_ci ci{std::max(0.0, center - half), std::min(1.0, center + half)};
    if (successes == 0) ci.lo = 0.0; // the rounding residue of center - half
    if (successes == n) ci.hi = 1.0;
    return ci;
}

// One large-deviation estimate: empirical tail probability against the
// asymptote rate * L(n)/W_n, plus the normalized ratio p_hat W_n / (L rate)
// that should approach 1.
struct ld_estimate {
    std::int64_t n;
    double x;
    std::optional<double> y; // set for the joint (age, residual) event
    std::int64_t hits;
    std::int64_t samples;
    double p_hat;
    binom_ci ci;
    double rate;      // H(x) or log((1+y)/(x+y))
    double reference; // rate * L(n)/W_n
    double ratio;     // p_hat / reference
};

namespace detail {
inline ld_estimate make_ld(std::int64_t n, double x, std::optional<double> y, double rate,
                           double wn, std::int64_t hits, std::int64_t samples) {
    if (samples < 1) throw std::invalid_argument("ld estimate: need samples >= 1");
    double reference = rate / wn; // L == 1 for the farey reference set
    if (reference > 1.0)
        throw std::invalid_argument("ld estimate: asymptote exceeds 1 at this n; pick larger n");
    ld_estimate e{};
    e.n = n;
    e.x = x;
    e.y = y;
    e.hits = hits;
    e.samples = samples;
    e.p_hat = static_cast<double>(hits) / static_cast<double>(samples);
    e.ci = wilson_ci95(hits, samples);
    e.rate = rate;
    e.reference = reference;
    e.ratio = e.p_hat / reference;
    return e;
}
} // namespace detail

// nu(V_n/n > x) ~ H(x)/W_n for the farey experiment (L == 1, W_n = log(n+2)).
inline ld_estimate ld_v_process(std::int64_t n, double x, std::int64_t hits, std::int64_t samples) {
    return detail::make_ld(n, x, std::nullopt, ld_rate_h(x), farey_wandering(n), hits, samples);
}

// nu((n-Z_n)/n >= x, (Y_n-n)/n > y) ~ log((1+y)/(x+y))/W_n, same setting.
inline ld_estimate ld_joint(std::int64_t n, double x, double y, std::int64_t hits,
                            std::int64_t samples) {
    return detail::make_ld(n, x, y, ld_rate_joint(x, y), farey_wandering(n), hits, samples);
}

} // namespace waitlaw
