#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "waitlaw/processes.hpp"
#include "waitlaw/stats.hpp"

namespace waitlaw {

// psi_n = max{p >= 0 : kappa_1 + ... + kappa_p <= n} and the straddling digit
// sigma_n = kappa_{psi_n + 1}.
struct straddle_record {
    std::int64_t n;
    std::int64_t psi;
    std::int64_t sigma;
    bool in_a_prev; // x in A_{n-1}, i.e. kappa_1 <= n
};

namespace detail {
// Walk the prefix sums; requires the list to reach past n.
inline straddle_record straddle_from_list(const std::vector<std::int64_t>& digits, std::int64_t n) {
    if (n < 0) throw std::invalid_argument("straddle: n must be >= 0");
    std::int64_t p = 0, s = 0;
    for (auto d : digits) {
        if (d < 1) throw std::invalid_argument("straddle: digits must be >= 1");
        if (s + d > n) return {n, p, d, digits.empty() ? false : digits.front() <= n};
        s += d;
        ++p;
    }
    throw termination_error("straddle: digit list ends at sum " + std::to_string(s)
                            + " <= n = " + std::to_string(n));
}
} // namespace detail

inline std::int64_t psi(const std::vector<std::int64_t>& digits, std::int64_t n) {
    return detail::straddle_from_list(digits, n).psi;
}

inline std::int64_t sigma(const std::vector<std::int64_t>& digits, std::int64_t n) {
    return detail::straddle_from_list(digits, n).sigma;
}

inline straddle_record straddle_at(const std::vector<std::int64_t>& digits, std::int64_t n) {
    return detail::straddle_from_list(digits, n);
}

// sigma_n = V_{n-1} on A_{n-1}, and 1 + Y_{n-1} off it. The two sides are
// computed along independent paths: sigma by the prefix-sum walk above, the
// waiting record through the visit-time list.
struct straddle_identity_result {
    bool pass;
    std::int64_t sigma;
    std::int64_t rhs;
    bool via_v_branch; // x in A_{n-1}
};

inline straddle_identity_result straddle_identity_check(const std::vector<std::int64_t>& digits, std::int64_t n) {
    if (n < 1) throw std::invalid_argument("straddle_identity_check: need n >= 1");
    straddle_record st = straddle_at(digits, n);
    waiting_record rec = waiting_record_at(visits_from_digits(digits), n - 1);
    std::int64_t rhs = rec.in_a ? rec.v : 1 + rec.y;
    return {st.sigma == rhs, st.sigma, rhs, rec.in_a};
}

// One row of the sigma_n tail experiment: empirical nu(sigma_n > x n) with a
// 95% binomial interval against the asymptote H(x)/W_n. Rows with x >= 1 are
// outside the range the distributional statement is made for and carry a flag.
struct sigma_tail_row {
    std::int64_t n;
    double x;
    std::int64_t hits;
    std::int64_t samples;
    double p_hat;
    binom_ci ci;
    double reference;  // H(x)/log(n+2)
    double normalized; // p_hat * log(n+2)/H(x)
    bool beyond_stated_range;
};

inline sigma_tail_row sigma_tail_estimate(std::int64_t n, double x, std::int64_t hits,
                                          std::int64_t samples) {
    if (!(x > 0.0)) throw std::invalid_argument("sigma_tail_estimate: need x > 0");
    if (samples < 1) throw std::invalid_argument("sigma_tail_estimate: need samples >= 1");
    sigma_tail_row row{};
    row.n = n;
    row.x = x;
    row.hits = hits;
    row.samples = samples;
    row.p_hat = static_cast<double>(hits) / static_cast<double>(samples);
    row.ci = wilson_ci95(hits, samples);
    row.reference = ld_rate_h(x) / farey_wandering(n);
    row.normalized = row.p_hat * farey_wandering(n) / ld_rate_h(x);
    row.beyond_stated_range = x >= 1.0;
    return row;
}

} // namespace waitlaw
