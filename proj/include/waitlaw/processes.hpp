#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "waitlaw/digit_stream.hpp"
#include "waitlaw/errors.hpp"
#include "waitlaw/maps.hpp"
#include "waitlaw/rational.hpp"

namespace waitlaw {

// ---------------------------------------------------------------------------
// Visit times of the reference set
// ---------------------------------------------------------------------------

struct visit_times {
    std::vector<std::int64_t> times; // strictly increasing, complete up to the horizon
    std::int64_t complete_to = -1;   // no visit <= complete_to is missing
    bool terminated = false;         // rational absorbed: no further visits, ever

    void check() const {
        for (std::size_t i = 0; i + 1 < times.size(); ++i)
            if (times[i] >= times[i + 1])
                throw std::invalid_argument("visit_times: times must increase strictly");
    }
};

// Visits of K1 = (1/2,1] under the farey map, read off the digit prefix:
// the orbit is in K1 exactly at times s_k - 1, s_k = kappa_1 + ... + kappa_k.
// Set cf_complete when the digits are the full (rational) expansion.
inline visit_times visits_from_digits(const std::vector<std::int64_t>& digits,
                                      bool cf_complete = false) {
    if (digits.empty() && !cf_complete)
        throw std::invalid_argument("visits_from_digits: empty digit list");
    visit_times v;
    v.times.reserve(digits.size());
    std::int64_t s = 0;
    for (auto d : digits) {
        if (d < 1) throw std::invalid_argument("visits_from_digits: digits must be >= 1");
        s += d;
        v.times.push_back(s - 1);
    }
    v.complete_to = cf_complete ? std::numeric_limits<std::int64_t>::max() : s - 1;
    v.terminated = cf_complete;
    return v;
}

// Visits of K1 up to `horizon` by exact orbit iteration (farey or lasota-yorke
// on rationals), using the closed-form laminar jump through (0,1/2].
template <class Int>
visit_times visits_from_orbit(const map_descriptor& map, basic_rat<Int> x, std::int64_t horizon) {
    if (map.kind != map_kind::farey && map.kind != map_kind::lasota_yorke)
        throw std::invalid_argument("visits_from_orbit: exact engine covers farey and lasota-yorke");
    if (x.num < 0 || x.num > x.den) throw std::invalid_argument("visits_from_orbit: x outside [0,1]");
    if (horizon < 0) throw std::invalid_argument("visits_from_orbit: horizon must be >= 0");

    visit_times v;
    std::int64_t t = 0;
    while (t <= horizon) {
        if (x.num == 0) { // absorbed at the indifferent fixed point
            v.terminated = true;
            v.complete_to = std::numeric_limits<std::int64_t>::max();
            return v;
        }
        if (2 * x.num > x.den) {
            v.times.push_back(t);
            x = waitlaw::apply(map, x);
            ++t;
        } else {
            auto jump = laminar_escape(x); // no visits strictly inside (0,1/2]
            t += jump.k;
            x = jump.exit;
        }
    }
    v.complete_to = horizon;
    return v;
}

// ---------------------------------------------------------------------------
// Waiting-time processes
// ---------------------------------------------------------------------------

// Z_n = max{k<=n : T^k x in A} (0 and in_a=false when the orbit has not hit A
// by time n), Y_n = min{k>n : T^k x in A}, V_n = Y_n - Z_n.
struct waiting_record {
    std::int64_t n;
    std::int64_t z;
    std::int64_t y;
    std::int64_t v;
    bool in_a;

    void check() const {
        if (!(z <= n && n < y)) throw std::logic_error("waiting_record: need Z <= n < Y");
        if (v != y - z || v < 1) throw std::logic_error("waiting_record: V = Y - Z >= 1");
        if (!in_a && z != 0) throw std::logic_error("waiting_record: Z = 0 off A_n");
    }
};

inline waiting_record waiting_record_at(const visit_times& visits, std::int64_t n) {
    if (n < 0) throw std::invalid_argument("waiting_record_at: n must be >= 0");
    auto it = std::upper_bound(visits.times.begin(), visits.times.end(), n);
    if (it == visits.times.end()) {
        if (visits.terminated)
            throw termination_error("waiting_record_at: orbit absorbed, no visit beyond "
                                    + std::to_string(n));
        throw horizon_error("waiting_record_at: no visit > " + std::to_string(n)
                            + " within horizon; extend the stream or orbit");
    }
    waiting_record r{};
    r.n = n;
    r.y = *it;
    if (it == visits.times.begin()) {
        r.z = 0;
        r.in_a = false;
    } else {
        r.z = *(it - 1);
        r.in_a = true;
    }
    r.v = r.y - r.z;
    r.check();
    return r;
}

// First return time phi(x) = inf{k>=1 : T^k x in A} for x in A. For farey this
// is kappa_1(T x); the general rational engine iterates.
template <class Int>
std::int64_t first_return(const map_descriptor& map, const basic_rat<Int>& x) {
    if (2 * x.num <= x.den || x.num > x.den)
        throw std::invalid_argument("first_return: x must lie in A = (1/2,1]");
    if (map.kind == map_kind::farey) {
        basic_rat<Int> tx = waitlaw::apply(map, x); // 1/x - 1 in [0,1)
        if (tx.num == 0) throw termination_error("first_return: orbit absorbed at 0");
        return static_cast<std::int64_t>(tx.den / tx.num); // kappa_1(Tx)
    }
    if (map.kind == map_kind::lasota_yorke) {
        basic_rat<Int> cur = waitlaw::apply(map, x);
        std::int64_t t = 1;
        for (;;) {
            if (2 * cur.num > cur.den) return t;
            if (cur.num == 0) throw termination_error("first_return: orbit absorbed at 0");
            auto jump = laminar_escape(cur);
            t += jump.k;
            cur = jump.exit;
            if (2 * cur.num > cur.den) return t;
        }
    }
    throw std::invalid_argument("first_return: exact engine covers farey and lasota-yorke");
}

// ---------------------------------------------------------------------------
// Two-engine cross check
// ---------------------------------------------------------------------------

struct cross_check_report {
    bool match;
    visit_times from_digits;
    visit_times from_orbit;
};

// Digit engine vs orbit engine for a rational point, compared up to the
// smaller completeness horizon.
template <class Int>
cross_check_report cross_check(const map_descriptor& map, const basic_rat<Int>& x,
                               std::int64_t horizon) {
    if (map.kind != map_kind::farey)
        throw std::invalid_argument("cross_check: digit engine is tied to the farey map");
    auto digits = cf_digits_of_rational(x.num, x.den);
    cross_check_report rep{true, visits_from_digits(digits, true),
                           visits_from_orbit(map, x, horizon)};
    std::int64_t upto = std::min(rep.from_digits.complete_to, rep.from_orbit.complete_to);
    auto trunc = [upto](const std::vector<std::int64_t>& t) {
        return std::vector<std::int64_t>(t.begin(), std::upper_bound(t.begin(), t.end(), upto));
    };
    rep.match = trunc(rep.from_digits.times) == trunc(rep.from_orbit.times);
    return rep;
}

// ---------------------------------------------------------------------------
// Streaming straddle of the digit partial sums
// ---------------------------------------------------------------------------

// At threshold t: index p = max{k>=0 : s_k <= t} (s_0 = 0), s_p, the crossing
// term kappa_{p+1} and s_{p+1} > t. This is the one scan every waiting-time
// and straddling-digit quantity reads off.
struct sum_straddle {
    std::int64_t index;
    std::int64_t sum_at;
    std::int64_t next_term;
    std::int64_t sum_next;
};

template <DigitSource S>
std::vector<sum_straddle> straddle_scan(S& src, const std::vector<std::int64_t>& thresholds) {
    for (std::size_t i = 0; i + 1 < thresholds.size(); ++i)
        if (thresholds[i] > thresholds[i + 1])
            throw std::invalid_argument("straddle_scan: thresholds must be sorted ascending");
    std::vector<sum_straddle> out;
    out.reserve(thresholds.size());
    std::int64_t index = 0, sum = 0;
    std::int64_t next_term = 0, sum_next = 0;
    bool have_next = false;
    for (std::int64_t t : thresholds) {
        if (t < 0) throw std::invalid_argument("straddle_scan: thresholds must be >= 0");
        for (;;) {
            if (!have_next) {
                auto d = src.next_digit();
                if (!d) throw termination_error("straddle_scan: stream ended at sum "
                                                + std::to_string(sum));
                next_term = *d;
                sum_next = sum + next_term;
                have_next = true;
            }
            if (sum_next > t) break;
            index += 1;
            sum = sum_next;
            have_next = false;
        }
        out.push_back({index, sum, next_term, sum_next});
    }
    return out;
}

// Farey/CF reading: visits happen at s_k - 1, so the waiting record at n uses
// the straddle at threshold n+1.
inline waiting_record waiting_from_cf_straddle(const sum_straddle& st, std::int64_t n) {
    waiting_record r{};
    r.n = n;
    r.in_a = st.index >= 1;
    r.z = r.in_a ? st.sum_at - 1 : 0;
    r.y = st.sum_next - 1;
    r.v = r.y - r.z;
    r.check();
    return r;
}

// Renewal reading: visits are the partial sums themselves (S_0 = 0 included),
// so the waiting record at n uses the straddle at threshold n.
inline waiting_record waiting_from_renewal_straddle(const sum_straddle& st, std::int64_t n) {
    waiting_record r{};
    r.n = n;
    r.in_a = true;
    r.z = st.sum_at;
    r.y = st.sum_next;
    r.v = r.y - r.z;
    r.check();
    return r;
}

} // namespace waitlaw
