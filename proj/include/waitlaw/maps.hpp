#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "waitlaw/errors.hpp"
#include "waitlaw/rational.hpp"

namespace waitlaw {

enum class map_kind { farey, lasota_yorke, thaler0, gauss };

inline map_kind map_from_name(std::string_view name) {
    if (name == "farey") return map_kind::farey;
    if (name == "lasota-yorke") return map_kind::lasota_yorke;
    if (name == "thaler0") return map_kind::thaler0;
    if (name == "gauss") return map_kind::gauss;
    throw std::invalid_argument("unknown map '" + std::string(name)
                                + "' (expected farey|lasota-yorke|thaler0|gauss)");
}

inline const char* map_name(map_kind kind) {
    switch (kind) {
        case map_kind::farey: return "farey";
        case map_kind::lasota_yorke: return "lasota-yorke";
        case map_kind::thaler0: return "thaler0";
        case map_kind::gauss: return "gauss";
    }
    return "?";
}

// x + x^2 e^(-1/x), the indifferent left branch of the thaler0 map.
inline double thaler_f(double x) {
    if (x <= 0.0) return 0.0;
    return x + x * x * std::exp(-1.0 / x);
}

// Root a of f(a) = 1 in (0,1); bisection to 1e-14 relative width.
inline double thaler_boundary() {
    double lo = 0.5, hi = 0.95; // f(0.5) < 1 < f(0.95)
    while ((hi - lo) > 1e-14 * lo) {
        double mid = 0.5 * (lo + hi);
        (thaler_f(mid) < 1.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// Immutable map description. The branch boundary doubles as the reference
// set description: visits are counted in (boundary, 1], i.e. K1 = (1/2, 1]
// for farey and lasota-yorke, (a, 1] for thaler0; gauss carries no reference
// set (it appears as the induced map on the irrationals).
struct map_descriptor {
    map_kind kind;
    double boundary; // 1/2, 1/2, a, (unused for gauss)

    static map_descriptor make(map_kind k) {
        switch (k) {
            case map_kind::farey:
            case map_kind::lasota_yorke: return {k, 0.5};
            case map_kind::thaler0: return {k, thaler_boundary()};
            case map_kind::gauss: return {k, 0.0};
        }
        throw std::logic_error("map_descriptor::make");
    }
    static map_descriptor make(std::string_view name) { return make(map_from_name(name)); }
};

// ---------------------------------------------------------------------------
// Exact application on rationals (farey / lasota-yorke / gauss)
// ---------------------------------------------------------------------------

template <class Int>
basic_rat<Int> apply(const map_descriptor& map, const basic_rat<Int>& x) {
    const Int& p = x.num;
    const Int& q = x.den;
    if (p < 0 || p > q) throw std::invalid_argument("apply: x outside [0,1]");
    switch (map.kind) {
        case map_kind::farey:
            if (2 * p <= q) return {p, q - p};       // x/(1-x)
            return {q - p, p};                       // 1/x - 1
        case map_kind::lasota_yorke:
            if (2 * p <= q) return {p, q - p};
            return {2 * p - q, q};                   // 2x - 1
        case map_kind::gauss: {
            if (p == 0) return {Int(0), Int(1)};
            return {q % p, p};                       // 1/x - floor(1/x)
        }
        case map_kind::thaler0:
            throw std::invalid_argument("apply: thaler0 is not a rational map");
    }
    throw std::logic_error("apply");
}

inline double apply(const map_descriptor& map, double x) {
    if (x < 0.0 || x > 1.0) throw std::invalid_argument("apply: x outside [0,1]");
    switch (map.kind) {
        case map_kind::farey:
            return x <= 0.5 ? x / (1.0 - x) : 1.0 / x - 1.0;
        case map_kind::lasota_yorke:
            return x <= 0.5 ? x / (1.0 - x) : 2.0 * x - 1.0;
        case map_kind::thaler0:
            return x <= map.boundary ? thaler_f(x) : (x - map.boundary) / (1.0 - map.boundary);
        case map_kind::gauss: {
            if (x == 0.0) return 0.0;
            double inv = 1.0 / x;
            return inv - std::floor(inv);
        }
    }
    throw std::logic_error("apply");
}

// ---------------------------------------------------------------------------
// Farey left-branch closed forms
// ---------------------------------------------------------------------------

// n-th iterate of the inverse left branch: x / (1 + n x).
template <class Int>
basic_rat<Int> u0_pow(const basic_rat<Int>& x, std::int64_t n) {
    if (n < 0) throw std::invalid_argument("u0_pow: n must be >= 0");
    if (x.num < 0 || x.num > x.den) throw std::invalid_argument("u0_pow: x outside [0,1]");
    return {x.num, x.den + Int(n) * x.num};
}

inline double u0_pow(double x, std::int64_t n) {
    if (n < 0) throw std::invalid_argument("u0_pow: n must be >= 0");
    if (x < 0.0 || x > 1.0) throw std::invalid_argument("u0_pow: x outside [0,1]");
    return x / (1.0 + static_cast<double>(n) * x);
}

template <class Int>
struct laminar_exit {
    std::int64_t k;      // least k >= 1 with T0^k(x) > 1/2
    basic_rat<Int> exit; // T0^k(x)
};

// Closed-form escape through the laminar phase: T0^k(x) = x/(1 - k x), so
// k* = floor((1-2x)/x) + 1. Valid for the farey and lasota-yorke left branch.
template <class Int>
laminar_exit<Int> laminar_escape(const basic_rat<Int>& x) {
    const Int& p = x.num;
    const Int& q = x.den;
    if (p <= 0) throw std::invalid_argument("laminar_escape: x = 0 never escapes");
    if (2 * p > q) throw std::invalid_argument("laminar_escape: need 0 < x <= 1/2");
    Int k = (q - 2 * p) / p + 1; // (1-2x)/x floors exactly in integers
    auto kk = static_cast<std::int64_t>(k);
    return {kk, basic_rat<Int>(p, q - k * p)};
}

inline std::pair<std::int64_t, double> laminar_escape(double x) {
    if (x <= 0.0) throw std::invalid_argument("laminar_escape: x = 0 never escapes");
    if (x > 0.5) throw std::invalid_argument("laminar_escape: need 0 < x <= 1/2");
    auto k = static_cast<std::int64_t>(std::floor((1.0 - 2.0 * x) / x)) + 1;
    if (k < 1) k = 1;
    // float floor can land one off right at cell boundaries; nudge (monotone in k).
    for (int guard = 0; guard < 8; ++guard) {
        double den = 1.0 - static_cast<double>(k) * x;
        double exit = den > 0.0 ? x / den : 2.0;
        if (exit > 0.5 && exit <= 1.0) return {k, exit};
        k += (den <= 0.0 || exit > 1.0) ? -1 : +1;
        if (k < 1) k = 1;
    }
    throw std::logic_error("laminar_escape(double): no escape count near closed form");
}

// ---------------------------------------------------------------------------
// Farey wandering rate for K1 = (1/2, 1]
// ---------------------------------------------------------------------------

// W_n(K1) = log(n+2).
inline double farey_wandering(std::int64_t n) {
    if (n < 0) throw std::invalid_argument("farey_wandering: n must be >= 0");
    return std::log(static_cast<double>(n) + 2.0);
}

// mu(K1 and {phi > n}) = log((n+2)/(n+1)); the value forced by
// W_n - W_{n-1} = m_n together with W_n = log(n+2) and m_0 = mu(K1) = log 2
// (the set {phi > n} inside K1 is [(n+1)/(n+2), 1]).
inline double farey_tail(std::int64_t n) {
    if (n < 0) throw std::invalid_argument("farey_tail: n must be >= 0");
    return std::log1p(1.0 / (static_cast<double>(n) + 1.0));
}

} // namespace waitlaw
