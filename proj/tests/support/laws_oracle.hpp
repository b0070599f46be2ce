#pragma once

// Test-side oracles for the analytic laws: direct quadrature of the closed
// form densities over their supports, independent of the identity-composed
// CDF route inside the library. Tail pieces are folded to (0,1) by s = 1/x.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "waitlaw/limit_laws.hpp"
#include "waitlaw/quadrature.hpp"

namespace waitlaw::testing {

inline double finite_or_zero(double v) { return std::isfinite(v) ? v : 0.0; }

// c/(x (x-1)^a) on [1, b]. tanh_sinh's second argument encodes the distance
// to the nearest endpoint (xc < 0: x = left - xc; xc > 0: x = right - xc), so
// the x-1 offset at the singular left endpoint comes from -xc exactly even
// when x itself rounds onto 1.
inline double phi_density_2arg(double x, double xc, double a, double c) {
    double xm1 = xc < 0.0 ? -xc : x - 1.0;
    if (xm1 <= 0.0) return 0.0; // abscissa rounded onto the endpoint
    return c / (x * std::pow(xm1, a));
}

// (c/a) / (1 - x^(1/a))^a on (0,1), with 1 - x = xc exact at the singular
// right endpoint.
inline double theta_density_2arg(double x, double xc, double a, double c) {
    double t;
    if (xc > 0.0) {
        t = -std::expm1(std::log1p(-xc) / a); // x = 1 - xc
    } else {
        if (x <= 0.0) return 0.0;
        t = -std::expm1(std::log(x) / a);
    }
    if (t <= 0.0) return 0.0;
    return c / a / std::pow(t, a);
}

// Total mass of a parametric law by direct quadrature (target: 1).
inline double direct_total_mass(law_kind kind, double a) {
    const double c = std::sin(std::numbers::pi * a) / std::numbers::pi;
    switch (kind) {
        case law_kind::phi: {
            double head = integrate(
                [&](double x, double xc) { return phi_density_2arg(x, xc, a, c); }, 1.0, 2.0);
            // x = 1/s maps [2,oo) to (0,1/2]; f dx = c s^(a-1) (1-s)^(-a) ds
            double tail = integrate(
                [&](double s) {
                    return s <= 0.0 ? 0.0 : c * std::pow(s, a - 1.0) / std::pow(1.0 - s, a);
                },
                0.0, 0.5);
            return head + tail;
        }
        case law_kind::eta: {
            limit_law law = limit_law::eta(a);
            double head = integrate([&](double x) { return finite_or_zero(law.pdf(x)); }, 0.0, 1.0);
            double tail = integrate(
                [&](double s) { return s <= 0.0 ? 0.0 : c * std::pow(s, a - 1.0); }, 0.0, 1.0);
            return head + tail;
        }
        case law_kind::lambda: {
            limit_law law = limit_law::lambda(a);
            double head = integrate([&](double x) { return law.pdf(x); }, 0.0, 1.0);
            double e = 1.0 / (1.0 - a) - 2.0;
            double tail = integrate(
                [&](double s) { return s <= 0.0 ? 0.0 : c / (1.0 - a) * std::pow(s, e); }, 0.0,
                1.0);
            return head + tail;
        }
        case law_kind::gamma: {
            limit_law law = limit_law::gamma(a);
            double head = integrate([&](double x) { return law.pdf(x); }, 0.0, 1.0);
            // x = 1/s; the w/s^2 factor is folded into one power to stay
            // finite for denormal s
            double tail = integrate(
                [&](double s) {
                    if (s <= 0.0) return 0.0;
                    double w = std::pow(s, 1.0 / a);
                    return c / a * one_minus_pow_ratio(w, a) * std::pow(s, 1.0 / a - 2.0);
                },
                0.0, 1.0);
            return head + tail;
        }
        case law_kind::delta: {
            limit_law law = limit_law::delta(a);
            double head = integrate([&](double x) { return law.pdf(x); }, 0.0, 1.0);
            double e = 1.0 / (1.0 - a);
            double tail = integrate(
                [&](double s) {
                    if (s <= 0.0) return 0.0;
                    return c / (1.0 - a) * std::pow(s, e - 2.0) / (1.0 + std::pow(s, e));
                },
                0.0, 1.0);
            return head + tail;
        }
        case law_kind::theta:
            return integrate(
                [&](double x, double xc) { return theta_density_2arg(x, xc, a, c); }, 0.0, 1.0);
        default:
            throw std::invalid_argument("direct_total_mass: parametric laws only");
    }
}

// CDF by direct quadrature of the law's own density (splitting at the u = 1
// kink of the lambda/gamma forms).
inline double direct_cdf(law_kind kind, double a, double x) {
    const double c = std::sin(std::numbers::pi * a) / std::numbers::pi;
    limit_law law = limit_law::make(kind, a);
    auto f = [&](double t) { return finite_or_zero(law.pdf(t)); };
    switch (kind) {
        case law_kind::phi:
            if (x <= 1.0) return 0.0;
            return integrate([&](double t, double tc) { return phi_density_2arg(t, tc, a, c); },
                             1.0, x);
        case law_kind::theta:
            if (x <= 0.0) return 0.0;
            if (x >= 1.0) return direct_total_mass(kind, a);
            return integrate(f, 0.0, x);
        case law_kind::eta:
        case law_kind::lambda:
        case law_kind::gamma:
        case law_kind::delta: {
            if (x <= 0.0) return 0.0;
            if (x <= 1.0) return integrate(f, 0.0, x);
            return integrate(f, 0.0, 1.0) + integrate(f, 1.0, x);
        }
        default:
            throw std::invalid_argument("direct_cdf: parametric laws only");
    }
}

// Two-sample Kolmogorov-Smirnov distance (test helper).
inline double two_sample_ks(std::vector<double> s1, std::vector<double> s2) {
    std::sort(s1.begin(), s1.end());
    std::sort(s2.begin(), s2.end());
    double ks = 0.0;
    std::size_t i = 0, j = 0;
    const double n1 = static_cast<double>(s1.size()), n2 = static_cast<double>(s2.size());
    while (i < s1.size() && j < s2.size()) {
        if (s1[i] <= s2[j]) ++i; else ++j;
        ks = std::max(ks, std::abs(static_cast<double>(i) / n1 - static_cast<double>(j) / n2));
    }
    return ks;
}

} // namespace waitlaw::testing
