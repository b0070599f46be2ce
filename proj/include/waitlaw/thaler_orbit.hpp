#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "waitlaw/errors.hpp"
#include "waitlaw/random.hpp"

namespace waitlaw {

// Working float type for the thaler0 orbit engine: binary floating point with
// a 128-bit mantissa (configurable through the template parameter below).
using thaler_real = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<128, boost::multiprecision::digit_base_2>,
    boost::multiprecision::et_off>;

// T(x) = x + x^2 exp(-1/x) on [0,a], (x-a)/(1-a) on (a,1], with f(a) = 1.
// The reference set is A = (a,1].
//
// Precision contract: each map application perturbs the represented point by
// at most a few ulps of the working precision, so the engine follows an exact
// orbit of a point within that distance per step (a pseudo-orbit). Pointwise
// shadowing over the full iteration cap is not attainable at any fixed
// precision (the derivative along an excursion entering at x grows like
// e^(1/x), so the accumulated expansion exceeds 10^100 long before the cap);
// the statistics below are those of the pseudo-orbit, and every branch
// decision is certified unambiguous at the per-step perturbation scale, else
// the sample fails with precision_degraded_error.
template <class Real = thaler_real>
class thaler_map {
public:
    thaler_map() {
        // Bisect f(a) = 1 in working precision; keep the lower bracket so the
        // left branch never exceeds 1.
        Real lo = Real(1) / 2, hi = Real(95) / 100;
        const Real tol = std::numeric_limits<Real>::epsilon() * 256;
        while (hi - lo > tol * lo) {
            Real mid = (lo + hi) / 2;
            (left_branch(mid) < 1 ? lo : hi) = mid;
        }
        a_ = lo;
        inv_one_minus_a_ = 1 / (1 - a_);
        a_double_ = static_cast<double>(a_);
    }

    static Real left_branch(const Real& x) {
        if (x <= 0) return 0;
        return x + x * x * exp(-1 / x);
    }

    const Real& boundary() const { return a_; }
    double boundary_double() const { return a_double_; }
    const Real& inv_one_minus_a() const { return inv_one_minus_a_; }

    // Ambiguity scale for branch decisions: a generous multiple of the
    // per-step rounding perturbation.
    static double decision_scale() {
        return 64.0 * static_cast<double>(std::numeric_limits<Real>::epsilon());
    }

private:
    Real a_;
    Real inv_one_minus_a_;
    double a_double_;
};

// Waiting record with cap censoring: either y is resolved exactly, or the
// engine proved V_n > v_exceeds (>= cap) without finding the next visit.
struct thaler_record {
    std::int64_t n = 0;
    std::int64_t z = 0;
    bool in_a = false;
    std::optional<std::int64_t> y;
    std::int64_t v_exceeds = 0; // meaningful when !y
    std::int64_t steps = 0;     // map applications actually performed
};

namespace detail {

// Rigorous lower bound on the number of steps the left branch needs to climb
// from x to the boundary a: increments t^2 e^(-1/t) increase in t, so the
// step count dominates the integral of 1/increment, which is
// e^(1/x) - e^(1/a). Evaluated with margins that absorb double rounding and
// the per-step pseudo-orbit perturbation.
inline double thaler_escape_steps_lower(double x_upper, double a) {
    if (x_upper <= 0.0) return std::numeric_limits<double>::infinity();
    double r = 1.0 / x_upper;
    if (r > 700.0) return std::numeric_limits<double>::infinity();
    return (std::exp(r) - std::exp(1.0 / a + 1e-12)) * 0.999 - 2.0;
}

} // namespace detail

// Z_n / Y_n for the thaler0 map started from the seeded uniform sample.
// Throws precision_degraded_error if a branch decision is ever ambiguous at
// the working precision.
template <class Real = thaler_real>
thaler_record thaler_waiting(const thaler_map<Real>& map, std::uint64_t seed, std::int64_t n,
                             std::int64_t cap) {
    if (n < 1) throw std::invalid_argument("thaler_waiting: need n >= 1");
    if (cap < n) throw std::invalid_argument("thaler_waiting: iteration cap below horizon");

    xoshiro256pp rng(seed);
    Real x = ldexp(Real(rng()), -64) + ldexp(Real(rng()), -128) + ldexp(Real(1), -129);
    const double scale = thaler_map<Real>::decision_scale();
    const double a_d = map.boundary_double();

    thaler_record rec{};
    rec.n = n;
    std::int64_t t = 0;

    for (;;) {
        const double gap = static_cast<double>(x - map.boundary());
        if (std::abs(gap) <= scale)
            throw precision_degraded_error("thaler_waiting: branch decision within rounding of the boundary");
        const bool in_a = gap > 0.0;

        if (in_a) {
            if (t > n) {
                rec.y = t;
                return rec;
            }
            rec.z = t;
            rec.in_a = true;
        } else {
            // Y >= t+1 here; give up once V_n > cap is certain.
            if (t >= n && (t + 1 - rec.z) > cap) {
                rec.v_exceeds = t - rec.z;
                return rec;
            }
            double m_low = detail::thaler_escape_steps_lower(
                static_cast<double>(x) + scale, a_d);
            double needed = static_cast<double>(cap + rec.z - t + 1);
            if (m_low >= needed) {
                rec.v_exceeds = cap;
                return rec;
            }
        }

        if (in_a) {
            x = (x - map.boundary()) * map.inv_one_minus_a();
        } else {
            x += x * x * exp(-1 / x);
        }
        ++t;
        ++rec.steps;
    }
}

// Visit times of A = (a,1] up to `horizon`, for small-scale validation runs.
template <class Real = thaler_real>
std::vector<std::int64_t> thaler_visits(const thaler_map<Real>& map, std::uint64_t seed,
                                        std::int64_t horizon, std::int64_t step_budget) {
    xoshiro256pp rng(seed);
    Real x = ldexp(Real(rng()), -64) + ldexp(Real(rng()), -128) + ldexp(Real(1), -129);
    const double scale = thaler_map<Real>::decision_scale();
    std::vector<std::int64_t> visits;
    for (std::int64_t t = 0; t <= horizon; ++t) {
        if (t > step_budget) throw horizon_error("thaler_visits: step budget exhausted");
        double gap = static_cast<double>(x - map.boundary());
        if (std::abs(gap) <= scale)
            throw precision_degraded_error("thaler_visits: branch decision within rounding of the boundary");
        if (gap > 0.0) {
            visits.push_back(t);
            x = (x - map.boundary()) * map.inv_one_minus_a();
        } else {
            x += x * x * exp(-1 / x);
        }
    }
    return visits;
}

} // namespace waitlaw
