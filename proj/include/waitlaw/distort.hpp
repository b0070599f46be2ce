#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

#include "waitlaw/processes.hpp"
#include "waitlaw/wandering.hpp"

namespace waitlaw {

// The four distorted waiting-time values of one record, computed through the
// identities Lambda = F(V)/F(n), Gamma = G(V)/G(n), Delta = F(Y-n)/F(n),
// Theta = G(Y)/G(n) with F(n) = W_n and G(n) = W_n/n.
struct distorted_values {
    double lambda;
    double gamma;
    double delta;
    double theta;
};

inline distorted_values distorted(const waiting_record& rec, const wandering_sequence& w) {
    if (rec.n < 1) throw std::invalid_argument("distorted: need n >= 1");
    const double wn = w.cum(rec.n);
    const double wv = w.cum(rec.v);
    const double wy = w.cum(rec.y);
    const double wd = w.cum(rec.y - rec.n); // index Y-n >= 1 by Y > n
    const double nd = static_cast<double>(rec.n);
    distorted_values out{};
    out.lambda = wv / wn;
    out.gamma = (wv / static_cast<double>(rec.v)) * (nd / wn);
    out.delta = wd / wn;
    out.theta = (wy / static_cast<double>(rec.y)) * (nd / wn);
    return out;
}

// Constant-free critical-case statistics. Conventions: log(V)/log(n) is 0 at
// V = 1; log(n)/log(V) is +oo there (it never lands below any finite x, which
// is what the censored CDF estimates need).
struct critical_stats {
    double lambda_like; // log(V)/log(n)
    double gamma_like;  // log(n)/log(V)
    double delta_like;  // log(Y-n)/log(n)
    double theta_like;  // log(n)/log(Y)
};

inline critical_stats critical_statistics(const waiting_record& rec) {
    if (rec.n < 2) throw std::invalid_argument("critical_statistics: need n >= 2");
    const double logn = std::log(static_cast<double>(rec.n));
    const double logv = std::log(static_cast<double>(rec.v));
    const double logy = std::log(static_cast<double>(rec.y));
    const double logd = std::log(static_cast<double>(rec.y - rec.n));
    critical_stats s{};
    s.lambda_like = logv / logn;
    s.gamma_like = logv > 0.0 ? logn / logv : std::numeric_limits<double>::infinity();
    s.delta_like = logd / logn;
    s.theta_like = logn / logy;
    return s;
}

inline critical_stats critical_statistics(const waiting_record& rec, std::int64_t n) {
    if (n != rec.n) throw std::invalid_argument("critical_statistics: n mismatch");
    return critical_statistics(rec);
}

} // namespace waitlaw
