#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "waitlaw/digit_stream.hpp"
#include "waitlaw/random.hpp"
#include "waitlaw/wandering.hpp"

namespace waitlaw {

struct renewal_config {
    double alpha;
    std::int64_t horizon;
    std::int64_t samples;
    std::uint64_t seed;

    void check() const {
        if (!(alpha > 0.0 && alpha < 1.0))
            throw std::invalid_argument("renewal_config: alpha must be in (0,1)");
        if (horizon < 1) throw std::invalid_argument("renewal_config: horizon must be >= 1");
        if (samples < 1) throw std::invalid_argument("renewal_config: samples must be >= 1");
    }
};

// tau = ceil(u^(-1/alpha)): P(tau > n) = P(u < n^(-alpha)) = n^(-alpha)
// exactly, for every integer n >= 1. Values beyond int64 range are saturated
// (they exceed any horizon by astronomical margins either way).
inline std::int64_t sample_tau(double u, double alpha) {
    if (!(u > 0.0 && u < 1.0)) throw std::invalid_argument("sample_tau: u must be in (0,1)");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("sample_tau: alpha in (0,1)");
    double v = std::pow(u, -1.0 / alpha);
    if (v >= 4.0e18) return std::int64_t(4) << 60;
    return static_cast<std::int64_t>(std::ceil(v));
}

// i.i.d. waiting times as a digit-like source, so the straddle scanner can
// consume them.
class tau_source {
public:
    tau_source(std::uint64_t seed, double alpha) : rng_(seed), alpha_(alpha) {
        if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("tau_source: alpha in (0,1)");
    }

    std::optional<std::int64_t> next_digit() {
        return sample_tau(rng_.uniform_open01(), alpha_);
    }

private:
    xoshiro256pp rng_;
    double alpha_;
};

// Visit times {S_0 = 0, S_1, ...} up to and including the first S_k > horizon.
template <DigitSource S>
std::vector<std::int64_t> renewal_visits(S& taus, std::int64_t horizon) {
    if (horizon < 0) throw std::invalid_argument("renewal_visits: horizon must be >= 0");
    std::vector<std::int64_t> visits{0};
    std::int64_t s = 0;
    while (s <= horizon) {
        auto t = taus.next_digit();
        if (!t) throw termination_error("renewal_visits: waiting-time source ended");
        if (*t < 1) throw std::invalid_argument("renewal_visits: waiting times must be >= 1");
        if (s > std::numeric_limits<std::int64_t>::max() - *t)
            s = std::numeric_limits<std::int64_t>::max();
        else
            s += *t;
        visits.push_back(s);
    }
    return visits;
}

inline std::vector<std::int64_t> renewal_visits(const renewal_config& cfg, std::uint64_t sample_index) {
    cfg.check();
    tau_source src(derive_seed(cfg.seed, sample_index), cfg.alpha);
    return renewal_visits(src, cfg.horizon);
}

// W_n = 1 + sum_{k=1..n} k^(-alpha), the wandering rate matching the tau law.
inline wandering_sequence renewal_wandering(double alpha) {
    return wandering_sequence::renewal(alpha);
}

} // namespace waitlaw
