#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "waitlaw/errors.hpp"
#include "waitlaw/random.hpp"
#include "waitlaw/rational.hpp"

namespace waitlaw {

using bigint = boost::multiprecision::cpp_int;

// Anything that yields continued-fraction digits kappa_i >= 1, with nullopt
// signalling a rational endpoint (finite expansion).
template <class S>
concept DigitSource = requires(S s) {
    { s.next_digit() } -> std::same_as<std::optional<std::int64_t>>;
};

// ---------------------------------------------------------------------------
// Closed descriptions
// ---------------------------------------------------------------------------

class explicit_digits {
public:
    explicit explicit_digits(std::vector<std::int64_t> digits) : digits_(std::move(digits)) {
        for (auto d : digits_)
            if (d < 1) throw std::invalid_argument("explicit_digits: digits must be >= 1");
    }

    static explicit_digits from_rational(std::int64_t p, std::int64_t q) {
        return explicit_digits(cf_digits_of_rational<std::int64_t>(p, q));
    }

    std::optional<std::int64_t> next_digit() {
        if (pos_ >= digits_.size()) return std::nullopt;
        return digits_[pos_++];
    }

    const std::vector<std::int64_t>& digits() const { return digits_; }

private:
    std::vector<std::int64_t> digits_;
    std::size_t pos_ = 0;
};

// Eventually periodic expansion (quadratic surd), e.g. period=[2] for sqrt(2)-1.
class periodic_digits {
public:
    periodic_digits(std::vector<std::int64_t> preperiod, std::vector<std::int64_t> period)
        : preperiod_(std::move(preperiod)), period_(std::move(period)) {
        if (period_.empty()) throw std::invalid_argument("periodic_digits: empty period");
        for (auto d : preperiod_)
            if (d < 1) throw std::invalid_argument("periodic_digits: digits must be >= 1");
        for (auto d : period_)
            if (d < 1) throw std::invalid_argument("periodic_digits: digits must be >= 1");
    }

    explicit periodic_digits(std::vector<std::int64_t> period)
        : periodic_digits({}, std::move(period)) {}

    std::optional<std::int64_t> next_digit() {
        if (pos_ < preperiod_.size()) return preperiod_[pos_++];
        std::size_t i = (pos_++ - preperiod_.size()) % period_.size();
        return period_[i];
    }

private:
    std::vector<std::int64_t> preperiod_;
    std::vector<std::int64_t> period_;
    std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Lazy dyadic sample
// ---------------------------------------------------------------------------

// [a/2^B, (a+1)/2^B). Refinement halves the width and stays inside.
struct dyadic_interval {
    bigint numerator;     // a
    std::int64_t bits;    // B

    dyadic_interval(bigint a, std::int64_t b) : numerator(std::move(a)), bits(b) {
        if (bits < 1) throw std::invalid_argument("dyadic_interval: need B >= 1");
        if (numerator < 0 || numerator >> bits != 0)
            throw std::invalid_argument("dyadic_interval: need 0 <= a < 2^B");
    }

    basic_rat<bigint> lower() const { return {numerator, bigint(1) << bits}; }
    basic_rat<bigint> upper() const { return {numerator + 1, bigint(1) << bits}; }
};

// Digits of a uniform random real, produced exactly.
//
// The sample is a lazily extended dyadic interval [a/2^B,(a+1)/2^B); the
// engine tracks its image under the Gauss steps taken so far as an integer
// Moebius map v(y) = (p y + q)/(r y + s), y in [0,1] the unconsumed tail.
// A digit is emitted once floor(1/v) agrees at both endpoints, then the
// interval is mapped forward by v -> 1/v - digit. No floating point anywhere.
class dyadic_digit_stream {
public:
    explicit dyadic_digit_stream(std::uint64_t seed, std::int64_t bit_cap = 4096)
        : rng_(seed), bit_cap_(bit_cap) {
        if (bit_cap_ < 64) throw std::invalid_argument("dyadic_digit_stream: bit cap < 64");
        absorb();
    }

    std::optional<std::int64_t> next_digit() {
        for (;;) {
            if (q_ > 0 && p_ + q_ > 0) {
                bigint k0 = s_ / q_;
                bigint k1 = (r_ + s_) / (p_ + q_);
                if (k0 == k1) {
                    if (k0 > std::numeric_limits<std::int64_t>::max() / 4)
                        throw std::overflow_error("dyadic_digit_stream: digit exceeds int64");
                    emit(k0);
                    emitted_.push_back(static_cast<std::int64_t>(k0));
                    return emitted_.back();
                }
            }
            absorb();
        }
    }

    dyadic_interval interval() const { return {a_, bits_}; }
    const std::vector<std::int64_t>& emitted() const { return emitted_; }
    std::int64_t bits_used() const { return bits_; }
    std::int64_t bit_cap() const { return bit_cap_; }

private:
    void absorb() {
        std::int64_t chunk = std::min<std::int64_t>(64, bit_cap_ - bits_);
        if (chunk <= 0)
            throw precision_error("dyadic_digit_stream: bit cap " + std::to_string(bit_cap_) + " exhausted");
        std::uint64_t w = rng_() >> (64 - chunk);
        // y = (w + y')/2^chunk
        q_ = p_ * w + (q_ << chunk);
        s_ = r_ * w + (s_ << chunk);
        a_ = (a_ << chunk) | w;
        bits_ += chunk;
        reduce();
    }

    void emit(const bigint& k) {
        bigint np = r_ - k * p_;
        bigint nq = s_ - k * q_;
        r_ = p_;
        s_ = q_;
        p_ = np;
        q_ = nq;
        reduce();
    }

    void reduce() {
        // the gcd of the state divides det = +-2^bits; strip shared factors
        // of two (the determinant is never 0, so this terminates)
        while (p_ % 2 == 0 && q_ % 2 == 0 && r_ % 2 == 0 && s_ % 2 == 0) {
            p_ >>= 1;
            q_ >>= 1;
            r_ >>= 1;
            s_ >>= 1;
        }
    }

    xoshiro256pp rng_;
    std::int64_t bit_cap_;
    std::int64_t bits_ = 0;
    bigint a_ = 0;
    std::vector<std::int64_t> emitted_;
    // v(y) = (p y + q)/(r y + s); starts as v = y (the sample itself).
    bigint p_ = 1, q_ = 0, r_ = 0, s_ = 1;
};

// ---------------------------------------------------------------------------
// Conditional-law sampler
// ---------------------------------------------------------------------------

// Digits of a uniform random real, produced in O(1) per digit by sampling
// kappa_{p+1} from its law given the convergent ratio t_p = q_{p-1}/q_p:
//
//   P(kappa = k | t) = (1+t)/((k+t)(k+1+t)),   t' = 1/(kappa+t),  t_0 = 0.
//
// These are the exact finite-dimensional distributions of the continued
// fraction digits under Lebesgue measure (cylinder length 1/(q_p(q_p+q_{p-1}))),
// inverted in closed form; the recursion for t is uniformly contracting, so
// double rounding does not accumulate. Use this for large-sample experiments;
// dyadic_digit_stream is the bit-exact reference engine.
class digit_chain_sampler {
public:
    explicit digit_chain_sampler(std::uint64_t seed) : rng_(seed) {}

    std::optional<std::int64_t> next_digit() {
        double u = rng_.uniform_open01();
        double v = (1.0 + t_) * u / (1.0 - u);
        auto k = static_cast<std::int64_t>(std::ceil(v));
        if (k < 1) k = 1;
        t_ = 1.0 / (static_cast<double>(k) + t_);
        return k;
    }

private:
    xoshiro256pp rng_;
    double t_ = 0.0;
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

// Shortest prefix whose sum exceeds n. Throws termination_error if the stream
// is rational and ends first.
template <DigitSource S>
std::vector<std::int64_t> digits_until_sum_exceeds(S& source, std::int64_t n) {
    if (n < 0) throw std::invalid_argument("digits_until_sum_exceeds: n must be >= 0");
    std::vector<std::int64_t> out;
    std::int64_t acc = 0;
    while (acc <= n) {
        auto d = source.next_digit();
        if (!d) throw termination_error("digit stream terminated before digit sum exceeded "
                                        + std::to_string(n));
        out.push_back(*d);
        acc += *d;
    }
    return out;
}

inline std::string digits_to_json(const std::vector<std::int64_t>& digits) {
    std::string s = "[";
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(digits[i]);
    }
    s += ']';
    return s;
}

} // namespace waitlaw
