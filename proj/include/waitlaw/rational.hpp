#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace waitlaw {

// Exact rational with value semantics, templated on the integer type.
// rat64 covers the interval-map orbits whose denominators stay bounded by the
// starting denominator (Farey, Lasota-Yorke, Gauss); instantiate with
// boost::multiprecision::cpp_int when convergents are involved.
template <class Int>
struct basic_rat {
    Int num{0};
    Int den{1};

    basic_rat() = default;
    basic_rat(Int n, Int d) : num(std::move(n)), den(std::move(d)) {
        if (den == 0) throw std::invalid_argument("rational: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        reduce();
    }
    basic_rat(long long n) : num(n), den(1) {} // NOLINT(google-explicit-constructor)

    void reduce() {
        Int g = gcd_int(num < 0 ? Int(-num) : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    static Int gcd_int(Int a, Int b) {
        while (b != 0) { Int t = a % b; a = std::move(b); b = std::move(t); }
        return a;
    }

    friend basic_rat operator+(const basic_rat& a, const basic_rat& b) {
        return basic_rat(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend basic_rat operator-(const basic_rat& a, const basic_rat& b) {
        return basic_rat(a.num * b.den - b.num * a.den, a.den * b.den);
    }
    friend basic_rat operator*(const basic_rat& a, const basic_rat& b) {
        return basic_rat(a.num * b.num, a.den * b.den);
    }
    friend basic_rat operator/(const basic_rat& a, const basic_rat& b) {
        if (b.num == 0) throw std::invalid_argument("rational: division by zero");
        return basic_rat(a.num * b.den, a.den * b.num);
    }
    friend bool operator==(const basic_rat& a, const basic_rat& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const basic_rat& a, const basic_rat& b) { return !(a == b); }
    friend bool operator<(const basic_rat& a, const basic_rat& b) {
        return a.num * b.den < b.num * a.den;
    }
    friend bool operator<=(const basic_rat& a, const basic_rat& b) {
        return a.num * b.den <= b.num * a.den;
    }
    friend bool operator>(const basic_rat& a, const basic_rat& b) { return b < a; }
    friend bool operator>=(const basic_rat& a, const basic_rat& b) { return b <= a; }

    double to_double() const { return (double)num / (double)den; }
};

using rat64 = basic_rat<std::int64_t>;

// Continued-fraction digits of p/q in [0,1] by the Euclidean algorithm.
// 0 has the empty expansion; 1 is [1]. The last digit follows Euclid (so the
// expansion of 2/5 is [2,2], of 1/2 is [2]).
template <class Int>
std::vector<std::int64_t> cf_digits_of_rational(Int p, Int q) {
    if (q <= 0 || p < 0 || p > q) throw std::invalid_argument("cf_digits_of_rational: need 0 <= p/q <= 1");
    std::vector<std::int64_t> digits;
    // x = p/q; digit = floor(q/p), then x <- q/p - digit.
    while (p != 0) {
        Int k = q / p;
        Int r = q % p;
        digits.push_back(static_cast<std::int64_t>(k));
        q = p;
        p = r;
    }
    return digits;
}

// Convergents p_k/q_k of a digit prefix: p_k = k_k p_{k-1} + p_{k-2}, same for q.
// Returned fractions are those of x = [0; k_1, k_2, ...].
template <class Int>
std::vector<basic_rat<Int>> convergents(const std::vector<std::int64_t>& digits) {
    std::vector<basic_rat<Int>> out;
    Int pm1 = 1, pm0 = 0; // p_{-1}, p_0
    Int qm1 = 0, qm0 = 1;
    out.reserve(digits.size());
    for (std::int64_t k : digits) {
        Int p = Int(k) * pm0 + pm1;
        Int q = Int(k) * qm0 + qm1;
        pm1 = pm0; pm0 = p;
        qm1 = qm0; qm0 = q;
        out.emplace_back(p, q);
    }
    return out;
}

} // namespace waitlaw
