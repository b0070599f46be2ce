#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "waitlaw/digit_stream.hpp"
#include "waitlaw/rational.hpp"

using namespace waitlaw;

namespace {

template <DigitSource S>
std::vector<std::int64_t> take(S& s, int count) {
    std::vector<std::int64_t> out;
    for (int i = 0; i < count; ++i) {
        auto d = s.next_digit();
        if (!d) break;
        out.push_back(*d);
    }
    return out;
}

} // namespace

TEST_CASE("explicit digit lists end with termination") {
    explicit_digits s({5, 1});
    CHECK(s.next_digit() == 5);
    CHECK(s.next_digit() == 1);
    CHECK_FALSE(s.next_digit().has_value());
    CHECK_FALSE(s.next_digit().has_value());
    CHECK_THROWS_AS(explicit_digits({2, 0, 1}), std::invalid_argument);
}

TEST_CASE("rational expansions via the Euclidean algorithm") {
    CHECK(cf_digits_of_rational<std::int64_t>(2, 5) == std::vector<std::int64_t>{2, 2});
    CHECK(cf_digits_of_rational<std::int64_t>(1, 2) == std::vector<std::int64_t>{2});
    CHECK(cf_digits_of_rational<std::int64_t>(2, 3) == std::vector<std::int64_t>{1, 2});
    CHECK(cf_digits_of_rational<std::int64_t>(3, 4) == std::vector<std::int64_t>{1, 3});
    CHECK(cf_digits_of_rational<std::int64_t>(113, 355) == std::vector<std::int64_t>{3, 7, 16});
    CHECK(cf_digits_of_rational<std::int64_t>(0, 1).empty());
    CHECK(cf_digits_of_rational<std::int64_t>(1, 1) == std::vector<std::int64_t>{1});
    CHECK_THROWS_AS(cf_digits_of_rational<std::int64_t>(7, 5), std::invalid_argument);
}

TEST_CASE("periodic streams repeat and honor the preperiod") {
    periodic_digits golden({1});
    auto g = take(golden, 6);
    CHECK(g == std::vector<std::int64_t>{1, 1, 1, 1, 1, 1});

    periodic_digits s({3, 1}, {2, 7});
    auto d = take(s, 7);
    CHECK(d == std::vector<std::int64_t>{3, 1, 2, 7, 2, 7, 2});
    CHECK_THROWS_AS(periodic_digits({}), std::invalid_argument);
}

TEST_CASE("periodic streams agree with quadratic-surd recurrences") {
    // period [c] describes the root of x = 1/(c+x); the Gauss map fixes it
    for (int c : {1, 2, 3, 7}) {
        long double cc = c;
        long double x = (std::sqrt(cc * cc + 4.0L) - cc) / 2.0L;
        CHECK(std::abs(x - 1.0L / (cc + x)) < 1e-18L);
        long double gauss = 1.0L / x - std::floor(1.0L / x);
        CHECK(std::abs(gauss - x) < 1e-17L);
        CHECK(static_cast<std::int64_t>(std::floor(1.0L / x)) == c);
    }
}

TEST_CASE("digits_until_sum_exceeds returns the shortest crossing prefix") {
    periodic_digits two({2});
    CHECK(digits_until_sum_exceeds(two, 4) == std::vector<std::int64_t>{2, 2, 2});
    periodic_digits one({1});
    CHECK(digits_until_sum_exceeds(one, 0) == std::vector<std::int64_t>{1});
    explicit_digits fivened({5, 1});
    CHECK(digits_until_sum_exceeds(fivened, 3) == std::vector<std::int64_t>{5});
    explicit_digits shorty({2, 2});
    CHECK_THROWS_AS(digits_until_sum_exceeds(shorty, 10), termination_error);
    periodic_digits p({2});
    CHECK_THROWS_AS(digits_until_sum_exceeds(p, -1), std::invalid_argument);
}

TEST_CASE("dyadic stream is deterministic and batch-independent") {
    dyadic_digit_stream a(42), b(42), c(43);
    auto da = take(a, 40);

    // drive b through a different request pattern
    std::vector<std::int64_t> db = digits_until_sum_exceeds(b, 10);
    while (db.size() < 40) {
        auto d = b.next_digit();
        REQUIRE(d.has_value());
        db.push_back(*d);
    }
    db.resize(40);
    CHECK(da == db);

    auto dc = take(c, 40);
    CHECK(da != dc);
    for (auto d : da) CHECK(d >= 1);
}

TEST_CASE("dyadic interval stays inside the cylinder of the emitted prefix") {
    using rat = basic_rat<bigint>;
    for (std::uint64_t seed : {7ull, 1234567ull, 99999999ull}) {
        dyadic_digit_stream s(seed);
        std::vector<std::int64_t> digits;
        for (int k = 0; k < 30; ++k) {
            auto d = s.next_digit();
            REQUIRE(d.has_value());
            digits.push_back(*d);

            auto conv = convergents<bigint>(digits);
            rat pk = conv.back();
            // cylinder endpoints: p_k/q_k and (p_k + p_{k-1})/(q_k + q_{k-1})
            bigint pprev = digits.size() >= 2 ? conv[conv.size() - 2].num : bigint(0);
            bigint qprev = digits.size() >= 2 ? conv[conv.size() - 2].den : bigint(1);
            rat end1 = pk;
            rat end2(pk.num + pprev, pk.den + qprev);
            rat lo = end1 < end2 ? end1 : end2;
            rat hi = end1 < end2 ? end2 : end1;

            dyadic_interval iv = s.interval();
            CHECK(iv.lower() >= lo);
            CHECK(iv.upper() <= hi);
            CHECK(s.emitted() == digits);
        }
    }
}

TEST_CASE("dyadic stream respects the precision cap with a distinct error") {
    dyadic_digit_stream s(5, 64);
    CHECK_THROWS_AS(
        [&] {
            for (int i = 0; i < 40; ++i) s.next_digit();
        }(),
        precision_error);
    CHECK_THROWS_AS(dyadic_digit_stream(1, 8), std::invalid_argument);
}

TEST_CASE("dyadic first digit follows the uniform-measure cell law") {
    int count1 = 0, count2 = 0, total = 4000;
    for (int i = 0; i < total; ++i) {
        dyadic_digit_stream s(1000 + static_cast<std::uint64_t>(i));
        auto d = s.next_digit();
        REQUIRE(d.has_value());
        if (*d == 1) ++count1;
        if (*d == 2) ++count2;
    }
    // P(k=1) = 1/2, P(k=2) = 1/6
    CHECK(std::abs(count1 / 4000.0 - 0.5) < 0.03);
    CHECK(std::abs(count2 / 4000.0 - 1.0 / 6.0) < 0.025);
}

TEST_CASE("chain sampler draws the same first-digit law and is deterministic") {
    digit_chain_sampler a(99), b(99);
    auto da = take(a, 1000);
    auto db = take(b, 1000);
    CHECK(da == db);
    for (auto d : da) CHECK(d >= 1);

    int count1 = 0, count2 = 0;
    const int total = 100000;
    for (int i = 0; i < total; ++i) {
        digit_chain_sampler s(derive_seed(7, static_cast<std::uint64_t>(i)));
        auto d = s.next_digit();
        if (*d == 1) ++count1;
        if (*d == 2) ++count2;
    }
    CHECK(std::abs(count1 / 100000.0 - 0.5) < 0.006);
    CHECK(std::abs(count2 / 100000.0 - 1.0 / 6.0) < 0.005);
}

TEST_CASE("chain sampler matches the conditional digit law after one step") {
    // After drawing kappa_1 = k, the state is t = 1/k; condition on k = 2 and
    // check P(kappa_2 = 1 | t = 1/2) = (1+t)/((1+t)(2+t)) = 1/(2+t) = 0.4.
    int hits = 0, total = 0;
    for (int i = 0; i < 400000; ++i) {
        digit_chain_sampler s(derive_seed(11, static_cast<std::uint64_t>(i)));
        if (s.next_digit() != 2) continue;
        ++total;
        if (s.next_digit() == 1) ++hits;
    }
    REQUIRE(total > 30000);
    CHECK(std::abs(static_cast<double>(hits) / total - 0.4) < 0.01);
}

TEST_CASE("digit lists serialize as JSON arrays") {
    CHECK(digits_to_json({}) == "[]");
    CHECK(digits_to_json({1, 2, 3}) == "[1,2,3]");
}
