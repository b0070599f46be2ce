// Walks one seeded farey digit stream, printing the waiting-time processes
// and their distorted values at a few horizons.

#include <cstdio>

#include "waitlaw/digit_stream.hpp"
#include "waitlaw/distort.hpp"
#include "waitlaw/processes.hpp"

int main() {
    using namespace waitlaw;
    // the default 4096-bit budget covers digit sums up to roughly 1e4;
    // give the sample more headroom for the largest horizon below
    dyadic_digit_stream stream(2024, 1 << 15);
    auto digits = digits_until_sum_exceeds(stream, 10000);
    std::printf("digit prefix: %s...\n",
                digits_to_json({digits.begin(), digits.begin() + 12}).c_str());

    auto visits = visits_from_digits(digits);
    auto w = wandering_sequence::farey();
    std::printf("%8s %8s %8s %8s %9s %9s %9s %9s\n", "n", "Z", "Y", "V", "Lambda", "Gamma",
                "Delta", "Theta");
    for (std::int64_t n : {10, 100, 1000, 9999}) {
        auto rec = waiting_record_at(visits, n);
        auto d = distorted(rec, w);
        std::printf("%8lld %8lld %8lld %8lld %9.5f %9.5f %9.5f %9.5f\n",
                    static_cast<long long>(n), static_cast<long long>(rec.z),
                    static_cast<long long>(rec.y), static_cast<long long>(rec.v), d.lambda,
                    d.gamma, d.delta, d.theta);
    }
    return 0;
}
