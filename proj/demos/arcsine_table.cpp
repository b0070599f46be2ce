// Prints the theta_{1/2} (arcsine) density and CDF on a small grid, next to
// the closed forms, as a smoke demo of the analytic law module.

#include <cstdio>
#include <numbers>

#include "waitlaw/limit_laws.hpp"

int main() {
    auto law = waitlaw::limit_law::theta(0.5);
    std::printf("%8s %12s %12s %12s %12s\n", "x", "pdf", "2/pi/sqrt", "cdf", "2/pi asin");
    for (int i = 1; i < 20; ++i) {
        double x = i / 20.0;
        std::printf("%8.3f %12.8f %12.8f %12.8f %12.8f\n", x, law.pdf(x),
                    2.0 / std::numbers::pi / std::sqrt(1.0 - x * x), law.cdf(x),
                    2.0 / std::numbers::pi * std::asin(x));
    }
    return 0;
}
