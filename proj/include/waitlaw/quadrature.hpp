#pragma once

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <stdexcept>

namespace waitlaw {

// Double-exponential quadrature over a finite interval; handles integrable
// endpoint singularities (the integrand is never evaluated at the endpoints).
// Throws on non-convergence.
template <class F>
double integrate(F&& f, double a, double b, double tol = 1e-12) {
    if (!(a <= b)) throw std::invalid_argument("integrate: need a <= b");
    if (a == b) return 0.0;
    thread_local boost::math::quadrature::tanh_sinh<double> quad(15);
    double error = 0.0, l1 = 0.0;
    double value = quad.integrate(f, a, b, tol, &error, &l1);
    if (!(std::isfinite(value)) || (l1 > 0.0 && error > 1e-6 * (l1 + 1.0)))
        throw std::runtime_error("integrate: quadrature did not converge");
    return value;
}

} // namespace waitlaw
