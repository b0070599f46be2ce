#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "waitlaw/quadrature.hpp"

namespace waitlaw {

enum class law_kind { phi, eta, lambda, gamma, delta, theta, uniform01, point_mass };

inline const char* law_name(law_kind k) {
    switch (k) {
        case law_kind::phi: return "phi";
        case law_kind::eta: return "eta";
        case law_kind::lambda: return "lambda";
        case law_kind::gamma: return "gamma";
        case law_kind::delta: return "delta";
        case law_kind::theta: return "theta";
        case law_kind::uniform01: return "uniform01";
        case law_kind::point_mass: return "pointmass";
    }
    return "?";
}

// (1 - (max{1-t,0})^a)/t, evaluated stably down to t = 0 (limit a) and
// through the t >= 1 plateau (1/t). Shared by the eta-family densities.
inline double one_minus_pow_ratio(double t, double a) {
    if (t <= 0.0) return a;
    if (t >= 1.0) return 1.0 / t;
    if (t < 1e-8) return a * (1.0 + 0.5 * (1.0 - a) * t);
    return (1.0 - std::pow(1.0 - t, a)) / t;
}

// The limit laws of the normalized and distorted waiting-time processes:
//
//   Y_n/n  =>  phi_alpha     on (1,oo),  f(x) = (sin pi a / pi) / (x (x-1)^a)
//   V_n/n  =>  eta_alpha     on (0,oo),  f(x) = (sin pi a / pi) (1 - max(1-x,0)^a) / x^(1+a)
//   Lambda =>  lambda_alpha  = eta^(1-a)   (also written zeta_alpha elsewhere)
//   Gamma  =>  gamma_alpha   = eta^(-a)
//   Delta  =>  delta_alpha   = (phi-1)^(1-a)
//   Theta  =>  theta_alpha   = phi^(-a)    (also written chi_alpha elsewhere)
//
// Degenerate parameter values are represented as point masses:
// phi_0 = eta_0 = lambda_0 = gamma_1 = delta_0 = oo, phi_1 = theta_1 = 1,
// eta_1 = 0. CDFs of phi and eta are computed by quadrature after the
// singularity-absorbing substitutions u = (x-1)^(1-a) resp. u = x^(1-a);
// the other four go through the distributional identities above. All laws
// here are atomless (point masses aside), so CDF inequality conventions
// are immaterial.
class limit_law {
public:
    static limit_law phi(double a) { return parametric(law_kind::phi, a, 0.0, 1.0, inf(), 1.0); }
    static limit_law eta(double a) { return parametric(law_kind::eta, a, 0.0, 1.0, inf(), 0.0); }
    static limit_law lambda(double a) { return parametric(law_kind::lambda, a, 0.0, nan(), inf(), nan()); }
    static limit_law gamma(double a) { return parametric(law_kind::gamma, a, nan(), 1.0, nan(), inf()); }
    static limit_law delta(double a) { return parametric(law_kind::delta, a, 0.0, nan(), inf(), nan()); }
    static limit_law theta(double a) { return parametric(law_kind::theta, a, nan(), 1.0, nan(), 1.0); }
    static limit_law uniform01() { return limit_law(law_kind::uniform01, 0.0, 0.0); }
    static limit_law point_mass(double at) { return limit_law(law_kind::point_mass, 0.0, at); }

    static limit_law make(law_kind k, double a) {
        switch (k) {
            case law_kind::phi: return phi(a);
            case law_kind::eta: return eta(a);
            case law_kind::lambda: return lambda(a);
            case law_kind::gamma: return gamma(a);
            case law_kind::delta: return delta(a);
            case law_kind::theta: return theta(a);
            case law_kind::uniform01: return uniform01();
            case law_kind::point_mass: return point_mass(a);
        }
        throw std::invalid_argument("limit_law::make");
    }

    law_kind kind() const { return kind_; }
    double alpha() const { return alpha_; }
    double point() const { return point_; }
    bool atomless() const { return kind_ != law_kind::point_mass; }

    double pdf(double x) const;
    double cdf(double x) const;

private:
    limit_law(law_kind k, double a, double pt) : kind_(k), alpha_(a), point_(pt) {}

    static double inf() { return std::numeric_limits<double>::infinity(); }
    static double nan() { return std::numeric_limits<double>::quiet_NaN(); }

    static limit_law parametric(law_kind k, double a, double lo_ok, double hi_ok,
                                double lo_point, double hi_point) {
        if (!(a >= 0.0 && a <= 1.0))
            throw std::invalid_argument(std::string(law_name(k)) + ": alpha outside [0,1]");
        if (a == 0.0) {
            if (std::isnan(lo_ok)) throw std::invalid_argument(std::string(law_name(k)) + ": alpha = 0 undefined");
            return point_mass(lo_point);
        }
        if (a == 1.0) {
            if (std::isnan(hi_ok)) throw std::invalid_argument(std::string(law_name(k)) + ": alpha = 1 undefined");
            return point_mass(hi_point);
        }
        return limit_law(k, a, 0.0);
    }

    double sin_coeff() const {
        return std::sin(std::numbers::pi * alpha_) / std::numbers::pi;
    }

    // Substituted integrands: pushing phi through u = (x-1)^(1-a) gives the
    // delta density; pushing eta through u = x^(1-a) gives the lambda density.
    double delta_integrand(double u) const {
        double a = alpha_;
        return sin_coeff() / (1.0 - a) / (1.0 + std::pow(u, 1.0 / (1.0 - a)));
    }
    double lambda_integrand(double u) const {
        double a = alpha_;
        double t = std::pow(u, 1.0 / (1.0 - a));
        return sin_coeff() / (1.0 - a) * one_minus_pow_ratio(t, a);
    }
    double theta_integrand(double w) const {
        double a = alpha_;
        return sin_coeff() / a / std::pow(1.0 - std::pow(w, 1.0 / a), a);
    }

    double cdf_phi(double x) const {
        double a = alpha_;
        if (x <= 1.0) return 0.0;
        if (std::isinf(x)) return 1.0;
        if (x <= 2.0)
            return integrate([this](double u) { return delta_integrand(u); }, 0.0,
                             std::pow(x - 1.0, 1.0 - a));
        // complementary side through w = x^(-a); smooth, away from w = 1
        return 1.0 - integrate([this](double w) { return theta_integrand(w); }, 0.0,
                               std::pow(x, -a));
    }

    double cdf_eta(double x) const {
        double a = alpha_;
        if (x <= 0.0) return 0.0;
        if (std::isinf(x)) return 1.0;
        if (x >= 1.0) return 1.0 - sin_coeff() / a * std::pow(x, -a); // exact tail
        return integrate([this](double u) { return lambda_integrand(u); }, 0.0,
                         std::pow(x, 1.0 - a));
    }

    law_kind kind_;
    double alpha_;
    double point_;
};

inline double limit_law::pdf(double x) const {
    const double a = alpha_;
    const double c = sin_coeff();
    const double infv = inf();
    switch (kind_) {
        case law_kind::phi:
            if (x < 1.0) return 0.0;
            if (x == 1.0) return infv;
            return c / (x * std::pow(x - 1.0, a));
        case law_kind::eta:
            if (x < 0.0) return 0.0;
            if (x == 0.0) return infv;
            return c * one_minus_pow_ratio(x, a) * std::pow(x, -a);
        case law_kind::lambda: {
            if (x < 0.0) return 0.0;
            if (x == 0.0) return c * a / (1.0 - a); // right limit
            double t = std::pow(x, 1.0 / (1.0 - a));
            return c / (1.0 - a) * one_minus_pow_ratio(t, a);
        }
        case law_kind::gamma: {
            if (x < 0.0) return 0.0;
            if (x <= 1.0) return c / a; // x^(-1/a) >= 1 there
            double w = std::pow(x, -1.0 / a);
            return c / a * one_minus_pow_ratio(w, a) * w;
        }
        case law_kind::delta:
            if (x < 0.0) return 0.0;
            return c / (1.0 - a) / (1.0 + std::pow(x, 1.0 / (1.0 - a)));
        case law_kind::theta:
            if (x <= 0.0 || x > 1.0) return 0.0;
            if (x == 1.0) return infv;
            return c / a / std::pow(1.0 - std::pow(x, 1.0 / a), a);
        case law_kind::uniform01:
            return (x > 0.0 && x < 1.0) ? 1.0 : 0.0;
        case law_kind::point_mass:
            return x == point_ ? infv : 0.0;
    }
    throw std::logic_error("limit_law::pdf");
}

inline double limit_law::cdf(double x) const {
    const double a = alpha_;
    switch (kind_) {
        case law_kind::phi: return cdf_phi(x);
        case law_kind::eta: return cdf_eta(x);
        case law_kind::lambda:
            if (x <= 0.0) return 0.0;
            return cdf_eta(std::pow(x, 1.0 / (1.0 - a)));
        case law_kind::gamma:
            if (x <= 0.0) return 0.0;
            if (x <= 1.0) return sin_coeff() / a * x; // linear: constant density c/a
            return 1.0 - cdf_eta(std::pow(x, -1.0 / a));
        case law_kind::delta:
            if (x <= 0.0) return 0.0;
            return cdf_phi(1.0 + std::pow(x, 1.0 / (1.0 - a)));
        case law_kind::theta:
            if (x <= 0.0) return 0.0;
            if (x >= 1.0) return 1.0;
            return 1.0 - cdf_phi(std::pow(x, -1.0 / a));
        case law_kind::uniform01:
            return x <= 0.0 ? 0.0 : (x >= 1.0 ? 1.0 : x);
        case law_kind::point_mass:
            return x >= point_ ? 1.0 : 0.0;
    }
    throw std::logic_error("limit_law::cdf");
}

// Free-function spellings.
inline double pdf(const limit_law& law, double x) { return law.pdf(x); }
inline double cdf(const limit_law& law, double x) { return law.cdf(x); }

// Large-deviation rate H(x) = 1 - log x on (0,1), 1/x on [1,oo); continuous
// at 1, strictly decreasing, H(0+) = oo.
inline double ld_rate_h(double x) {
    if (!(x > 0.0)) throw std::invalid_argument("ld_rate_h: need x > 0");
    return x < 1.0 ? 1.0 - std::log(x) : 1.0 / x;
}

// Joint rate log((1+y)/(x+y)) for the (age, residual) large deviation.
inline double ld_rate_joint(double x, double y) {
    if (!(x >= 0.0 && x < 1.0)) throw std::invalid_argument("ld_rate_joint: need x in [0,1)");
    if (!(y >= 0.0)) throw std::invalid_argument("ld_rate_joint: need y >= 0");
    if (x + y == 0.0) throw std::invalid_argument("ld_rate_joint: need x + y != 0");
    return std::log((1.0 + y) / (x + y));
}

} // namespace waitlaw
