#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "waitlaw/maps.hpp"

namespace waitlaw {

// Hurwitz-free Riemann zeta on (0,1) by Euler-Maclaurin; enough terms for
// ~1e-18 absolute error at M = 2^14.
inline double zeta_in_01(double s) {
    if (s <= 0.0 || s >= 1.0) throw std::invalid_argument("zeta_in_01: need s in (0,1)");
    const int m = 16384;
    double sum = 0.0;
    for (int k = 1; k <= m; ++k) sum += std::pow(static_cast<double>(k), -s);
    const double md = m;
    sum -= std::pow(md, 1.0 - s) / (1.0 - s);
    sum -= 0.5 * std::pow(md, -s);
    sum += s / 12.0 * std::pow(md, -s - 1.0);
    sum -= s * (s + 1.0) * (s + 2.0) / 720.0 * std::pow(md, -s - 3.0);
    return sum;
}

// Tail masses m_k = mu(A and {phi > k}) and their partial sums W_n. Closed
// forms are used where the reference set has them; the table form covers
// measured sequences. Invariants: m nonincreasing, W_n - W_{n-1} = m_n,
// W_0 = m_0 = mu(A).
class wandering_sequence {
public:
    enum class form { farey_log, renewal_tail, table };

    // W_n = log(n+2) for the farey reference set K1 = (1/2,1].
    static wandering_sequence farey() { return wandering_sequence(form::farey_log, 0.0); }

    // m_0 = 1, m_k = k^(-alpha): the renewal surrogate with P(tau > k) = k^(-alpha).
    static wandering_sequence renewal(double alpha) {
        if (!(alpha > 0.0 && alpha < 1.0))
            throw std::invalid_argument("wandering_sequence::renewal: alpha must be in (0,1)");
        return wandering_sequence(form::renewal_tail, alpha);
    }

    static wandering_sequence from_masses(std::vector<double> masses) {
        if (masses.empty()) throw std::invalid_argument("wandering_sequence: empty mass table");
        for (std::size_t k = 0; k + 1 < masses.size(); ++k)
            if (masses[k + 1] > masses[k])
                throw std::invalid_argument("wandering_sequence: tail masses must be nonincreasing");
        wandering_sequence w(form::table, 0.0);
        w.masses_ = std::move(masses);
        w.cums_.resize(w.masses_.size());
        double acc = 0.0;
        for (std::size_t k = 0; k < w.masses_.size(); ++k) {
            acc += w.masses_[k];
            w.cums_[k] = acc;
        }
        return w;
    }

    double mass(std::int64_t k) const {
        if (k < 0) throw std::invalid_argument("wandering_sequence::mass: k must be >= 0");
        switch (form_) {
            case form::farey_log: return farey_tail(k);
            case form::renewal_tail:
                return k == 0 ? 1.0 : std::pow(static_cast<double>(k), -alpha_);
            case form::table:
                if (static_cast<std::size_t>(k) >= masses_.size())
                    throw std::out_of_range("wandering_sequence::mass: beyond table");
                return masses_[static_cast<std::size_t>(k)];
        }
        throw std::logic_error("wandering_sequence::mass");
    }

    // W_n = sum_{k<=n} m_k.
    double cum(std::int64_t n) const {
        if (n < 0) throw std::invalid_argument("wandering_sequence::cum: n must be >= 0");
        switch (form_) {
            case form::farey_log: return farey_wandering(n);
            case form::renewal_tail: return renewal_cum(n);
            case form::table:
                if (static_cast<std::size_t>(n) >= cums_.size())
                    throw std::out_of_range("wandering_sequence::cum: beyond table");
                return cums_[static_cast<std::size_t>(n)];
        }
        throw std::logic_error("wandering_sequence::cum");
    }

    double alpha() const { return alpha_; }
    form kind() const { return form_; }

private:
    wandering_sequence(form f, double alpha) : form_(f), alpha_(alpha) {
        if (form_ == form::renewal_tail) {
            zeta_ = zeta_in_01(alpha_);
            prefix_.resize(table_size + 1);
            prefix_[0] = 1.0;
            for (std::int64_t k = 1; k <= table_size; ++k)
                prefix_[k] = prefix_[k - 1] + std::pow(static_cast<double>(k), -alpha_);
        }
    }

    double renewal_cum(std::int64_t n) const {
        if (n <= table_size) return prefix_[static_cast<std::size_t>(n)];
        // 1 + sum_{k<=n} k^(-a) by Euler-Maclaurin with the precomputed zeta.
        double nd = static_cast<double>(n);
        double s = alpha_;
        return 1.0 + zeta_ + std::pow(nd, 1.0 - s) / (1.0 - s) + 0.5 * std::pow(nd, -s)
               - s / 12.0 * std::pow(nd, -s - 1.0)
               + s * (s + 1.0) * (s + 2.0) / 720.0 * std::pow(nd, -s - 3.0);
    }

    static constexpr std::int64_t table_size = 1 << 14;

    form form_;
    double alpha_ = 0.0;
    double zeta_ = 0.0;
    std::vector<double> prefix_; // renewal form
    std::vector<double> masses_; // table form
    std::vector<double> cums_;
};

} // namespace waitlaw
