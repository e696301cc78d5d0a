#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "dunkl/core.hpp"

/// Dunkl two-variable Hermite polynomials h_n^mu(xi, alpha) and
/// H_n^mu(xi, alpha), plus numeric checks of their generating-function
/// identities.
namespace dunkl {

/// One evaluation request (degree, both arguments, kernel parameter).
struct hermite_query {
    long n = 0;
    double xi = 0.0;
    double alpha = 0.0;
    dunkl_param p;

    void validate() const {
        p.validate();
        if (n < 0) throw std::invalid_argument("hermite_query: n must be >= 0");
        if (!(alpha >= 0.0) || !std::isfinite(alpha))
            throw std::invalid_argument("hermite_query: alpha must be >= 0");
        if (!std::isfinite(xi)) throw std::invalid_argument("hermite_query: xi must be finite");
    }
};

/// Result of one generating-function identity check at a point t.
struct gf_check_report {
    double t = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    double abs_gap = 0.0;
    long terms = 0;
    double tail_env = 0.0;  ///< geometric envelope for the truncated tail of lhs
};

namespace detail {

/// log |h_n^mu(xi, alpha)| and its sign.  For alpha >= 0 every summand of
/// h_n carries the same sign, sign(xi)^n, so the magnitude is a sum of
/// positive terms: evaluate max-scaled in log space, no cancellation.
struct signed_log {
    double log_abs = -std::numeric_limits<double>::infinity();
    int sign = 0;
};

inline signed_log hermite_h_log(const hermite_query& q) {
    const double axi = std::abs(q.xi);
    const int sign_xi = q.xi > 0.0 ? 1 : (q.xi < 0.0 ? -1 : 0);
    const int sign = (q.n % 2 == 0) ? 1 : sign_xi;

    if (q.n == 0) return {0.0, 1};

    const double log_gn = log_gamma_nu(q.p, q.n);
    if (q.alpha == 0.0) {
        if (q.xi == 0.0) return {-std::numeric_limits<double>::infinity(), 0};
        return {static_cast<double>(q.n) * std::log(axi), sign};
    }
    if (q.xi == 0.0) {
        // only the k = n/2 term survives, and only for even n
        if (q.n % 2 != 0) return {-std::numeric_limits<double>::infinity(), 0};
        const long k = q.n / 2;
        return {log_gn + static_cast<double>(k) * std::log(q.alpha) -
                    std::lgamma(static_cast<double>(k) + 1.0) - log_gamma_nu(q.p, 0),
                1};
    }

    const double lalpha = std::log(q.alpha);
    const double lxi = std::log(axi);
    std::vector<double> terms;
    terms.reserve(static_cast<std::size_t>(q.n / 2) + 1);
    double m = -std::numeric_limits<double>::infinity();
    for (long k = 0; 2 * k <= q.n; ++k) {
        const double lc = static_cast<double>(k) * lalpha -
                          std::lgamma(static_cast<double>(k) + 1.0) +
                          static_cast<double>(q.n - 2 * k) * lxi -
                          log_gamma_nu(q.p, q.n - 2 * k);
        terms.push_back(lc);
        m = std::max(m, lc);
    }
    double s = 0.0;
    for (double lc : terms) s += std::exp(lc - m);
    return {log_gn + m + std::log(s), sign};
}

inline double exp_or_throw(double log_abs, int sign, const char* who) {
    if (sign == 0) return 0.0;
    const double v = std::exp(log_abs);
    if (std::isinf(v)) throw std::overflow_error(std::string(who) + ": value overflows double");
    return sign > 0 ? v : -v;
}

}  // namespace detail

/// h_n^mu(xi, alpha) = gamma_mu(n) * sum_{2k<=n} alpha^k xi^(n-2k) / (k! gamma_mu(n-2k)).
[[nodiscard]] inline double hermite_h(const hermite_query& q) {
    q.validate();
    const auto sl = detail::hermite_h_log(q);
    return detail::exp_or_throw(sl.log_abs, sl.sign, "hermite_h");
}

/// H_n^mu(xi, alpha) = n! h_n^mu(xi, alpha) / gamma_mu(n); the classical
/// two-variable Hermite polynomial when mu = 0.
[[nodiscard]] inline double hermite_H(const hermite_query& q) {
    q.validate();
    const auto sl = detail::hermite_h_log(q);
    const double shifted = sl.log_abs + std::lgamma(static_cast<double>(q.n) + 1.0) -
                           log_gamma_nu(q.p, q.n);
    return detail::exp_or_throw(shifted, sl.sign, "hermite_H");
}

namespace detail {

// Shared driver for the three generating-function checks.  order is the
// index shift of h on the left-hand side; the caller supplies the
// right-hand side value.
inline gf_check_report gf_check(const dunkl_param& p, double xi, double alpha, double t, long N,
                                int order, double rhs) {
    if (!(std::abs(t) <= 0.5))
        throw std::invalid_argument("gf_check: |t| must be <= 0.5");
    if (N < 1) throw std::invalid_argument("gf_check: N must be >= 1");

    compensated_sum lhs;
    std::vector<double> mags(static_cast<std::size_t>(N) + 1, 0.0);
    double tp = 1.0;
    for (long m = 0; m <= N; ++m) {
        const hermite_query q{m + order, xi, alpha, p};
        const auto sl = hermite_h_log(q);
        const double term =
            sl.sign == 0 ? 0.0
                         : (sl.sign > 0 ? 1.0 : -1.0) *
                               std::exp(sl.log_abs - log_gamma_nu(p, m)) * tp;
        lhs.add(term);
        mags[static_cast<std::size_t>(m)] = std::abs(term);
        tp *= t;
    }
    // geometric tail envelope from the observed decay of the last terms;
    // overlapping pair sums keep the ratio meaningful when parity zeroes
    // out every other term (xi = 0 with alpha > 0)
    double rho = 0.0;
    double last_pair = 0.0;
    for (long m = std::max<long>(0, N - 6); m < N; ++m) {
        const double a =
            mags[static_cast<std::size_t>(m)] + mags[static_cast<std::size_t>(m + 1)];
        const double b = mags[static_cast<std::size_t>(m + 1)] +
                         (m + 2 <= N ? mags[static_cast<std::size_t>(m + 2)] : 0.0);
        if (a > 0.0) rho = std::max(rho, b / a);
        last_pair = a;
    }
    const double tail = rho < 1.0 ? last_pair * rho / (1.0 - rho)
                                  : std::numeric_limits<double>::infinity();

    gf_check_report r;
    r.t = t;
    r.lhs = lhs.value();
    r.rhs = rhs;
    r.abs_gap = std::abs(r.lhs - r.rhs);
    r.terms = N + 1;
    r.tail_env = tail;
    return r;
}

}  // namespace detail

/// Order-0 identity: sum_n h_n^mu(xi,a) t^n / gamma_mu(n) = e^(a t^2) e_mu(xi t).
[[nodiscard]] inline gf_check_report gf_check_order0(const dunkl_param& p, double xi,
                                                     double alpha, double t, long N) {
    p.validate();
    const double rhs = std::exp(alpha * t * t) * dunkl_exp(p, xi * t).value;
    return detail::gf_check(p, xi, alpha, t, N, 0, rhs);
}

/// Order-1 identity:
/// sum_n h_{n+1}^mu(xi,a) t^n / gamma_mu(n) = (xi + 2 a t) e^(a t^2) e_mu(xi t).
[[nodiscard]] inline gf_check_report gf_check_order1(const dunkl_param& p, double xi,
                                                     double alpha, double t, long N) {
    p.validate();
    const double rhs = (xi + 2.0 * alpha * t) * std::exp(alpha * t * t) *
                       dunkl_exp(p, xi * t).value;
    return detail::gf_check(p, xi, alpha, t, N, 1, rhs);
}

/// Order-2 identity:
/// sum_n h_{n+2}^mu(xi,a) t^n / gamma_mu(n)
///   = (xi^2 + 4 xi a t + 4 a^2 t^2 + 2 a) e^(a t^2) e_mu(xi t)
///     + 4 a mu e^(a t^2) e_mu(-xi t).
[[nodiscard]] inline gf_check_report gf_check_order2(const dunkl_param& p, double xi,
                                                     double alpha, double t, long N) {
    p.validate();
    const double gauss = std::exp(alpha * t * t);
    const double rhs = (xi * xi + 4.0 * xi * alpha * t + 4.0 * alpha * alpha * t * t +
                        2.0 * alpha) *
                           gauss * dunkl_exp(p, xi * t).value +
                       4.0 * alpha * p.mu * gauss * dunkl_exp(p, -xi * t).value;
    return detail::gf_check(p, xi, alpha, t, N, 2, rhs);
}

}  // namespace dunkl
