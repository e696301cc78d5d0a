#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "dunkl/core.hpp"

/// Independent reference evaluators used by the self-test and the test
/// suite: exact-rational series summation for the Dunkl kernel and
/// factorial-based implementations of the classical operator limits.
///
/// Nothing in here shares an evaluation path with the main library; the
/// point is to disagree loudly if the fast paths are wrong.
namespace dunkl::reference {

/// Exact gamma_mu(k) as a rational, built by the ratio recursion.
[[nodiscard]] inline mpq_class gamma_q(const mpq_class& mu, long k) {
    mpq_class g(1);
    for (long j = 0; j < k; ++j) {
        // ratio gamma(j+1)/gamma(j) = 2*mu*theta(j+1) + j + 1
        mpq_class step(j + 1);
        if ((j + 1) % 2 == 1) step += 2 * mu;
        g *= step;
    }
    return g;
}

namespace detail {

inline const mpq_class& term_floor() {
    // 10^-30, the fixed cutoff for exact partial sums
    static const mpq_class f(mpz_class(1), []() {
        mpz_class d;
        mpz_ui_pow_ui(d.get_mpz_t(), 10, 30);
        return d;
    }());
    return f;
}

}  // namespace detail

/// Exact partial sum of e_mu(x) until |term| < 10^-30.
[[nodiscard]] inline mpq_class e_mu_q(const mpq_class& mu, const mpq_class& x) {
    mpq_class sum(0), term(1);
    const mpq_class ax = abs(x);
    long k = 0;
    for (;;) {
        sum += term;
        mpq_class step(k + 1);
        if ((k + 1) % 2 == 1) step += 2 * mu;
        term = term * x / step;
        ++k;
        if (abs(term) < detail::term_floor() && mpq_class(k) > 2 * ax + 8) return sum;
        if (k > 100000) throw std::runtime_error("e_mu_q: series did not converge");
    }
}

/// Exact-rational e_mu(-y)/e_mu(y).
[[nodiscard]] inline mpq_class dunkl_exp_ratio_q(const mpq_class& mu, const mpq_class& y) {
    const mpq_class plus = e_mu_q(mu, y);
    const mpq_class minus = e_mu_q(mu, -y);
    return minus / plus;
}

/// Exact h_n^mu(xi, alpha) = gamma(n) * sum_k alpha^k xi^(n-2k) / (k! gamma(n-2k)).
[[nodiscard]] inline mpq_class hermite_h_q(const mpq_class& mu, long n, const mpq_class& xi,
                                           const mpq_class& alpha) {
    std::vector<mpq_class> gam(static_cast<std::size_t>(n) + 1);
    gam[0] = 1;
    for (long j = 0; j < n; ++j) {
        mpq_class step(j + 1);
        if ((j + 1) % 2 == 1) step += 2 * mu;
        gam[static_cast<std::size_t>(j + 1)] = gam[static_cast<std::size_t>(j)] * step;
    }
    mpq_class sum(0), fact_k(1);
    for (long k = 0; 2 * k <= n; ++k) {
        if (k > 0) fact_k *= k;
        mpq_class pow_alpha(1), pow_xi(1);
        for (long i = 0; i < k; ++i) pow_alpha *= alpha;
        for (long i = 0; i < n - 2 * k; ++i) pow_xi *= xi;
        sum += pow_alpha * pow_xi / (fact_k * gam[static_cast<std::size_t>(n - 2 * k)]);
    }
    return gam[static_cast<std::size_t>(n)] * sum;
}

/// Exact classical two-variable Hermite H_n(xi, alpha) via factorials.
[[nodiscard]] inline mpq_class hermite_classical_q(long n, const mpq_class& xi,
                                                   const mpq_class& alpha) {
    mpz_class fact_n;
    mpz_fac_ui(fact_n.get_mpz_t(), static_cast<unsigned long>(n));
    mpq_class sum(0);
    for (long k = 0; 2 * k <= n; ++k) {
        mpz_class fk, fnk;
        mpz_fac_ui(fk.get_mpz_t(), static_cast<unsigned long>(k));
        mpz_fac_ui(fnk.get_mpz_t(), static_cast<unsigned long>(n - 2 * k));
        mpq_class pow_alpha(1), pow_xi(1);
        for (long i = 0; i < k; ++i) pow_alpha *= alpha;
        for (long i = 0; i < n - 2 * k; ++i) pow_xi *= xi;
        sum += pow_alpha * pow_xi / mpq_class(fk * fnk);
    }
    return mpq_class(fact_n) * sum;
}

[[nodiscard]] inline double to_double(const mpq_class& q) { return q.get_d(); }

// ---------------------------------------------------------------------
// Classical operator references (double precision, lgamma-based).
// ---------------------------------------------------------------------

/// Classical Szasz operator: sum_k exp(-nx) (nx)^k / k! * f(k/n).
[[nodiscard]] inline double szasz_classical(long n, const std::function<double(double)>& f,
                                            double x) {
    if (x == 0.0) return f(0.0);
    const double lam = static_cast<double>(n) * x;
    const double llam = std::log(lam);
    double acc = 0.0, cumw = 0.0, prev = -1.0, wpeak = 0.0;
    int decays = 0;
    for (long k = 0;; ++k) {
        const double w = std::exp(static_cast<double>(k) * llam - lam -
                                  std::lgamma(static_cast<double>(k) + 1.0));
        acc += w * f(static_cast<double>(k) / static_cast<double>(n));
        cumw += w;
        wpeak = std::max(wpeak, w);
        decays = (prev >= 0.0 && (w < 0.5 * prev || w == 0.0)) ? decays + 1 : 0;
        prev = w;
        // the w/wpeak escape covers cumw plateauing just below 1 - 1e-15
        if ((cumw >= 1.0 - 1e-15 || w < 1e-18 * wpeak) && decays >= 3 &&
            static_cast<double>(k) > lam)
            return acc;
        if (k > 4000000L) throw std::runtime_error("szasz_classical: no convergence");
    }
}

/// Krech operator G_n^alpha via classical Hermite polynomials and
/// factorials, assembled in log space term by term.  The per-degree
/// log H_k(n, alpha) values are cached so repeated evaluation points stay
/// cheap.
class krech_evaluator {
public:
    krech_evaluator(long n, double alpha) : n_(n), alpha_(alpha) {
        if (n < 1 || alpha < 0.0) throw std::invalid_argument("krech_evaluator: bad config");
    }

    [[nodiscard]] double apply(const std::function<double(double)>& f, double x) {
        if (x < 0.0) throw std::invalid_argument("krech_evaluator: x must be >= 0");
        if (x == 0.0) return f(0.0);
        const double nd = static_cast<double>(n_);
        const double lx = std::log(x);
        const double norm = -(nd * x + alpha_ * x * x);
        double acc = 0.0, cumw = 0.0, prev = -1.0, wpeak = 0.0;
        int decays = 0;
        for (long k = 0;; ++k) {
            const double w = std::exp(log_hermite(k) + static_cast<double>(k) * lx -
                                      lnfact(k) + norm);
            acc += w * f(static_cast<double>(k) / nd);
            cumw += w;
            wpeak = std::max(wpeak, w);
            decays = (prev >= 0.0 && (w < 0.5 * prev || w == 0.0)) ? decays + 1 : 0;
            prev = w;
            if ((cumw >= 1.0 - 1e-15 || w < 1e-18 * wpeak) && decays >= 3 &&
                static_cast<double>(k) > nd * x)
                return acc;
            if (k > 4000000L) throw std::runtime_error("krech_evaluator: no convergence");
        }
    }

    /// First and second central moments of the weights at x.
    [[nodiscard]] std::pair<double, double> central_moments(double x) {
        const double d1 = apply([&](double t) { return t - x; }, x);
        const double d2 = apply([&](double t) { return (t - x) * (t - x); }, x);
        return {d1, d2};
    }

private:
    double lnfact(long k) {
        while (static_cast<long>(lnfact_.size()) <= k)
            lnfact_.push_back(std::lgamma(static_cast<double>(lnfact_.size()) + 1.0));
        return lnfact_[static_cast<std::size_t>(k)];
    }

    // log H_k(n, alpha): positive-term sum, max-scaled
    double log_hermite(long k) {
        while (static_cast<long>(log_h_.size()) <= k) {
            const long kk = static_cast<long>(log_h_.size());
            const double ln = std::log(static_cast<double>(n_));
            if (alpha_ == 0.0) {
                log_h_.push_back(static_cast<double>(kk) * ln);
                continue;
            }
            const double lalpha = std::log(alpha_);
            scratch_.clear();
            double m = -std::numeric_limits<double>::infinity();
            for (long j = 0; 2 * j <= kk; ++j) {
                const double lc = static_cast<double>(j) * lalpha - lnfact(j) +
                                  static_cast<double>(kk - 2 * j) * ln - lnfact(kk - 2 * j);
                scratch_.push_back(lc);
                m = std::max(m, lc);
            }
            double s = 0.0;
            for (double lc : scratch_) s += std::exp(lc - m);
            log_h_.push_back(lnfact(kk) + m + std::log(s));
        }
        return log_h_[static_cast<std::size_t>(k)];
    }

    long n_;
    double alpha_;
    std::vector<double> lnfact_;
    std::vector<double> log_h_;
    std::vector<double> scratch_;
};

[[nodiscard]] inline double krech_reference(long n, double alpha,
                                            const std::function<double(double)>& f, double x) {
    return krech_evaluator(n, alpha).apply(f, x);
}

/// Dunkl-Szasz operator S_n^* (the alpha = 0 family) by direct summation:
/// weights (nx)^k / (gamma_mu(k) e_mu(nx)), gamma accumulated by the ratio
/// recursion in log space and the normalizer summed by max-scaling.
[[nodiscard]] inline double dunkl_szasz_reference(double mu, long n,
                                                  const std::function<double(double)>& f,
                                                  double x) {
    if (x == 0.0) return f(0.0);
    const double y = static_cast<double>(n) * x;
    const double ly = std::log(y);

    // pass 1: log-term table for e_mu(y) until terms are negligible
    std::vector<double> lt;
    double lgam = 0.0;
    double m = 0.0;
    for (long k = 0;; ++k) {
        const double l = static_cast<double>(k) * ly - lgam;
        lt.push_back(l);
        m = std::max(m, l);
        if (l < m - 60.0 && static_cast<double>(k) > 2.0 * y + 8.0) break;
        lgam += std::log(2.0 * mu * ((k + 1) % 2) + static_cast<double>(k) + 1.0);
        if (k > 4000000L) throw std::runtime_error("dunkl_szasz_reference: no convergence");
    }
    double s = 0.0;
    for (double l : lt) s += std::exp(l - m);
    const double log_norm = m + std::log(s);

    double acc = 0.0;
    for (std::size_t k = 0; k < lt.size(); ++k) {
        const double w = std::exp(lt[k] - log_norm);
        const double node =
            (static_cast<double>(k) + 2.0 * mu * (k % 2)) / static_cast<double>(n);
        acc += w * f(node);
    }
    return acc;
}

}  // namespace dunkl::reference
