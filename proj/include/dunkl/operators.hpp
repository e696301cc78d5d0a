#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dunkl/core.hpp"
#include "dunkl/hermite.hpp"

/// The positive linear operators T_n built from the Dunkl two-variable
/// Hermite polynomials, their probability weights, and closed-form moments.
namespace dunkl {

/// Thrown by apply() when the target function carries no usable growth
/// metadata (bounded, or polynomially bounded of degree <= 2).
class unbounded_growth_error : public std::invalid_argument {
public:
    explicit unbounded_growth_error(const std::string& what) : std::invalid_argument(what) {}
};

/// Identifies one operator T_n: the index n, the Hermite second argument
/// alpha, and the Dunkl parameter (mu plus tolerances).
struct operator_config {
    long n = 1;
    double alpha = 0.0;
    dunkl_param p;

    void validate() const {
        p.validate();
        if (n < 1) throw std::invalid_argument("operator_config: n must be >= 1");
        if (!(alpha >= 0.0) || !std::isfinite(alpha))
            throw std::invalid_argument("operator_config: alpha must be >= 0");
    }
};

/// Certified Lipschitz/Hoelder data: |f(s) - f(t)| <= M |s - t|^exponent.
struct lipschitz_class {
    double M = 1.0;
    double exponent = 1.0;  // in (0, 1]
};

/// A target function on [0, inf) plus the metadata the operators and the
/// bound checks rely on.  Metadata is trusted but spot-checkable.
struct target_function {
    std::function<double(double)> eval;
    std::string label;
    std::optional<lipschitz_class> known_lipschitz;
    std::optional<double> sup_norm;  ///< known sup of |f| on [0, inf), if bounded
    int growth_degree = -1;          ///< d with |f(t)| <= growth_coeff * (1 + t^d)
    double growth_coeff = 0.0;

    double operator()(double t) const { return eval(t); }
};

/// Closed-form vs series-summed values of the first three moments at x.
struct moment_report {
    double x = 0.0;
    double m0 = 1.0, m1 = 0.0, m2 = 0.0;        // closed forms
    double m0_s = 0.0, m1_s = 0.0, m2_s = 0.0;  // series sums
    double delta1 = 0.0, delta2 = 0.0;          // closed central moments
    double max_rel_gap = 0.0;
};

/// Evaluates one operator T_n.  Caches the per-degree tables
/// (log gamma_mu(k), log k!, log h_k^mu(n, alpha)) so that sweeping over
/// many evaluation points or functions costs one table build.  Not safe
/// for concurrent use of a single instance; instances are cheap, use one
/// per thread.
class operator_evaluator {
public:
    explicit operator_evaluator(operator_config cfg) : cfg_(std::move(cfg)) {
        cfg_.validate();
        log_n_ = std::log(static_cast<double>(cfg_.n));
    }

    [[nodiscard]] const operator_config& config() const noexcept { return cfg_; }

    /// Node (k + 2 mu theta_k) / n where f is sampled.
    [[nodiscard]] double node(long k) const {
        if (k < 0) throw std::invalid_argument("node: k must be >= 0");
        return (static_cast<double>(k) + 2.0 * cfg_.p.mu * static_cast<double>(theta(k))) /
               static_cast<double>(cfg_.n);
    }

    /// k-th probability weight at x, assembled entirely in log space.
    [[nodiscard]] double weight(long k, double x) {
        if (k < 0 || !(x >= 0.0)) throw std::invalid_argument("weight: need k >= 0, x >= 0");
        if (x == 0.0) return k == 0 ? 1.0 : 0.0;
        return std::exp(log_weight(k, x));
    }

    /// log of the k-th weight at x > 0.
    [[nodiscard]] double log_weight(long k, double x) {
        if (k < 0 || !(x > 0.0)) throw std::invalid_argument("log_weight: need k >= 0, x > 0");
        ensure_tables(k);
        return log_h_[static_cast<std::size_t>(k)] + static_cast<double>(k) * std::log(x) -
               log_gamma_[static_cast<std::size_t>(k)] - cfg_.alpha * x * x - log_norm(x);
    }

    /// T_n(f; x) by truncated series.  Requires growth metadata on f; the
    /// truncation tail is charged against f's growth envelope.
    [[nodiscard]] series_result apply(const target_function& f, double x) {
        const auto [deg, coeff] = growth_envelope(f);
        if (!(x >= 0.0) || !std::isfinite(x))
            throw std::invalid_argument("apply: x must be finite and >= 0");
        if (x == 0.0) {
            const double v = f(0.0);
            return {v, 1, 0.0, std::abs(v) * detail::machine_eps};
        }

        const double lx = std::log(x);
        const double shift = -cfg_.alpha * x * x - log_norm(x);
        const double nx = static_cast<double>(cfg_.n) * x;

        detail::compensated_sum val, abs_val, cumw;
        double tau_prev = -1.0, tau_peak = 0.0, max_lw = 0.0;
        int decays = 0;
        for (long k = 0;; ++k) {
            ensure_tables(k);
            const double lw = log_h_[static_cast<std::size_t>(k)] +
                              static_cast<double>(k) * lx -
                              log_gamma_[static_cast<std::size_t>(k)] + shift;
            const double w = std::exp(lw);
            max_lw = std::max(max_lw, std::abs(lw));
            const double t = node(k);
            const double fv = f(t);
            val.add(w * fv);
            abs_val.add(std::abs(w * fv));
            cumw.add(w);
            const double env = deg == 0 ? 1.0 : (deg == 1 ? 1.0 + t : 1.0 + t * t);
            const double tau = w * env;
            tau_peak = std::max(tau_peak, tau);
            decays = (tau_prev >= 0.0 && (tau < 0.5 * tau_prev || tau == 0.0)) ? decays + 1 : 0;
            tau_prev = tau;
            // the tau condition keeps the f-weighted tail small even when
            // the residual mass alone would allow stopping
            const bool mass_done = (cumw.value() >= 1.0 - cfg_.p.eps_term &&
                                    tau < cfg_.p.eps_term * (1.0 + std::abs(val.value()))) ||
                                   tau <= 1e-4 * cfg_.p.eps_term * tau_peak;
            if (mass_done && decays >= 3 && static_cast<double>(k) > nx) {
                series_result r;
                r.value = val.value();
                r.terms_used = k + 1;
                r.tail_bound = coeff * tau;  // geometric: observed ratio < 1/2
                r.cancel_error =
                    abs_val.value() * detail::machine_eps * (4.0 + max_lw) * 0.5;
                return r;
            }
            if (k > 4000000L)
                throw std::runtime_error("apply: weight series did not converge");
        }
    }

    /// Closed-form and series-summed moments m0, m1, m2 at x, plus the
    /// closed-form central moments.
    [[nodiscard]] moment_report moments(double x) {
        if (!(x >= 0.0) || !std::isfinite(x))
            throw std::invalid_argument("moments: x must be finite and >= 0");
        moment_report rep;
        rep.x = x;
        closed_moments(x, rep);
        if (x == 0.0) {
            rep.m0_s = 1.0;
            rep.m1_s = 0.0;
            rep.m2_s = 0.0;
            rep.max_rel_gap = 0.0;
            return rep;
        }

        const double lx = std::log(x);
        const double shift = -cfg_.alpha * x * x - log_norm(x);
        const double nx = static_cast<double>(cfg_.n) * x;

        detail::compensated_sum s0, s1, s2;
        double tau_prev = -1.0, tau_peak = 0.0;
        int decays = 0;
        for (long k = 0;; ++k) {
            ensure_tables(k);
            const double w = std::exp(log_h_[static_cast<std::size_t>(k)] +
                                      static_cast<double>(k) * lx -
                                      log_gamma_[static_cast<std::size_t>(k)] + shift);
            const double t = node(k);
            s0.add(w);
            s1.add(w * t);
            s2.add(w * t * t);
            const double tau = w * (1.0 + t * t);
            tau_peak = std::max(tau_peak, tau);
            decays = (tau_prev >= 0.0 && (tau < 0.5 * tau_prev || tau == 0.0)) ? decays + 1 : 0;
            tau_prev = tau;
            const bool mass_done = (s0.value() >= 1.0 - cfg_.p.eps_term &&
                                    tau < cfg_.p.eps_term * (1.0 + s2.value())) ||
                                   tau <= 1e-4 * cfg_.p.eps_term * tau_peak;
            if (mass_done && decays >= 3 && static_cast<double>(k) > nx) break;
            if (k > 4000000L)
                throw std::runtime_error("moments: weight series did not converge");
        }
        rep.m0_s = s0.value();
        rep.m1_s = s1.value();
        rep.m2_s = s2.value();

        const auto gap = [](double series, double closed) {
            const double d = std::abs(series - closed);
            return closed == 0.0 ? d : d / std::abs(closed);
        };
        rep.max_rel_gap =
            std::max({gap(rep.m0_s, rep.m0), gap(rep.m1_s, rep.m1), gap(rep.m2_s, rep.m2)});
        return rep;
    }

    /// Central moments Delta_1 = T_n(t - x; x) and Delta_2 = T_n((t-x)^2; x)
    /// in closed form.
    [[nodiscard]] std::pair<double, double> central_moments(double x) {
        if (!(x >= 0.0) || !std::isfinite(x))
            throw std::invalid_argument("central_moments: x must be finite and >= 0");
        moment_report rep;
        closed_moments(x, rep);
        return {rep.delta1, rep.delta2};
    }

private:
    static std::pair<int, double> growth_envelope(const target_function& f) {
        if (f.sup_norm) return {0, *f.sup_norm};
        if (f.growth_degree >= 0 && f.growth_coeff > 0.0) {
            if (f.growth_degree > 2)
                throw unbounded_growth_error(
                    "apply: polynomial growth of degree > 2 is not supported (function '" +
                    f.label + "')");
            return {f.growth_degree, f.growth_coeff};
        }
        throw unbounded_growth_error(
            "apply: function '" + f.label +
            "' must be bounded (sup_norm) or declare growth_degree <= 2 with growth_coeff");
    }

    void closed_moments(double x, moment_report& rep) {
        const double n = static_cast<double>(cfg_.n);
        const double a = cfg_.alpha;
        const double mu = cfg_.p.mu;
        // the ratio term carries the factor 2 mu x / n, so it is exactly 0
        // whenever mu or x vanishes and the series need not be summed
        const double ratio_term =
            (mu == 0.0 || x == 0.0) ? 0.0
                                    : 2.0 * mu * x / n * dunkl_exp_ratio(cfg_.p, n * x).value;
        rep.m0 = 1.0;
        rep.m1 = x + 2.0 * a * x * x / n;
        rep.m2 = x * x + 4.0 * a * x * x / (n * n) + 4.0 * a * x * x * x / n +
                 4.0 * a * a * x * x * x * x / (n * n) + x / n + ratio_term;
        rep.delta1 = 2.0 * a * x * x / n;
        rep.delta2 = x * (4.0 * x * x * x * a * a + 4.0 * a * x + n) / (n * n) + ratio_term;
    }

    void ensure_tables(long k) {
        while (static_cast<long>(log_gamma_.size()) <= k) {
            const long kk = static_cast<long>(log_gamma_.size());
            log_gamma_.push_back(log_gamma_nu(cfg_.p, kk));
            lnfact_.push_back(std::lgamma(static_cast<double>(kk) + 1.0));
            log_h_.push_back(compute_log_h(kk));
        }
    }

    // log h_k^mu(n, alpha): positive-term finite sum, max-scaled.  Relies
    // on log_gamma_ and lnfact_ being filled up to kk already.
    double compute_log_h(long kk) {
        if (cfg_.alpha == 0.0) return static_cast<double>(kk) * log_n_;
        const double lalpha = std::log(cfg_.alpha);
        scratch_.clear();
        double m = -std::numeric_limits<double>::infinity();
        for (long j = 0; 2 * j <= kk; ++j) {
            const double lc = static_cast<double>(j) * lalpha -
                              lnfact_[static_cast<std::size_t>(j)] +
                              static_cast<double>(kk - 2 * j) * log_n_ -
                              log_gamma_[static_cast<std::size_t>(kk - 2 * j)];
            scratch_.push_back(lc);
            m = std::max(m, lc);
        }
        double s = 0.0;
        for (double lc : scratch_) s += std::exp(lc - m);
        return log_gamma_nu(cfg_.p, kk) + m + std::log(s);
    }

    // ln e_mu(n x), cached for the most recent x.
    double log_norm(double x) {
        if (x == norm_x_) return norm_val_;
        const double y = static_cast<double>(cfg_.n) * x;
        if (y > 700.0)
            throw std::invalid_argument("operator_evaluator: n*x must be <= 700");
        norm_val_ = log_dunkl_exp(cfg_.p, y);
        norm_x_ = x;
        return norm_val_;
    }

    operator_config cfg_;
    double log_n_ = 0.0;
    std::vector<double> log_gamma_;
    std::vector<double> lnfact_;
    std::vector<double> log_h_;
    std::vector<double> scratch_;
    double norm_x_ = -1.0;
    double norm_val_ = 0.0;
};

// Convenience free functions; each builds a throwaway evaluator, so prefer
// an operator_evaluator instance inside loops.

[[nodiscard]] inline double node(const operator_config& cfg, long k) {
    return operator_evaluator(cfg).node(k);
}

[[nodiscard]] inline double weight(const operator_config& cfg, long k, double x) {
    return operator_evaluator(cfg).weight(k, x);
}

[[nodiscard]] inline series_result apply(const operator_config& cfg, const target_function& f,
                                         double x) {
    return operator_evaluator(cfg).apply(f, x);
}

[[nodiscard]] inline moment_report moments(const operator_config& cfg, double x) {
    return operator_evaluator(cfg).moments(x);
}

[[nodiscard]] inline std::pair<double, double> central_moments(const operator_config& cfg,
                                                               double x) {
    return operator_evaluator(cfg).central_moments(x);
}

}  // namespace dunkl
