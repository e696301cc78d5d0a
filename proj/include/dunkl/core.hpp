#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

/// Core Dunkl kernel: the generalized factorials gamma_mu(k), the parity
/// indicator theta_k, the Dunkl exponential e_mu, and the Dunkl derivative
/// acting on polynomials.  Everything here is a pure function of its inputs.
namespace dunkl {

/// Thrown when a series evaluation cannot reach the requested relative
/// accuracy even after escalating to an extended-precision accumulator.
class precision_exhausted : public std::runtime_error {
public:
    explicit precision_exhausted(const std::string& what) : std::runtime_error(what) {}
};

/// Parameter mu >= 0 of the Dunkl kernel plus the evaluation tolerances
/// shared by every series summation built on it.
struct dunkl_param {
    double mu = 0.0;
    double eps_term = 1e-14;    ///< relative term-size cutoff for truncation
    double eps_cancel = 1e-8;   ///< max tolerated relative cancellation error

    void validate() const {
        if (!(mu >= 0.0) || !std::isfinite(mu))
            throw std::invalid_argument("dunkl_param: mu must be >= 0");
        if (!(eps_term > 0.0 && eps_term < 1.0))
            throw std::invalid_argument("dunkl_param: eps_term must be in (0, 1)");
        if (!(eps_cancel > 0.0 && eps_cancel < 1.0))
            throw std::invalid_argument("dunkl_param: eps_cancel must be in (0, 1)");
    }
};

/// Value of a truncated infinite series together with the truncation index
/// and the estimated truncation / rounding errors (both absolute).
struct series_result {
    double value = 0.0;
    long terms_used = 0;
    double tail_bound = 0.0;
    double cancel_error = 0.0;
};

namespace detail {

/// Neumaier-compensated accumulator for sums whose terms may alternate.
struct compensated_sum {
    double s = 0.0;
    double c = 0.0;

    void add(double v) noexcept {
        const double t = s + v;
        if (std::abs(s) >= std::abs(v))
            c += (s - t) + v;
        else
            c += (v - t) + s;
        s = t;
    }
    [[nodiscard]] double value() const noexcept { return s + c; }
};

/// Double-double arithmetic (~106-bit mantissa).  Used as the escalation
/// tier when a double-precision accumulation cancels too strongly.
struct ddouble {
    double hi = 0.0;
    double lo = 0.0;

    ddouble() = default;
    constexpr ddouble(double h, double l) : hi(h), lo(l) {}
    explicit constexpr ddouble(double v) : hi(v), lo(0.0) {}

    [[nodiscard]] double to_double() const noexcept { return hi + lo; }
};

inline ddouble two_sum(double a, double b) noexcept {
    const double s = a + b;
    const double bb = s - a;
    const double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

inline ddouble quick_two_sum(double a, double b) noexcept {
    // requires |a| >= |b| or a == 0
    const double s = a + b;
    return {s, b - (s - a)};
}

inline ddouble two_prod(double a, double b) noexcept {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline ddouble dd_add(const ddouble& a, const ddouble& b) noexcept {
    ddouble s = two_sum(a.hi, b.hi);
    ddouble t = two_sum(a.lo, b.lo);
    s.lo += t.hi;
    s = quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline ddouble dd_add(const ddouble& a, double b) noexcept {
    ddouble s = two_sum(a.hi, b);
    s.lo += a.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline ddouble dd_mul(const ddouble& a, const ddouble& b) noexcept {
    ddouble p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}

inline ddouble dd_mul(const ddouble& a, double b) noexcept {
    ddouble p = two_prod(a.hi, b);
    p.lo += a.lo * b;
    return quick_two_sum(p.hi, p.lo);
}

inline ddouble dd_div(const ddouble& a, const ddouble& b) noexcept {
    const double q1 = a.hi / b.hi;
    ddouble r = dd_add(a, dd_mul(b, -q1));
    const double q2 = r.hi / b.hi;
    r = dd_add(r, dd_mul(b, -q2));
    const double q3 = r.hi / b.hi;
    ddouble q = quick_two_sum(q1, q2);
    return dd_add(q, q3);
}

inline ddouble dd_div(const ddouble& a, double b) noexcept { return dd_div(a, ddouble(b)); }

/// log(exp(a) + exp(b)) without overflow; accepts -inf for an empty side.
inline double logaddexp(double a, double b) noexcept {
    if (a == -std::numeric_limits<double>::infinity()) return b;
    if (b == -std::numeric_limits<double>::infinity()) return a;
    const double m = std::max(a, b);
    return m + std::log1p(std::exp(std::min(a, b) - m));
}

inline constexpr double machine_eps = std::numeric_limits<double>::epsilon();
inline constexpr double dd_eps = 4.93e-32;  // 2^-104, double-double unit roundoff

}  // namespace detail

/// Parity indicator: 0 for even k, 1 for odd k.
[[nodiscard]] inline int theta(long long k) {
    if (k < 0) throw std::invalid_argument("theta: k must be >= 0");
    return static_cast<int>(k & 1);
}

/// Ratio gamma_mu(k+1)/gamma_mu(k) = 2*mu*theta(k+1) + k + 1 as an exact
/// closed form (no gamma-function calls).
[[nodiscard]] inline double gamma_nu_ratio(const dunkl_param& p, long long k) {
    if (k < 0) throw std::invalid_argument("gamma_nu_ratio: k must be >= 0");
    return 2.0 * p.mu * theta(k + 1) + static_cast<double>(k) + 1.0;
}

/// ln gamma_mu(k), evaluated in log space from lgamma:
///   gamma_mu(2p)   = 2^(2p)   p! Gamma(p + mu + 1/2) / Gamma(mu + 1/2)
///   gamma_mu(2p+1) = 2^(2p+1) p! Gamma(p + mu + 3/2) / Gamma(mu + 1/2)
[[nodiscard]] inline double log_gamma_nu(const dunkl_param& p, long long k) {
    if (k < 0) throw std::invalid_argument("log_gamma_nu: k must be >= 0");
    const double half = static_cast<double>(k / 2);
    const double shift = (k & 1) ? 1.5 : 0.5;
    return static_cast<double>(k) * std::log(2.0) + std::lgamma(half + 1.0) +
           std::lgamma(half + p.mu + shift) - std::lgamma(p.mu + 0.5);
}

namespace detail {

// One pass of the e_mu power series at working precision.  Terms are

// generated incrementally through the gamma ratio; Neumaier compensation
// keeps the alternating case honest.  Returns value, term count, tail
// bound and the (sum of |term|) used for the cancellation estimate.
struct exp_series_pass {
    double value = 0.0;
    long terms = 0;
    double tail_bound = 0.0;
    double abs_sum = 0.0;
};

// Truncation target: relative to the running sum, with an absolute floor
// so the loop terminates even when the sum cancels to nothing (terms then
// eventually underflow to exact zero, which is below any positive floor).
inline double stop_target(double sum_abs, double magnitude) noexcept {
    return std::max(sum_abs, 1e-250 * std::max(magnitude, 1.0));
}

inline exp_series_pass dunkl_exp_double(const dunkl_param& p, double x) {
    compensated_sum sum;
    compensated_sum abs_sum;
    double term = 1.0;
    long k = 0;
    const double ax = std::abs(x);
    for (;;) {
        sum.add(term);
        abs_sum.add(std::abs(term));
        const double denom = 2.0 * p.mu * theta(k + 1) + static_cast<double>(k) + 1.0;
        const double next = term * (x / denom);
        ++k;
        const double ratio = ax / (static_cast<double>(k) + 1.0);
        if (std::abs(next) < p.eps_term * stop_target(std::abs(sum.value()), abs_sum.value()) &&
            static_cast<double>(k) > ax && ratio < 0.5) {
            exp_series_pass r;
            r.value = sum.value();
            r.terms = k;
            r.tail_bound = std::abs(next) / (1.0 - ratio);
            r.abs_sum = abs_sum.value();
            return r;
        }
        term = next;
        if (k > 100000000L)
            throw precision_exhausted("dunkl_exp: series did not converge");
    }
}

inline exp_series_pass dunkl_exp_ddouble(const dunkl_param& p, double x) {
    ddouble sum(0.0);
    double abs_sum = 0.0;
    ddouble term(1.0);
    long k = 0;
    const double ax = std::abs(x);
    for (;;) {
        sum = dd_add(sum, term);
        abs_sum += std::abs(term.to_double());
        const double denom = 2.0 * p.mu * theta(k + 1) + static_cast<double>(k) + 1.0;
        const ddouble next = dd_div(dd_mul(term, x), denom);
        ++k;
        const double ratio = ax / (static_cast<double>(k) + 1.0);
        if (std::abs(next.to_double()) <
                p.eps_term * stop_target(std::abs(sum.to_double()), abs_sum) &&
            static_cast<double>(k) > ax && ratio < 0.5) {
            exp_series_pass r;
            r.value = sum.to_double();
            r.terms = k;
            r.tail_bound = std::abs(next.to_double()) / (1.0 - ratio);
            r.abs_sum = abs_sum;
            return r;
        }
        term = next;
        if (k > 100000000L)
            throw precision_exhausted("dunkl_exp: series did not converge");
    }
}

}  // namespace detail

/// Dunkl exponential e_mu(x) = sum_k x^k / gamma_mu(k).
///
/// Nonnegative arguments sum a positive series; negative arguments use
/// compensated summation with a tracked cancellation estimate, escalating
/// to a double-double accumulator as soon as the estimate threatens the
/// library's accuracy targets.  p.eps_cancel bounds what the escalated
/// pass may leave behind before the evaluation refuses.
[[nodiscard]] inline series_result dunkl_exp(const dunkl_param& p, double x) {
    p.validate();
    if (!std::isfinite(x)) throw std::invalid_argument("dunkl_exp: x must be finite");
    if (x == 0.0) return {1.0, 1, 0.0, 0.0};

    auto pass = detail::dunkl_exp_double(p, x);
    double cancel =
        pass.abs_sum * detail::machine_eps * (2.0 + static_cast<double>(pass.terms)) / 2.0;
    // Escalate well before eps_cancel: the double pass must not be trusted
    // once its rounding estimate crosses the library-wide 1e-12 targets.
    const double escalate_at = std::min(p.eps_cancel, 1e-13);
    if (x > 0.0 || cancel <= escalate_at * std::abs(pass.value))
        return {pass.value, pass.terms, pass.tail_bound, cancel};

    pass = detail::dunkl_exp_ddouble(p, x);
    cancel = pass.abs_sum * detail::dd_eps * (2.0 + static_cast<double>(pass.terms));
    if (cancel > p.eps_cancel * std::abs(pass.value))
        throw precision_exhausted("dunkl_exp: cancellation exceeds eps_cancel at x = " +
                                  std::to_string(x));
    return {pass.value, pass.terms, pass.tail_bound, cancel};
}

namespace detail {

// Even/odd split of the e_mu series at y >= 0, both parts positive.
template <typename Acc>
struct even_odd_sums {
    Acc even;
    Acc odd;
    long terms = 0;
};

// The stop condition targets the even/odd difference, not the (much larger)
// total, so that truncation never dominates the difference's own accuracy.
inline even_odd_sums<double> even_odd_double(const dunkl_param& p, double y) {
    compensated_sum e, o;
    double term = 1.0;
    long k = 0;
    for (;;) {
        if (k & 1)
            o.add(term);
        else
            e.add(term);
        const double denom = 2.0 * p.mu * theta(k + 1) + static_cast<double>(k) + 1.0;
        const double next = term * (y / denom);
        ++k;
        if (next < p.eps_term *
                       stop_target(std::abs(e.value() - o.value()), e.value() + o.value()) &&
            static_cast<double>(k) > y && y / (static_cast<double>(k) + 1.0) < 0.5)
            return {e.value(), o.value(), k};
        term = next;
    }
}

inline even_odd_sums<ddouble> even_odd_ddouble(const dunkl_param& p, double y) {
    ddouble e(0.0), o(0.0);
    ddouble term(1.0);
    long k = 0;
    for (;;) {
        if (k & 1)
            o = dd_add(o, term);
        else
            e = dd_add(e, term);
        const double denom = 2.0 * p.mu * theta(k + 1) + static_cast<double>(k) + 1.0;
        const ddouble next = dd_div(dd_mul(term, y), denom);
        ++k;
        const double diff = std::abs(dd_add(e, dd_mul(o, -1.0)).to_double());
        if (next.to_double() < p.eps_term * stop_target(diff, e.to_double() + o.to_double()) &&
            static_cast<double>(k) > y && y / (static_cast<double>(k) + 1.0) < 0.5)
            return {e, o, k};
        term = next;
    }
}

}  // namespace detail

/// Ratio r(y) = e_mu(-y)/e_mu(y) for y >= 0, computed from the even/odd
/// split r = (E - O)/(E + O) so that the denominator never cancels.
///
/// The absolute uncertainty of r is at the accumulator's unit roundoff
/// regardless of y; when even the double-double pass cannot certify a
/// single significant digit (mu ~ 0 and y large, where r decays like
/// exp(-2y)), the result degrades to value 0 with a tail_bound that
/// rigorously covers the discarded true value.  Note that for mu > 0 the
/// true ratio decays only algebraically, like mu/(2y).
[[nodiscard]] inline series_result dunkl_exp_ratio(const dunkl_param& p, double y) {
    p.validate();
    if (!std::isfinite(y) || y < 0.0)
        throw std::invalid_argument("dunkl_exp_ratio: y must be finite and >= 0");
    if (y > 700.0)
        throw std::invalid_argument("dunkl_exp_ratio: y must be <= 700");
    if (y == 0.0) return {1.0, 1, 0.0, 0.0};

    {
        const auto s = detail::even_odd_double(p, y);
        const double r = (s.even - s.odd) / (s.even + s.odd);
        const double cancel = detail::machine_eps * (2.0 + static_cast<double>(s.terms));
        if (cancel <= p.eps_cancel * std::abs(r)) return {r, s.terms, 0.0, cancel};
    }

    const auto s = detail::even_odd_ddouble(p, y);
    const detail::ddouble num = detail::dd_add(s.even, detail::dd_mul(s.odd, -1.0));
    const detail::ddouble den = detail::dd_add(s.even, s.odd);
    const double r = detail::dd_div(num, den).to_double();
    const double cancel = detail::dd_eps * (2.0 + static_cast<double>(s.terms));
    if (cancel <= p.eps_cancel * std::abs(r)) return {r, s.terms, 0.0, cancel};

    // All significant digits cancelled even in double-double.  The failed
    // certification itself bounds the true value, so report 0 with that
    // bound rather than noise.
    return {0.0, s.terms, std::abs(r) + cancel, cancel};
}

/// ln e_mu(y) for y >= 0 without overflow (e_mu(y) itself overflows near
/// y ~ 709).  The series is summed as exp(-y) * y^k / gamma_mu(k), whose
/// terms stay within double range for y <= 700.
[[nodiscard]] inline double log_dunkl_exp(const dunkl_param& p, double y) {
    p.validate();
    if (!std::isfinite(y) || y < 0.0)
        throw std::invalid_argument("log_dunkl_exp: y must be finite and >= 0");
    if (y > 700.0)
        throw std::invalid_argument("log_dunkl_exp: y must be <= 700");
    if (y == 0.0) return 0.0;

    detail::compensated_sum sum;
    double term = std::exp(-y);
    long k = 0;
    for (;;) {
        sum.add(term);
        const double denom = 2.0 * p.mu * theta(k + 1) + static_cast<double>(k) + 1.0;
        const double next = term * (y / denom);
        ++k;
        if (next < p.eps_term * sum.value() && static_cast<double>(k) > y &&
            y / (static_cast<double>(k) + 1.0) < 0.5)
            return y + std::log(sum.value());
        term = next;
    }
}

/// Dense real polynomial; coefficient k is the coefficient of x^k.
/// The zero polynomial has an empty coefficient list.
class polynomial {
public:
    polynomial() = default;
    explicit polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    [[nodiscard]] const std::vector<double>& coeffs() const noexcept { return coeffs_; }
    [[nodiscard]] bool is_zero() const noexcept { return coeffs_.empty(); }
    [[nodiscard]] long degree() const noexcept {
        return coeffs_.empty() ? -1 : static_cast<long>(coeffs_.size()) - 1;
    }
    [[nodiscard]] double coefficient(std::size_t k) const noexcept {
        return k < coeffs_.size() ? coeffs_[k] : 0.0;
    }

    [[nodiscard]] double operator()(double x) const noexcept {
        double acc = 0.0;
        for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
        return acc;
    }

    friend polynomial operator*(const polynomial& a, const polynomial& b) {
        if (a.is_zero() || b.is_zero()) return polynomial{};
        std::vector<double> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
                out[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return polynomial(std::move(out));
    }

    friend polynomial operator+(const polynomial& a, const polynomial& b) {
        std::vector<double> out(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coefficient(i) + b.coefficient(i);
        return polynomial(std::move(out));
    }

    friend polynomial operator*(double s, const polynomial& a) {
        std::vector<double> out = a.coeffs_;
        for (double& c : out) c *= s;
        return polynomial(std::move(out));
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
    }
    std::vector<double> coeffs_;
};

/// Dunkl derivative restricted to polynomials: maps x^n to
/// (gamma_mu(n)/gamma_mu(n-1)) x^(n-1) and constants to zero, linearly.
[[nodiscard]] inline polynomial dunkl_derivative(const dunkl_param& p, const polynomial& q) {
    p.validate();
    if (q.degree() < 1) return polynomial{};
    std::vector<double> out(static_cast<std::size_t>(q.degree()), 0.0);
    for (long n = 1; n <= q.degree(); ++n)
        out[static_cast<std::size_t>(n - 1)] =
            q.coefficient(static_cast<std::size_t>(n)) * gamma_nu_ratio(p, n - 1);
    return polynomial(std::move(out));
}

}  // namespace dunkl
