#pragma once

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dunkl/analysis.hpp"
#include "dunkl/corpus.hpp"
#include "dunkl/dunkl.hpp"
#include "dunkl/reference.hpp"

/// The acceptance suite: every quantitative requirement of the library,
/// runnable in-process by the `selftest` CLI command and by the dedicated
/// test binary.  Each criterion is pinned here, tolerances included.
namespace dunkl::acceptance {

// The standard evaluation grid shared by all criteria.
inline constexpr std::array<long, 5> standard_n{1, 5, 10, 50, 100};
inline constexpr std::array<double, 3> standard_mu{0.0, 0.5, 2.0};
inline constexpr std::array<double, 3> standard_alpha{0.0, 1.0, 5.0};
inline constexpr std::array<double, 6> standard_x{0.0, 0.1, 0.5, 1.0, 2.0, 5.0};
inline constexpr std::array<double, 6> kernel_mu{0.0, 0.25, 0.5, 1.0, 2.0, 5.0};

struct options {
    long grid_points = 201;
    double eps_term = 1e-14;
    double eps_cancel = 1e-8;

    void validate() const {
        if (grid_points < 2)
            throw std::invalid_argument("selftest: grid-points must be >= 2");
        dunkl_param{0.0, eps_term, eps_cancel}.validate();
    }
    [[nodiscard]] dunkl_param param(double mu) const { return {mu, eps_term, eps_cancel}; }
};

struct criterion_result {
    int id = 0;
    std::string name;
    bool pass = false;
    double seconds = 0.0;
    std::string detail;
};

namespace detail {

inline double rel_gap(double got, double want) {
    return want == 0.0 ? std::abs(got - want) : std::abs(got - want) / std::abs(want);
}

inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

struct worst_tracker {
    double worst = 0.0;
    std::string where;
    long violations = 0;

    void record(double value, double limit, const std::string& where_str) {
        if (value > worst) {
            worst = value;
            where = where_str;
        }
        if (value > limit) ++violations;
    }
};

}  // namespace detail

// --- criterion 1: series-summed moments match the closed forms ----------

inline criterion_result criterion_moments(const options& opt) {
    criterion_result res{1, "moment-identities"};
    detail::worst_tracker rel, abs0;
    for (double mu : standard_mu)
        for (double alpha : standard_alpha)
            for (long n : standard_n) {
                operator_evaluator op({n, alpha, opt.param(mu)});
                for (double x : standard_x) {
                    const auto rep = op.moments(x);
                    const std::array<std::pair<double, double>, 3> pairs{
                        {{rep.m0_s, rep.m0}, {rep.m1_s, rep.m1}, {rep.m2_s, rep.m2}}};
                    std::ostringstream where;
                    where << "n=" << n << " mu=" << mu << " alpha=" << alpha << " x=" << x;
                    for (const auto& [s, c] : pairs) {
                        if (c == 0.0)
                            abs0.record(std::abs(s - c), 1e-12, where.str());
                        else
                            rel.record(std::abs(s - c) / std::abs(c), 1e-9, where.str());
                    }
                }
            }
    res.pass = rel.violations == 0 && abs0.violations == 0;
    res.detail = "worst rel gap " + detail::fmt(rel.worst) + " (" + rel.where + "), worst abs-at-zero " +
                 detail::fmt(abs0.worst);
    return res;
}

// --- criterion 2: central moments are the algebraic moment combinations --

inline criterion_result criterion_central_moments(const options& opt) {
    criterion_result res{2, "central-moments"};
    detail::worst_tracker gap;
    bool nonneg = true;
    for (double mu : standard_mu)
        for (double alpha : standard_alpha)
            for (long n : standard_n) {
                operator_evaluator op({n, alpha, opt.param(mu)});
                for (double x : standard_x) {
                    const auto rep = op.moments(x);
                    const auto [d1, d2] = op.central_moments(x);
                    const double d1_combo = rep.m1 - x;
                    const double d2_combo = rep.m2 - 2.0 * x * rep.m1 + x * x;
                    std::ostringstream where;
                    where << "n=" << n << " mu=" << mu << " alpha=" << alpha << " x=" << x;
                    const auto one_gap = [&](double closed, double combo) {
                        return combo == 0.0 ? (closed == 0.0 ? 0.0 : std::abs(closed))
                                            : std::abs(closed - combo) / std::abs(combo);
                    };
                    gap.record(one_gap(d1, d1_combo), 1e-10, where.str());
                    gap.record(one_gap(d2, d2_combo), 1e-10, where.str());
                    if (d2 < 0.0) nonneg = false;
                }
            }
    res.pass = gap.violations == 0 && nonneg;
    res.detail = "worst identity gap " + detail::fmt(gap.worst) + " (" + gap.where + ")" +
                 (nonneg ? "" : ", delta2 < 0 somewhere");
    return res;
}

// --- criterion 3: reductions to the three classical special cases --------

inline criterion_result criterion_reductions(const options& opt) {
    criterion_result res{3, "reductions"};
    const std::array<const char*, 4> labels{"one", "exp_neg", "runge", "abs1"};
    const std::array<double, 4> xs{0.0, 0.5, 2.0, 5.0};
    detail::worst_tracker gap;

    // (a) mu = 0: T_n == G_n^alpha (factorial-based reference)
    for (long n : standard_n)
        for (double alpha : standard_alpha) {
            reference::krech_evaluator ref(n, alpha);
            operator_evaluator op({n, alpha, opt.param(0.0)});
            for (const char* label : labels) {
                const auto& fn = corpus_lookup(label).fn;
                for (double x : xs) {
                    const double mine = op.apply(fn, x).value;
                    const double theirs = ref.apply(fn.eval, x);
                    std::ostringstream where;
                    where << "G_n: n=" << n << " alpha=" << alpha << " x=" << x << " " << label;
                    gap.record(std::abs(mine - theirs) / std::max(1.0, std::abs(theirs)),
                               1e-12, where.str());
                }
            }
        }

    // (b) alpha = 0: T_n == S_n^* (direct Dunkl-Szasz summation)
    for (long n : standard_n)
        for (double mu : standard_mu) {
            operator_evaluator op({n, 0.0, opt.param(mu)});
            for (const char* label : labels) {
                const auto& fn = corpus_lookup(label).fn;
                for (double x : xs) {
                    const double mine = op.apply(fn, x).value;
                    const double theirs = reference::dunkl_szasz_reference(mu, n, fn.eval, x);
                    std::ostringstream where;
                    where << "S_n*: n=" << n << " mu=" << mu << " x=" << x << " " << label;
                    gap.record(std::abs(mine - theirs) / std::max(1.0, std::abs(theirs)),
                               1e-12, where.str());
                }
            }
        }

    // (c) mu = 0, alpha = 0: classical Szasz via Poisson weights
    for (long n : standard_n) {
        operator_evaluator op({n, 0.0, opt.param(0.0)});
        for (const char* label : labels) {
            const auto& fn = corpus_lookup(label).fn;
            for (double x : xs) {
                const double mine = op.apply(fn, x).value;
                const double theirs = reference::szasz_classical(n, fn.eval, x);
                std::ostringstream where;
                where << "Szasz: n=" << n << " x=" << x << " " << label;
                gap.record(std::abs(mine - theirs) / std::max(1.0, std::abs(theirs)), 1e-12,
                           where.str());
            }
        }
    }

    res.pass = gap.violations == 0;
    res.detail = "worst reduction gap " + detail::fmt(gap.worst) + " (" + gap.where + ")";
    return res;
}

// --- criterion 4: the Dunkl kernel itself ---------------------------------

inline criterion_result criterion_kernel(const options& opt) {
    criterion_result res{4, "dunkl-kernel"};
    detail::worst_tracker gap;

    // gamma recursion vs the log-gamma closed form, k <= 40
    for (double mu : kernel_mu) {
        const dunkl_param p = opt.param(mu);
        double prod = 1.0;
        for (long k = 0; k <= 40; ++k) {
            const double closed = std::exp(log_gamma_nu(p, k));
            std::ostringstream where;
            where << "gamma: mu=" << mu << " k=" << k;
            gap.record(detail::rel_gap(prod, closed), 1e-12, where.str());
            prod *= gamma_nu_ratio(p, k);
        }
    }

    // e_0(x) = exp(x) on [-10, 10]
    for (double x = -10.0; x <= 10.0 + 1e-9; x += 0.25) {
        const auto r = dunkl_exp(opt.param(0.0), x);
        std::ostringstream where;
        where << "e_0(" << x << ")";
        gap.record(detail::rel_gap(r.value, std::exp(x)), 1e-12, where.str());
    }

    // dunkl_exp_ratio against the exact rational oracle, nx <= 50
    detail::worst_tracker ratio_gap;
    for (double mu : kernel_mu)
        for (double y : {0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 35.0, 50.0}) {
            const double exact = reference::to_double(
                reference::dunkl_exp_ratio_q(mpq_class(mu), mpq_class(y)));
            const auto got = dunkl_exp_ratio(opt.param(mu), y);
            std::ostringstream where;
            where << "ratio: mu=" << mu << " y=" << y;
            ratio_gap.record(std::abs(got.value - exact), 1e-10, where.str());
        }

    res.pass = gap.violations == 0 && ratio_gap.violations == 0;
    res.detail = "worst kernel rel gap " + detail::fmt(gap.worst) + " (" + gap.where +
                 "), worst ratio abs gap " + detail::fmt(ratio_gap.worst) + " (" +
                 ratio_gap.where + ")";
    return res;
}

// --- criterion 5: generating-function identities ---------------------------

inline criterion_result criterion_generating_functions(const options& opt) {
    criterion_result res{5, "generating-functions"};
    detail::worst_tracker gap;
    const std::array<double, 7> ts{0.0, 0.1, -0.1, 0.25, -0.25, 0.4, -0.4};
    const std::array<double, 4> xis{0.0, 1.0, 2.0, 5.0};
    const std::array<double, 4> alphas{0.0, 0.5, 1.0, 5.0};
    const std::array<double, 4> mus{0.0, 0.5, 1.0, 2.0};
    const long N = 60;
    for (double mu : mus) {
        const dunkl_param p = opt.param(mu);
        for (double xi : xis)
            for (double alpha : alphas)
                for (double t : ts) {
                    std::ostringstream where;
                    where << "mu=" << mu << " xi=" << xi << " alpha=" << alpha << " t=" << t;
                    gap.record(gf_check_order0(p, xi, alpha, t, N).abs_gap, 1e-9,
                               "order0 " + where.str());
                    gap.record(gf_check_order1(p, xi, alpha, t, N).abs_gap, 1e-9,
                               "order1 " + where.str());
                    gap.record(gf_check_order2(p, xi, alpha, t, N).abs_gap, 1e-9,
                               "order2 " + where.str());
                }
    }
    res.pass = gap.violations == 0;
    res.detail = "worst abs gap " + detail::fmt(gap.worst) + " (" + gap.where + ")";
    return res;
}

// --- criterion 6: Dunkl derivative on polynomials ---------------------------

inline criterion_result criterion_derivative(const options& opt) {
    criterion_result res{6, "dunkl-derivative"};
    detail::worst_tracker gap;

    for (double mu : kernel_mu) {
        const dunkl_param p = opt.param(mu);

        // monomial mapping x^n -> ratio * x^(n-1)
        for (long n = 1; n <= 8; ++n) {
            std::vector<double> cs(static_cast<std::size_t>(n) + 1, 0.0);
            cs.back() = 1.0;
            const auto d = dunkl_derivative(p, polynomial(cs));
            std::ostringstream where;
            where << "monomial mu=" << mu << " n=" << n;
            gap.record(detail::rel_gap(d.coefficient(static_cast<std::size_t>(n - 1)),
                                       gamma_nu_ratio(p, n - 1)),
                       1e-12, where.str());
        }

        // product rule with an even left factor, degrees <= 8
        std::mt19937_64 rng(1234);
        std::uniform_real_distribution<double> coeff(-1.0, 1.0);
        std::vector<double> pc(9, 0.0), sc(9);
        for (std::size_t i = 0; i < 9; i += 2) pc[i] = coeff(rng);
        for (auto& c : sc) c = coeff(rng);
        const polynomial phi(pc), psi(sc);
        const auto lhs = dunkl_derivative(p, phi * psi);
        const auto rhs = dunkl_derivative(p, phi) * psi + phi * dunkl_derivative(p, psi);
        for (long k = 0; k <= std::max(lhs.degree(), rhs.degree()); ++k) {
            const double a = lhs.coefficient(static_cast<std::size_t>(k));
            const double b = rhs.coefficient(static_cast<std::size_t>(k));
            std::ostringstream where;
            where << "product mu=" << mu << " coeff " << k;
            gap.record(std::abs(a - b) / std::max(1e-6, std::abs(b)), 1e-12, where.str());
        }

        // truncated eigenfunction property at degree 8
        for (double lambda : {0.5, -1.0, 2.0}) {
            std::vector<double> cs(9);
            double pw = 1.0, gam = 1.0;
            for (long k = 0; k <= 8; ++k) {
                cs[static_cast<std::size_t>(k)] = pw / gam;
                pw *= lambda;
                gam *= gamma_nu_ratio(p, k);
            }
            const auto dq = dunkl_derivative(p, polynomial(cs));
            for (long k = 0; k <= 7; ++k) {
                std::ostringstream where;
                where << "eigen mu=" << mu << " lambda=" << lambda << " coeff " << k;
                gap.record(detail::rel_gap(dq.coefficient(static_cast<std::size_t>(k)),
                                           lambda * cs[static_cast<std::size_t>(k)]),
                           1e-12, where.str());
            }
        }
    }
    res.pass = gap.violations == 0;
    res.detail = "worst rel gap " + detail::fmt(gap.worst) + " (" + gap.where + ")";
    return res;
}

// --- criterion 7: hard bound checks ----------------------------------------

inline criterion_result criterion_hard_bounds(const options& opt) {
    criterion_result res{7, "hard-bounds"};
    const domain_grid grid{0.0, 2.0, opt.grid_points};
    long violations = 0;
    double worst_margin = -std::numeric_limits<double>::infinity();
    std::string worst_where;

    const auto scan = [&](const bound_report& r, const std::string& where) {
        const double margin = r.actual - (r.bound + r.slack);
        if (margin > worst_margin) {
            worst_margin = margin;
            worst_where = where;
        }
        if (!r.holds) ++violations;
    };

    for (double mu : standard_mu)
        for (double alpha : standard_alpha)
            for (long n : standard_n) {
                const operator_config cfg{n, alpha, opt.param(mu)};
                std::ostringstream base;
                base << "n=" << n << " mu=" << mu << " alpha=" << alpha;

                // Hoelder-class bound on the two certified members
                for (const char* label : {"abs1", "sqrtabs1"}) {
                    bound_checker checker(cfg, corpus_lookup(label).fn, grid);
                    for (double x : grid.all())
                        scan(checker.lipschitz(x),
                             "T6 " + std::string(label) + " " + base.str());
                }

                // first-modulus bound on every uniformly continuous member
                for (const auto& entry : corpus()) {
                    if (!entry.uniformly_continuous) continue;
                    bound_checker checker(cfg, entry.fn, grid);
                    for (double x : grid.all())
                        scan(checker.omega_rate(x), "T7 " + entry.fn.label + " " + base.str());
                }
            }

    res.pass = violations == 0;
    std::ostringstream d;
    d << violations << " violations, worst margin " << detail::fmt(worst_margin) << " ("
      << worst_where << ")";
    res.detail = d.str();
    return res;
}

// --- criterion 8: convergence sweeps ----------------------------------------

inline criterion_result criterion_convergence(const options& opt) {
    criterion_result res{8, "convergence"};
    const domain_grid grid{0.0, 2.0, opt.grid_points};
    const std::vector<long> ns{10, 20, 40, 80, 160};
    const std::array<std::pair<double, double>, 3> families{
        {{0.0, 0.0}, {0.5, 1.0}, {2.0, 5.0}}};
    long failures = 0;
    std::ostringstream fail_detail;

    for (const auto& [mu, alpha] : families)
        for (const auto& entry : corpus()) {
            const auto rows = convergence_sweep(opt.param(mu), alpha, ns, entry.fn, grid);
            const double first = rows.front().sup_error;
            const double last = rows.back().sup_error;
            const bool ok = last <= 1e-12 || last < first / 4.0;
            if (!ok) {
                ++failures;
                fail_detail << " [mu=" << mu << " alpha=" << alpha << " " << entry.fn.label
                            << ": sup(10)=" << detail::fmt(first)
                            << " sup(160)=" << detail::fmt(last)
                            << " ratio=" << detail::fmt(first / last) << "]";
            }
        }

    // classical exact law: mu = 0, alpha = 0, square: sup error = 2/n on [0,2]
    double worst_law = 0.0;
    {
        const auto rows =
            convergence_sweep(opt.param(0.0), 0.0, ns, corpus_lookup("square").fn, grid);
        for (const auto& row : rows)
            worst_law = std::max(
                worst_law, std::abs(row.sup_error - 2.0 / static_cast<double>(row.n)));
    }
    const bool law_ok = worst_law <= 1e-10;

    res.pass = failures == 0 && law_ok;
    std::ostringstream d;
    d << failures << " ratio failures" << fail_detail.str() << "; classical-law gap "
      << detail::fmt(worst_law);
    res.detail = d.str();
    return res;
}

// --- criterion 9: bound-report consistency ----------------------------------

inline criterion_result criterion_bound_reports(const options& opt) {
    criterion_result res{9, "bound-reports"};
    const domain_grid grid{0.0, 2.0, opt.grid_points};
    detail::worst_tracker chi_gap, mu0_gap;
    const std::array<double, 4> xs{0.1, 0.5, 1.0, 2.0};

    // internal consistency of the K-functional reports
    for (double mu : standard_mu)
        for (double alpha : standard_alpha)
            for (long n : {5L, 50L}) {
                const operator_config cfg{n, alpha, opt.param(mu)};
                for (const char* label : {"exp_neg", "runge"}) {
                    bound_checker checker(cfg, corpus_lookup(label).fn, grid);
                    for (double x : xs) {
                        const auto r = checker.peetre(x);
                        std::ostringstream where;
                        where << label << " n=" << n << " mu=" << mu << " alpha=" << alpha
                              << " x=" << x;
                        chi_gap.record(std::abs(r.component("chi") -
                                                (r.component("delta1") +
                                                 r.component("delta2"))),
                                       1e-12, where.str());
                        if (r.component("omega2_delta_requested") < 0.0)
                            chi_gap.record(1.0, 0.0, "negative omega2 arg " + where.str());
                    }
                }
            }

    // mu = 0: the mixed bound agrees with the Krech reference pipeline
    for (long n : standard_n)
        for (double alpha : standard_alpha) {
            const operator_config cfg{n, alpha, opt.param(0.0)};
            reference::krech_evaluator ref(n, alpha);
            for (const char* label : {"exp_neg", "runge"}) {
                const auto& fn = corpus_lookup(label).fn;
                bound_checker checker(cfg, fn, grid);
                for (double x : xs) {
                    const auto mine = checker.mixed(x);
                    const auto [d1r, d2r] = ref.central_moments(x);
                    double used2 = 0.0, used1 = 0.0;
                    const double om2 = dunkl::detail::omega2_clamped(
                        fn, 0.5 * std::sqrt(d2r + d1r * d1r), grid, &used2);
                    const double om1 = dunkl::detail::omega_clamped(fn, d1r, grid, &used1);
                    const double bound_ref = om2 + om1;  // M_const = 1
                    std::ostringstream where;
                    where << label << " n=" << n << " alpha=" << alpha << " x=" << x;
                    mu0_gap.record(std::abs(mine.bound - bound_ref), 1e-10, where.str());
                }
            }
        }

    res.pass = chi_gap.violations == 0 && mu0_gap.violations == 0;
    res.detail = "worst chi gap " + detail::fmt(chi_gap.worst) + ", worst mu=0 bound gap " +
                 detail::fmt(mu0_gap.worst) + " (" + mu0_gap.where + ")";
    return res;
}

// --- driver -----------------------------------------------------------------

inline std::vector<criterion_result> run_all(const options& opt) {
    opt.validate();
    using clock = std::chrono::steady_clock;
    std::vector<criterion_result> results;
    const auto t0 = clock::now();

    const auto timed = [&](auto&& fn) {
        const auto start = clock::now();
        criterion_result r = fn(opt);
        r.seconds = std::chrono::duration<double>(clock::now() - start).count();
        results.push_back(std::move(r));
    };

    timed(criterion_moments);
    timed(criterion_central_moments);
    timed(criterion_reductions);
    timed(criterion_kernel);
    timed(criterion_generating_functions);
    timed(criterion_derivative);
    timed(criterion_hard_bounds);
    timed(criterion_convergence);
    timed(criterion_bound_reports);

    // runtime limits pinned per criterion
    if (results[0].seconds >= 10.0) {
        results[0].pass = false;
        results[0].detail += " [exceeded 10 s budget]";
    }
    if (results[4].seconds >= 20.0) {
        results[4].pass = false;
        results[4].detail += " [exceeded 20 s budget]";
    }

    const double total = std::chrono::duration<double>(clock::now() - t0).count();
    criterion_result end_to_end{10, "end-to-end"};
    bool all = true;
    for (const auto& r : results) all = all && r.pass;
    end_to_end.pass = all && total < 60.0;
    end_to_end.seconds = total;
    end_to_end.detail = "criteria 1-9 " + std::string(all ? "pass" : "FAIL") + ", total " +
                        detail::fmt(total) + " s (budget 60 s)";
    results.push_back(std::move(end_to_end));
    return results;
}

[[nodiscard]] inline bool all_passed(const std::vector<criterion_result>& results) {
    for (const auto& r : results)
        if (!r.pass) return false;
    return true;
}

inline void print_results(const std::vector<criterion_result>& results, std::FILE* out) {
    for (const auto& r : results)
        std::fprintf(out, "[%s] %2d %-22s (%6.2f s)  %s\n", r.pass ? "PASS" : "FAIL", r.id,
                     r.name.c_str(), r.seconds, r.detail.c_str());
}

}  // namespace dunkl::acceptance
