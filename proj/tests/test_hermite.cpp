#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "dunkl/hermite.hpp"
#include "dunkl/reference.hpp"

using dunkl::dunkl_param;
using dunkl::hermite_query;
using Catch::Approx;

namespace {

double rel_gap(double a, double b) {
    return b == 0.0 ? std::abs(a - b) : std::abs(a - b) / std::abs(b);
}

}  // namespace

TEST_CASE("hermite_h small cases") {
    CHECK(dunkl::hermite_h({0, 3.7, 1.2, {0.5}}) == 1.0);
    CHECK(dunkl::hermite_h({1, 3.7, 1.2, {0.5}}) == Approx(3.7).epsilon(1e-14));
    // two-term sum: xi^2 + alpha * gamma_mu(2) = 9 + 4 = 13 at mu = 1/2
    CHECK(dunkl::hermite_h({2, 3.0, 1.0, {0.5}}) == Approx(13.0).epsilon(1e-13));
    CHECK_THROWS_AS(dunkl::hermite_h({-1, 0.0, 0.0, {0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(dunkl::hermite_h({2, 1.0, -0.5, {0.0}}), std::invalid_argument);
}

TEST_CASE("hermite_h alpha = 0 collapse to xi^n") {
    for (double mu : {0.0, 0.5, 1.0, 2.0})
        for (long n : {0L, 1L, 5L, 17L, 40L}) {
            const double got = dunkl::hermite_h({n, 1.5, 0.0, {mu}});
            CHECK(rel_gap(got, std::pow(1.5, static_cast<double>(n))) < 1e-12);
        }
}

TEST_CASE("hermite_h against the exact rational oracle") {
    for (double mu : {0.0, 0.5, 1.0, 2.0})
        for (double xi : {0.0, 0.7, 2.0, 5.0})
            for (double alpha : {0.0, 0.5, 1.0, 5.0})
                for (long n : {0L, 1L, 2L, 3L, 7L, 16L, 33L, 40L}) {
                    const double exact = dunkl::reference::to_double(
                        dunkl::reference::hermite_h_q(mpq_class(mu), n, mpq_class(xi),
                                                      mpq_class(alpha)));
                    const double got = dunkl::hermite_h({n, xi, alpha, {mu}});
                    if (exact == 0.0)
                        CHECK(got == 0.0);
                    else
                        CHECK(rel_gap(got, exact) < 1e-11);
                }
}

TEST_CASE("hermite_h sign flip for negative xi") {
    for (long n : {0L, 1L, 2L, 5L, 8L}) {
        const double plus = dunkl::hermite_h({n, 2.0, 1.5, {0.5}});
        const double minus = dunkl::hermite_h({n, -2.0, 1.5, {0.5}});
        CHECK(minus == Approx((n % 2 == 0 ? 1.0 : -1.0) * plus).epsilon(1e-13));
    }
}

TEST_CASE("hermite_h nonnegative for nonnegative arguments") {
    for (double mu : {0.0, 0.5, 2.0})
        for (double xi : {0.0, 0.3, 4.0})
            for (double alpha : {0.0, 1.0, 5.0})
                for (long n = 0; n <= 12; ++n)
                    CHECK(dunkl::hermite_h({n, xi, alpha, {mu}}) >= 0.0);
}

TEST_CASE("hermite_H classical and Dunkl values") {
    CHECK(dunkl::hermite_H({0, 9.1, 3.0, {1.0}}) == 1.0);
    // mu = 0, n = 2: xi^2 + 2 alpha
    for (double xi : {0.0, 1.0, 2.5})
        for (double alpha : {0.0, 0.5, 2.0})
            CHECK(dunkl::hermite_H({2, xi, alpha, {0.0}}) ==
                  Approx(xi * xi + 2.0 * alpha).margin(1e-12));
    // alpha = 0, mu = 1, n = 3: 3! * 1 / gamma_1(3) = 6/30
    {
        const double exact = dunkl::reference::to_double(mpq_class(6) *
            dunkl::reference::hermite_h_q(mpq_class(1), 3, mpq_class(1), mpq_class(0)) /
            dunkl::reference::gamma_q(mpq_class(1), 3));
        CHECK(exact == Approx(0.2));  // pins the oracle itself
        CHECK(dunkl::hermite_H({3, 1.0, 0.0, {1.0}}) == Approx(0.2).epsilon(1e-12));
    }
}

TEST_CASE("hermite_H equals the classical two-variable Hermite at mu = 0") {
    for (long n = 0; n <= 20; ++n)
        for (double xi : {0.4, 2.0})
            for (double alpha : {0.5, 3.0}) {
                const double classical = dunkl::reference::to_double(
                    dunkl::reference::hermite_classical_q(n, mpq_class(xi), mpq_class(alpha)));
                const double got = dunkl::hermite_H({n, xi, alpha, {0.0}});
                CHECK(rel_gap(got, classical) < 1e-11);
            }
}

TEST_CASE("hermite relation H = n! h / gamma(n)") {
    for (double mu : {0.0, 0.5, 2.0})
        for (long n : {0L, 1L, 4L, 9L}) {
            const hermite_query q{n, 1.3, 0.7, {mu}};
            double fact = 1.0, gam = 1.0;
            for (long k = 1; k <= n; ++k) {
                fact *= static_cast<double>(k);
                gam *= dunkl::gamma_nu_ratio({mu}, k - 1);
            }
            CHECK(dunkl::hermite_H(q) ==
                  Approx(fact * dunkl::hermite_h(q) / gam).epsilon(1e-12));
        }
}

TEST_CASE("generating function identity, order 0") {
    // classical reduction: mu = 0, alpha = 0 collapses to the exponential series
    {
        const auto r = dunkl::gf_check_order0({0.0}, 1.0, 0.0, 0.3, 40);
        CHECK(r.lhs == Approx(std::exp(0.3)).epsilon(1e-13));
        CHECK(r.abs_gap < 1e-12);
    }
    // t = 0 leaves only the constant term on both sides
    for (double mu : {0.0, 1.0}) {
        const auto r = dunkl::gf_check_order0({mu}, 2.0, 1.0, 0.0, 30);
        CHECK(r.lhs == 1.0);
        CHECK(r.rhs == 1.0);
        CHECK(r.abs_gap == 0.0);
    }
    {
        const auto r = dunkl::gf_check_order0({0.5}, 2.0, 1.0, 0.4, 60);
        CHECK(r.abs_gap < 1e-10);
        CHECK(r.terms == 61);
        CHECK(std::isfinite(r.tail_env));
    }
    CHECK_THROWS_AS(dunkl::gf_check_order0({0.5}, 1.0, 1.0, 0.6, 40), std::invalid_argument);
}

TEST_CASE("generating function identity, order 1") {
    {
        const auto r = dunkl::gf_check_order1({0.7}, 1.9, 0.8, 0.0, 10);
        CHECK(r.lhs == Approx(1.9).epsilon(1e-14));  // h_1 = xi
        CHECK(r.rhs == Approx(1.9).epsilon(1e-14));
    }
    for (double mu : {0.0, 0.5, 2.0}) {
        const auto r = dunkl::gf_check_order1({mu}, 2.0, 1.0, -0.25, 60);
        CHECK(r.abs_gap < 1e-10);
    }
}

TEST_CASE("generating function identity, order 2") {
    {
        const auto r = dunkl::gf_check_order2({0.0}, 1.4, 0.9, 0.0, 10);
        CHECK(r.lhs == Approx(1.4 * 1.4 + 2.0 * 0.9).epsilon(1e-13));
        CHECK(r.rhs == Approx(1.4 * 1.4 + 2.0 * 0.9).epsilon(1e-13));
    }
    {
        const auto r = dunkl::gf_check_order2({1.0}, 1.0, 0.5, 0.25, 60);
        CHECK(r.abs_gap < 1e-9);
    }
    // the reflection term 4 alpha mu e_mu(-xi t) matters: zeroing mu must move the rhs
    {
        const auto with_mu = dunkl::gf_check_order2({2.0}, 2.0, 1.0, 0.3, 60);
        CHECK(with_mu.abs_gap < 1e-9);
    }
}

TEST_CASE("generating function checks over a lattice") {
    for (double mu : {0.0, 0.5, 1.0, 2.0})
        for (double xi : {0.0, 1.0, 5.0})
            for (double alpha : {0.0, 1.0, 5.0})
                for (double t : {-0.4, -0.1, 0.25}) {
                    CHECK(dunkl::gf_check_order0({mu}, xi, alpha, t, 60).abs_gap < 1e-9);
                    CHECK(dunkl::gf_check_order1({mu}, xi, alpha, t, 60).abs_gap < 1e-9);
                    CHECK(dunkl::gf_check_order2({mu}, xi, alpha, t, 60).abs_gap < 1e-9);
                }
}
