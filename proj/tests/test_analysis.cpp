#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "dunkl/analysis.hpp"
#include "dunkl/corpus.hpp"
#include "dunkl/reference.hpp"

using dunkl::bound_checker;
using dunkl::domain_grid;
using dunkl::target_function;
using Catch::Approx;

namespace {

const target_function kConst{[](double) { return 2.5; }, "const", dunkl::lipschitz_class{1.0, 1.0},
                             2.5, 0, 2.5};
const target_function kId{[](double t) { return t; }, "id", dunkl::lipschitz_class{1.0, 1.0},
                          std::nullopt, 1, 1.0};
const target_function kSquare{[](double t) { return t * t; }, "square", std::nullopt,
                              std::nullopt, 2, 1.0};
const target_function kAffine{[](double t) { return 3.0 - 0.5 * t; }, "affine",
                              dunkl::lipschitz_class{0.5, 1.0}, std::nullopt, 1, 3.0};

}  // namespace

TEST_CASE("domain_grid basics") {
    domain_grid g{0.0, 2.0, 201};
    g.validate();
    CHECK(g.h() == Approx(0.01));
    CHECK(g.point(0) == 0.0);
    CHECK(g.point(200) == 2.0);
    CHECK(g.all().size() == 201);
    CHECK_THROWS_AS((domain_grid{1.0, 1.0, 10}).validate(), std::invalid_argument);
    CHECK_THROWS_AS((domain_grid{0.0, 1.0, 1}).validate(), std::invalid_argument);
    CHECK_THROWS_AS((domain_grid{-0.5, 1.0, 10}).validate(), std::invalid_argument);
}

TEST_CASE("modulus of continuity on grids") {
    const domain_grid g{0.0, 2.0, 201};
    CHECK(dunkl::modulus(kConst, 0.5, g) == 0.0);
    CHECK(dunkl::modulus(kId, 0.3, g) == Approx(0.3).margin(g.h() + 1e-12));
    // omega(t^2; delta) on [0, b] is delta (2b - delta)
    CHECK(dunkl::modulus(kSquare, 0.5, g) == Approx(1.75).margin(2.0 * g.h() + 1e-12));
    CHECK_THROWS_AS(dunkl::modulus(kId, 0.0, g), std::invalid_argument);
    CHECK_THROWS_AS(dunkl::modulus(kId, -1.0, g), std::invalid_argument);
    CHECK_THROWS_AS(dunkl::modulus(kId, 2.5, g), std::invalid_argument);
}

TEST_CASE("modulus is monotone and nearly subadditive in delta") {
    const domain_grid g{0.0, 2.0, 101};
    const auto& runge = dunkl::corpus_lookup("runge").fn;
    double prev = 0.0;
    for (double d : {0.1, 0.2, 0.3, 0.5, 0.9, 1.4, 2.0}) {
        const double w = dunkl::modulus(runge, d, g);
        CHECK(w >= prev);
        prev = w;
    }
    const double slack = 2.0 * dunkl::lip_estimate(runge, g) * g.h();
    for (double d1 : {0.2, 0.5})
        for (double d2 : {0.3, 0.7}) {
            CHECK(dunkl::modulus(runge, d1 + d2, g) <=
                  dunkl::modulus(runge, d1, g) + dunkl::modulus(runge, d2, g) + slack + 1e-12);
        }
}

TEST_CASE("modulus vanishes with delta for continuous functions") {
    const domain_grid g{0.0, 2.0, 201};
    const auto& runge = dunkl::corpus_lookup("runge").fn;
    double prev = dunkl::modulus(runge, 1.0, g);
    for (double d : {0.5, 0.1, 0.02, 0.01}) {
        const double w = dunkl::modulus(runge, d, g);
        CHECK(w <= prev + 1e-15);
        prev = w;
    }
    // at the resolution limit the modulus is a single-step increment
    CHECK(dunkl::modulus(runge, g.h(), g) <=
          dunkl::lip_estimate(runge, g) * g.h() * (1.0 + 1e-12));
}

TEST_CASE("second modulus on grids") {
    const domain_grid g{0.0, 2.0, 201};
    CHECK(dunkl::second_modulus(kConst, 0.4, g) == 0.0);
    CHECK(dunkl::second_modulus(kAffine, 0.4, g) == Approx(0.0).margin(1e-12));
    // second difference of t^2 is exactly 2 s^2
    CHECK(dunkl::second_modulus(kSquare, 0.4, g) == Approx(2.0 * 0.16).margin(1e-10));
    CHECK_THROWS_AS(dunkl::second_modulus(kSquare, 0.0, g), std::invalid_argument);
    CHECK_THROWS_AS(dunkl::second_modulus(kSquare, 1.5, g), std::invalid_argument);

    // omega_2 <= 4 sup|f|
    const auto& runge = dunkl::corpus_lookup("runge").fn;
    for (double d : {0.1, 0.5, 1.0})
        CHECK(dunkl::second_modulus(runge, d, g) <= 4.0 * *runge.sup_norm + 1e-12);
}

TEST_CASE("Lipschitz-class bound check") {
    const domain_grid g{0.0, 2.0, 201};
    // identity with alpha = 0: T_n reproduces t, so actual error is 0
    {
        const auto r = dunkl::check_lipschitz_bound({25, 0.0, {0.0}}, kId, 1.0);
        CHECK(r.actual < 1e-13);
        CHECK(r.bound == Approx(std::sqrt(1.0 / 25.0)).epsilon(1e-12));
        CHECK(r.holds);
    }
    // kink function, genuinely nonzero error
    {
        const auto& abs1 = dunkl::corpus_lookup("abs1").fn;
        const auto r = dunkl::check_lipschitz_bound({50, 1.0, {0.5}}, abs1, 1.0);
        CHECK(r.actual > 0.0);
        CHECK(r.holds);
    }
    // constants: zero error against a nonnegative bound
    {
        const auto r = dunkl::check_lipschitz_bound({5, 1.0, {0.5}}, kConst, 0.7);
        CHECK(r.actual < 1e-13);
        CHECK(r.holds);
    }
    CHECK_THROWS_AS(dunkl::check_lipschitz_bound({5, 1.0, {0.5}}, kSquare, 0.7),
                    std::invalid_argument);
}

TEST_CASE("first-modulus bound check") {
    const domain_grid g{0.0, 2.0, 201};
    {
        const auto r = dunkl::check_omega_bound({25, 0.0, {0.0}}, kConst, 1.0, g);
        CHECK(r.actual < 1e-13);
        CHECK(r.holds);
    }
    {
        const auto r = dunkl::check_omega_bound({100, 0.0, {0.0}}, kId, 1.0, g);
        CHECK(r.actual < 1e-13);
        CHECK(r.bound == Approx(0.2).epsilon(1e-6));  // (1 + 1) * omega(t; 0.1)
        CHECK(r.holds);
    }
    {
        const auto& sin_fn = dunkl::corpus_lookup("sin").fn;
        const auto r = dunkl::check_omega_bound({25, 0.5, {1.0}}, sin_fn, 0.5, g);
        CHECK(r.holds);
        CHECK(r.actual > 0.0);
        CHECK(r.bound > 0.0);
    }
}

TEST_CASE("Peetre bound report") {
    const domain_grid g{0.0, 2.0, 201};
    {
        const auto r = dunkl::check_peetre_bound({25, 1.0, {0.5}}, kConst, 1.0, g, 1.0);
        CHECK(r.actual < 1e-13);
        CHECK(r.informational);
        CHECK(r.holds);
    }
    {
        const auto& runge = dunkl::corpus_lookup("runge").fn;
        const auto r = dunkl::check_peetre_bound({50, 1.0, {0.5}}, runge, 1.0, g, 1.0);
        CHECK(r.component("chi") ==
              Approx(r.component("delta1") + r.component("delta2")).epsilon(1e-14));
        CHECK(r.component("omega2_delta_requested") >= 0.0);
        CHECK(r.bound > 0.0);
    }
    CHECK_THROWS_AS(dunkl::check_peetre_bound({5, 1.0, {0.5}}, kId, 1.0, g, 1.0),
                    std::invalid_argument);
}

TEST_CASE("mixed bound report and its mu = 0 reduction") {
    const domain_grid g{0.0, 2.0, 201};
    {
        const auto r = dunkl::check_mixed_bound({25, 1.0, {0.5}}, kConst, 1.0, g, 1.0);
        CHECK(r.actual < 1e-13);
        CHECK(r.bound == Approx(0.0).margin(1e-12));
    }
    // at mu = 0, alpha = 0 the omega term vanishes and the omega_2 argument
    // is half of sqrt(x/n)
    {
        const auto& runge = dunkl::corpus_lookup("runge").fn;
        const auto r = dunkl::check_mixed_bound({100, 0.0, {0.0}}, runge, 1.0, g, 1.0);
        CHECK(r.component("omega") == 0.0);
        CHECK(r.component("omega2_delta_requested") ==
              Approx(0.5 * std::sqrt(1.0 / 100.0)).epsilon(1e-13));
    }
    // mu = 0 agreement with the Krech reference pipeline
    {
        const auto& exp_neg = dunkl::corpus_lookup("exp_neg").fn;
        const long n = 50;
        const double alpha = 1.0, x = 1.0;
        const auto mine = dunkl::check_mixed_bound({n, alpha, {0.0}}, exp_neg, x, g, 1.0);

        dunkl::reference::krech_evaluator ref(n, alpha);
        const auto [d1r, d2r] = ref.central_moments(x);
        const double arg_ref = d2r + d1r * d1r;  // x(8x^3a^2+4xa+n)/n^2 at mu=0
        double used = 0.0;
        const double om2_ref =
            dunkl::detail::omega2_clamped(exp_neg, 0.5 * std::sqrt(arg_ref), g, &used);
        double used1 = 0.0;
        const double om1_ref = dunkl::detail::omega_clamped(exp_neg, d1r, g, &used1);
        const double bound_ref = 1.0 * om2_ref + om1_ref;
        CHECK(mine.bound == Approx(bound_ref).margin(1e-10));

        const double actual_ref = std::abs(ref.apply(exp_neg.eval, x) - exp_neg(x));
        CHECK(mine.actual == Approx(actual_ref).margin(1e-12));
    }
}

TEST_CASE("convergence sweep") {
    const domain_grid g{0.0, 2.0, 81};
    const std::vector<long> ns{10, 20, 40, 80, 160};

    // constants are reproduced exactly for every n
    {
        const auto rows = dunkl::convergence_sweep({0.5}, 1.0, ns, kConst, g);
        for (const auto& row : rows) {
            CHECK(row.sup_error < 1e-12);
            CHECK(row.korovkin_sup[0] < 1e-12);
        }
    }
    // identity with alpha = 0 is exact too
    {
        const auto rows = dunkl::convergence_sweep({1.0}, 0.0, ns, kId, g);
        for (const auto& row : rows) CHECK(row.sup_error < 1e-12);
    }
    // classical square on [0, 1]: sup error is exactly max_x x/n = 1/n
    {
        const domain_grid unit{0.0, 1.0, 51};
        const auto rows = dunkl::convergence_sweep({0.0}, 0.0, ns, kSquare, unit);
        for (const auto& row : rows)
            CHECK(row.sup_error ==
                  Approx(1.0 / static_cast<double>(row.n)).epsilon(1e-10));
    }
    // a generic member decays and the bound column dominates the error
    {
        const auto& runge = dunkl::corpus_lookup("runge").fn;
        const auto rows = dunkl::convergence_sweep({0.5}, 1.0, ns, runge, g);
        for (std::size_t i = 1; i < rows.size(); ++i)
            CHECK(rows[i].sup_error < rows[i - 1].sup_error);
        for (const auto& row : rows) {
            CHECK(row.sup_error <= row.t7_bound_max);
            CHECK(row.delta2_max > 0.0);
        }
    }
    CHECK_THROWS_AS(dunkl::convergence_sweep({0.5}, 1.0, {10, 10}, kConst, g),
                    std::invalid_argument);
}
