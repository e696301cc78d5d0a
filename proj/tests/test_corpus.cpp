#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "dunkl/corpus.hpp"

using Catch::Approx;

TEST_CASE("corpus loads with verified metadata") {
    const auto& c = dunkl::corpus();
    CHECK(c.size() == 8);
    for (const auto& e : c) CHECK_NOTHROW(dunkl::spot_check(e, 99, 1000));
}

TEST_CASE("corpus lookup") {
    const auto& abs1 = dunkl::corpus_lookup("abs1").fn;
    REQUIRE(abs1.known_lipschitz.has_value());
    CHECK(abs1.known_lipschitz->M == 1.0);
    CHECK(abs1.known_lipschitz->exponent == 1.0);
    CHECK(abs1(3.0) == Approx(2.0));

    const auto& sq = dunkl::corpus_lookup("sqrtabs1").fn;
    REQUIRE(sq.known_lipschitz.has_value());
    CHECK(sq.known_lipschitz->exponent == 0.5);

    CHECK_FALSE(dunkl::corpus_lookup("square").uniformly_continuous);
    CHECK(dunkl::corpus_lookup("runge").uniformly_continuous);

    CHECK_THROWS_AS(dunkl::corpus_lookup("nope"), std::invalid_argument);
}

TEST_CASE("spot check rejects bad metadata") {
    dunkl::corpus_entry bad{dunkl::target_function{[](double t) { return 2.0 * t; },
                                                   "too_steep",
                                                   dunkl::lipschitz_class{1.0, 1.0},
                                                   std::nullopt,
                                                   1,
                                                   2.0},
                            true};
    CHECK_THROWS_AS(dunkl::spot_check(bad, 1, 1000), std::logic_error);

    dunkl::corpus_entry bad_sup{dunkl::target_function{[](double t) { return t; },
                                                       "not_bounded",
                                                       std::nullopt,
                                                       1.0,
                                                       0,
                                                       1.0},
                                true};
    CHECK_THROWS_AS(dunkl::spot_check(bad_sup, 1, 1000), std::logic_error);

    dunkl::corpus_entry bad_growth{dunkl::target_function{[](double t) { return t * t; },
                                                          "wrong_degree",
                                                          std::nullopt,
                                                          std::nullopt,
                                                          1,
                                                          1.0},
                                   true};
    CHECK_THROWS_AS(dunkl::spot_check(bad_growth, 1, 1000), std::logic_error);
}

TEST_CASE("metadata is deterministic under the default seed") {
    // same seed, same draw: repeated spot checks cannot flake
    const auto& e = dunkl::corpus_lookup("sqrtabs1");
    for (int i = 0; i < 3; ++i)
        CHECK_NOTHROW(dunkl::spot_check(e, dunkl::default_spot_check_seed, 1000));
}
