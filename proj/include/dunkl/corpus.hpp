#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dunkl/operators.hpp"

/// Built-in target functions used by the CLI and the experiment suites,
/// with certified metadata (Lipschitz class, sup norm, growth envelope).
namespace dunkl {

struct corpus_entry {
    target_function fn;
    bool uniformly_continuous = true;  ///< uniformly continuous on [0, inf)
};

inline constexpr std::uint64_t default_spot_check_seed = 20260809ULL;

/// Verifies an entry's metadata on seeded random points/pairs drawn from
/// [0, 40]; throws std::logic_error on a violation.  Trusted metadata,
/// spot-checked.
inline void spot_check(const corpus_entry& e, std::uint64_t seed, int pairs) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 40.0);
    const auto& f = e.fn;
    for (int i = 0; i < pairs; ++i) {
        const double s = u(rng);
        const double t = u(rng);
        if (f.known_lipschitz) {
            const double lhs = std::abs(f(s) - f(t));
            const double rhs = f.known_lipschitz->M *
                               std::pow(std::abs(s - t), f.known_lipschitz->exponent);
            if (lhs > rhs * (1.0 + 1e-12) + 1e-15)
                throw std::logic_error("corpus: Lipschitz metadata violated for " + f.label);
        }
        if (f.sup_norm && std::abs(f(s)) > *f.sup_norm * (1.0 + 1e-12))
            throw std::logic_error("corpus: sup-norm metadata violated for " + f.label);
        if (f.growth_degree >= 0) {
            const double env =
                f.growth_coeff * (1.0 + std::pow(s, static_cast<double>(f.growth_degree)));
            if (std::abs(f(s)) > env * (1.0 + 1e-12))
                throw std::logic_error("corpus: growth metadata violated for " + f.label);
        }
    }
}

/// Builds the corpus: one, id, square, sin, exp_neg, runge, abs1, sqrtabs1.
inline std::vector<corpus_entry> build_corpus() {
    std::vector<corpus_entry> c;
    c.push_back({target_function{[](double) { return 1.0; },
                                 "one",
                                 lipschitz_class{1.0, 1.0},
                                 1.0,
                                 0,
                                 1.0},
                 true});
    c.push_back({target_function{[](double t) { return t; },
                                 "id",
                                 lipschitz_class{1.0, 1.0},
                                 std::nullopt,
                                 1,
                                 1.0},
                 true});
    // t^2 is not uniformly continuous on [0, inf)
    c.push_back({target_function{[](double t) { return t * t; },
                                 "square",
                                 std::nullopt,
                                 std::nullopt,
                                 2,
                                 1.0},
                 false});
    c.push_back({target_function{[](double t) { return std::sin(t); },
                                 "sin",
                                 lipschitz_class{1.0, 1.0},
                                 1.0,
                                 0,
                                 1.0},
                 true});
    c.push_back({target_function{[](double t) { return std::exp(-t); },
                                 "exp_neg",
                                 lipschitz_class{1.0, 1.0},
                                 1.0,
                                 0,
                                 1.0},
                 true});
    c.push_back({target_function{[](double t) { return 1.0 / (1.0 + t * t); },
                                 "runge",
                                 lipschitz_class{1.0, 1.0},
                                 1.0,
                                 0,
                                 1.0},
                 true});
    c.push_back({target_function{[](double t) { return std::abs(t - 1.0); },
                                 "abs1",
                                 lipschitz_class{1.0, 1.0},
                                 std::nullopt,
                                 1,
                                 1.0},
                 true});
    c.push_back({target_function{[](double t) { return std::sqrt(std::abs(t - 1.0)); },
                                 "sqrtabs1",
                                 lipschitz_class{1.0, 0.5},
                                 std::nullopt,
                                 1,
                                 1.0},
                 true});
    return c;
}

/// The corpus, spot-checked once with the default seed on first use.
inline const std::vector<corpus_entry>& corpus() {
    static const std::vector<corpus_entry> c = [] {
        auto entries = build_corpus();
        for (const auto& e : entries) spot_check(e, default_spot_check_seed, 1000);
        return entries;
    }();
    return c;
}

/// Lookup by label; throws std::invalid_argument listing the known labels.
inline const corpus_entry& corpus_lookup(std::string_view label) {
    for (const auto& e : corpus())
        if (e.fn.label == label) return e;
    std::string known;
    for (const auto& e : corpus()) {
        if (!known.empty()) known += ", ";
        known += e.fn.label;
    }
    throw std::invalid_argument("unknown function '" + std::string(label) +
                                "' (known: " + known + ")");
}

}  // namespace dunkl
