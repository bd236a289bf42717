#pragma once

// Test-side oracles, kept independent of the library implementations they
// check: plain-loop subset enumeration, central finite differences, and
// random-input helpers.

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "csdiv/dist.hpp"

namespace oracle {

inline csdiv::Distribution random_distribution(std::mt19937_64& rng, std::size_t atoms,
                                               double zero_prob = 0.0) {
    std::exponential_distribution<double> exp1(1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> w(atoms);
    for (;;) {
        double sum = 0.0;
        for (auto& x : w) {
            x = (zero_prob > 0.0 && unit(rng) < zero_prob) ? 0.0 : exp1(rng);
            sum += x;
        }
        if (sum > 0.0) break;
    }
    return csdiv::Distribution::renormalized(w);
}

/// Pair over a common support of the given size.
inline std::pair<csdiv::Distribution, csdiv::Distribution> random_pair(std::mt19937_64& rng,
                                                                       std::size_t atoms,
                                                                       double zero_prob = 0.0) {
    return {random_distribution(rng, atoms, zero_prob), random_distribution(rng, atoms, zero_prob)};
}

/// Direct-loop max of P(A)[1-P(A)] over all subsets; no gray code.
inline double spread_brute_force(const csdiv::Distribution& p) {
    const std::size_t n = p.size();
    double best = 0.0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) s += p[i];
        best = std::max(best, s * (1.0 - s));
    }
    return best;
}

/// 2 * max_A |Q(A) - P(A)| over all subsets, the set form of the variational
/// distance.
inline double variational_brute_force(const csdiv::Distribution& p, const csdiv::Distribution& q) {
    const std::size_t n = p.size();
    double best = 0.0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        double d = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) d += q[i] - p[i];
        best = std::max(best, std::abs(d));
    }
    return 2.0 * best;
}

/// Central finite difference of a scalar function.
inline double central_diff(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace oracle
