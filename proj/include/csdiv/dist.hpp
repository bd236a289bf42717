#pragma once

#include <span>
#include <string>
#include <vector>

#include "csdiv/errors.hpp"

namespace csdiv {

/// Finite discrete probability distribution: nonnegative weights summing to 1
/// within 1e-12.  Atoms are index-aligned across distributions; labels are
/// cosmetic and never joined automatically.  Immutable after construction.
class Distribution {
public:
    static constexpr double kSumTolerance = 1e-12;

    /// Validating constructor: rejects negative weights, empty input, and
    /// weight sums off by more than kSumTolerance.
    static Distribution from_weights(std::vector<double> weights,
                                     std::vector<std::string> labels = {});

    /// Rescales the weights to sum to exactly 1 before validating.
    static Distribution renormalized(std::vector<double> weights,
                                     std::vector<std::string> labels = {});

    /// Parse "0.5,0.3,0.2" (inline CLI syntax).
    static Distribution parse(const std::string& text);

    /// Parse a CSV file with one weight per line ('#' lines skipped).
    static Distribution from_csv_file(const std::string& path);

    std::size_t size() const { return weights_.size(); }
    double operator[](std::size_t i) const { return weights_[i]; }
    std::span<const double> weights() const { return weights_; }
    const std::vector<std::string>& labels() const { return labels_; }

private:
    Distribution(std::vector<double> w, std::vector<std::string> l)
        : weights_(std::move(w)), labels_(std::move(l)) {}

    std::vector<double> weights_;
    std::vector<std::string> labels_;
};

/// V(P,Q) = sum_i |q_i - p_i|, in [0,2]; 0 iff P = Q, 2 iff disjoint supports.
double variational_distance(const Distribution& p, const Distribution& q);

/// sup { P(A)[1 - P(A)] : A subset of atoms } by exact subset enumeration.
/// At most 20 atoms (2^20 subsets); result in [0, 1/4], attaining 1/4 exactly
/// when some subset sums to 1/2.
double max_partition_spread(const Distribution& p);

/// Atomwise w*p + (1-w)*q for w in [0,1].
Distribution mixture(const Distribution& p, const Distribution& q, double w);

namespace detail {
void require_same_atoms(const Distribution& p, const Distribution& q);
}

}  // namespace csdiv
