#include "csdiv/dist.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>

namespace csdiv {

Distribution Distribution::from_weights(std::vector<double> weights,
                                        std::vector<std::string> labels) {
    if (weights.empty()) throw DomainError("distribution needs at least one atom");
    for (double w : weights) {
        if (!(w >= 0.0)) throw DomainError("negative or NaN weight");
    }
    if (!labels.empty() && labels.size() != weights.size())
        throw DimensionError("label count does not match atom count");
    const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (std::abs(sum - 1.0) > kSumTolerance) {
        throw DomainError("weights sum to " + std::to_string(sum) +
                          ", expected 1 within 1e-12 (use renormalized() to rescale)");
    }
    return Distribution(std::move(weights), std::move(labels));
}

Distribution Distribution::renormalized(std::vector<double> weights,
                                        std::vector<std::string> labels) {
    if (weights.empty()) throw DomainError("distribution needs at least one atom");
    double sum = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0)) throw DomainError("negative or NaN weight");
        sum += w;
    }
    if (sum <= 0.0) throw DomainError("weights sum to zero");
    for (double& w : weights) w /= sum;
    return Distribution(std::move(weights), std::move(labels));
}

Distribution Distribution::parse(const std::string& text) {
    std::vector<double> weights;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        std::size_t pos = 0;
        double v;
        try {
            v = std::stod(tok, &pos);
        } catch (const std::exception&) {
            throw DomainError("cannot parse weight '" + tok + "'");
        }
        while (pos < tok.size() && std::isspace(static_cast<unsigned char>(tok[pos]))) ++pos;
        if (pos != tok.size()) throw DomainError("cannot parse weight '" + tok + "'");
        weights.push_back(v);
    }
    return from_weights(std::move(weights));
}

Distribution Distribution::from_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open '" + path + "'");
    std::vector<double> weights;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        weights.push_back(std::stod(line));
    }
    return from_weights(std::move(weights));
}

namespace detail {
void require_same_atoms(const Distribution& p, const Distribution& q) {
    if (p.size() != q.size())
        throw DimensionError("distributions have " + std::to_string(p.size()) + " vs " +
                             std::to_string(q.size()) + " atoms");
}
}  // namespace detail

double variational_distance(const Distribution& p, const Distribution& q) {
    detail::require_same_atoms(p, q);
    double v = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) v += std::abs(q[i] - p[i]);
    return v;
}

double max_partition_spread(const Distribution& p) {
    const std::size_t n = p.size();
    if (n > 20) throw CapacityError("subset enumeration capped at 20 atoms; no approximate fallback");
    // Gray-code walk over all subsets: one weight toggles per step.
    const std::uint32_t total = 1u << n;
    double s = 0.0;
    double best = 0.0;
    std::uint32_t prev_gray = 0;
    for (std::uint32_t i = 1; i < total; ++i) {
        const std::uint32_t gray = i ^ (i >> 1);
        const std::uint32_t changed = gray ^ prev_gray;
        const int bit = std::countr_zero(changed);
        if (gray & changed)
            s += p[static_cast<std::size_t>(bit)];
        else
            s -= p[static_cast<std::size_t>(bit)];
        prev_gray = gray;
        const double spread = s * (1.0 - s);
        if (spread > best) best = spread;
    }
    return best;
}

Distribution mixture(const Distribution& p, const Distribution& q, double w) {
    detail::require_same_atoms(p, q);
    if (!(w >= 0.0 && w <= 1.0)) throw DomainError("mixture weight must lie in [0,1]");
    std::vector<double> m(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) m[i] = w * p[i] + (1.0 - w) * q[i];
    return Distribution::from_weights(std::move(m));
}

}  // namespace csdiv
