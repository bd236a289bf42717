#include "csdiv/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "csdiv/minimize.hpp"
#include "csdiv/scan.hpp"

namespace csdiv {

std::pair<Distribution, Distribution> binary_pair(double p, double v) {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("binary pair needs 0 < p < 1");
    if (!(v > 0.0 && v < 2.0)) throw DomainError("binary pair needs 0 < v < 2");
    if (!(p + v / 2.0 < 1.0)) throw DomainError("binary pair needs p + v/2 < 1");
    return {Distribution::from_weights({p, 1.0 - p}),
            Distribution::from_weights({p + v / 2.0, 1.0 - p - v / 2.0})};
}

double extrapolate_to_zero(std::span<const double> xs, std::span<const double> ys,
                           std::span<const int> orders) {
    if (xs.size() != ys.size() || xs.size() < orders.size() + 1)
        throw DomainError("extrapolation needs at least orders+1 samples");
    // Fit y = c0 + sum_j c_j x^{e_j} exactly through the orders.size()+1
    // samples with the smallest |x| (xs arrive ordered toward 0) and return
    // c0.  Exact for the assumed error model, unlike pairwise elimination on
    // a non-geometric grid.
    const std::size_t m = orders.size() + 1;
    const std::size_t off = xs.size() - m;
    std::vector<std::vector<double>> a(m, std::vector<double>(m + 1, 0.0));
    for (std::size_t i = 0; i < m; ++i) {
        a[i][0] = 1.0;
        for (std::size_t j = 0; j < orders.size(); ++j) a[i][j + 1] = std::pow(xs[off + i], orders[j]);
        a[i][m] = ys[off + i];
    }
    for (std::size_t col = 0; col < m; ++col) {  // Gaussian elimination, partial pivoting
        std::size_t piv = col;
        for (std::size_t rr = col + 1; rr < m; ++rr)
            if (std::abs(a[rr][col]) > std::abs(a[piv][col])) piv = rr;
        std::swap(a[col], a[piv]);
        if (a[col][col] == 0.0) throw DomainError("degenerate extrapolation system");
        for (std::size_t rr = 0; rr < m; ++rr) {
            if (rr == col) continue;
            const double factor = a[rr][col] / a[col][col];
            for (std::size_t cc = col; cc <= m; ++cc) a[rr][cc] -= factor * a[col][cc];
        }
    }
    return a[0][m] / a[0][0];
}

namespace {

// D_f of the binary pair, evaluated through the exact offsets v/(2p) and
// v/(2(1-p)) rather than re-derived ratios, to keep small-v sweeps clean.
double binary_divergence(const Generator& f, double p, double v) {
    const double u1 = 1.0 + v / (2.0 * p);
    const double u2 = 1.0 - v / (2.0 * (1.0 - p));
    return p * f.eval(u1) + (1.0 - p) * f.eval(u2);
}

double deriv_at_one(const Generator& f, int k) {
    return f.exact_derivs_at_one() ? to_double((*f.exact_derivs_at_one())[static_cast<std::size_t>(k)])
                                   : f.deriv(k, 1.0);
}

}  // namespace

TightnessSweep tightness_sweep_second(const Generator& f, std::span<const double> v_list, double p) {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("p must lie in (0,1)");
    const PinskerCoefficients c = coefficients(f);
    TightnessSweep sweep;
    sweep.target = c.c2 / (4.0 * p * (1.0 - p));
    for (double v : v_list) {
        if (!(v > 0.0) || !(p + v / 2.0 < 1.0)) throw DomainError("v out of range for this p");
        sweep.v.push_back(v);
        sweep.ratio.push_back(binary_divergence(f, p, v) / (v * v));
    }
    // At p = 1/2 the error series is even in v; otherwise odd terms appear.
    const std::vector<int> even{2, 4}, general{1, 2};
    const auto& orders = (p == 0.5) ? even : general;
    sweep.extrapolated = extrapolate_to_zero(sweep.v, sweep.ratio, orders);
    return sweep;
}

TightnessSweep tightness_sweep_fourth(const Generator& f, std::span<const double> v_list) {
    const PinskerCoefficients c = coefficients(f);
    if (!(c.c4 > 0.0)) throw DegenerateGeneratorError("fourth-order sweep needs c4 > 0");
    const double shift = deriv_at_one(f, 3) / (6.0 * deriv_at_one(f, 2));
    TightnessSweep sweep;
    sweep.target = c.c4;
    for (double v : v_list) {
        const double p = 0.5 + shift * v;
        if (!(p > 0.0 && p + v / 2.0 < 1.0)) throw DomainError("v too large for the fourth-order path");
        sweep.v.push_back(v);
        sweep.ratio.push_back((binary_divergence(f, p, v) - c.c2 * v * v) / (v * v * v * v));
    }
    const std::vector<int> orders{2, 4};  // even error series along the shifted path
    sweep.extrapolated = extrapolate_to_zero(sweep.v, sweep.ratio, orders);
    return sweep;
}

EnvelopePoint lower_envelope(const Generator& f, double v, const EnvelopeSearchSpec& spec) {
    if (!(v > 0.0 && v < 2.0)) throw DomainError("envelope needs 0 < v < 2");
    const double lo = 1e-12;
    const double hi = 1.0 - v / 2.0 - 1e-12;
    if (!(hi > lo)) throw DomainError("empty p-interval for this v");

    auto objective = [&f, v](double p) { return binary_divergence(f, p, v); };

    // Coarse scan (parallel kernel), then golden-section refinement between
    // the neighbors of the best coarse point.
    std::vector<double> ps(static_cast<std::size_t>(spec.coarse_points));
    for (int i = 0; i < spec.coarse_points; ++i)
        ps[static_cast<std::size_t>(i)] = lo + (hi - lo) * (i + 0.5) / spec.coarse_points;
    const ScanResult coarse = min_scan(ps, objective);

    const double step = (hi - lo) / spec.coarse_points;
    const double blo = std::max(lo, coarse.arg - step);
    const double bhi = std::min(hi, coarse.arg + step);
    auto [pstar, dstar] = golden_section_min(objective, blo, bhi, spec.tol);
    if (coarse.min_value < dstar) {
        pstar = coarse.arg;
        dstar = coarse.min_value;
    }

    EnvelopePoint point;
    point.v = v;
    point.min_divergence = ExtReal(dstar);
    point.argmin_p = pstar;
    point.bound_value = 0.0;
    try {
        const PinskerCoefficients c = coefficients(f);
        point.bound_value = c.c2 * v * v + (c.c4 > 0.0 ? c.c4 * v * v * v * v : 0.0);
    } catch (const DegenerateGeneratorError&) {
        point.bound_value = std::numeric_limits<double>::quiet_NaN();
    }
    return point;
}

std::vector<TopsoeRow> compare_topsoe_bound(std::span<const double> v_grid) {
    const Generator f = builtin("kl");
    std::vector<TopsoeRow> rows(v_grid.size());
    const std::int64_t n = static_cast<std::int64_t>(v_grid.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < n; ++i) {
        const double v = v_grid[static_cast<std::size_t>(i)];
        TopsoeRow row;
        row.v = v;
        row.envelope = lower_envelope(f, v).min_divergence.value();
        const double v2 = v * v, v4 = v2 * v2, v6 = v4 * v2, v8 = v4 * v4;
        row.bound = 0.5 * v2 + v4 / 36.0 + v6 / 270.0 + (221.0 / 340200.0) * v8;
        row.margin = row.envelope - row.bound;
        rows[static_cast<std::size_t>(i)] = row;
    }
    return rows;
}

CertificateResult renyi_fourth_check(double alpha, int pairs, std::uint64_t seed) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("fourth-order check needs alpha in (0,1)");
    const double c4 = alpha / 36.0 * (1.0 + 5.0 * alpha - 5.0 * alpha * alpha);
    auto margin_of = [alpha, c4](std::size_t i, std::uint64_t sd) {
        std::mt19937_64 rng(mix_seed(sd, i));
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        const double p = 0.01 + 0.98 * unit(rng);
        const double vmax = 2.0 * std::min(p, 1.0 - p);
        const double v = std::max(1e-4, vmax * 0.999 * unit(rng));
        // Orient the pair either way; V is symmetric but I_alpha is not.
        const bool swap = unit(rng) < 0.5;
        auto [P, Q] = binary_pair(swap ? 1.0 - p - v / 2.0 : p, v);
        const ExtReal ia = swap ? renyi(alpha, Q, P) : renyi(alpha, P, Q);
        const double bound = alpha / 2.0 * v * v + c4 * v * v * v * v;
        if (ia.is_infinite()) return 1.0;
        return (ia.value() - bound) / std::max({std::abs(ia.value()), std::abs(bound), 1.0});
    };
    const IndexedScanResult r = min_scan_indexed(static_cast<std::size_t>(pairs),
                                                 [&](std::size_t i) { return margin_of(i, seed); });
    CertificateResult out;
    out.grid_spec = std::to_string(pairs) + " random binary pairs, seed " + std::to_string(seed);
    out.margin = r.min_value;
    if (r.min_value >= -1e-9) {
        out.status = CertStatus::certified_numeric;
    } else {
        out.status = CertStatus::violated;
        std::mt19937_64 rng(mix_seed(seed, r.index));
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        const double p = 0.01 + 0.98 * unit(rng);
        const double vmax = 2.0 * std::min(p, 1.0 - p);
        out.witness_u = std::max(1e-4, vmax * 0.999 * unit(rng));  // the violating v
    }
    return out;
}

RenyiViolationResult renyi_violation_search(double alpha) {
    if (!(alpha > 1.0)) throw DomainError("violation search applies to alpha > 1");
    RenyiViolationResult out;
    double worst = 0.0;
    constexpr int kVPoints = 64;
    constexpr int kPPoints = 256;
    for (int iv = 0; iv < kVPoints; ++iv) {
        // v log-spaced over [0.01, 0.5]
        const double v = 0.01 * std::pow(50.0, iv / double(kVPoints - 1));
        for (int ip = 0; ip < kPPoints; ++ip) {
            const double hi = 1.0 - v / 2.0;
            const double p = hi * (ip + 0.5) / kPPoints;
            if (!(p > 1e-9)) continue;
            auto [P, Q] = binary_pair(p, v);
            const ExtReal ia = renyi(alpha, P, Q);
            if (ia.is_infinite()) continue;
            const double bound = alpha / 2.0 * v * v;
            const double margin = ia.value() - bound;
            if (margin < worst) {
                worst = margin;
                out.witness = RenyiWitness{p, v, ia.value(), bound};
            }
        }
    }
    if (out.witness && worst < -1e-14) {
        out.status = CertStatus::violated;
    } else {
        out.witness.reset();
        out.status = CertStatus::inconclusive;  // none found; open below ~1.1708
    }
    return out;
}

double per_P_constant(const Generator& f, const Distribution& p) {
    const double f2 = deriv_at_one(f, 2);
    if (!(f2 > 0.0)) throw DegenerateGeneratorError("per-distribution constant needs f''(1) > 0");
    const double spread = max_partition_spread(p);
    if (spread == 0.0) return std::numeric_limits<double>::infinity();  // point mass
    return (f2 / 2.0) / (4.0 * spread);
}

Log6ScanReport conjecture_log6_scan(const GridSpec& spec) {
    const auto grid = make_grid(spec);
    auto margin = [](double u) {
        const double s = u - 1.0;
        const double lhs = s - std::log(u);
        const double d2 = 1.0 + (2.0 / 3.0) * s;
        const double d4 = 1.0 + (28.0 / 45.0) * s;
        const double d6 = 1.0 + (23186.0 / 38745.0) * s;
        const double rhs = 0.5 * s * s / d2 + (1.0 / 36.0) * s * s * s * s / (d4 * d4 * d4) +
                           (41.0 / 12150.0) * std::pow(s, 6) / std::pow(d6, 5);
        if (!std::isfinite(lhs) || !std::isfinite(rhs))
            return -std::numeric_limits<double>::infinity();
        return (lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1.0});
    };
    const ScanResult r = min_scan(grid, margin);
    Log6ScanReport report;
    report.min_margin = r.min_value;
    report.violation_found = r.min_value < -1e-9;
    if (report.violation_found) report.witness_u = r.arg;
    return report;
}

SurplusFitReport conjecture_surplus_fit(std::span<const double> v_list) {
    auto surplus = [](double p, double v) {
        auto piece = [](double s) {
            const double d2 = 1.0 + (2.0 / 3.0) * s;
            const double d4 = 1.0 + (28.0 / 45.0) * s;
            return 0.5 * s * s / d2 + (1.0 / 36.0) * s * s * s * s / (d4 * d4 * d4);
        };
        const double s1 = v / (2.0 * p);
        const double s2 = -v / (2.0 * (1.0 - p));
        return p * piece(s1) + (1.0 - p) * piece(s2);
    };
    SurplusFitReport report;
    report.target = 1.0 / 270.0 - 41.0 / 12150.0;  // = 2/6075
    for (double v : v_list) {
        const double lo = 1e-9, hi = 1.0 - v / 2.0 - 1e-9;
        std::vector<double> ps(512);
        for (int i = 0; i < 512; ++i) ps[static_cast<std::size_t>(i)] = lo + (hi - lo) * (i + 0.5) / 512.0;
        const ScanResult coarse = min_scan(ps, [&](double p) { return surplus(p, v); });
        const double step = (hi - lo) / 512.0;
        auto [pstar, smin] = golden_section_min([&](double p) { return surplus(p, v); },
                                                std::max(lo, coarse.arg - step),
                                                std::min(hi, coarse.arg + step), 1e-11);
        if (coarse.min_value < smin) smin = coarse.min_value;
        report.v.push_back(v);
        report.coeff.push_back((smin - 0.5 * v * v - v * v * v * v / 36.0) / std::pow(v, 6));
    }
    const std::vector<int> orders{2, 4};
    report.fitted = (report.v.size() >= 3) ? extrapolate_to_zero(report.v, report.coeff, orders)
                                           : report.coeff.back();
    report.rel_error = std::abs(report.fitted - report.target) / report.target;
    return report;
}

}  // namespace csdiv
