#include "csdiv/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace csdiv {

ExtReal f_divergence(const Generator& f, const Distribution& p, const Distribution& q) {
    detail::require_same_atoms(p, q);
    ExtReal sum(0.0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double pi = p[i], qi = q[i];
        if (pi > 0.0 && qi > 0.0) {
            sum += ExtReal(pi * f.eval(qi / pi));
        } else if (pi == 0.0 && qi > 0.0) {
            sum += qi * f.slope_at_infinity();
        } else if (pi > 0.0) {  // qi == 0
            sum += pi * f.limit_at_zero();
        }  // pi == qi == 0 contributes nothing
    }
    return sum;
}

ExtReal renyi(double alpha, const Distribution& p, const Distribution& q) {
    if (!(alpha > 0.0) || alpha == 1.0)
        throw DomainError("renyi needs alpha > 0, alpha != 1 (use kl for the alpha -> 1 limit)");
    detail::require_same_atoms(p, q);
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double pi = p[i], qi = q[i];
        if (pi > 0.0 && qi > 0.0) {
            sum += std::exp(alpha * std::log(pi) + (1.0 - alpha) * std::log(qi));
        } else if (pi > 0.0 && qi == 0.0 && alpha > 1.0) {
            return ExtReal::infinity();  // P not dominated by Q
        }
        // other zero patterns contribute 0
    }
    if (sum == 0.0) return ExtReal::infinity();  // disjoint supports
    return ExtReal(std::log(sum) / (alpha - 1.0));
}

ExtReal kl(const Distribution& p, const Distribution& q) { return f_divergence(builtin("kl"), p, q); }
ExtReal chi2(const Distribution& p, const Distribution& q) {
    return f_divergence(builtin("chi2"), p, q);
}
ExtReal hellinger2(const Distribution& p, const Distribution& q) {
    return f_divergence(builtin("hellinger"), p, q);
}
ExtReal triangular(const Distribution& p, const Distribution& q) {
    return f_divergence(builtin("triangular"), p, q);
}
ExtReal jeffreys(const Distribution& p, const Distribution& q) {
    return f_divergence(builtin("jeffreys"), p, q);
}

ExtReal capacitory(const Distribution& p, const Distribution& q) {
    const Distribution m = mixture(p, q, 0.5);
    return kl(p, m) + kl(q, m);
}

WeightFn unit_weight() {
    return [](double) { return 1.0; };
}

WeightFn mixture_weight(double w) {
    if (!(w >= 0.0 && w <= 1.0)) throw DomainError("mixture weight must lie in [0,1]");
    return [w](double u) { return 1.0 + (1.0 - w) * (u - 1.0); };
}

WeightFn half_one_plus_u_weight() {
    return [](double u) { return 0.5 * (1.0 + u); };
}

WeightFn kraft_weight(const Distribution& p, const Distribution& q) {
    const ExtReal h2 = hellinger2(p, q);
    const double denom = 2.0 * (2.0 - h2.value());
    return [denom](double u) {
        const double s = std::sqrt(u) + 1.0;
        return s * s / denom;
    };
}

HolderBoundReport holder_bound(const Generator& f, const WeightFn& k, double n,
                               std::span<const double> g, std::optional<double> a,
                               const Distribution& p, const Distribution& q,
                               std::span<const double> u_grid) {
    detail::require_same_atoms(p, q);
    if (g.size() != p.size()) throw DimensionError("g must have one value per atom");
    if (!(n > 1.0)) throw DomainError("holder bound needs n > 1");

    // r = p k(q/p), with the normalization sum r = 1 validated.  Atoms where
    // q > 0 but p = 0 would need the slope of k at infinity; they surface as
    // a failed normalization below.
    std::vector<double> r(p.size(), 0.0);
    std::vector<double> ratios;
    double norm = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] > 0.0) {
            const double u = q[i] / p[i];
            const double ku = k(u);
            if (!(ku >= 0.0)) throw PreconditionError("weight k must be nonnegative on realized ratios");
            r[i] = p[i] * ku;
            norm += r[i];
            ratios.push_back(u);
        }
    }
    if (std::abs(norm - 1.0) > 1e-9)
        throw PreconditionError("weight k is not normalized: sum p k(q/p) = " + std::to_string(norm));

    const double umin = *std::min_element(ratios.begin(), ratios.end());
    const double umax = *std::max_element(ratios.begin(), ratios.end());

    // Moment factor around a (default: E_r g).
    double center;
    if (a) {
        center = *a;
    } else {
        center = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) center += g[i] * r[i];
    }
    const double m = n / (n - 1.0);
    double moment = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (r[i] > 0.0) moment += std::pow(std::abs(g[i] - center), m) * r[i];

    // sup over the supplied grid restricted to the realized hull, plus a near-1
    // refinement and the analytic continuity value at u = 1 when n = 2.
    const double fp1 = f.exact_derivs_at_one() ? to_double((*f.exact_derivs_at_one())[1])
                                               : (f.max_order() >= 1 ? f.deriv(1, 1.0) : 0.0);
    auto ratio_fn = [&f, &k, n, fp1](double u) -> double {
        const double tilde = f.eval(u) - fp1 * (u - 1.0);
        const double denom = tilde * std::pow(k(u), n - 1.0);
        if (denom <= 0.0) return std::numeric_limits<double>::quiet_NaN();
        return std::pow(std::abs(u - 1.0), n) / denom;
    };
    double sup = 0.0;
    auto consider = [&](double u) {
        if (u < umin || u > umax || u == 1.0 || !(u > 0.0)) return;
        const double v = ratio_fn(u);
        if (std::isfinite(v) && v > sup) sup = v;
    };
    for (double u : u_grid) consider(u);
    for (int i = 0; i < 64; ++i) consider(1.0 - 1e-3 + 2e-3 * i / 63.0);
    for (double u : ratios) consider(u);
    if (umin <= 1.0 && umax >= 1.0 && n == 2.0 && f.max_order() >= 2) {
        const double f2 = f.exact_derivs_at_one() ? to_double((*f.exact_derivs_at_one())[2])
                                                  : f.deriv(2, 1.0);
        if (f2 > 0.0 && k(1.0) > 0.0) sup = std::max(sup, 2.0 / (f2 * k(1.0)));
    }
    if (umin == 0.0) {  // realized ratio 0 (atoms with q = 0): use the boundary limit
        const ExtReal tilde0 = f.limit_at_zero() + ExtReal(fp1);
        if (tilde0.is_finite() && tilde0.value() > 0.0 && k(0.0) > 0.0)
            sup = std::max(sup, 1.0 / (tilde0.value() * std::pow(k(0.0), n - 1.0)));
    }

    double mean_q = 0.0, mean_p = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        mean_q += g[i] * q[i];
        mean_p += g[i] * p[i];
    }

    HolderBoundReport report;
    report.lhs = std::pow(std::abs(mean_q - mean_p), n);
    report.sup_factor = sup;
    report.moment_factor = std::pow(moment, n - 1.0);
    report.divergence = f_divergence(f, p, q);
    report.rhs = (sup * report.moment_factor) * report.divergence;
    report.holds = report.rhs.is_infinite() ||
                   report.lhs <= report.rhs.value() * (1.0 + 1e-12) + 1e-300;
    report.notes = "sup over grid in [" + std::to_string(umin) + "," + std::to_string(umax) +
                   "] (grid approximation of the analytic supremum)";
    return report;
}

HolderBoundReport v_power_bound(const Generator& f, const WeightFn& k, double n,
                                const Distribution& p, const Distribution& q,
                                std::span<const double> u_grid) {
    std::vector<double> indicator(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) indicator[i] = (p[i] >= q[i]) ? 1.0 : 0.0;
    return holder_bound(f, k, n, indicator, 0.5, p, q, u_grid);
}

}  // namespace csdiv
