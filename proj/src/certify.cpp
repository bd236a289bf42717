#include "csdiv/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "csdiv/minimize.hpp"
#include "csdiv/scan.hpp"

namespace csdiv {

namespace {

constexpr double kMarginTol = 1e-9;
constexpr double kNonFinite = -std::numeric_limits<double>::infinity();

// Normalized so that huge tail values cannot mask near-1 violations; the
// sentinel -inf marks a non-finite evaluation (reported as inconclusive,
// never as a certified or violated margin).
double normalized_margin(double lhs, double rhs) {
    if (!std::isfinite(lhs) || !std::isfinite(rhs)) return kNonFinite;
    return (lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1.0});
}

double sgn(double x) { return (x > 0.0) - (x < 0.0); }

double binom_d(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

CertificateResult scan_condition(const std::vector<double>& grid,
                                 const std::function<double(double)>& margin_fn,
                                 const GridSpec& spec, const Generator& f) {
    const ScanResult r = min_scan(grid, margin_fn);
    CertificateResult out;
    out.grid_spec = spec.describe();
    out.numeric_grade = (f.grade() == DerivativeGrade::numeric);
    out.margin = r.min_value;
    if (r.min_value == kNonFinite) {
        out.status = CertStatus::inconclusive;
        return out;
    }
    if (r.min_value >= -kMarginTol) {
        out.status = CertStatus::certified_numeric;
    } else {
        out.status = CertStatus::violated;
        out.witness_u = r.arg;
    }
    return out;
}

double tangent_slope_at_one(const Generator& f) {
    return f.exact_derivs_at_one() ? to_double((*f.exact_derivs_at_one())[1]) : f.deriv(1, 1.0);
}

}  // namespace

std::string GridSpec::describe() const {
    std::string s = (log_spaced ? "log[" : "lin[") + std::to_string(lo) + "," + std::to_string(hi) +
                    "]x" + std::to_string(points);
    if (refine_near_one) s += "+64@1";
    return s;
}

std::vector<double> make_grid(const GridSpec& spec) {
    if (!(spec.lo > 0.0) || !(spec.hi > spec.lo) || spec.points < 2)
        throw DomainError("grid spec requires 0 < lo < hi and at least 2 points");
    std::vector<double> g;
    g.reserve(static_cast<std::size_t>(spec.points) + 66);
    if (spec.log_spaced) {
        const double llo = std::log(spec.lo), lhi = std::log(spec.hi);
        for (int i = 0; i < spec.points; ++i)
            g.push_back(std::exp(llo + (lhi - llo) * i / (spec.points - 1)));
    } else {
        for (int i = 0; i < spec.points; ++i)
            g.push_back(spec.lo + (spec.hi - spec.lo) * i / (spec.points - 1));
    }
    if (spec.refine_near_one && spec.lo < 1.0 && spec.hi > 1.0) {
        for (int i = 0; i < 64; ++i) g.push_back(1.0 - 1e-3 + 2e-3 * i / 63.0);
        g.push_back(1.0);
    }
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    return g;
}

const char* to_string(CertStatus s) {
    switch (s) {
        case CertStatus::certified_numeric: return "certified_numeric";
        case CertStatus::violated: return "violated";
        case CertStatus::inconclusive: return "inconclusive";
    }
    return "?";
}

CertificateResult check_second_order_condition(const Generator& f, const GridSpec& spec) {
    const PinskerCoefficients c = coefficients(f);
    const double fp1 = tangent_slope_at_one(f);
    const double one_minus_w2 = 1.0 - c.w2;
    const auto grid = make_grid(spec);
    Generator base = f;
    auto margin = [base, fp1, one_minus_w2, c2 = c.c2](double u) {
        const double tilde = base.eval(u) - fp1 * (u - 1.0);
        const double lhs = tilde * (1.0 + one_minus_w2 * (u - 1.0));
        const double rhs = c2 * (u - 1.0) * (u - 1.0);
        return normalized_margin(lhs, rhs);
    };
    return scan_condition(grid, margin, spec, f);
}

CertificateResult check_second_order_derivative_condition(const Generator& f, const GridSpec& spec) {
    const PinskerCoefficients c = coefficients(f);
    const double one_minus_w2 = 1.0 - c.w2;
    const auto grid = make_grid(spec);
    Generator base = f;
    auto margin = [base, one_minus_w2](double u) {
        const double f2 = base.deriv(2, u);
        if (!(f2 > 0.0)) return kNonFinite;  // precondition f'' > 0 on the grid
        const double expr =
            sgn(u - 1.0) * (base.deriv(3, u) / f2 * (1.0 + one_minus_w2 * (u - 1.0)) + 3.0 * one_minus_w2);
        return normalized_margin(expr, 0.0);
    };
    return scan_condition(grid, margin, spec, f);
}

CertificateResult check_fourth_order_condition(const Generator& f, const GridSpec& spec) {
    const PinskerCoefficients c = coefficients(f);
    if (!(c.c2 > 0.0) || !(c.c4 > 0.0))
        throw DegenerateGeneratorError(
            "fourth-order condition requires c2 > 0 and c4 > 0; use the second-order check for '" +
            f.name() + "'");
    const double fp1 = tangent_slope_at_one(f);
    const double a2 = 1.0 - c.w2, a4 = 1.0 - *c.w4;
    const auto grid = make_grid(spec);
    Generator base = f;
    auto margin = [base, fp1, a2, a4, c2 = c.c2, c4 = c.c4](double u) {
        const double s = u - 1.0;
        const double tilde = base.eval(u) - fp1 * s;
        const double k2 = 1.0 + a2 * s;
        const double k4 = 1.0 + a4 * s;
        const double lhs = tilde * k2 * k4 * k4 * k4;
        const double rhs = c2 * s * s * k4 * k4 * k4 + c4 * s * s * s * s * k2;
        return normalized_margin(lhs, rhs);
    };
    return scan_condition(grid, margin, spec, f);
}

CertificateResult check_fourth_order_derivative_condition(const Generator& f, const GridSpec& spec) {
    const PinskerCoefficients c = coefficients(f);
    if (!c.w4)
        throw DegenerateGeneratorError("fourth-order weight undefined (c4 = 0, no analytic limit) for '" +
                                       f.name() + "'");
    if (f.max_order() < 6)
        throw DegenerateGeneratorError("sixth-derivative condition needs an order-6 oracle");
    const double w2 = c.w2, w4 = *c.w4;
    const double a2 = 1.0 - w2, a4 = 1.0 - w4;
    const auto grid = make_grid(spec);
    Generator base = f;
    auto margin = [base, w2, w4, a2, a4](double u) {
        const double f2 = base.deriv(2, u);
        if (!(f2 > 0.0)) return kNonFinite;
        const double s = u - 1.0;
        const double k2 = 1.0 + a2 * s;
        const double k4 = 1.0 + a4 * s;
        // Leibniz expansion of the sixth derivative of
        // f~(u) k2(u) k4(u)^3 - (polynomial of degree 5), divided by f''(u);
        // the constant term is C(6,4) * (k2 k4^3)'''' = 360 a2 a4^3.  The
        // terms can be huge and mutually canceling at the grid tails, so the
        // margin is normalized by the positive/negative part scale rather
        // than by the (possibly tiny) net value.
        const double terms[5] = {
            base.deriv(6, u) / f2 * k2 * k4 * k4 * k4,
            6.0 * base.deriv(5, u) / f2 * k4 * k4 * (4.0 - w2 - 3.0 * w4 + 4.0 * a2 * a4 * s),
            90.0 * base.deriv(4, u) / f2 * a4 * k4 * (2.0 - w2 - w4 + 2.0 * a2 * a4 * s),
            120.0 * base.deriv(3, u) / f2 * a4 * a4 * (4.0 - 3.0 * w2 - w4 + 4.0 * a2 * a4 * s),
            360.0 * a2 * a4 * a4 * a4};
        double pos = 0.0, neg = 0.0;
        for (double t : terms) {
            if (t >= 0.0)
                pos += t;
            else
                neg -= t;
        }
        return normalized_margin(pos, neg);
    };
    return scan_condition(grid, margin, spec, f);
}

WeightsAdmissible check_weights_admissible(const PinskerCoefficients& c) {
    // c4 = 0 is admitted when the generator carries an analytic w4 limit
    // (family boundary); with no w4 at all the question is vacuous.
    if (!c.w4) throw DegenerateGeneratorError("weight admissibility needs a defined w4");
    WeightsAdmissible out;
    out.admissible = true;
    std::string bad;
    if (!(c.w2 >= 0.0 && c.w2 <= 1.0)) {
        out.admissible = false;
        bad += "w2=" + std::to_string(c.w2) + " outside [0,1]; ";
    }
    if (!(*c.w4 >= 0.0 && *c.w4 <= 1.0)) {
        out.admissible = false;
        bad += "w4=" + std::to_string(*c.w4) + " outside [0,1]; ";
    }
    out.diagnostics = out.admissible ? "w2, w4 in [0,1]" : bad;
    return out;
}

// ---------------------------------------------------------------------------
// SmoothFn
// ---------------------------------------------------------------------------

SmoothFn SmoothFn::polynomial(std::vector<double> coeffs) {
    SmoothFn s;
    s.max_order_ = 64;
    s.d_ = [coeffs = std::move(coeffs)](int k, double u) {
        double acc = 0.0;
        for (std::size_t i = coeffs.size(); i-- > static_cast<std::size_t>(k);) {
            double fall = 1.0;
            for (int j = 0; j < k; ++j) fall *= static_cast<double>(i) - j;
            acc += coeffs[i] * fall * std::pow(u, static_cast<double>(i) - k);
        }
        return acc;
    };
    return s;
}

SmoothFn SmoothFn::from_generator(const Generator& f) {
    SmoothFn s;
    s.max_order_ = f.max_order();
    s.d_ = [f](int k, double u) { return k == 0 ? f.eval(u) : f.deriv(k, u); };
    return s;
}

SmoothFn SmoothFn::generator_tilde(const Generator& f) {
    const double fp1 = tangent_slope_at_one(f);
    SmoothFn s;
    s.max_order_ = f.max_order();
    s.d_ = [f, fp1](int k, double u) {
        if (k == 0) return f.eval(u) - fp1 * (u - 1.0);
        if (k == 1) return f.deriv(1, u) - fp1;
        return f.deriv(k, u);
    };
    return s;
}

SmoothFn SmoothFn::scaled(double c, const SmoothFn& f) {
    SmoothFn s;
    s.max_order_ = f.max_order_;
    s.d_ = [c, f](int k, double u) { return c * f.d_(k, u); };
    return s;
}

double SmoothFn::deriv(int order, double u) const {
    if (order < 0 || order > max_order_)
        throw DegenerateGeneratorError("smooth function has no derivative of order " +
                                       std::to_string(order));
    return d_(order, u);
}

SmoothFn operator+(const SmoothFn& a, const SmoothFn& b) {
    SmoothFn s;
    s.max_order_ = std::min(a.max_order_, b.max_order_);
    s.d_ = [a, b](int k, double u) { return a.d_(k, u) + b.d_(k, u); };
    return s;
}

SmoothFn operator-(const SmoothFn& a, const SmoothFn& b) {
    SmoothFn s;
    s.max_order_ = std::min(a.max_order_, b.max_order_);
    s.d_ = [a, b](int k, double u) { return a.d_(k, u) - b.d_(k, u); };
    return s;
}

SmoothFn operator*(const SmoothFn& a, const SmoothFn& b) {
    SmoothFn s;
    s.max_order_ = std::min(a.max_order_, b.max_order_);
    s.d_ = [a, b](int k, double u) {
        double acc = 0.0;
        for (int j = 0; j <= k; ++j) acc += binom_d(k, j) * a.d_(j, u) * b.d_(k - j, u);
        return acc;
    };
    return s;
}

CertificateResult derivative_sign_check(const SmoothFn& g, int n, const GridSpec& spec) {
    if (n < 1 || n + 1 > g.max_order())
        throw DegenerateGeneratorError("derivative sign check needs orders through n+1 = " +
                                       std::to_string(n + 1));
    CertificateResult out;
    out.grid_spec = spec.describe();
    double worst_at_one = 0.0;
    for (int k = 0; k <= n; ++k) worst_at_one = std::max(worst_at_one, std::abs(g.deriv(k, 1.0)));
    if (worst_at_one > 1e-9) {
        out.status = CertStatus::violated;
        out.margin = -worst_at_one;
        out.witness_u = 1.0;
        return out;
    }
    const auto grid = make_grid(spec);
    const bool even_case = (n % 2 == 0);
    auto margin = [g, n, even_case](double u) {
        const double v = g.deriv(n + 1, u);
        const double expr = even_case ? sgn(u - 1.0) * v : v;
        return normalized_margin(expr, 0.0);
    };
    const ScanResult r = min_scan(grid, margin);
    out.margin = r.min_value;
    if (r.min_value == kNonFinite) {
        out.status = CertStatus::inconclusive;
    } else if (r.min_value >= -kMarginTol) {
        out.status = CertStatus::certified_numeric;
    } else {
        out.status = CertStatus::violated;
        out.witness_u = r.arg;
    }
    return out;
}

// ---------------------------------------------------------------------------
// h_w profile
// ---------------------------------------------------------------------------

HwProfile h_w_profile(const Generator& f, double w, const GridSpec& spec) {
    if (!(w >= 0.0 && w <= 1.0)) throw DomainError("h_w weight must lie in [0,1]");
    const double f2 = f.exact_derivs_at_one() ? to_double((*f.exact_derivs_at_one())[2])
                                              : f.deriv(2, 1.0);
    if (!(f2 > 0.0)) throw DegenerateGeneratorError("h_w needs f''(1) > 0");
    const double fp1 = tangent_slope_at_one(f);
    const double f3 = (f.max_order() >= 3)
                          ? (f.exact_derivs_at_one() ? to_double((*f.exact_derivs_at_one())[3])
                                                     : f.deriv(3, 1.0))
                          : 0.0;
    const double a = 1.0 - w;
    // 1/h_w(u) = f''/2 + [a f''/2 + f'''/6] (u-1) + O((u-1)^2); inside a
    // small window around 1 the direct quotient is pure cancellation noise,
    // so the first-order model takes over there.
    const double slope_b = a * f2 / 2.0 + f3 / 6.0;
    auto h = [&f, fp1, a, f2, slope_b](double u) {
        const double s = u - 1.0;
        if (std::abs(s) < 1e-6) return 1.0 / (f2 / 2.0 + slope_b * s);
        const double denom = (f.eval(u) - fp1 * s) * (1.0 + a * s);
        if (!(denom > 0.0) || !std::isfinite(denom)) return std::numeric_limits<double>::quiet_NaN();
        return s * s / denom;
    };

    HwProfile out;
    out.w = w;
    out.limit_at_1 = 2.0 / f2;
    const auto grid = make_grid(spec);
    out.samples.reserve(grid.size());
    std::size_t best = 0;
    double best_h = -std::numeric_limits<double>::infinity();
    for (double u : grid) {
        const double v = h(u);
        if (std::isnan(v)) continue;
        out.samples.emplace_back(u, v);
        if (v > best_h) {
            best_h = v;
            best = out.samples.size() - 1;
        }
    }
    if (out.samples.empty()) throw DegenerateGeneratorError("h_w profile empty on grid");

    const double lo = best > 0 ? out.samples[best - 1].first : out.samples[best].first;
    const double hi = best + 1 < out.samples.size() ? out.samples[best + 1].first
                                                    : out.samples[best].first;
    if (hi > lo) {
        auto [x, v] = golden_section_max(h, lo, hi, 1e-10);
        if (v >= best_h) {
            out.argmax_u = x;
            out.max_value = v;
        } else {
            out.argmax_u = out.samples[best].first;
            out.max_value = best_h;
        }
    } else {
        out.argmax_u = out.samples[best].first;
        out.max_value = best_h;
    }
    // If the refined maximum does not beat the continuity value at u = 1, the
    // supremum sits at 1 itself.
    if (out.max_value <= out.limit_at_1 * (1.0 + 1e-12)) {
        out.argmax_u = 1.0;
        out.max_value = out.limit_at_1;
    }
    return out;
}

}  // namespace csdiv
