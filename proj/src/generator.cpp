#include "csdiv/generator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <utility>

#include "csdiv/polycert.hpp"

namespace csdiv {

namespace {

double falling(double x, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= x - i;
    return r;
}

Rational rfalling(const Rational& x, int k) {
    Rational r(1);
    for (int i = 0; i < k; ++i) r *= x - i;
    return r;
}

double factorial(int k) {
    double r = 1.0;
    for (int i = 2; i <= k; ++i) r *= i;
    return r;
}

double neg1pow(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }

double binom(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// Generator core
// ---------------------------------------------------------------------------

Generator Generator::from_oracles(std::string name, EvalFn eval, DerivFn deriv, int max_order,
                                  ExtReal limit_at_zero, ExtReal slope_at_infinity,
                                  bool convexity_attested, DerivativeGrade grade,
                                  std::optional<ExactDerivs> derivs_at_one) {
    Generator g;
    g.name_ = std::move(name);
    g.eval_ = std::move(eval);
    g.deriv_ = std::move(deriv);
    g.max_order_ = max_order;
    g.limit_at_zero_ = limit_at_zero;
    g.slope_at_infinity_ = slope_at_infinity;
    g.convexity_attested_ = convexity_attested;
    g.grade_ = grade;
    g.exact_derivs_ = std::move(derivs_at_one);
    return g;
}

double Generator::eval(double u) const {
    if (!(u > 0.0)) throw DomainError("generator evaluated at u <= 0");
    return eval_(u);
}

double Generator::deriv(int order, double u) const {
    if (order < 1 || order > max_order_)
        throw DegenerateGeneratorError("generator '" + name_ + "' has no derivative oracle of order " +
                                       std::to_string(order));
    if (!(u > 0.0)) throw DomainError("generator derivative at u <= 0");
    return deriv_(order, u);
}

namespace {

// Central finite-difference stencils of second-order accuracy, one Richardson
// halving step on top.  Used only for evaluation-only user generators.
double stencil_derivative(const Generator::EvalFn& f, int k, double u, double h) {
    struct Stencil {
        std::vector<std::pair<int, double>> pts;  // (offset, weight)
        double scale;                             // divide by scale * h^k
    };
    static const std::array<Stencil, 6> table = {{
        {{{1, 1.0}, {-1, -1.0}}, 2.0},
        {{{1, 1.0}, {0, -2.0}, {-1, 1.0}}, 1.0},
        {{{2, 1.0}, {1, -2.0}, {-1, 2.0}, {-2, -1.0}}, 2.0},
        {{{2, 1.0}, {1, -4.0}, {0, 6.0}, {-1, -4.0}, {-2, 1.0}}, 1.0},
        {{{3, 1.0}, {2, -4.0}, {1, 5.0}, {-1, -5.0}, {-2, 4.0}, {-3, -1.0}}, 2.0},
        {{{3, 1.0}, {2, -6.0}, {1, 15.0}, {0, -20.0}, {-1, 15.0}, {-2, -6.0}, {-3, 1.0}}, 1.0},
    }};
    const Stencil& s = table[static_cast<std::size_t>(k - 1)];
    double acc = 0.0;
    for (const auto& [off, w] : s.pts) acc += w * f(u + off * h);
    return acc / (s.scale * std::pow(h, k));
}

double fd_derivative(const Generator::EvalFn& f, int k, double u) {
    double h = std::max(u, 1e-2) * std::pow(std::numeric_limits<double>::epsilon(), 1.0 / (k + 2));
    h = std::min(h, u / 8.0);
    const double d1 = stencil_derivative(f, k, u, h);
    const double d2 = stencil_derivative(f, k, u, h / 2.0);
    return (4.0 * d2 - d1) / 3.0;  // one Richardson step on the O(h^2) error
}

}  // namespace

Generator Generator::from_eval(std::string name, EvalFn eval, ExtReal limit_at_zero,
                               ExtReal slope_at_infinity, bool convexity_attested) {
    EvalFn shared = eval;
    DerivFn deriv = [shared](int k, double u) { return fd_derivative(shared, k, u); };
    return from_oracles(std::move(name), std::move(eval), std::move(deriv), 6, limit_at_zero,
                        slope_at_infinity, convexity_attested, DerivativeGrade::numeric);
}

// ---------------------------------------------------------------------------
// Transformations
// ---------------------------------------------------------------------------

Generator tilde(const Generator& f) {
    if (f.max_order() < 1) throw DegenerateGeneratorError("tilde needs a first-derivative oracle");
    const double fp1 = f.exact_derivs_at_one() ? to_double((*f.exact_derivs_at_one())[1])
                                               : f.deriv(1, 1.0);
    Generator base = f;
    auto eval = [base, fp1](double u) { return base.eval(u) - fp1 * (u - 1.0); };
    auto deriv = [base, fp1](int k, double u) {
        const double d = base.deriv(k, u);
        return k == 1 ? d - fp1 : d;
    };
    ExtReal limit0 = f.limit_at_zero() + ExtReal(fp1);
    ExtReal slope = f.slope_at_infinity().is_infinite() ? ExtReal::infinity()
                                                        : ExtReal(f.slope_at_infinity().value() - fp1);
    std::optional<Generator::ExactDerivs> exact;
    if (f.exact_derivs_at_one()) {
        exact = *f.exact_derivs_at_one();
        (*exact)[0] = Rational(0);
        (*exact)[1] = Rational(0);
    }
    Generator g = Generator::from_oracles("tilde(" + f.name() + ")", std::move(eval), std::move(deriv),
                                          f.max_order(), limit0, slope, f.convexity_attested(),
                                          f.grade(), std::move(exact));
    if (f.analytic_w4()) g.set_analytic_w4(*f.analytic_w4());
    return g;
}

namespace {

// d^k/du^k [u f(1/u)] expands exactly as sum c * f^(j)(1/u) * u^e; the term
// tables do not depend on f and follow the recurrence
//   (c, j, e) -> (-c, j+1, e-2) + (c*e, j, e-1).
struct ReverseTerm {
    Rational c;
    int j;
    int e;
};

const std::vector<std::vector<ReverseTerm>>& reverse_term_tables() {
    static const std::vector<std::vector<ReverseTerm>> tables = [] {
        std::vector<std::vector<ReverseTerm>> out;
        out.push_back({{Rational(1), 0, 1}});
        for (int k = 1; k <= Generator::kMaxDerivOrder; ++k) {
            std::map<std::pair<int, int>, Rational> merged;
            for (const auto& t : out.back()) {
                merged[{t.j + 1, t.e - 2}] += -t.c;
                if (t.e != 0) merged[{t.j, t.e - 1}] += t.c * t.e;
            }
            std::vector<ReverseTerm> next;
            for (const auto& [je, c] : merged)
                if (c != 0) next.push_back({c, je.first, je.second});
            out.push_back(std::move(next));
        }
        return out;
    }();
    return tables;
}

}  // namespace

Generator reverse(const Generator& f) {
    Generator base = f;
    auto eval = [base](double u) { return u * base.eval(1.0 / u); };
    auto deriv = [base](int k, double u) {
        double acc = 0.0;
        const double inv = 1.0 / u;
        for (const auto& t : reverse_term_tables()[static_cast<std::size_t>(k)]) {
            const double fx = (t.j == 0) ? base.eval(inv) : base.deriv(t.j, inv);
            acc += to_double(t.c) * fx * std::pow(u, t.e);
        }
        return acc;
    };
    std::optional<Generator::ExactDerivs> exact;
    if (f.exact_derivs_at_one()) {
        exact.emplace();
        for (int k = 0; k <= 6; ++k) {
            Rational acc(0);
            for (const auto& t : reverse_term_tables()[static_cast<std::size_t>(k)])
                acc += t.c * (*f.exact_derivs_at_one())[static_cast<std::size_t>(t.j)];
            (*exact)[static_cast<std::size_t>(k)] = acc;
        }
    }
    // Boundary limits swap: lim_{u->0} u f(1/u) = lim_{t->inf} f(t)/t and
    // lim_{u->inf} f(1/u) = f(0+).
    return Generator::from_oracles("reverse(" + f.name() + ")", std::move(eval), std::move(deriv),
                                   f.max_order(), f.slope_at_infinity(), f.limit_at_zero(),
                                   f.convexity_attested(), f.grade(), std::move(exact));
}

namespace {

Generator add_generators(std::string name, const Generator& a, const Generator& b) {
    Generator ga = a, gb = b;
    auto eval = [ga, gb](double u) { return ga.eval(u) + gb.eval(u); };
    auto deriv = [ga, gb](int k, double u) { return ga.deriv(k, u) + gb.deriv(k, u); };
    std::optional<Generator::ExactDerivs> exact;
    if (a.exact_derivs_at_one() && b.exact_derivs_at_one()) {
        exact.emplace();
        for (std::size_t k = 0; k <= 6; ++k)
            (*exact)[k] = (*a.exact_derivs_at_one())[k] + (*b.exact_derivs_at_one())[k];
    }
    const auto grade = (a.grade() == DerivativeGrade::closed_form && b.grade() == DerivativeGrade::closed_form)
                           ? DerivativeGrade::closed_form
                           : DerivativeGrade::numeric;
    return Generator::from_oracles(std::move(name), std::move(eval), std::move(deriv),
                                   std::min(a.max_order(), b.max_order()),
                                   a.limit_at_zero() + b.limit_at_zero(),
                                   a.slope_at_infinity() + b.slope_at_infinity(),
                                   a.convexity_attested() && b.convexity_attested(), grade,
                                   std::move(exact));
}

Generator scale_generator(std::string name, const Rational& c, const Generator& f) {
    if (!(c > 0)) throw DomainError("generator scale must be positive");
    Generator base = f;
    const double cd = to_double(c);
    auto eval = [base, cd](double u) { return cd * base.eval(u); };
    auto deriv = [base, cd](int k, double u) { return cd * base.deriv(k, u); };
    std::optional<Generator::ExactDerivs> exact;
    if (f.exact_derivs_at_one()) {
        exact.emplace();
        for (std::size_t k = 0; k <= 6; ++k) (*exact)[k] = c * (*f.exact_derivs_at_one())[k];
    }
    Generator g = Generator::from_oracles(std::move(name), std::move(eval), std::move(deriv),
                                          f.max_order(), cd * f.limit_at_zero(),
                                          cd * f.slope_at_infinity(), f.convexity_attested(),
                                          f.grade(), std::move(exact));
    if (f.analytic_w4()) g.set_analytic_w4(*f.analytic_w4());  // invariant under positive scaling
    return g;
}

}  // namespace

Generator symmetrize(const Generator& f) {
    return add_generators("symmetrize(" + f.name() + ")", f, reverse(f));
}

// ---------------------------------------------------------------------------
// Pinsker coefficients
// ---------------------------------------------------------------------------

PinskerCoefficients coefficients(const Generator& f) {
    if (f.max_order() < 5)
        throw DegenerateGeneratorError("coefficients need a derivative oracle through order 5; '" +
                                       f.name() + "' provides " + std::to_string(f.max_order()));
    PinskerCoefficients out;
    if (f.exact_derivs_at_one()) {
        const auto& d = *f.exact_derivs_at_one();
        const Rational d2 = d[2], d3 = d[3], d4 = d[4], d5 = d[5];
        if (!(d2 > 0)) throw DegenerateGeneratorError("f''(1) <= 0: no second-order constant");
        PinskerCoefficients::Exact e;
        e.c2 = d2 / 2;
        e.w2 = 1 + d3 / (3 * d2);
        const Rational den = 3 * d4 - 4 * d3 * d3 / d2;
        e.c4 = den / 72;
        if (den != 0)
            e.w4 = 1 + (9 * d5 - 20 * d3 * d3 * d3 / (d2 * d2)) / (45 * den);
        else if (f.analytic_w4())
            e.w4 = *f.analytic_w4();
        out.c2 = to_double(e.c2);
        out.w2 = to_double(e.w2);
        out.c4 = to_double(e.c4);
        if (e.w4) out.w4 = to_double(*e.w4);
        out.exact = std::move(e);
        return out;
    }
    const double d2 = f.deriv(2, 1.0), d3 = f.deriv(3, 1.0), d4 = f.deriv(4, 1.0),
                 d5 = f.deriv(5, 1.0);
    if (!(d2 > 0)) throw DegenerateGeneratorError("f''(1) <= 0: no second-order constant");
    out.c2 = d2 / 2.0;
    out.w2 = 1.0 + d3 / (3.0 * d2);
    const double den = 3.0 * d4 - 4.0 * d3 * d3 / d2;
    out.c4 = den / 72.0;
    const double scale = std::max({std::abs(d4), d3 * d3 / d2, 1.0});
    if (std::abs(den) > 1e-9 * scale)
        out.w4 = 1.0 + (9.0 * d5 - 20.0 * d3 * d3 * d3 / (d2 * d2)) / (45.0 * den);
    else if (f.analytic_w4())
        out.w4 = to_double(*f.analytic_w4());
    return out;
}

// ---------------------------------------------------------------------------
// Built-in catalogue
// ---------------------------------------------------------------------------

namespace {

Generator::ExactDerivs exact_from(std::initializer_list<Rational> vals) {
    Generator::ExactDerivs d;
    std::size_t i = 0;
    for (const auto& v : vals) d[i++] = v;
    return d;
}

Generator make_kl() {
    return Generator::from_oracles(
        "kl", [](double u) { return -std::log1p(u - 1.0); },
        [](int k, double u) { return neg1pow(k) * factorial(k - 1) / std::pow(u, k); },
        Generator::kMaxDerivOrder, ExtReal::infinity(), ExtReal(0.0), true,
        DerivativeGrade::closed_form,
        exact_from({Rational(0), Rational(-1), Rational(1), Rational(-2), Rational(6), Rational(-24),
                    Rational(120)}));
}

Generator make_reverse_kl() {
    return Generator::from_oracles(
        "reverse_kl", [](double u) { return u * std::log1p(u - 1.0); },
        [](int k, double u) {
            if (k == 1) return std::log(u) + 1.0;
            return neg1pow(k) * factorial(k - 2) / std::pow(u, k - 1);
        },
        Generator::kMaxDerivOrder, ExtReal(0.0), ExtReal::infinity(), true,
        DerivativeGrade::closed_form,
        exact_from({Rational(0), Rational(1), Rational(1), Rational(-1), Rational(2), Rational(-6),
                    Rational(24)}));
}

Generator make_chi2() {
    return Generator::from_oracles(
        "chi2", [](double u) { return (u - 1.0) * (u - 1.0); },
        [](int k, double u) {
            if (k == 1) return 2.0 * (u - 1.0);
            return k == 2 ? 2.0 : 0.0;
        },
        Generator::kMaxDerivOrder, ExtReal(1.0), ExtReal::infinity(), true,
        DerivativeGrade::closed_form,
        exact_from({Rational(0), Rational(0), Rational(2), Rational(0), Rational(0), Rational(0),
                    Rational(0)}));
}

Generator make_hellinger() {
    Generator::ExactDerivs d;
    d[0] = Rational(0);
    d[1] = Rational(0);
    for (int k = 2; k <= 6; ++k) d[static_cast<std::size_t>(k)] = -rfalling(Rational(1, 2), k);
    return Generator::from_oracles(
        "hellinger",
        [](double u) {
            const double s = (u - 1.0) / (std::sqrt(u) + 1.0);  // sqrt(u) - 1 without cancellation
            return 0.5 * s * s;
        },
        [](int k, double u) {
            if (k == 1) return 0.5 - 0.5 / std::sqrt(u);
            return -falling(0.5, k) * std::pow(u, 0.5 - k);
        },
        Generator::kMaxDerivOrder, ExtReal(0.5), ExtReal(0.5), true, DerivativeGrade::closed_form, d);
}

Generator make_triangular() {
    return Generator::from_oracles(
        "triangular",
        [](double u) {
            const double s = u - 1.0;
            return s * s / (u + 1.0);
        },
        [](int k, double u) {
            if (k == 1) return 1.0 - 4.0 / ((u + 1.0) * (u + 1.0));
            return 4.0 * neg1pow(k) * factorial(k) / std::pow(u + 1.0, k + 1);
        },
        Generator::kMaxDerivOrder, ExtReal(1.0), ExtReal(1.0), true, DerivativeGrade::closed_form,
        exact_from({Rational(0), Rational(0), Rational(1), Rational(-3, 2), Rational(3),
                    Rational(-15, 2), Rational(45, 2)}));
}

Generator make_triangular_nu(int nu) {
    if (nu <= 1) throw DomainError("triangular_nu requires an integer order nu > 1");
    const int p = 2 * nu;      // power of (u-1)
    const int q = 2 * nu - 1;  // power of (1+u) in the denominator
    auto eval = [p, q](double u) { return std::pow(u - 1.0, p) / std::pow(1.0 + u, q); };
    auto deriv = [p, q](int k, double u) {
        // Leibniz on (u-1)^p * (1+u)^(-q).
        double acc = 0.0;
        for (int j = std::max(0, 0); j <= std::min(k, p); ++j) {
            const double left = falling(p, j) * std::pow(u - 1.0, p - j);
            const double right = falling(-q, k - j) * std::pow(1.0 + u, -q - (k - j));
            acc += binom(k, j) * left * right;
        }
        return acc;
    };
    Generator::ExactDerivs d;
    for (int k = 0; k <= 6; ++k) {
        Rational v(0);
        if (k >= p) {
            // only the j = p term of the Leibniz sum survives at u = 1
            Rational b(1);
            for (int i = 1; i <= p; ++i) b = b * Rational(k - p + i) / Rational(i);
            v = b * rfalling(Rational(p), p) * rfalling(Rational(-q), k - p) /
                Rational(BigInt(1) << (q + (k - p)));
        }
        d[static_cast<std::size_t>(k)] = v;
    }
    return Generator::from_oracles("triangular_nu[nu=" + std::to_string(nu) + "]", std::move(eval),
                                   std::move(deriv), Generator::kMaxDerivOrder, ExtReal(1.0),
                                   ExtReal(1.0), true, DerivativeGrade::closed_form, d);
}

Generator make_jeffreys() {
    return Generator::from_oracles(
        "jeffreys", [](double u) { return (u - 1.0) * std::log1p(u - 1.0); },
        [](int k, double u) {
            if (k == 1) return std::log(u) + 1.0 - 1.0 / u;
            return neg1pow(k) * (factorial(k - 2) * std::pow(u, 1.0 - k) + factorial(k - 1) * std::pow(u, -k));
        },
        Generator::kMaxDerivOrder, ExtReal::infinity(), ExtReal::infinity(), true,
        DerivativeGrade::closed_form,
        exact_from({Rational(0), Rational(0), Rational(2), Rational(-3), Rational(8), Rational(-30),
                    Rational(144)}));
}

Generator make_capacitory() {
    Generator::ExactDerivs d;
    d[0] = Rational(0);
    d[1] = Rational(0);
    for (int k = 2; k <= 6; ++k) {
        Rational v = Rational(BigInt((k % 2 == 0) ? 1 : -1)) * Rational(BigInt(1));
        Rational fact(1);
        for (int i = 2; i <= k - 2; ++i) fact *= i;
        d[static_cast<std::size_t>(k)] =
            ((k % 2 == 0) ? fact : -fact) * (Rational(1) - Rational(1, BigInt(1) << (k - 1)));
    }
    return Generator::from_oracles(
        "capacitory",
        [](double u) {
            // u log(2u/(1+u)) + log(2/(1+u)), written through log1p so the
            // absolute error tracks |u-1| near 1.
            return u * std::log1p((u - 1.0) / (1.0 + u)) - std::log1p((u - 1.0) / 2.0);
        },
        [](int k, double u) {
            if (k == 1) return std::log(2.0 * u / (1.0 + u));
            return neg1pow(k) * factorial(k - 2) *
                   (std::pow(u, 1.0 - k) - std::pow(1.0 + u, 1.0 - k));
        },
        Generator::kMaxDerivOrder, ExtReal(std::log(2.0)), ExtReal(std::log(2.0)), true,
        DerivativeGrade::closed_form, d);
}

Generator make_rel_info(const Rational& alpha, const std::string& display_name) {
    if (alpha == 0 || alpha == 1)
        throw DomainError("relative information of type (1-alpha) requires alpha not in {0,1}");
    const double a = to_double(alpha);
    auto eval = [a](double u) { return std::expm1(a * std::log1p(u - 1.0)) / (a * (a - 1.0)); };
    auto deriv = [a](int k, double u) {
        if (k == 1) return std::pow(u, a - 1.0) / (a - 1.0);
        return falling(a - 2.0, k - 2) * std::pow(u, a - k);
    };
    Generator::ExactDerivs d;
    d[0] = Rational(0);
    d[1] = Rational(1) / (alpha - 1);
    for (int k = 2; k <= 6; ++k) d[static_cast<std::size_t>(k)] = rfalling(alpha - 2, k - 2);
    const ExtReal limit0 = (alpha < 0) ? ExtReal::infinity() : ExtReal(to_double(Rational(1) / (alpha * (1 - alpha))));
    const ExtReal slope = (alpha > 1) ? ExtReal::infinity() : ExtReal(0.0);
    Generator g = Generator::from_oracles(display_name, std::move(eval), std::move(deriv),
                                          Generator::kMaxDerivOrder, limit0, slope, true,
                                          DerivativeGrade::closed_form, d);
    // The fourth-order weight (17 + 11 alpha)/45 has a removable singularity
    // at the family's c4 = 0 endpoints; carry the analytic value.
    g.set_analytic_w4((Rational(17) + 11 * alpha) / 45);
    return g;
}

Generator make_total_variation() {
    // f'(1) is any value between the one-sided derivatives -1 and 1; fixed to
    // 0 by symmetry.  No derivative oracle: order-0 only.
    return Generator::from_oracles(
        "total_variation", [](double u) { return std::abs(u - 1.0); },
        [](int, double) -> double {
            throw DegenerateGeneratorError("total_variation is not differentiable at 1");
        },
        0, ExtReal(1.0), ExtReal(1.0), true, DerivativeGrade::closed_form);
}

}  // namespace

const std::vector<std::string>& builtin_names() {
    static const std::vector<std::string> names = {
        "kl",        "reverse_kl", "chi2",          "hellinger",   "triangular",
        "triangular_nu", "jeffreys",   "capacitory",    "rel_info_alpha", "tsallis",
        "cressie_read",  "total_variation"};
    return names;
}

Generator builtin(const std::string& name, const GeneratorParams& params) {
    auto need_alpha = [&]() -> const Rational& {
        if (!params.alpha) throw DomainError("generator '" + name + "' needs --alpha");
        return *params.alpha;
    };
    if (name == "kl") return make_kl();
    if (name == "reverse_kl") return make_reverse_kl();
    if (name == "chi2") return make_chi2();
    if (name == "hellinger") return make_hellinger();
    if (name == "triangular") return make_triangular();
    if (name == "triangular_nu") {
        if (!params.nu) throw DomainError("triangular_nu needs --nu");
        return make_triangular_nu(*params.nu);
    }
    if (name == "jeffreys") return make_jeffreys();
    if (name == "capacitory") return make_capacitory();
    if (name == "rel_info_alpha") {
        const Rational& a = need_alpha();
        return make_rel_info(a, "rel_info_alpha[alpha=" + to_fraction_string(a) + "]");
    }
    if (name == "tsallis") {
        const Rational& a = need_alpha();
        if (a == 0 || a == 1) throw DomainError("tsallis requires alpha not in {0,1}");
        // T_alpha = alpha * D_(1-alpha)
        return scale_generator("tsallis[alpha=" + to_fraction_string(a) + "]", a,
                               make_rel_info(1 - a, "rel_info"));
    }
    if (name == "cressie_read") {
        const Rational& l = need_alpha();
        if (l == 0 || l == -1) throw DomainError("cressie_read requires lambda not in {0,-1}");
        // CR_lambda = D_(-lambda)
        return make_rel_info(-l, "cressie_read[lambda=" + to_fraction_string(l) + "]");
    }
    if (name == "total_variation") return make_total_variation();
    throw DomainError("unknown generator '" + name + "'");
}

// ---------------------------------------------------------------------------
// Expression generators
// ---------------------------------------------------------------------------

namespace {

struct ExprParts {
    std::map<int, Rational> poly;  // exponent -> coefficient
    Rational c_ulogu{0}, c_logu{0}, c_sqrtu{0};
};

ExprParts parse_expression(const std::string& input) {
    std::string s;
    for (char ch : input)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw DomainError("empty generator expression");

    ExprParts parts;
    std::size_t i = 0;
    while (i < s.size()) {
        Rational sign(1);
        while (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            if (s[i] == '-') sign = -sign;
            ++i;
        }
        if (i >= s.size()) throw DomainError("dangling sign in expression");
        // optional coefficient
        Rational coef(1);
        std::size_t start = i;
        while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.' || s[i] == '/'))
            ++i;
        if (i > start) {
            auto c = parse_rational(s.substr(start, i - start));
            if (!c) throw DomainError("bad coefficient in expression: '" + s.substr(start, i - start) + "'");
            coef = *c;
            if (i < s.size() && s[i] == '*') ++i;
        }
        coef *= sign;
        // atom
        if (i >= s.size() || s[i] == '+' || s[i] == '-') {
            parts.poly[0] += coef;  // constant term
            continue;
        }
        if (s.compare(i, 5, "ulogu") == 0) {
            parts.c_ulogu += coef;
            i += 5;
        } else if (s.compare(i, 4, "logu") == 0) {
            parts.c_logu += coef;
            i += 4;
        } else if (s.compare(i, 5, "sqrtu") == 0) {
            parts.c_sqrtu += coef;
            i += 5;
        } else if (s[i] == 'u') {
            ++i;
            int e = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                std::size_t es = i;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
                if (i == es) throw DomainError("missing exponent after '^'");
                e = std::atoi(s.substr(es, i - es).c_str());
                if (e < 0 || e > 12) throw DomainError("polynomial exponent out of range");
            }
            parts.poly[e] += coef;
        } else {
            throw DomainError("unrecognized atom at '" + s.substr(i) + "'");
        }
    }
    return parts;
}

}  // namespace

Generator expression_generator(const std::string& expr) {
    const ExprParts parts = parse_expression(expr);
    int deg = 0;
    for (const auto& [e, c] : parts.poly)
        if (c != 0) deg = std::max(deg, e);
    std::vector<Rational> pc(static_cast<std::size_t>(deg) + 1, Rational(0));
    for (const auto& [e, c] : parts.poly) pc[static_cast<std::size_t>(e)] = c;
    const RationalPoly poly(pc);

    // f(1) = poly(1) + sqrt coefficient (the log atoms vanish at 1).
    const Rational at_one = poly.eval(Rational(1)) + parts.c_sqrtu;
    if (abs(at_one) > Rational(1, BigInt("1000000000000")))
        throw DomainError("expression generator must satisfy f(1) = 0 within 1e-12; got " +
                          to_fraction_string(at_one));

    // Precompute polynomial derivatives.
    std::vector<RationalPoly> pderiv{poly};
    for (int k = 1; k <= Generator::kMaxDerivOrder; ++k) pderiv.push_back(pderiv.back().derivative());

    const double cu = to_double(parts.c_ulogu);
    const double cl = to_double(parts.c_logu);
    const double cs = to_double(parts.c_sqrtu);

    auto eval = [pderiv, cu, cl, cs](double u) {
        return pderiv[0].eval_double(u) + cu * u * std::log(u) + cl * std::log(u) + cs * std::sqrt(u);
    };
    auto deriv = [pderiv, cu, cl, cs](int k, double u) {
        double acc = pderiv[static_cast<std::size_t>(k)].eval_double(u);
        if (cu != 0.0)
            acc += (k == 1) ? cu * (std::log(u) + 1.0)
                            : cu * neg1pow(k) * factorial(k - 2) * std::pow(u, 1.0 - k);
        if (cl != 0.0) acc += cl * neg1pow(k - 1) * factorial(k - 1) * std::pow(u, -k);
        if (cs != 0.0) acc += cs * falling(0.5, k) * std::pow(u, 0.5 - k);
        return acc;
    };

    Generator::ExactDerivs d;
    static const std::array<Rational, 7> ulogu_at1 = {Rational(0), Rational(1), Rational(1),
                                                      Rational(-1), Rational(2), Rational(-6),
                                                      Rational(24)};
    static const std::array<Rational, 7> logu_at1 = {Rational(0),  Rational(1),  Rational(-1),
                                                     Rational(2),  Rational(-6), Rational(24),
                                                     Rational(-120)};
    for (int k = 0; k <= 6; ++k) {
        Rational v = pderiv[static_cast<std::size_t>(k)].eval(Rational(1));
        v += parts.c_ulogu * ulogu_at1[static_cast<std::size_t>(k)];
        v += parts.c_logu * logu_at1[static_cast<std::size_t>(k)];
        v += parts.c_sqrtu * rfalling(Rational(1, 2), k);
        d[static_cast<std::size_t>(k)] = v;
    }

    // Boundary limits; reject -inf cases (such a generator is not convex).
    ExtReal limit0(0.0);
    if (parts.c_logu > 0) throw DomainError("expression generator diverges to -inf at 0 (logu coefficient > 0)");
    if (parts.c_logu < 0)
        limit0 = ExtReal::infinity();
    else
        limit0 = ExtReal(to_double(poly.coeff(0)));

    ExtReal slope(0.0);
    if (parts.c_ulogu < 0) throw DomainError("expression generator slope diverges to -inf (ulogu coefficient < 0)");
    if (parts.c_ulogu > 0) {
        slope = ExtReal::infinity();
    } else if (poly.degree() >= 2) {
        if (poly.coeffs().back() < 0)
            throw DomainError("expression generator slope diverges to -inf (negative leading coefficient)");
        slope = ExtReal::infinity();
    } else {
        slope = ExtReal(to_double(poly.coeff(1)));
    }

    return Generator::from_oracles("expr(" + expr + ")", std::move(eval), std::move(deriv),
                                   Generator::kMaxDerivOrder, limit0, slope, false,
                                   DerivativeGrade::closed_form, d);
}

// ---------------------------------------------------------------------------
// Derivative validation
// ---------------------------------------------------------------------------

DerivativeValidation validate_derivatives(const Generator& f, const std::vector<double>& grid,
                                          double tol) {
    DerivativeValidation report;
    report.min_second_derivative = std::numeric_limits<double>::infinity();
    const int orders = std::min(f.max_order(), 6);
    for (int k = 1; k <= orders; ++k) {
        DerivativeValidation::PerOrder row;
        row.order = k;
        for (double u : grid) {
            if (!(u > 0.0)) throw DomainError("derivative validation grid must lie in (0,inf)");
            double h = 6e-6 * std::max(u, 1e-3);
            h = std::min(h, u / 4.0);
            const double lo = (k == 1) ? f.eval(u - h) : f.deriv(k - 1, u - h);
            const double hi = (k == 1) ? f.eval(u + h) : f.deriv(k - 1, u + h);
            const double fd = (hi - lo) / (2.0 * h);
            const double oracle = f.deriv(k, u);
            const double dev = std::abs(fd - oracle) / std::max(1.0, std::abs(oracle));
            if (dev > row.max_deviation) {
                row.max_deviation = dev;
                row.worst_u = u;
            }
            if (k == 2) report.min_second_derivative = std::min(report.min_second_derivative, oracle);
        }
        report.orders.push_back(row);
    }
    report.pass = true;
    for (const auto& row : report.orders)
        if (!(row.max_deviation <= tol)) report.pass = false;
    if (f.convexity_attested() && orders >= 2 && report.min_second_derivative < -tol)
        report.pass = false;
    return report;
}

}  // namespace csdiv
