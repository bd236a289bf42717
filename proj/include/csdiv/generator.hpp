#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "csdiv/ext_real.hpp"
#include "csdiv/rational.hpp"

namespace csdiv {

enum class DerivativeGrade {
    closed_form,  // exact derivative formulas
    numeric,      // finite-difference fallback; flagged in certification output
};

/// Convex divergence generator f: (0,inf) -> R with f(1) = 0, an evaluation
/// oracle, a derivative oracle up to kMaxDerivOrder, and the boundary limits
/// f(0+) and lim_{u->inf} f(u)/u that the zero-mass conventions need.
/// Immutable after construction.
class Generator {
public:
    static constexpr int kMaxDerivOrder = 7;

    using EvalFn = std::function<double(double)>;
    using DerivFn = std::function<double(int, double)>;  // (order >= 1, u > 0)

    /// Exact rational derivative values at u = 1, orders 0..6, when the
    /// generator has them (all built-ins with rational parameters).
    using ExactDerivs = std::array<Rational, 7>;

    Generator() = default;

    static Generator from_oracles(std::string name, EvalFn eval, DerivFn deriv, int max_order,
                                  ExtReal limit_at_zero, ExtReal slope_at_infinity,
                                  bool convexity_attested, DerivativeGrade grade,
                                  std::optional<ExactDerivs> derivs_at_one = std::nullopt);

    /// Evaluation-only generator: the derivative oracle is built from central
    /// finite differences (numeric grade).
    static Generator from_eval(std::string name, EvalFn eval, ExtReal limit_at_zero,
                               ExtReal slope_at_infinity, bool convexity_attested = false);

    double eval(double u) const;
    double deriv(int order, double u) const;

    int max_order() const { return max_order_; }
    const std::string& name() const { return name_; }
    ExtReal limit_at_zero() const { return limit_at_zero_; }
    ExtReal slope_at_infinity() const { return slope_at_infinity_; }
    bool convexity_attested() const { return convexity_attested_; }
    DerivativeGrade grade() const { return grade_; }
    const std::optional<ExactDerivs>& exact_derivs_at_one() const { return exact_derivs_; }

    /// Analytic fourth-order weight for generators whose c4 can vanish at
    /// parameter boundaries while the weight still has a finite limit (the
    /// relative-information family supplies (17+11a)/45).
    const std::optional<Rational>& analytic_w4() const { return analytic_w4_; }
    void set_analytic_w4(Rational w4) { analytic_w4_ = std::move(w4); }

private:
    std::string name_;
    EvalFn eval_;
    DerivFn deriv_;
    int max_order_ = 0;
    ExtReal limit_at_zero_;
    ExtReal slope_at_infinity_;
    bool convexity_attested_ = false;
    DerivativeGrade grade_ = DerivativeGrade::numeric;
    std::optional<ExactDerivs> exact_derivs_;
    std::optional<Rational> analytic_w4_;
};

/// f~(u) = f(u) - f'(1)(u-1): same divergence, nonnegative by convexity,
/// derivatives of order >= 2 unchanged.
Generator tilde(const Generator& f);

/// f_R(u) = u f(1/u): generates the divergence with swapped arguments.
/// Derivatives come from an exact chain-rule expansion, not differencing.
Generator reverse(const Generator& f);

/// f_S = f + f_R, a symmetric generator.
Generator symmetrize(const Generator& f);

/// Second- and fourth-order Pinsker coefficients derived from derivatives of
/// f at u = 1.  w4 is undefined exactly when c4 = 0 (the fourth-order theorem
/// does not apply), unless the generator carries an analytic w4 limit.
struct PinskerCoefficients {
    double c2 = 0.0;
    double w2 = 0.0;
    double c4 = 0.0;
    std::optional<double> w4;

    struct Exact {
        Rational c2, w2, c4;
        std::optional<Rational> w4;
    };
    std::optional<Exact> exact;  // present when the generator has exact derivatives
};

/// c2 = f''(1)/2, w2 = 1 + f'''(1)/(3 f''(1)),
/// c4 = [3 f''''(1) - 4 f'''(1)^2/f''(1)]/72,
/// w4 = 1 + [9 f^(5)(1) - 20 f'''(1)^3/f''(1)^2] / (45 [3 f''''(1) - 4 f'''(1)^2/f''(1)]).
/// Throws DegenerateGeneratorError when f''(1) <= 0 or the oracle is too
/// shallow (order < 5).
PinskerCoefficients coefficients(const Generator& f);

/// Parameters for the built-in catalogue.  alpha is exact so that the
/// coefficient tables stay exact rationals.
struct GeneratorParams {
    std::optional<Rational> alpha;
    std::optional<int> nu;
};

/// Built-in generators: kl, reverse_kl, chi2, hellinger, triangular,
/// triangular_nu (nu > 1), jeffreys, capacitory, rel_info_alpha (alpha not in
/// {0,1}), tsallis (alpha not in {0,1}), cressie_read (lambda not in {0,-1}),
/// total_variation (order 0 only).
Generator builtin(const std::string& name, const GeneratorParams& params = {});

const std::vector<std::string>& builtin_names();

/// User generator from a small expression format: a polynomial in u plus
/// optional u*log(u), log(u) and sqrt(u) atoms, e.g. "u - 1 - logu" or
/// "0.5*u^2 - u + 0.5" or "ulogu - u + 1".  Coefficients parse as exact
/// rationals; derivatives are closed-form.  f(1) must be 0 within 1e-12.
Generator expression_generator(const std::string& expr);

/// Report of validate_derivatives: per-order maximum deviation between the
/// derivative oracle and a central finite difference of the previous order.
struct DerivativeValidation {
    struct PerOrder {
        int order = 0;
        double max_deviation = 0.0;  // relative to max(1, |oracle|)
        double worst_u = 0.0;
    };
    std::vector<PerOrder> orders;
    double min_second_derivative = 0.0;  // over the grid; convexity witness
    bool pass = false;
};

DerivativeValidation validate_derivatives(const Generator& f, const std::vector<double>& grid,
                                          double tol);

}  // namespace csdiv
