#pragma once

#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "csdiv/rational.hpp"

namespace csdiv {

/// Univariate polynomial with exact rational coefficients, ascending degree.
/// Trailing zero coefficients are always stripped; the zero polynomial has
/// degree -1.
class RationalPoly {
public:
    RationalPoly() = default;
    explicit RationalPoly(std::vector<Rational> coeffs, std::string var = "u");
    static RationalPoly constant(Rational c, std::string var = "u");
    static RationalPoly from_ints(std::initializer_list<long long> coeffs, std::string var = "u");
    static RationalPoly variable(std::string var = "u");

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    Rational coeff(int k) const;
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    const std::string& var() const { return var_; }

    RationalPoly& operator+=(const RationalPoly& o);
    RationalPoly& operator-=(const RationalPoly& o);
    friend RationalPoly operator+(RationalPoly a, const RationalPoly& b) { return a += b; }
    friend RationalPoly operator-(RationalPoly a, const RationalPoly& b) { return a -= b; }
    friend RationalPoly operator*(const RationalPoly& a, const RationalPoly& b);
    friend RationalPoly operator*(const Rational& s, RationalPoly p);
    RationalPoly operator-() const;
    bool operator==(const RationalPoly& o) const { return coeffs_ == o.coeffs_; }

    RationalPoly pow(unsigned e) const;
    RationalPoly derivative() const;

    /// Euclidean division: *this = q * divisor + r with deg r < deg divisor.
    std::pair<RationalPoly, RationalPoly> quo_rem(const RationalPoly& divisor) const;

    Rational eval(const Rational& x) const;
    double eval_double(double x) const;

    std::string to_string() const;

private:
    void normalize();
    std::vector<Rational> coeffs_;
    std::string var_ = "u";
};

/// Exact nonnegativity of a polynomial of degree <= 2 on [lo, hi], decided
/// from endpoint values and (for convex quadratics) the vertex value.
bool nonneg_on_interval_deg2(const RationalPoly& p, const Rational& lo, const Rational& hi);

// ---------------------------------------------------------------------------
// Quartic nonnegativity certificate:
//   T(u) = a4 (u + shift1)^4 + a2 (u + shift2)^2 + a0
// with a4, a2, a0 >= 0 proves T >= 0 everywhere.  Sufficient, not necessary.
// ---------------------------------------------------------------------------

struct QuarticCertificate {
    Rational a4, a2, a0;
    Rational shift1, shift2;
};

struct QuarticCertOutcome {
    bool conclusive = false;
    QuarticCertificate cert;      // meaningful only when conclusive
    std::string reason;           // why inconclusive
};

/// Attempts the square decomposition above for a degree-4 polynomial.
/// Inconclusive when 8 c2 c4 - 3 c3^2 <= 0 (the a0 formula degenerates) or
/// when any of a4, a2, a0 turns out negative; inconclusive does NOT mean the
/// polynomial takes negative values.
QuarticCertOutcome quartic_certificate(const RationalPoly& t);

/// Expands the certificate and compares against t coefficient-for-coefficient.
bool verify_quartic_identity(const RationalPoly& t, const QuarticCertificate& cert);

// ---------------------------------------------------------------------------
// The exact sixth-derivative identity behind the fourth-order bound for the
// information divergence, u - 1 - log u.
// ---------------------------------------------------------------------------

struct KlSixthReport {
    std::vector<Rational> derivs_at_one;  // g(1), g'(1), ..., g^(5)(1); all must be 0
    RationalPoly quartic;                 // g^(6)(u) * u^6 * 91125/8
    bool quartic_matches = false;         // equals (24565, -34102, 44268, -50960, 43904)
    QuarticCertOutcome certificate;
    bool certificate_verified = false;
    bool pass = false;
};

/// Reconstructs g(u) = (u-1-log u) A(u) B(u)^3 - (1/2)(u-1)^2 B(u)^3
/// - (1/36)(u-1)^4 A(u) with A = 1 + (2/3)(u-1), B = 1 + (28/45)(u-1),
/// differentiates it six times exactly (the log atom is handled symbolically
/// and drops out), and certifies the resulting quartic numerator.
KlSixthReport kl_sixth_identity();

// ---------------------------------------------------------------------------
// The one-parameter family bracket and its appendix verification chain.
// ---------------------------------------------------------------------------

/// Coefficient polynomials (in alpha) of the degree-4-in-u bracket whose
/// positivity on u > 0 underlies the fourth-order bound for the relative
/// information family; index k is the coefficient of u^k.
std::array<RationalPoly, 5> alpha_bracket_coeff_polys();

/// The bracket as a polynomial in u at a fixed rational alpha.
RationalPoly alpha_fourth_bracket(const Rational& alpha);

/// The degree-10 polynomial in alpha whose nonnegativity on [-1,2] closes the
/// fourth-order proof for the family.
RationalPoly p10_polynomial();

struct AlphaChainReport {
    bool a2_closed_form = false;   // certificate a2 for the bracket matches its closed form
    bool cubic_identity = false;   // 980a^3+552a^2-4257a-4207 decomposition + negativity
    bool a0_identity = false;      // a0 * 32 a2 (a+4)^4 == 9 P10, as polynomials
    bool p10_coefficients = false; // derived P10 matches the 11 pinned coefficients
    bool pass() const { return a2_closed_form && cubic_identity && a0_identity && p10_coefficients; }
};

/// Verifies the whole appendix chain by exact symbolic expansion over the
/// rationals (bivariate identities are cross-multiplied into polynomial
/// identities in alpha).
AlphaChainReport alpha_appendix_chain();

struct P10Report {
    bool expansion_matches = false;  // five-term decomposition == P10 exactly
    bool signs_ok = false;           // every factor certified nonnegative on [-1,2]
    bool pass() const { return expansion_matches && signs_ok; }
};

/// Expands the five-term decomposition of P10 into powers of (2-alpha) and
/// (alpha+1) and certifies each coefficient factor's sign on [-1,2].
P10Report verify_p10_identity();

// ---------------------------------------------------------------------------
// Division search: certify P >= 0 on [-1,2] by repeatedly dividing by
// (2-alpha)^m (alpha+1)^n until every piece has degree <= 2.
// ---------------------------------------------------------------------------

struct PositivityTerm {
    RationalPoly coeff;  // degree <= 2, certified nonnegative on [-1,2]
    int m = 0;           // exponent of (2-alpha)
    int n = 0;           // exponent of (alpha+1)
};

struct PositivityDecomposition {
    std::vector<PositivityTerm> terms;
    RationalPoly residual;  // degree <= 2, certified nonnegative on [-1,2]

    /// Sum of terms plus residual, for exactness checks.
    RationalPoly expand() const;
};

/// Certifies P >= 0 on [-1,2] or returns nullopt (which is not a disproof).
/// Divisor candidates are enumerated by decreasing total degree m+n; a
/// candidate is kept when quotient and remainder are nonnegative at 33
/// equispaced rational sample points and both certify recursively
/// (backtracking otherwise).  Recursion depth is capped at 6.
std::optional<PositivityDecomposition> positivity_division_search(const RationalPoly& p,
                                                                  int max_m = 8, int max_n = 8);

/// First-level divisor exponents and quotient of a successful search, for
/// reporting (the term whose exponent pair was found first).
struct DivisionSearchTrace {
    int first_m = -1, first_n = -1;
    RationalPoly first_quotient;
};

std::optional<PositivityDecomposition> positivity_division_search(const RationalPoly& p,
                                                                  int max_m, int max_n,
                                                                  DivisionSearchTrace* trace);

}  // namespace csdiv
