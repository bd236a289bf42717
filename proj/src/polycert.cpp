#include "csdiv/polycert.hpp"

#include <algorithm>
#include <array>

namespace csdiv {

// ---------------------------------------------------------------------------
// RationalPoly
// ---------------------------------------------------------------------------

RationalPoly RationalPoly::constant(Rational c, std::string var) {
    std::vector<Rational> coeffs;
    coeffs.push_back(std::move(c));
    return RationalPoly(std::move(coeffs), std::move(var));
}

RationalPoly::RationalPoly(std::vector<Rational> coeffs, std::string var)
    : coeffs_(std::move(coeffs)), var_(std::move(var)) {
    normalize();
}

RationalPoly RationalPoly::from_ints(std::initializer_list<long long> coeffs, std::string var) {
    std::vector<Rational> c;
    c.reserve(coeffs.size());
    for (long long v : coeffs) c.emplace_back(v);
    return RationalPoly(std::move(c), std::move(var));
}

RationalPoly RationalPoly::variable(std::string var) {
    return RationalPoly({Rational(0), Rational(1)}, std::move(var));
}

void RationalPoly::normalize() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational RationalPoly::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(coeffs_.size())) return Rational(0);
    return coeffs_[static_cast<std::size_t>(k)];
}

RationalPoly& RationalPoly::operator+=(const RationalPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    normalize();
    return *this;
}

RationalPoly& RationalPoly::operator-=(const RationalPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    normalize();
    return *this;
}

RationalPoly operator*(const RationalPoly& a, const RationalPoly& b) {
    if (a.is_zero() || b.is_zero()) return RationalPoly();
    std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return RationalPoly(std::move(c), a.var_);
}

RationalPoly operator*(const Rational& s, RationalPoly p) {
    for (auto& c : p.coeffs_) c *= s;
    p.normalize();
    return p;
}

RationalPoly RationalPoly::operator-() const { return Rational(-1) * *this; }

RationalPoly RationalPoly::pow(unsigned e) const {
    RationalPoly r = RationalPoly::constant(Rational(1), var_);
    for (unsigned i = 0; i < e; ++i) r = r * *this;
    return r;
}

RationalPoly RationalPoly::derivative() const {
    if (coeffs_.size() <= 1) return RationalPoly::constant(Rational(0), var_);
    std::vector<Rational> c(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) c[i - 1] = Rational(i) * coeffs_[i];
    return RationalPoly(std::move(c), var_);
}

std::pair<RationalPoly, RationalPoly> RationalPoly::quo_rem(const RationalPoly& divisor) const {
    if (divisor.is_zero()) throw DomainError("polynomial division by zero");
    RationalPoly rem = *this;
    const int dd = divisor.degree();
    if (rem.degree() < dd) return {RationalPoly(), rem};
    std::vector<Rational> q(static_cast<std::size_t>(rem.degree() - dd + 1), Rational(0));
    const Rational& lead = divisor.coeffs_.back();
    while (!rem.is_zero() && rem.degree() >= dd) {
        const int shift = rem.degree() - dd;
        const Rational factor = rem.coeffs_.back() / lead;
        q[static_cast<std::size_t>(shift)] = factor;
        for (int i = 0; i <= dd; ++i)
            rem.coeffs_[static_cast<std::size_t>(i + shift)] -= factor * divisor.coeffs_[static_cast<std::size_t>(i)];
        rem.normalize();
    }
    return {RationalPoly(std::move(q), var_), rem};
}

Rational RationalPoly::eval(const Rational& x) const {
    Rational acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

double RationalPoly::eval_double(double x) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + to_double(*it);
    return acc;
}

std::string RationalPoly::to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (int k = degree(); k >= 0; --k) {
        const Rational c = coeff(k);
        if (c == 0) continue;
        if (!out.empty()) out += (c > 0) ? " + " : " - ";
        else if (c < 0) out += "-";
        const Rational mag = abs(c);
        if (mag != 1 || k == 0) out += to_fraction_string(mag);
        if (k > 0) {
            if (mag != 1) out += "*";
            out += var_;
            if (k > 1) out += "^" + std::to_string(k);
        }
    }
    return out;
}

bool nonneg_on_interval_deg2(const RationalPoly& p, const Rational& lo, const Rational& hi) {
    if (p.degree() > 2) throw DomainError("analytic sign check handles degree <= 2 only");
    if (p.is_zero()) return true;
    if (p.eval(lo) < 0 || p.eval(hi) < 0) return false;
    if (p.degree() == 2) {
        const Rational a = p.coeff(2);
        if (a > 0) {
            const Rational vertex = -p.coeff(1) / (2 * a);
            if (vertex > lo && vertex < hi && p.eval(vertex) < 0) return false;
        }
        // Concave case: interval minimum is at an endpoint, already checked.
    }
    return true;
}

// ---------------------------------------------------------------------------
// Quartic certificate
// ---------------------------------------------------------------------------

QuarticCertOutcome quartic_certificate(const RationalPoly& t) {
    if (t.degree() != 4) throw DomainError("quartic certificate requires degree 4");
    const Rational c4 = t.coeff(4), c3 = t.coeff(3), c2 = t.coeff(2), c1 = t.coeff(1),
                   c0 = t.coeff(0);
    QuarticCertOutcome out;
    if (c4 < 0) {
        out.reason = "leading coefficient negative (a4 < 0)";
        return out;
    }
    const Rational den = 8 * c2 * c4 - 3 * c3 * c3;
    if (den == 0) {
        out.reason = "a0 formula degenerate (8 c2 c4 = 3 c3^2)";
        return out;
    }
    const Rational a2 = den / (8 * c4);
    if (a2 < 0) {
        out.reason = "a2 negative";
        return out;
    }
    const Rational num = 2048 * c0 * c4 * c4 * c4 * c4 * c2 - 768 * c0 * c4 * c4 * c4 * c3 * c3 -
                         8 * c3 * c3 * c3 * c3 * c2 * c4 + c3 * c3 * c3 * c3 * c3 * c3 +
                         64 * c3 * c3 * c3 * c1 * c4 * c4 - 512 * c1 * c1 * c4 * c4 * c4 * c4;
    const Rational a0 = num / (256 * c4 * c4 * c4 * den);
    if (a0 < 0) {
        out.reason = "a0 negative";
        return out;
    }
    out.conclusive = true;
    out.cert.a4 = c4;
    out.cert.a2 = a2;
    out.cert.a0 = a0;
    out.cert.shift1 = c3 / (4 * c4);
    out.cert.shift2 = (16 * c1 * c4 * c4 - c3 * c3 * c3) / (4 * c4 * den);
    return out;
}

bool verify_quartic_identity(const RationalPoly& t, const QuarticCertificate& cert) {
    const std::string& v = t.var();
    const RationalPoly u = RationalPoly::variable(v);
    RationalPoly rebuilt = cert.a4 * (u + RationalPoly::constant(cert.shift1, v)).pow(4) +
                           cert.a2 * (u + RationalPoly::constant(cert.shift2, v)).pow(2) +
                           RationalPoly::constant(cert.a0, v);
    return rebuilt == t;
}

// ---------------------------------------------------------------------------
// Sixth-derivative identity for u - 1 - log u
// ---------------------------------------------------------------------------

namespace {

// num(u)/u^d + log(u) * logc(u), closed under differentiation; after enough
// derivatives the log coefficient polynomial differentiates away.
struct LogPoly {
    RationalPoly num;
    int d = 0;
    RationalPoly logc;

    void reduce() {
        while (d > 0 && !num.is_zero() && num.coeff(0) == 0) {
            std::vector<Rational> shifted(num.coeffs().begin() + 1, num.coeffs().end());
            num = RationalPoly(std::move(shifted), num.var());
            --d;
        }
    }

    LogPoly derivative() const {
        const RationalPoly u = RationalPoly::variable(num.var());
        LogPoly out;
        out.num = num.derivative() * u - Rational(d) * num + logc * u.pow(static_cast<unsigned>(d));
        out.d = d + 1;
        out.logc = logc.derivative();
        out.reduce();
        return out;
    }

    // log(1) = 0, so values at u = 1 are exact rationals.
    Rational eval_at_one() const { return num.eval(Rational(1)); }
};

}  // namespace

KlSixthReport kl_sixth_identity() {
    const RationalPoly u = RationalPoly::variable();
    const RationalPoly um1 = u - RationalPoly::constant(Rational(1));
    const RationalPoly A = RationalPoly::constant(Rational(1)) + Rational(2, 3) * um1;
    const RationalPoly B = RationalPoly::constant(Rational(1)) + Rational(28, 45) * um1;
    const RationalPoly B3 = B.pow(3);

    // g(u) = (u-1-log u) A B^3 - (1/2)(u-1)^2 B^3 - (1/36)(u-1)^4 A
    //      = [ (u-1) A B^3 - (1/2)(u-1)^2 B^3 - (1/36)(u-1)^4 A ] - log(u) * A B^3
    LogPoly g;
    g.num = um1 * A * B3 - Rational(1, 2) * um1.pow(2) * B3 - Rational(1, 36) * um1.pow(4) * A;
    g.logc = -(A * B3);

    KlSixthReport report;
    LogPoly cur = g;
    bool derivs_zero = true;
    for (int k = 0; k <= 5; ++k) {
        const Rational v = cur.eval_at_one();
        report.derivs_at_one.push_back(v);
        if (v != 0) derivs_zero = false;
        cur = cur.derivative();
    }
    // cur is now g^(6); its log coefficient must be gone and the denominator
    // power must be exactly 6.
    const bool shape_ok = cur.logc.is_zero() && cur.d == 6;
    report.quartic = Rational(91125, 8) * cur.num;
    const RationalPoly expected = RationalPoly::from_ints({24565, -34102, 44268, -50960, 43904});
    report.quartic_matches = shape_ok && (report.quartic == expected);
    if (report.quartic.degree() == 4) {
        report.certificate = quartic_certificate(report.quartic);
        if (report.certificate.conclusive)
            report.certificate_verified = verify_quartic_identity(report.quartic, report.certificate.cert);
    }
    report.pass = derivs_zero && report.quartic_matches && report.certificate.conclusive &&
                  report.certificate_verified;
    return report;
}

// ---------------------------------------------------------------------------
// One-parameter family bracket and appendix chain
// ---------------------------------------------------------------------------

namespace {

RationalPoly alin(long long c0, long long c1) {
    return RationalPoly({Rational(c0), Rational(c1)}, "alpha");
}

RationalPoly aquad(long long c0, long long c1, long long c2) {
    return RationalPoly({Rational(c0), Rational(c1), Rational(c2)}, "alpha");
}

}  // namespace

std::array<RationalPoly, 5> alpha_bracket_coeff_polys() {
    // Coefficients of u^0..u^4 of the bracketed quartic, as polynomials in
    // alpha (each written in its factored form and expanded exactly).
    std::array<RationalPoly, 5> t;
    t[0] = Rational(-1) * alin(-5, 1) * alin(-3, 1) * alin(-4, 1) * alin(17, 11).pow(3);
    t[1] = Rational(2) * alin(-3, 1) * alin(-4, 1) * aquad(-59, -28, 22) * alin(17, 11).pow(2);
    t[2] = Rational(-6) * alin(17, 11) * alin(-28, 11) * alin(-3, 1) * alin(2, 1) * aquad(-31, -11, 11);
    t[3] = Rational(2) * alin(3, 1) * alin(2, 1) * aquad(-65, -16, 22) * alin(-28, 11).pow(2);
    t[4] = Rational(-1) * alin(4, 1) * alin(3, 1) * alin(2, 1) * alin(-28, 11).pow(3);
    return t;
}

RationalPoly alpha_fourth_bracket(const Rational& alpha) {
    const auto t = alpha_bracket_coeff_polys();
    std::vector<Rational> c(5);
    for (int k = 0; k <= 4; ++k) c[static_cast<std::size_t>(k)] = t[static_cast<std::size_t>(k)].eval(alpha);
    return RationalPoly(std::move(c), "u");
}

RationalPoly p10_polynomial() {
    return RationalPoly(
        {Rational(BigInt("41092635382468")), Rational(BigInt("113143847999692")),
         Rational(BigInt("94728169651149")), Rational(BigInt("-4381425810042")),
         Rational(BigInt("-43681339670379")), Rational(BigInt("-14799467270700")),
         Rational(BigInt("4844633801556")), Rational(BigInt("3066837388032")),
         Rational(BigInt("54551858544")), Rational(BigInt("-168248775872")),
         Rational(BigInt("-20792743232"))},
        "alpha");
}

AlphaChainReport alpha_appendix_chain() {
    AlphaChainReport report;
    const auto t = alpha_bracket_coeff_polys();
    const RationalPoly cubic = RationalPoly({Rational(-4207), Rational(-4257), Rational(552), Rational(980)}, "alpha");
    const RationalPoly a_plus_4 = alin(4, 1);
    const RationalPoly a_plus_2 = alin(2, 1);
    const RationalPoly e11m28 = alin(-28, 11);

    // (i) a2 from the square-decomposition formula equals its closed form:
    //     (8 t2 t4 - 3 t3^2) / (8 t4) == (9/2) cubic (alpha+2)(11 alpha-28) / (alpha+4),
    // cross-multiplied into a polynomial identity.
    const RationalPoly den = Rational(8) * t[2] * t[4] - Rational(3) * t[3] * t[3];
    {
        const RationalPoly lhs = Rational(2) * (den * a_plus_4);
        const RationalPoly rhs = Rational(72) * (cubic * a_plus_2 * e11m28 * t[4]);
        report.a2_closed_form = (lhs == rhs);
    }

    // (ii) cubic == -(980a+1532)(2-a)(a+1) - (1143+765a), and every factor on
    // the right has the sign that makes the cubic negative on [-1,2].
    {
        const RationalPoly rhs = -(alin(1532, 980) * alin(2, -1) * alin(1, 1)) - alin(1143, 765);
        const bool expands = (cubic == rhs);
        const Rational lo(-1), hi(2);
        const bool signs = nonneg_on_interval_deg2(alin(1532, 980), lo, hi) &&
                           nonneg_on_interval_deg2(alin(1143, 765), lo, hi);
        report.cubic_identity = expands && signs;
    }

    // (iii) a0 * 32 a2 (alpha+4)^4 == 9 P10 reduces (after substituting the
    // formulas for a0 and a2) to Num * (alpha+4)^4 == 576 * P10 * t4^4.
    const RationalPoly num = Rational(2048) * t[0] * t[4].pow(4) * t[2] -
                             Rational(768) * t[0] * t[4].pow(3) * t[3] * t[3] -
                             Rational(8) * t[3].pow(4) * t[2] * t[4] + t[3].pow(6) +
                             Rational(64) * t[3].pow(3) * t[1] * t[4] * t[4] -
                             Rational(512) * t[1] * t[1] * t[4].pow(4);
    const RationalPoly lhs3 = num * a_plus_4.pow(4);
    const RationalPoly divisor = Rational(576) * t[4].pow(4);
    const auto [p10_derived, rem] = lhs3.quo_rem(divisor);
    report.a0_identity = rem.is_zero();

    // (iv) the derived P10 matches the pinned coefficient list.
    report.p10_coefficients = report.a0_identity && (p10_derived == p10_polynomial());
    return report;
}

P10Report verify_p10_identity() {
    P10Report report;
    const RationalPoly two_minus_a = alin(2, -1);
    const RationalPoly a_plus_1 = alin(1, 1);

    const RationalPoly q1 = RationalPoly({Rational(BigInt("300831606416")), Rational(BigInt("189041519104")),
                                          Rational(BigInt("20792743232"))},
                                         "alpha");
    const RationalPoly q2 = RationalPoly({Rational(BigInt("3335882569236")), Rational(BigInt("1295259115248"))}, "alpha");
    const RationalPoly q3 = RationalPoly({Rational(BigInt("7953881034231")), Rational(BigInt("1471491213228"))}, "alpha");
    const RationalPoly q4 = RationalPoly::constant(Rational(BigInt("1343948812407")), "alpha");
    const RationalPoly q5 = RationalPoly({Rational(BigInt("6746792560920")), Rational(BigInt("11252369540556")),
                                          Rational(BigInt("4661891728632"))},
                                         "alpha");

    const RationalPoly expansion = q1 * two_minus_a.pow(3) * a_plus_1.pow(5) +
                                   q2 * two_minus_a.pow(2) * a_plus_1.pow(4) +
                                   q3 * two_minus_a * a_plus_1.pow(3) + q4 * two_minus_a * a_plus_1.pow(2) +
                                   q5;
    report.expansion_matches = (expansion == p10_polynomial());

    const Rational lo(-1), hi(2);
    report.signs_ok = nonneg_on_interval_deg2(q1, lo, hi) && nonneg_on_interval_deg2(q2, lo, hi) &&
                      nonneg_on_interval_deg2(q3, lo, hi) && nonneg_on_interval_deg2(q4, lo, hi) &&
                      nonneg_on_interval_deg2(q5, lo, hi) &&
                      nonneg_on_interval_deg2(two_minus_a, lo, hi) &&
                      nonneg_on_interval_deg2(a_plus_1, lo, hi);
    return report;
}

// ---------------------------------------------------------------------------
// Division search
// ---------------------------------------------------------------------------

RationalPoly PositivityDecomposition::expand() const {
    const RationalPoly two_minus_a = alin(2, -1);
    const RationalPoly a_plus_1 = alin(1, 1);
    RationalPoly acc = residual;
    for (const auto& t : terms)
        acc += t.coeff * two_minus_a.pow(static_cast<unsigned>(t.m)) *
               a_plus_1.pow(static_cast<unsigned>(t.n));
    return acc;
}

namespace {

constexpr int kMaxDepth = 6;

bool sample_nonneg_33(const RationalPoly& p) {
    for (int j = 0; j <= 32; ++j) {
        const Rational x = Rational(-1) + Rational(3 * j, 32);
        if (p.eval(x) < 0) return false;
    }
    return true;
}

std::optional<PositivityDecomposition> search_rec(const RationalPoly& p, int depth, int max_m,
                                                  int max_n, DivisionSearchTrace* trace) {
    PositivityDecomposition out;
    if (p.is_zero()) return out;
    if (!sample_nonneg_33(p)) return std::nullopt;
    const Rational lo(-1), hi(2);

    const RationalPoly two_minus_a = alin(2, -1);
    const RationalPoly a_plus_1 = alin(1, 1);

    // Fast path: peel off exact (2-a)/(a+1) factors; if what is left has
    // degree <= 2 and the analytic check passes, the whole input is one term.
    {
        RationalPoly rest = p;
        int m = 0, n = 0;
        for (;;) {
            auto [q, r] = rest.quo_rem(two_minus_a);
            if (!r.is_zero()) break;
            rest = q;
            ++m;
        }
        for (;;) {
            auto [q, r] = rest.quo_rem(a_plus_1);
            if (!r.is_zero()) break;
            rest = q;
            ++n;
        }
        if ((m > 0 || n > 0) && rest.degree() <= 2 && nonneg_on_interval_deg2(rest, lo, hi)) {
            if (trace && depth == 0) {
                trace->first_m = m;
                trace->first_n = n;
                trace->first_quotient = rest;
            }
            out.terms.push_back({rest, m, n});
            return out;
        }
    }

    if (p.degree() <= 2) {
        if (!nonneg_on_interval_deg2(p, lo, hi)) return std::nullopt;
        out.residual = p;
        return out;
    }

    if (depth >= kMaxDepth) return std::nullopt;

    // Only divisions that leave at least a quadratic quotient are real
    // reductions; smaller quotients are degree <= 1 pieces whose sign the
    // analytic check settles anyway, and admitting them lets a near-full
    // degree divisor swallow the polynomial with an almost-original-size
    // remainder.
    const int dp = p.degree();
    for (int total = std::min(dp - 2, max_m + max_n); total >= 1; --total) {
        for (int m = std::min(total, max_m); m >= 0; --m) {
            const int n = total - m;
            if (n < 0 || n > max_n) continue;
            const RationalPoly divisor =
                two_minus_a.pow(static_cast<unsigned>(m)) * a_plus_1.pow(static_cast<unsigned>(n));
            auto [q, r] = p.quo_rem(divisor);
            if (q.is_zero()) continue;
            if (!sample_nonneg_33(q) || !sample_nonneg_33(r)) continue;
            auto qd = search_rec(q, depth + 1, max_m, max_n, nullptr);
            if (!qd) continue;
            auto rd = search_rec(r, depth + 1, max_m, max_n, nullptr);
            if (!rd) continue;
            if (trace && depth == 0) {
                trace->first_m = m;
                trace->first_n = n;
                trace->first_quotient = q;
            }
            for (auto& t : qd->terms) out.terms.push_back({t.coeff, t.m + m, t.n + n});
            if (!qd->residual.is_zero()) out.terms.push_back({qd->residual, m, n});
            for (auto& t : rd->terms) out.terms.push_back(t);
            out.residual = rd->residual;
            return out;
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<PositivityDecomposition> positivity_division_search(const RationalPoly& p, int max_m,
                                                                  int max_n) {
    return positivity_division_search(p, max_m, max_n, nullptr);
}

std::optional<PositivityDecomposition> positivity_division_search(const RationalPoly& p, int max_m,
                                                                  int max_n,
                                                                  DivisionSearchTrace* trace) {
    if (max_m < 0 || max_m > 8 || max_n < 0 || max_n > 8)
        throw DomainError("division-search exponent caps must lie in [0,8]");
    return search_rec(p, 0, max_m, max_n, trace);
}

}  // namespace csdiv
