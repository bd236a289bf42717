#include "csdiv/generator.hpp"

#include <cmath>

#include "doctest.h"

using namespace csdiv;

namespace {

std::vector<double> standard_eval_grid() {
    std::vector<double> g;
    for (int i = 0; i <= 40; ++i) g.push_back(0.1 * std::pow(100.0, i / 40.0));  // [0.1, 10]
    return g;
}

Generator rel_info(long long num, long long den = 1) {
    GeneratorParams p;
    p.alpha = Rational(num, den);
    return builtin("rel_info_alpha", p);
}

}  // namespace

TEST_CASE("builtin coefficient tables are exact") {
    auto c = coefficients(builtin("kl"));
    REQUIRE(c.exact.has_value());
    CHECK(c.exact->c2 == Rational(1, 2));
    CHECK(c.exact->w2 == Rational(1, 3));
    CHECK(c.exact->c4 == Rational(1, 36));
    CHECK(*c.exact->w4 == Rational(17, 45));

    auto j = coefficients(builtin("jeffreys"));
    CHECK(j.exact->c2 == Rational(1));
    CHECK(j.exact->w2 == Rational(1, 2));
    CHECK(j.exact->c4 == Rational(1, 12));
    CHECK(*j.exact->w4 == Rational(1, 2));

    auto x = coefficients(builtin("chi2"));
    CHECK(x.exact->c2 == Rational(1));
    CHECK(x.exact->w2 == Rational(1));
    CHECK(x.exact->c4 == Rational(0));
    CHECK(!x.exact->w4.has_value());  // undefined exactly when c4 = 0
    CHECK(!x.w4.has_value());

    auto r = coefficients(builtin("reverse_kl"));
    CHECK(r.exact->w2 == Rational(2, 3));
    CHECK(r.exact->c4 == Rational(1, 36));
    CHECK(*r.exact->w4 == Rational(28, 45));

    auto cap = coefficients(builtin("capacitory"));
    CHECK(cap.exact->c2 == Rational(1, 4));
    CHECK(cap.exact->c4 == Rational(1, 96));
    CHECK(*cap.exact->w4 == Rational(1, 2));

    auto h = coefficients(builtin("hellinger"));
    CHECK(h.exact->c2 == Rational(1, 8));
    CHECK(h.exact->c4 == Rational(1, 128));
    CHECK(*h.exact->w4 == Rational(1, 2));
}

TEST_CASE("family coefficients match the closed forms across an alpha grid") {
    for (int i = -20; i <= 40; ++i) {
        const Rational a(i, 20);  // -1 .. 2 step 0.05
        if (a == 0 || a == 1) continue;
        auto c = coefficients(rel_info(i, 20));
        REQUIRE(c.exact.has_value());
        CHECK(c.exact->c2 == Rational(1, 2));
        CHECK(c.exact->w2 == (a + 1) / 3);
        CHECK(c.exact->c4 == (a + 1) * (2 - a) / 72);
        REQUIRE(c.exact->w4.has_value());
        CHECK(*c.exact->w4 == (Rational(17) + 11 * a) / 45);
    }
}

TEST_CASE("generator evaluation basics") {
    CHECK(builtin("kl").eval(1.0) == 0.0);
    CHECK(builtin("jeffreys").eval(1.0) == 0.0);
    CHECK_THROWS_AS(builtin("kl").eval(0.0), DomainError);
    CHECK_THROWS_AS(builtin("nope"), DomainError);
    CHECK_THROWS_AS(rel_info(0), DomainError);
    CHECK_THROWS_AS(rel_info(1), DomainError);
    GeneratorParams p;
    p.nu = 1;
    CHECK_THROWS_AS(builtin("triangular_nu", p), DomainError);
    CHECK_THROWS_AS(builtin("triangular_nu"), DomainError);
    CHECK_THROWS_AS(builtin("rel_info_alpha"), DomainError);
    CHECK_THROWS_AS(coefficients(builtin("total_variation")), DegenerateGeneratorError);
    p.nu = 2;
    CHECK_THROWS_AS(coefficients(builtin("triangular_nu", p)), DegenerateGeneratorError);
}

TEST_CASE("tilde subtracts the tangent at 1") {
    auto t = tilde(builtin("kl"));
    for (double u : standard_eval_grid())
        CHECK(t.eval(u) == doctest::Approx(u - 1.0 - std::log(u)).epsilon(1e-14));
    CHECK(t.eval(2.0) >= 0.0);
    CHECK(t.eval(0.5) >= 0.0);

    // f'(1) = 0 already: tilde is the identity transformation.
    auto c = tilde(builtin("chi2"));
    CHECK(c.eval(3.0) == builtin("chi2").eval(3.0));

    // u log u at u = 2: subtracting the tangent with f'(1) = 1 leaves 2 log 2 - 1.
    auto r = tilde(builtin("reverse_kl"));
    CHECK(r.eval(2.0) == doctest::Approx(2.0 * std::log(2.0) - 1.0).epsilon(1e-15));
}

TEST_CASE("reverse swaps the generator through u f(1/u)") {
    auto rk = reverse(builtin("kl"));
    for (double u : standard_eval_grid())
        CHECK(rk.eval(u) == doctest::Approx(u * std::log(u)).epsilon(1e-14));
    // Exact derivative table at 1 matches the built-in reversed generator.
    auto direct = builtin("reverse_kl");
    for (int k = 0; k <= 6; ++k)
        CHECK((*rk.exact_derivs_at_one())[k] == (*direct.exact_derivs_at_one())[k]);

    auto rchi = reverse(builtin("chi2"));
    for (double u : standard_eval_grid())
        CHECK(rchi.eval(u) == doctest::Approx((1.0 - u) * (1.0 - u) / u).epsilon(1e-14));

    // V's generator is symmetric up to the linear shift.
    auto rtv = reverse(builtin("total_variation"));
    CHECK(rtv.eval(3.0) == doctest::Approx(2.0));
    CHECK(rtv.eval(0.25) == doctest::Approx(0.75));

    // Boundary limits swap.
    CHECK(rk.limit_at_zero() == ExtReal(0.0));
    CHECK(rk.slope_at_infinity().is_infinite());
}

TEST_CASE("reverse derivative oracle matches finite differences") {
    auto rk = reverse(builtin("kl"));  // = u log u, whose derivatives are known
    for (double u : {0.3, 0.9, 2.5}) {
        CHECK(rk.deriv(1, u) == doctest::Approx(std::log(u) + 1.0).epsilon(1e-12));
        CHECK(rk.deriv(2, u) == doctest::Approx(1.0 / u).epsilon(1e-12));
        CHECK(rk.deriv(5, u) == doctest::Approx(-6.0 / (u * u * u * u)).epsilon(1e-12));
    }
}

TEST_CASE("reverse is an involution on the evaluation grid") {
    for (const char* name : {"kl", "chi2", "hellinger", "jeffreys", "capacitory"}) {
        auto f = builtin(name);
        auto rr = reverse(reverse(f));
        for (double u : standard_eval_grid())
            CHECK(rr.eval(u) == doctest::Approx(f.eval(u)).epsilon(1e-12));
    }
}

TEST_CASE("symmetrize produces self-reversed generators") {
    auto s = symmetrize(builtin("kl"));
    auto j = builtin("jeffreys");
    for (double u : standard_eval_grid()) {
        CHECK(s.eval(u) == doctest::Approx(j.eval(u)).epsilon(1e-12));
        // f_S(u) = u f_S(1/u)
        CHECK(s.eval(u) == doctest::Approx(u * s.eval(1.0 / u)).epsilon(1e-12));
    }
    // A symmetric generator doubles.
    auto st = symmetrize(builtin("triangular"));
    for (double u : standard_eval_grid())
        CHECK(st.eval(u) == doctest::Approx(2.0 * builtin("triangular").eval(u)).epsilon(1e-12));
    // (u-1)^2 symmetrizes to (u-1)^2 (1 + 1/u).
    auto sc = symmetrize(builtin("chi2"));
    for (double u : standard_eval_grid())
        CHECK(sc.eval(u) ==
              doctest::Approx((u - 1.0) * (u - 1.0) * (1.0 + 1.0 / u)).epsilon(1e-12));
}

TEST_CASE("linear terms do not change the coefficients") {
    for (const char* name : {"kl", "reverse_kl", "jeffreys", "hellinger", "capacitory", "triangular"}) {
        auto c0 = coefficients(builtin(name));
        auto c1 = coefficients(tilde(builtin(name)));
        REQUIRE(c1.exact.has_value());
        CHECK(c0.exact->c2 == c1.exact->c2);
        CHECK(c0.exact->w2 == c1.exact->w2);
        CHECK(c0.exact->c4 == c1.exact->c4);
        CHECK(c0.exact->w4 == c1.exact->w4);
    }
}

TEST_CASE("validate_derivatives on closed forms") {
    std::vector<double> grid = standard_eval_grid();

    auto kl_report = validate_derivatives(builtin("kl"), grid, 1e-6);
    CHECK(kl_report.pass);
    CHECK(kl_report.min_second_derivative > 0.0);

    auto chi_report = validate_derivatives(builtin("chi2"), grid, 1e-6);
    CHECK(chi_report.pass);
    for (const auto& row : chi_report.orders)
        if (row.order >= 3) CHECK(row.max_deviation == 0.0);  // polynomial: exact zeros

    auto ri = validate_derivatives(rel_info(3, 2), grid, 1e-6);
    CHECK(ri.pass);

    GeneratorParams p;
    p.nu = 2;
    CHECK(validate_derivatives(builtin("triangular_nu", p), grid, 1e-6).pass);
    CHECK(validate_derivatives(builtin("capacitory"), grid, 1e-6).pass);
    CHECK(validate_derivatives(reverse(builtin("kl")), grid, 1e-6).pass);
}

TEST_CASE("evaluation-only generators get a numeric-grade oracle") {
    auto g = Generator::from_eval("user_kl", [](double u) { return -std::log(u); },
                                  ExtReal::infinity(), ExtReal(0.0), true);
    CHECK(g.grade() == DerivativeGrade::numeric);
    CHECK(g.deriv(1, 2.0) == doctest::Approx(-0.5).epsilon(1e-9));
    CHECK(g.deriv(2, 2.0) == doctest::Approx(0.25).epsilon(1e-6));
    CHECK(g.deriv(3, 1.5) == doctest::Approx(-2.0 / std::pow(1.5, 3)).epsilon(1e-4));
    CHECK(!g.exact_derivs_at_one().has_value());
}

TEST_CASE("expression generators") {
    auto f = expression_generator("u - 1 - logu");
    for (double u : standard_eval_grid())
        CHECK(f.eval(u) == doctest::Approx(u - 1.0 - std::log(u)).epsilon(1e-14));
    auto c = coefficients(f);
    REQUIRE(c.exact.has_value());
    CHECK(c.exact->c2 == Rational(1, 2));  // same orders >= 2 as the information generator
    CHECK(c.exact->w2 == Rational(1, 3));
    CHECK(c.exact->c4 == Rational(1, 36));
    CHECK(f.limit_at_zero().is_infinite());
    CHECK(f.grade() == DerivativeGrade::closed_form);

    auto q = expression_generator("0.5u^2 - u + 0.5");
    CHECK(q.eval(3.0) == doctest::Approx(2.0));
    auto qc = coefficients(q);
    CHECK(qc.exact->c2 == Rational(1, 2));
    CHECK(qc.exact->w2 == Rational(1));

    auto s = expression_generator("1 - sqrtu + 0.5*u - 0.5");
    CHECK(s.eval(4.0) == doctest::Approx(1.0 - 2.0 + 2.0 - 0.5));
    CHECK(s.deriv(2, 1.0) == doctest::Approx(0.25));

    auto ul = expression_generator("ulogu");
    CHECK(ul.eval(2.0) == doctest::Approx(2.0 * std::log(2.0)));
    CHECK(ul.slope_at_infinity().is_infinite());

    CHECK_THROWS_AS(expression_generator("u"), DomainError);        // f(1) != 0
    CHECK_THROWS_AS(expression_generator("logu - u + 1"), DomainError);  // f(0+) = -inf
    CHECK_THROWS_AS(expression_generator("x + 1"), DomainError);
    CHECK_THROWS_AS(expression_generator(""), DomainError);
}

TEST_CASE("tsallis and cressie-read reparametrize the family") {
    GeneratorParams p;
    p.alpha = Rational(1, 2);
    auto t = builtin("tsallis", p);
    // T_{1/2}: (u^{1/2}-1)/(alpha-1) = 2(1 - sqrt(u))
    for (double u : standard_eval_grid())
        CHECK(t.eval(u) == doctest::Approx(2.0 * (1.0 - std::sqrt(u))).epsilon(1e-12));

    p.alpha = Rational(2);
    auto cr = builtin("cressie_read", p);  // = family member at -2
    auto direct = rel_info(-2);
    for (double u : standard_eval_grid())
        CHECK(cr.eval(u) == doctest::Approx(direct.eval(u)).epsilon(1e-12));
}
