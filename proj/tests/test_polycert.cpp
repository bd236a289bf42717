#include "csdiv/polycert.hpp"

#include <random>

#include "doctest.h"

using namespace csdiv;

namespace {

RationalPoly random_poly(std::mt19937_64& rng, int max_degree) {
    std::uniform_int_distribution<int> deg(0, max_degree);
    std::uniform_int_distribution<long long> num(-20, 20);
    std::uniform_int_distribution<long long> den(1, 9);
    const int d = deg(rng);
    std::vector<Rational> c(static_cast<std::size_t>(d) + 1);
    for (auto& x : c) x = Rational(num(rng), den(rng));
    return RationalPoly(std::move(c));
}

}  // namespace

TEST_CASE("poly arithmetic basics") {
    auto p = RationalPoly::from_ints({-1, 0, 1});  // u^2 - 1
    auto d = RationalPoly::from_ints({-1, 1});     // u - 1
    auto [q, r] = p.quo_rem(d);
    CHECK(q == RationalPoly::from_ints({1, 1}));
    CHECK(r.is_zero());

    auto u4 = RationalPoly::from_ints({0, 0, 0, 0, 1});
    CHECK(u4.derivative() == RationalPoly::from_ints({0, 0, 0, 4}));

    CHECK(RationalPoly().degree() == -1);
    CHECK_THROWS_AS(p.quo_rem(RationalPoly()), DomainError);

    CHECK(p.eval(Rational(3, 2)) == Rational(5, 4));
    CHECK(p.eval_double(1.5) == doctest::Approx(1.25));
}

TEST_CASE("quo_rem round-trips on random rational polynomials") {
    std::mt19937_64 rng(42);
    int done = 0;
    while (done < 1000) {
        auto p = random_poly(rng, 12);
        auto a = random_poly(rng, 6);
        if (a.is_zero()) continue;
        ++done;
        auto [q, r] = p.quo_rem(a);
        CHECK(q * a + r == p);
        CHECK(r.degree() < a.degree());
    }
}

TEST_CASE("division of the appendix degree-10 polynomial matches the printed quotient") {
    auto p10 = p10_polynomial();
    auto divisor = RationalPoly({Rational(2), Rational(-1)}, "alpha").pow(3) *
                   RationalPoly({Rational(1), Rational(1)}, "alpha").pow(5);
    auto [q, r] = p10.quo_rem(divisor);
    auto expected = RationalPoly({Rational(BigInt("300831606416")), Rational(BigInt("189041519104")),
                                  Rational(BigInt("20792743232"))},
                                 "alpha");
    CHECK(q == expected);
    CHECK(!r.is_zero());
}

TEST_CASE("quartic certificate on the sixth-derivative numerator") {
    auto t = RationalPoly::from_ints({24565, -34102, 44268, -50960, 43904});
    auto out = quartic_certificate(t);
    REQUIRE(out.conclusive);
    CHECK(out.cert.a4 == Rational(43904));
    CHECK(out.cert.a2 == Rational(88347, 4));
    CHECK(out.cert.a0 == Rational(BigInt("10273158845617"), BigInt("723738624")));
    CHECK(out.cert.shift1 == Rational(-65, 224));
    CHECK(out.cert.shift2 == Rational(BigInt("-1907903"), BigInt("2827104")));
    CHECK(verify_quartic_identity(t, out.cert));
}

TEST_CASE("quartic certificate inconclusive cases") {
    // 8 c2 c4 = 3 c3^2 = 0: the a0 formula degenerates although u^4 + 1 > 0.
    auto pos = RationalPoly::from_ints({1, 0, 0, 0, 1});
    CHECK_FALSE(quartic_certificate(pos).conclusive);

    // (u^2-1)^2 >= 0 but a2 = -2 < 0: the certificate is only sufficient.
    auto sq = RationalPoly::from_ints({1, 0, -2, 0, 1});
    CHECK_FALSE(quartic_certificate(sq).conclusive);

    CHECK_THROWS_AS(quartic_certificate(RationalPoly::from_ints({1, 2, 3})), DomainError);
}

TEST_CASE("sixth-derivative identity for the information generator") {
    auto report = kl_sixth_identity();
    CHECK(report.pass);
    REQUIRE(report.derivs_at_one.size() == 6);
    for (const auto& d : report.derivs_at_one) CHECK(d == 0);
    CHECK(report.quartic == RationalPoly::from_ints({24565, -34102, 44268, -50960, 43904}));
    // Exact value at u = 1.
    CHECK(report.quartic.eval(Rational(1)) == Rational(27675));
    CHECK(report.certificate.conclusive);
    CHECK(report.certificate_verified);
}

TEST_CASE("family bracket coefficients") {
    auto b0 = alpha_fourth_bracket(Rational(0));
    CHECK(b0.coeff(4) == Rational(526848));
    auto b1 = alpha_fourth_bracket(Rational(1));
    CHECK(b1.coeff(4) == Rational(294780));

    // Leading coefficient matches -(alpha+4)(3+alpha)(alpha+2)(-28+11 alpha)^3
    // symbolically.
    auto t = alpha_bracket_coeff_polys();
    auto lead = Rational(-1) * RationalPoly({Rational(4), Rational(1)}, "alpha") *
                RationalPoly({Rational(3), Rational(1)}, "alpha") *
                RationalPoly({Rational(2), Rational(1)}, "alpha") *
                RationalPoly({Rational(-28), Rational(11)}, "alpha").pow(3);
    CHECK(t[4] == lead);
}

TEST_CASE("appendix chain verifies by exact expansion") {
    auto report = alpha_appendix_chain();
    CHECK(report.a2_closed_form);
    CHECK(report.cubic_identity);
    CHECK(report.a0_identity);
    CHECK(report.p10_coefficients);
    CHECK(report.pass());

    // Spot check of the cubic decomposition at alpha = 0:
    // -4207 == -(1532)(2)(1) - 1143.
    CHECK(Rational(-4207) == Rational(-(1532 * 2 * 1) - 1143));
}

TEST_CASE("degree-10 identity and signs") {
    auto report = verify_p10_identity();
    CHECK(report.expansion_matches);
    CHECK(report.signs_ok);
    CHECK(report.pass());

    CHECK(p10_polynomial().coeff(0) == Rational(BigInt("41092635382468")));
    // Second term's linear factor is positive at the left endpoint.
    auto lin2 = RationalPoly({Rational(BigInt("3335882569236")), Rational(BigInt("1295259115248"))}, "alpha");
    CHECK(lin2.eval(Rational(-1)) > 0);
    // Final quadratic at alpha = -1.
    auto q5 = RationalPoly({Rational(BigInt("6746792560920")), Rational(BigInt("11252369540556")),
                            Rational(BigInt("4661891728632"))},
                           "alpha");
    // 4661891728632 - 11252369540556 + 6746792560920, exactly; also equals
    // p10(-1) since every other term of the decomposition vanishes there.
    CHECK(q5.eval(Rational(-1)) == Rational(BigInt("156314748996")));
    CHECK(q5.eval(Rational(-1)) == p10_polynomial().eval(Rational(-1)));
    CHECK(nonneg_on_interval_deg2(q5, Rational(-1), Rational(2)));
}

TEST_CASE("analytic degree-2 interval sign check") {
    const Rational lo(-1), hi(2);
    CHECK(nonneg_on_interval_deg2(RationalPoly(), lo, hi));
    CHECK(nonneg_on_interval_deg2(RationalPoly::from_ints({5}), lo, hi));
    CHECK_FALSE(nonneg_on_interval_deg2(RationalPoly::from_ints({-1}), lo, hi));
    // x^2 - 1: zero at the left endpoint, negative inside.
    CHECK_FALSE(nonneg_on_interval_deg2(RationalPoly::from_ints({-1, 0, 1}), lo, hi));
    // x^2 + x + 1 > 0 everywhere.
    CHECK(nonneg_on_interval_deg2(RationalPoly::from_ints({1, 1, 1}), lo, hi));
    // Concave with nonnegative endpoints: 2 + x - x^2 = (2-x)(x+1).
    CHECK(nonneg_on_interval_deg2(RationalPoly::from_ints({2, 1, -1}), lo, hi));
    // Convex dipping negative inside: x^2 - x.
    CHECK_FALSE(nonneg_on_interval_deg2(RationalPoly::from_ints({0, -1, 1}), lo, hi));
    CHECK_THROWS_AS(nonneg_on_interval_deg2(RationalPoly::from_ints({0, 0, 0, 1}), lo, hi),
                    DomainError);
}

TEST_CASE("division search certifies the appendix polynomial") {
    DivisionSearchTrace trace;
    auto dec = positivity_division_search(p10_polynomial(), 8, 8, &trace);
    REQUIRE(dec.has_value());
    CHECK(trace.first_m == 3);
    CHECK(trace.first_n == 5);
    CHECK(trace.first_quotient ==
          RationalPoly({Rational(BigInt("300831606416")), Rational(BigInt("189041519104")),
                        Rational(BigInt("20792743232"))},
                       "alpha"));
    CHECK(dec->expand() == p10_polynomial());
    for (const auto& term : dec->terms) {
        CHECK(term.coeff.degree() <= 2);
        CHECK(nonneg_on_interval_deg2(term.coeff, Rational(-1), Rational(2)));
    }
    CHECK(nonneg_on_interval_deg2(dec->residual, Rational(-1), Rational(2)));

    // Dense exact evaluation of the certified polynomial over [-1,2].
    for (int j = 0; j <= 300; ++j) {
        const Rational x = Rational(-1) + Rational(3 * j, 300);
        CHECK(p10_polynomial().eval(x) >= 0);
    }
}

TEST_CASE("division search simple cases") {
    // (2-a)(a+1): a single pure-product term with zero residual.
    auto prod = RationalPoly({Rational(2), Rational(1), Rational(-1)}, "alpha");
    auto dec = positivity_division_search(prod);
    REQUIRE(dec.has_value());
    REQUIRE(dec->terms.size() == 1);
    CHECK(dec->terms[0].m == 1);
    CHECK(dec->terms[0].n == 1);
    CHECK(dec->terms[0].coeff == RationalPoly::from_ints({1}));
    CHECK(dec->residual.is_zero());

    // a^2 - 5 is negative on part of [-1,2]: the search must fail.
    CHECK_FALSE(positivity_division_search(RationalPoly({Rational(-5), Rational(0), Rational(1)}, "alpha"))
                    .has_value());

    CHECK_THROWS_AS(positivity_division_search(p10_polynomial(), 9, 9), DomainError);
}
