#include "support.hpp"

#include "hydroclose/multipoly.hpp"
#include "hydroclose/rational.hpp"

#include <doctest.h>

#include <cmath>

using namespace hydroclose;
using hctest::Rng;

namespace {

const std::vector<std::string> kNu = indexed_names("nu", 3);

MultiPoly nu(const std::string& text) { return parse_poly(text, kNu); }

}  // namespace

TEST_SUITE("poly") {

TEST_CASE("add examples") {
    CHECK((nu("nu1") + nu("-nu1")).is_zero());
    CHECK((nu("nu1") + nu("-nu1")).terms().empty());
    CHECK(nu("nu1*nu2") + nu("nu1*nu2") == nu("2*nu1*nu2"));
    CHECK(nu("nu1*nu3 + nu2^2/2") + nu("nu2*nu3^2") == nu("nu1*nu3 + nu2^2/2 + nu2*nu3^2"));
}

TEST_CASE("mul examples") {
    const MultiPoly p = nu("3*nu1^2 - nu2*nu3/7 + 1/2");
    CHECK(p * MultiPoly::constant(3, Rational(1)) == p);
    CHECK(nu("nu2") * nu("nu3^2") == nu("nu2*nu3^2"));
    // (ν₁+ν₂)² term by term.
    MultiPoly expect(3);
    expect.add_term({2, 0, 0}, Rational(1));
    expect.add_term({1, 1, 0}, Rational(2));
    expect.add_term({0, 2, 0}, Rational(1));
    CHECK(pow(nu("nu1 + nu2"), 2) == expect);
}

TEST_CASE("diff examples") {
    CHECK(diff(nu("nu3^4/4"), 2) == nu("nu3^3"));
    CHECK(diff(MultiPoly::constant(3, make_rational(5, 3)), 1).is_zero());
    CHECK(diff(nu("nu2*nu3^2"), 1) == nu("nu3^2"));
}

TEST_CASE("eval examples") {
    const std::vector<Rational> x{Rational(1), Rational(2), Rational(3)};
    CHECK(eval(nu("nu1*nu3 + nu2^2/2"), x) == 5);
    const std::vector<Rational> zero(3, Rational(0));
    CHECK(eval(nu("7/3 + nu1*nu2 - nu3^5"), zero) == make_rational(7, 3));
    const std::vector<Rational> x3{Rational(0), Rational(0), Rational(2)};
    CHECK(eval(nu("nu3^4/4"), x3) == 4);
}

TEST_CASE("homogeneous degree") {
    CHECK(homogeneous_degree(nu("nu2*nu3^2")) == 3);
    CHECK_FALSE(homogeneous_degree(nu("nu1 + nu1^2")).has_value());
    CHECK(homogeneous_degree(MultiPoly(3)) == kAnyDegree);
}

TEST_CASE("substitute examples") {
    const MultiPoly p = nu("nu1*nu3 + nu2^2/2");
    std::map<std::size_t, MultiPoly> id;
    for (std::size_t i = 0; i < 3; ++i) id[i] = MultiPoly::variable(3, i);
    CHECK(substitute(p, id) == p);

    // μ₁⁽²⁾ = ν₁ν₂ with ν₂ -> t², t the second slot of (ν₁, t).
    const std::vector<std::string> names{"nu1", "t"};
    const MultiPoly mu1 = parse_poly("nu1*nu2", indexed_names("nu", 2));
    CHECK(substitute(mu1, {{1, parse_poly("t^2", names)}}) == parse_poly("nu1*t^2", names));
}

TEST_CASE("text round trip and canonical order") {
    const MultiPoly p = nu("nu3^4/4 + nu1*nu3 - 2/3*nu2^2 + 1");
    const std::string s = to_string(p, kNu);
    CHECK(s == to_string(parse_poly(s, kNu), kNu));
    CHECK(to_string(MultiPoly(3), kNu) == "0");
    // Graded order: the quartic term prints first.
    CHECK(s.rfind("1/4", 0) == 0);
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse_poly("nu1 / nu2", kNu), std::invalid_argument);
    CHECK_THROWS_AS(parse_poly("nu4", kNu), std::invalid_argument);
    CHECK_THROWS_AS(parse_poly("nu1 +", kNu), std::invalid_argument);
    CHECK_THROWS_AS(parse_poly("(nu1", kNu), std::invalid_argument);
    CHECK_THROWS(parse_poly("nu1/0", kNu));
}

TEST_CASE("shape errors") {
    const MultiPoly p = MultiPoly::variable(2, 0), q = MultiPoly::variable(3, 0);
    CHECK_THROWS_AS(p + q, std::invalid_argument);
    CHECK_THROWS_AS(p * q, std::invalid_argument);
    CHECK_THROWS_AS(diff(p, 2), std::out_of_range);
    CHECK_THROWS_AS(MultiPoly::variable(2, 2), std::out_of_range);
    const std::vector<Rational> short_point{Rational(1)};
    CHECK_THROWS_AS(eval(p, short_point), std::invalid_argument);
}

TEST_CASE("rational helpers") {
    CHECK(parse_rational(" -7/2 ") == make_rational(-7, 2));
    CHECK(parse_rational("6/4") == make_rational(3, 2));
    CHECK(to_string(make_rational(4, 2)) == "2");
    CHECK_THROWS(parse_rational("1.5"));
    CHECK_THROWS(make_rational(1, 0));
    CHECK(binomial(6, 2) == 15);
    CHECK(rpow(make_rational(2, 3), -2) == make_rational(9, 4));
    CHECK_THROWS_AS(rpow(Rational(0), -1), std::domain_error);
    CHECK(exact_root(make_rational(-27, 8), 3) == make_rational(-3, 2));
    CHECK_FALSE(exact_root(Rational(2), 2).has_value());
    CHECK_FALSE(exact_root(Rational(-4), 2).has_value());
}

TEST_CASE("ring axioms on random polynomials") {
    Rng rng(101);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = static_cast<std::size_t>(rng.integer(1, 4));
        const MultiPoly p = rng.poly(n, 3, 4), q = rng.poly(n, 3, 4), r = rng.poly(n, 3, 4);
        REQUIRE(p + q == q + p);
        REQUIRE(p * q == q * p);
        REQUIRE((p + q) + r == p + (q + r));
        REQUIRE((p * q) * r == p * (q * r));
        REQUIRE(p * (q + r) == p * q + p * r);
        REQUIRE((p - p).is_zero());
        // Degrees up to 6 from the cubic factors.
        REQUIRE((p * q).total_degree() <= 6);
    }
}

TEST_CASE("product agrees with pointwise evaluation") {
    Rng rng(102);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = static_cast<std::size_t>(rng.integer(1, 4));
        const MultiPoly p = rng.poly(n, 3, 5), q = rng.poly(n, 3, 5);
        const auto x = rng.rational_point(n);
        REQUIRE(eval(p * q, x) == eval(p, x) * eval(q, x));
        REQUIRE(eval(p + q, x) == eval(p, x) + eval(q, x));
    }
}

TEST_CASE("Leibniz rule") {
    Rng rng(103);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = static_cast<std::size_t>(rng.integer(1, 4));
        const MultiPoly p = rng.poly(n, 3, 4), q = rng.poly(n, 3, 4);
        const std::size_t k = static_cast<std::size_t>(rng.integer(0, static_cast<int>(n) - 1));
        REQUIRE(diff(p * q, k) == diff(p, k) * q + p * diff(q, k));
    }
}

TEST_CASE("eval of substitute equals eval at substituted point") {
    Rng rng(104);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = static_cast<std::size_t>(rng.integer(1, 3));
        const std::size_t target = static_cast<std::size_t>(rng.integer(1, 3));
        const MultiPoly p = rng.poly(n, 3, 4);
        std::vector<MultiPoly> images;
        for (std::size_t i = 0; i < n; ++i) images.push_back(rng.poly(target, 2, 3));
        const auto x = rng.rational_point(target);
        std::vector<Rational> y;
        for (const auto& im : images) y.push_back(eval(im, x));
        REQUIRE(eval(compose(p, images), x) == eval(p, y));
    }
}

TEST_CASE("euler operator weights each term by its degree") {
    Rng rng(105);
    for (int trial = 0; trial < 100; ++trial) {
        const MultiPoly p = rng.poly(3, 4, 5);
        MultiPoly expect(3);
        for (std::size_t k = 0; k < 3; ++k) expect += MultiPoly::variable(3, k) * diff(p, k);
        REQUIRE(euler_operator(p) == expect);
    }
}

TEST_CASE("serialize parse serialize is a fixed point") {
    Rng rng(106);
    const auto names = indexed_names("x", 4);
    for (int trial = 0; trial < 300; ++trial) {
        const MultiPoly p = rng.poly(4, 5, 6);
        const std::string s = to_string(p, names);
        const MultiPoly back = parse_poly(s, names);
        REQUIRE(back == p);
        REQUIRE(to_string(back, names) == s);
    }
}

TEST_CASE("compiled polynomial matches exact evaluation") {
    Rng rng(107);
    for (int trial = 0; trial < 200; ++trial) {
        const MultiPoly p = rng.poly(3, 5, 6);
        const CompiledPoly c(p);
        const auto x = rng.rational_point(3, 9, 4);
        std::vector<double> xd;
        for (const auto& v : x) xd.push_back(v.get_d());
        const double exact = eval(p, x).get_d();
        REQUIRE(std::abs(c(xd.data()) - exact) <= 1e-12 * (1.0 + std::abs(exact)) * 100);
        REQUIRE(std::abs(eval(p, std::span<const double>(xd)) - exact) <= 1e-10 * (1.0 + std::abs(exact)));
    }
}

TEST_CASE("embed shifts variables") {
    const MultiPoly p = nu("nu1*nu2^2 + 3");
    const MultiPoly e = embed(p, 5, 2);
    CHECK(e.coefficient({0, 0, 1, 2, 0}) == 1);
    CHECK(e.constant_term() == 3);
    CHECK_THROWS(embed(p, 4, 2));
}

}  // TEST_SUITE
