#include "doctest.h"
#include "helpers.hpp"
#include "oracle.hpp"

using namespace testing;

TEST_SUITE("polynomial") {
  TEST_CASE("rationals print and parse") {
    CHECK(to_string(Rational(3, 4)) == "3/4");
    CHECK(to_string(parse_rational("-6/3")) == "-2");
    CHECK(parse_rational("-10/4") == Rational(-5, 2));
    CHECK_THROWS_AS(parse_rational("1/0"), Error);
    CHECK_THROWS_AS(parse_rational("1/"), Error);
    CHECK_THROWS_AS(parse_rational("abc"), Error);
  }

  TEST_CASE("weights must be positive") {
    CHECK_THROWS_AS(Weights(std::vector<int>{1, 0}), Error);
    CHECK_THROWS_AS(Weights(std::vector<int>{}), Error);
  }

  TEST_CASE("minus infinity is below every degree") {
    WDegree none, zero(0L), two(2L);
    CHECK(none < zero);
    CHECK(zero < two);
    CHECK(none == WDegree::minus_infinity());
    CHECK_THROWS_AS(none.value(), Error);
    CHECK(weighted_degree(Polynomial(2), Weights{1, 1}).is_minus_infinity());
  }

  TEST_CASE("arithmetic") {
    Polynomial x = Polynomial::variable(2, 0), y = Polynomial::variable(2, 1);
    Polynomial p = (x + y) * (x - y);
    CHECK(p == x * x - y * y);
    CHECK((p - p).is_zero());
    CHECK((x + y).pow(3) == x.pow(3) + Rational(3) * x * x * y + Rational(3) * x * y * y + y.pow(3));
    CHECK(Polynomial::constant(2, 5).is_constant());
    CHECK(p.coefficient({0, 2}) == -1);
    CHECK_THROWS_AS(x + Polynomial::variable(3, 0), Error);
  }

  TEST_CASE("weighted degree and top component") {
    Weights w{1, 1};
    Polynomial f = poly("x^4 + x^2*y^2", xy());
    CHECK(weighted_degree(f, w) == 4L);
    CHECK(top_component(f, w) == f);
    CHECK(is_weighted_homogeneous(f, w));

    Polynomial cusp = poly("x^2 + y^3", xy());
    CHECK(weighted_degree(cusp, Weights{3, 2}) == 6L);
    CHECK(is_weighted_homogeneous(cusp, Weights{3, 2}));
    CHECK_FALSE(is_weighted_homogeneous(cusp, w));
    CHECK(top_component(cusp, w) == poly("y^3", xy()));

    Polynomial g = poly("x*z + x^2 - 7", xyz());
    CHECK(homogeneous_component(g, Weights{1, 1, 1}, 0) == Polynomial::constant(3, -7));
    CHECK_THROWS_AS(top_component(Polynomial(3), Weights{1, 1, 1}), Error);
  }

  TEST_CASE("product rule and substitution agree with evaluation") {
    oracle::Random rnd(11);
    Weights w{1, 2, 1};
    for (int trial = 0; trial < 40; ++trial) {
      Polynomial a = rnd.polynomial(w, 5, 5), b = rnd.polynomial(w, 4, 4);
      for (std::size_t i = 0; i < 3; ++i) CHECK((a * b).derivative(i) == a.derivative(i) * b + a * b.derivative(i));

      std::vector<Polynomial> images{rnd.polynomial(w, 3, 3), rnd.polynomial(w, 2, 3), rnd.polynomial(w, 2, 2)};
      std::vector<Rational> at{Rational(rnd.integer(-3, 3)), Rational(1, 2), Rational(rnd.integer(-2, 2))};
      std::vector<Rational> inner;
      for (const auto& im : images) inner.push_back(im.evaluate(at));
      CHECK(a.substitute(images).evaluate(at) == a.evaluate(inner));
    }
  }

  TEST_CASE("embedding shifts variables") {
    Polynomial x = Polynomial::variable(2, 0);
    Polynomial e = x.embed(4, 2);
    CHECK(e == Polynomial::variable(4, 2));
  }
}
