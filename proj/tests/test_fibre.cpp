#include "doctest.h"
#include "fibera/fibre.hpp"
#include "helpers.hpp"
#include "oracle.hpp"

using namespace testing;

namespace {

std::vector<Rational> unit(std::size_t n, std::size_t i) {
  std::vector<Rational> v(n, Rational(0));
  v[i] = 1;
  return v;
}

}  // namespace

TEST_SUITE("fibre") {
  TEST_CASE("closed on a fibre") {
    PolyMap F = conic_pair();
    CHECK(closed_on_fibre(form("x*d[y]"), F, pt({1, 0})));
    PolyMap S = sphere();
    CHECK_FALSE(closed_on_fibre(form("x*d[y]"), S, pt({1})));
    CHECK(closed_on_fibre(form("(x^2 + y^2 + z^2 - 1)*x*d[y]"), S, pt({1})));
    CHECK_FALSE(closed_on_fibre(form("x"), S, pt({1})));
    CHECK(closed_on_fibre(form("x^2 + y^2 + z^2"), S, pt({1})));
  }

  TEST_CASE("bounded ideal membership") {
    PolyMap F = conic_pair();
    FibrePoint y = pt({1, 0});
    auto a = bounded_ideal_membership(F.components()[0] - Polynomial::constant(3, 1), F, y);
    REQUIRE(a.has_value());
    CHECK((*a)[0] == Polynomial::constant(3, 1));
    CHECK((*a)[1].is_zero());

    auto b = bounded_ideal_membership(poly("x^2*z^2 - 1"), F, y);
    REQUIRE(b.has_value());
    CHECK((*b)[0] == poly("x*z + 1"));
    CHECK((*b)[1].is_zero());

    CHECK_FALSE(bounded_ideal_membership(poly("1"), F, y).has_value());
    CHECK(fibre_ideal(F, y).normal_form(poly("1")) == poly("1"));
  }

  TEST_CASE("exact on a fibre") {
    PolyMap F = conic_pair();
    FibrePoint y = pt({1, 0});
    auto dx = exact_on_fibre(form("d[x]"), F, y);
    REQUIRE(dx.witness.has_value());
    CHECK(dx.witness->primitive == form("x"));
    CHECK(dx.complete);

    KForm ideal = form("(x*z - 1)*x*d[y]");
    auto m = exact_on_fibre(ideal, F, y);
    REQUIRE(m.witness.has_value());
    CHECK(apply_exact_witness(*m.witness, shifted_components(F, y), 1) == ideal);

    auto none = exact_on_fibre(form("z*d[x] - x*d[z]"), F, y);
    CHECK_FALSE(none.witness.has_value());
    CHECK(none.complete);

    // a 1-form on the sphere with dim Sing = 0 <= n - q - k = 1
    CHECK(exact_on_fibre(form("x*d[y]"), sphere(), pt({1})).complete);
  }

  TEST_CASE("fibre classes") {
    PolyMap F = conic_pair();
    InfinityBasis B = infinity_basis(F);
    FibrePoint y = pt({1, 0});

    FibreClass c2 = fibre_class(B.forms[1], F, y, B);
    CHECK(c2.lambda == unit(5, 1));
    CHECK(c2.witness.primitive.is_zero());

    FibreClass cdx = fibre_class(form("d[x]"), F, y, B);
    CHECK(cdx.lambda == std::vector<Rational>(5, Rational(0)));
    CHECK(cdx.witness.primitive == form("x"));
    CHECK(verify_decomposition(form("d[x]"), cdx, F, B));

    KForm w = form("x^2*(z*d[x] - x*d[z])");
    FibreClass c = fibre_class(w, F, y, B);
    CHECK(verify_decomposition(w, c, F, B));
    KForm rest = w;
    for (std::size_t i = 0; i < 5; ++i) rest -= B.forms[i] * c.lambda[i];
    CHECK(exact_on_fibre(rest, F, y).witness.has_value());

    FibreClass bad = c;
    bad.witness.primitive += form("x");
    CHECK_FALSE(verify_decomposition(w, bad, F, B));
    CHECK_THROWS_AS(fibre_class(form("d[x]*d[y]"), F, y, B), Error);
  }

  TEST_CASE("fibre classes are linear") {
    PolyMap F = conic_pair();
    InfinityBasis B = infinity_basis(F);
    oracle::Random rnd(51);
    FibrePoint y = pt({1, 2});
    for (int trial = 0; trial < 6; ++trial) {
      KForm a = rnd.form(F.weights(), 1, 5, 5), b = rnd.form(F.weights(), 1, 5, 5);
      Rational s = rnd.coefficient();
      auto la = fibre_class(a, F, y, B).lambda, lb = fibre_class(b, F, y, B).lambda;
      auto lsum = fibre_class(a * s + b, F, y, B).lambda;
      for (std::size_t i = 0; i < 5; ++i) CHECK(lsum[i] == s * la[i] + lb[i]);
    }
  }

  TEST_CASE("relatively closed") {
    PolyMap S = sphere();
    CHECK(relative_closed(form("x*d[y]*d[z]"), S));
    CHECK_FALSE(relative_closed(form("x*d[y]"), S));
    PolyMap F = conic_pair();
    KForm f1df2 = F.components()[0] * exterior_derivative(KForm(F.components()[1]));
    CHECK(relative_closed(f1df2, F));
  }

  TEST_CASE("relatively exact homogeneous forms") {
    PolyMap S = sphere();
    KForm df = exterior_derivative(KForm(S.tops()[0]));
    auto t = relative_exact_homogeneous(df, S);
    REQUIRE(t.witness.has_value());
    CHECK(t.witness->eta[0] == form("1"));
    CHECK(t.witness->primitive.is_zero());

    auto dxy = relative_exact_homogeneous(form("y*d[x] + x*d[y]"), S);
    REQUIRE(dxy.witness.has_value());
    CHECK(dxy.witness->primitive == form("x*y"));

    // a relatively exact form is relatively closed, so the answer must agree with that test
    for (const auto& w : {form("x*d[y] - y*d[x]"), form("x*y*(2*x*d[x] + 2*y*d[y] + 2*z*d[z]) + 3*z^3*d[z]")}) {
      auto r = relative_exact_homogeneous(w, S);
      CHECK(r.complete);
      CHECK(r.witness.has_value() == relative_closed(w, S));
      if (r.witness) CHECK(exterior_derivative(r.witness->primitive) + wedge(r.witness->eta[0], df) == w);
    }
  }

  TEST_CASE("relative decomposition") {
    PolyMap F = conic_pair();
    InfinityBasis B = infinity_basis(F);

    auto d1 = relative_decompose(B.forms[0], F, B);
    CHECK(d1.a[0] == Polynomial::constant(2, 1));
    for (std::size_t i = 1; i < 5; ++i) CHECK(d1.a[i].is_zero());
    CHECK(d1.primitive.is_zero());
    CHECK(d1.eta[0].is_zero());

    auto ddx = relative_decompose(form("d[x]"), F, B);
    for (const auto& a : ddx.a) CHECK(a.is_zero());
    CHECK(ddx.primitive == form("x"));

    KForm w = F.components()[0] * B.forms[1];
    auto d = relative_decompose(w, F, B);
    CHECK(d.a[1] == Polynomial::variable(2, 0));
    CHECK(verify_decomposition(w, d, F, B));

    auto bad = d;
    bad.primitive += form("x");
    CHECK_FALSE(verify_decomposition(w, bad, F, B));
    CHECK_THROWS_AS(relative_decompose(form("d[x]"), make_map({"x^4 + x^2*y^2"}, xy(), {1, 1}), B), PreconditionError);
  }

  TEST_CASE("subalgebra membership") {
    PolyMap C = make_map({"x^2 + y^2"}, xy(), {1, 1});
    CHECK(is_in_subalgebra(poly("x^2 + y^2", xy()), C) == Polynomial::variable(1, 0));
    CHECK_FALSE(is_in_subalgebra(poly("x", xy()), C).has_value());
    PolyMap F = conic_pair();
    auto A = is_in_subalgebra(poly("x^2*z^2 + 1"), F);
    REQUIRE(A.has_value());
    CHECK(*A == parse_polynomial("t1^2 + 1", target_names(2)));
  }

  TEST_CASE("vanishing") {
    auto r = verify_vanishing(sphere(), 1, pt({1}), 4);
    CHECK(r.closed_dimension > 0);
    CHECK(r.all_exact());
    auto line = verify_vanishing(make_map({"x"}, xy(), {1, 1}), 1, pt({0}), 4);
    CHECK(line.all_exact());
    auto empty = verify_vanishing(sphere(), 1, pt({1}), 0);
    CHECK(empty.space_dimension == 0);
    CHECK(empty.closed_dimension == 0);
    CHECK(empty.all_exact());
    CHECK_THROWS_AS(verify_vanishing(conic_pair(), 1, pt({1, 0}), 3), PreconditionError);
    CHECK_THROWS_AS(verify_vanishing(sphere(), 0, pt({1}), 3), PreconditionError);
  }
}
