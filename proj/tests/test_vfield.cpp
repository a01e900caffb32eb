#include <doctest.h>

#include "gen.hpp"
#include "lieweight/errors.hpp"
#include "lieweight/expression.hpp"

using namespace lieweight;

namespace {

const Chart xyz({"x", "y", "z"});

Poly P(const char* s) { return parse_poly(s, xyz); }
VectorField V(const char* s) { return parse_vf(s, xyz); }

}  // namespace

TEST_CASE("lie bracket") {
  CHECK(lie_bracket(V("dx"), V("dy")).is_zero());
  CHECK(lie_bracket(V("dx + (2*x + y)*dz"), V("dy + (x + x^2)*dz")) == V("2*x*dz"));
  CHECK(lie_bracket(V("dx"), V("dy + x*dz")) == V("dz"));
  CHECK_THROWS_AS(lie_bracket(V("dx"), parse_vf("du", Chart({"u"}))), DimensionMismatch);
}

TEST_CASE("apply") {
  CHECK(apply(V("dx + x*dz"), P("z")) == P("x"));
  CHECK(apply(V("x*dy + dz"), P("1")).is_zero());
  CHECK(apply(V("dx + (2*x + y)*dz"), P("z - x^2 - x*y")).is_zero());
}

TEST_CASE("apply_word") {
  CHECK(apply_word(DiffOpWord({V("dx"), V("dx")}), RatFunc(P("x^2"))) == RatFunc(P("2")));
  VectorField x = V("dx + x*dz");
  CHECK(apply_word(DiffOpWord({x}), RatFunc(P("z"))) == RatFunc(P("x")));
  CHECK(apply_word(DiffOpWord({x, x}), RatFunc(P("z"))) == RatFunc(P("1")));
  // Rightmost factor acts first.
  CHECK(apply_word(DiffOpWord({V("dx"), V("x*dy")}), RatFunc(P("y"))) == RatFunc(P("1")));
  CHECK(apply_word(DiffOpWord({V("x*dy"), V("dx")}), RatFunc(P("y"))).is_zero());
}

TEST_CASE("restriction to a coordinate subspace") {
  Submanifold xaxis(3, {0}, {0, 0, 0});
  CHECK(restrict_to(RatFunc(P("x^2 + y*z")), xaxis) == RatFunc(P("x^2")));
  CHECK(restrict_to(RatFunc(P("y*x + z^3")), xaxis).is_zero());
  RatFunc f(P("1"), P("1 + x"));
  CHECK(restrict_to(f, xaxis) == f);
  CHECK_THROWS_AS(restrict_to(RatFunc(P("1"), P("y")), xaxis), PreconditionError);
}

TEST_CASE("parser") {
  CHECK(V("dx + (2*x + y)*dz") == VectorField::from_polys({P("1"), P("0"), P("2*x + y")}));
  CHECK(V("dy") == VectorField::coordinate(3, 1));
  CHECK(P("z - x^2 - x*y") == P("z") - P("x")* P("x") - P("x") * P("y"));
  CHECK(P("-x^2") == P("0 - x*x"));
  CHECK(P("1/2*x") == Poly::variable(3, 0) * Rational(1, 2));
  CHECK(P("2^3") == P("8"));
  CHECK(V("x*dy*3") == V("3*x*dy"));

  SUBCASE("errors carry positions") {
    try {
      P("x + \n  w");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
      CHECK(e.column() == 3);
    }
    CHECK_THROWS_AS(P("x +"), ParseError);
    CHECK_THROWS_AS(P("(x"), ParseError);
    CHECK_THROWS_AS(P("x $ y"), ParseError);
    CHECK_THROWS_AS(P("dx"), ParseError);
    CHECK_THROWS_AS(V("x"), ParseError);
    CHECK_THROWS_AS(V("dx + 1"), ParseError);
    CHECK_THROWS_AS(V("dx*dy"), ParseError);
    CHECK_THROWS_AS(V("dx^2"), ParseError);
    CHECK_THROWS_AS(P("x/y"), ParseError);
    CHECK_THROWS_AS(P("1/0"), ParseError);
  }
  SUBCASE("d-prefixed chart variables shadow fields") {
    Chart c({"d", "dx", "x"});
    CHECK(parse_poly("dx", c) == Poly::variable(3, 1));
    CHECK(parse_vf("dd", c) == VectorField::coordinate(3, 0));
  }
}

TEST_CASE("printer") {
  CHECK(to_string(P("z - x^2 - x*y"), xyz) == "z - x^2 - x*y");
  CHECK(to_string(P("z - 1/2*x^2"), xyz) == "z - 1/2*x^2");
  CHECK(to_string(Poly(3), xyz) == "0");
  CHECK(to_string(V("dx + (2*x + y)*dz"), xyz) == "dx + (2*x + y)*dz");
  CHECK(to_string(V("-2*x*dz"), xyz) == "-2*x*dz");
  CHECK(to_string(VectorField(3), xyz) == "0");
  RatFunc r(P("y"), P("1 + x"));
  CHECK(to_string(r, xyz) == "(y)/(1 + x)");
  CHECK(parse_ratfunc(to_string(r, xyz), xyz) == r);
}

TEST_CASE("property: round trip") {
  std::vector<const char*> corpus = {"dx + x*dz", "dy", "dz", "dx + (2*x + y)*dz", "dy + (x + x^2)*dz",
                                     "2*x*dz", "-1/3*y^2*dx - z*dy"};
  for (const char* s : corpus) {
    VectorField v = V(s);
    CHECK(V(to_string(v, xyz).c_str()) == v);
  }
  for (const char* s : {"z - x^2 - x*y", "z - 1/2*x^2", "x", "-7/2"}) {
    Poly p = P(s);
    CHECK(P(to_string(p, xyz).c_str()) == p);
  }
  testgen::Gen g(21);
  for (int it = 0; it < 200; ++it) {
    VectorField v = g.vf(3, 3);
    CHECK(parse_vf(to_string(v, xyz), xyz) == v);
    Poly p = g.poly(3, 3, 6);
    CHECK(parse_poly(to_string(p, xyz), xyz) == p);
    RatFunc r(g.poly(3, 2), g.poly(3, 2) + Poly::constant(3, 5));
    if (!r.den().is_zero()) {
      VectorField w = r * v;
      CHECK(parse_vf_rational(to_string(w, xyz), xyz) == w);
    }
  }
}

TEST_CASE("property: bracket identities") {
  testgen::Gen g(22);
  for (int it = 0; it < 100; ++it) {
    VectorField x = g.vf(3, 2), y = g.vf(3, 2), z = g.vf(3, 2);
    CHECK(lie_bracket(x, y) == -lie_bracket(y, x));
    VectorField jac = lie_bracket(x, lie_bracket(y, z)) + lie_bracket(y, lie_bracket(z, x)) +
                      lie_bracket(z, lie_bracket(x, y));
    CHECK(jac.is_zero());
    Poly f = g.poly(3, 2), h = g.poly(3, 2);
    CHECK(apply(x, f * h) == apply(x, f) * h + f * apply(x, h));
    RatFunc rf(f);
    CHECK(apply_word(DiffOpWord({x, y}), rf) - apply_word(DiffOpWord({y, x}), rf) ==
          apply(lie_bracket(x, y), rf));
  }
}

TEST_CASE("property: rational-coefficient brackets") {
  testgen::Gen g(23);
  for (int it = 0; it < 30; ++it) {
    RatFunc s(Poly::constant(3, 1), g.poly(3, 1) + Poly::constant(3, 2));
    if (s.den().is_zero()) continue;
    VectorField x = s * g.vf(3, 1), y = g.vf(3, 1), z = g.vf(3, 1);
    VectorField jac = lie_bracket(x, lie_bracket(y, z)) + lie_bracket(y, lie_bracket(z, x)) +
                      lie_bracket(z, lie_bracket(x, y));
    CHECK(jac.is_zero());
  }
}
