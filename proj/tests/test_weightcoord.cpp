#include <doctest.h>

#include "examples.hpp"
#include "gen.hpp"
#include "lieweight/errors.hpp"
#include "lieweight/weighted.hpp"

using namespace lieweight;
using examples::vf;

namespace {

RatFunc R(const char* s) { return parse_ratfunc(s, examples::xyz()); }

std::vector<std::string> coordinate_strings(const WeightedChart& w, const Chart& c) {
  std::vector<std::string> out;
  for (const auto& x : w.coordinates) out.push_back(to_string(x, c));
  return out;
}

// (V^s f)|_N by plain repeated application, independent of the memoized path.
RatFunc word_value(const std::vector<VectorField>& frame, const Monomial& s, const RatFunc& f,
                   const Submanifold& n) {
  std::vector<VectorField> factors;
  for (std::size_t b = 0; b < s.size(); ++b)
    for (unsigned e = 0; e < s[b]; ++e) factors.push_back(frame[b]);
  return restrict_to(apply_word(DiffOpWord(factors), f), n);
}

RatFunc power_product(const WeightedChart& w, const Monomial& s) {
  RatFunc out = RatFunc::constant(w.n, 1);
  const std::size_t k0 = w.base_dimension();
  for (std::size_t b = 0; b < s.size(); ++b)
    for (unsigned e = 0; e < s[b]; ++e) out *= w.coordinates[k0 + b];
  return out;
}

}  // namespace

TEST_CASE("frame selection") {
  Submanifold o = Submanifold::origin(3);
  SUBCASE("example 1") {
    Filtration f = examples::example1();
    Frame fr = select_frame(f, o, check_clean(f, o));
    REQUIRE(fr.fields.size() == 3);
    CHECK(fr.fields[0] == vf("dx + x*dz"));
    CHECK(fr.fields[1] == vf("dy"));
    CHECK(fr.fields[2] == vf("dz"));
    CHECK(fr.levels == std::vector<int>{1, 2, 3});
  }
  SUBCASE("example 2") {
    Filtration f = examples::example2();
    Frame fr = select_frame(f, o, check_clean(f, o));
    REQUIRE(fr.fields.size() == 3);
    CHECK(fr.fields[0] == vf("dx + (2*x + y)*dz"));
    CHECK(fr.fields[1] == vf("dy + (x + x^2)*dz"));
    CHECK(fr.fields[2] == vf("dz"));
    CHECK(fr.levels == std::vector<int>{1, 2, 4});
  }
  SUBCASE("abelian coordinate filtration") {
    Filtration f(3, {{vf("dx")}, {vf("dy")}, {}});
    Frame fr = select_frame(f, o, check_clean(f, o));
    CHECK(fr.fields == std::vector<VectorField>{vf("dx"), vf("dy"), vf("dz")});
  }
  SUBCASE("requires cleanness") {
    Filtration f(3, {{vf("x*dy")}, {}});
    Submanifold ax = examples::x_axis();
    CHECK_THROWS_AS(select_frame(f, ax, check_clean(f, ax)), PreconditionError);
    CHECK_THROWS_AS(weighted_coordinates(f, ax), PreconditionError);
  }
}

TEST_CASE("chart normalization") {
  SUBCASE("examples need no change") {
    for (const Filtration& f : {examples::example1(), examples::example2()}) {
      Submanifold o = Submanifold::origin(3);
      NormalizedFrame nf = normalize_chart(select_frame(f, o, check_clean(f, o)), o);
      CHECK(nf.coordinates == std::vector<RatFunc>{R("x"), R("y"), R("z")});
    }
  }
  SUBCASE("scaled field on a line") {
    Chart c({"x"});
    Frame fr{{parse_vf("2*dx", c)}, {1}, {0}};
    NormalizedFrame nf = normalize_chart(fr, Submanifold::origin(1));
    CHECK(nf.coordinates[0] == parse_ratfunc("1/2*x", c));
  }
  SUBCASE("pairing depending on the base") {
    Chart c({"y", "u", "v"});
    Submanifold n(3, {0}, {0, 0, 0});
    Frame fr{{parse_vf("du", c), parse_vf("(1 + y)*dv", c)}, {1, 1}, {0, 1}};
    NormalizedFrame nf = normalize_chart(fr, n);
    CHECK(nf.coordinates[0] == parse_ratfunc("u", c));
    CHECK(nf.coordinates[1] == parse_ratfunc("v/(1 + y)", c));
    for (std::size_t a = 0; a < 2; ++a)
      for (std::size_t b = 0; b < 2; ++b)
        CHECK(restrict_to(apply(fr.fields[a], nf.coordinates[b]), n) == RatFunc::constant(3, a == b ? 1 : 0));
  }
  SUBCASE("singular pairing") {
    Chart c({"y", "u"});
    Frame fr{{parse_vf("y*du", c)}, {1}, {0}};
    CHECK_THROWS_AS(normalize_chart(fr, Submanifold(2, {0}, {0, 0})), PreconditionError);
  }
}

TEST_CASE("filtration degree") {
  std::vector<VectorField> frame = {vf("dx + x*dz"), vf("dy"), vf("dz")};
  std::vector<int> w = {1, 2, 3};
  Submanifold o = Submanifold::origin(3);
  CHECK(filtration_degree(R("z"), frame, w, o, 3) == 2);
  CHECK(filtration_degree(R("x"), frame, w, o, 3) == 1);
  CHECK(filtration_degree(R("y"), frame, w, o, 3) == 2);
  CHECK(filtration_degree(R("z - 1/2*x^2"), frame, w, o, 3) == 3);
  CHECK(filtration_degree(R("1 + x"), frame, w, o, 3) == 0);
  CHECK(filtration_degree(R("x*y"), frame, w, o, 3) == 3);
}

TEST_CASE("weighted coordinates: example 1") {
  const Chart& c = examples::xyz();
  WeightedChart w = weighted_coordinates(examples::example1(), Submanifold::origin(3), c);
  CHECK(w.weights == std::vector<int>{1, 2, 3});
  CHECK(coordinate_strings(w, c) == std::vector<std::string>{"x", "y", "z - 1/2*x^2"});
  CHECK(w.slot_names == std::vector<std::string>{"x", "y", "z"});
  // lambda = -1/2 on x^2.
  bool seen = false;
  for (const auto& rec : w.records)
    if (rec.s == Monomial{2, 0, 0}) {
      CHECK(rec.chi == RatFunc::constant(3, Rational(-1, 2)));
      CHECK(rec.c == 2);
      seen = true;
    }
  CHECK(seen);
}

TEST_CASE("weighted coordinates: example 2") {
  const Chart& c = examples::xyz();
  WeightedChart w = weighted_coordinates(examples::example2(), Submanifold::origin(3), c);
  CHECK(w.weights == std::vector<int>{1, 2, 4});
  CHECK(coordinate_strings(w, c) == std::vector<std::string>{"x", "y", "z - x^2 - x*y"});
  // mu on x*y and lambda on x^2 are both -1.
  int found = 0;
  for (const auto& rec : w.records) {
    if (rec.s == Monomial{1, 1, 0}) {
      CHECK(rec.chi == RatFunc::constant(3, -1));
      ++found;
    }
    if (rec.s == Monomial{2, 0, 0}) {
      CHECK(rec.chi == RatFunc::constant(3, -1));
      ++found;
    }
  }
  CHECK(found == 2);
}

TEST_CASE("normalization constants equal s! by direct application") {
  for (const Filtration& f : {examples::example1(), examples::example2()}) {
    Submanifold o = Submanifold::origin(3);
    WeightedChart w = weighted_coordinates(f, o);
    CHECK_FALSE(w.records.empty());
    for (const auto& rec : w.records) {
      Rational fact = 1;
      for (std::size_t b = 0; b < rec.s.size(); ++b) fact *= factorial(rec.s[b]);
      CHECK(rec.c == fact);
      CHECK(word_value(w.frame.fields, rec.s, power_product(w, rec.s), o) == RatFunc::constant(3, fact));
    }
  }
}

TEST_CASE("order two needs no correction") {
  WeightedChart w = weighted_coordinates(examples::heisenberg(), Submanifold::origin(3));
  CHECK(w.weights == std::vector<int>{1, 1, 2});
  CHECK(w.coordinates == std::vector<RatFunc>{R("x"), R("y"), R("z")});
  CHECK(w.records.empty());
}

TEST_CASE("weighted coordinates along a line") {
  const Chart& c = examples::xyz();
  WeightedChart w = weighted_coordinates(examples::axis_example(), examples::x_axis(), c);
  CHECK(w.weights == std::vector<int>{0, 1, 3});
  CHECK(w.coordinates[0] == R("x"));
  CHECK(w.coordinates[1] == R("y/(1 + x)"));
  CHECK(w.coordinates[2] == R("z - y^2/(2 + 2*x)"));
  for (std::size_t k = 0; k < 3; ++k) {
    RatFunc back = to_weighted(w.coordinates[k], w);
    CHECK(back == RatFunc(Poly::variable(3, k)));
  }
  CHECK(*weighted_degree(R("y"), w).degree == 1);
  CHECK(*weighted_degree(R("z"), w).degree == 2);
  CHECK(*weighted_degree(w.coordinates[2], w).degree == 3);
}

TEST_CASE("weighted degree") {
  WeightedChart w = weighted_coordinates(examples::example1(), Submanifold::origin(3));
  CHECK(*weighted_degree(R("z - 1/2*x^2"), w).degree == 3);
  CHECK(*weighted_degree(R("z"), w).degree == 2);
  CHECK(*weighted_degree(R("5"), w).degree == 0);
  CHECK(*weighted_degree(R("x*y"), w).degree == 3);
  CHECK_FALSE(weighted_degree(RatFunc(3), w).degree);
  auto d = weighted_degree(R("z"), w);
  CHECK(d.witness == Monomial{2, 0, 0});
}

TEST_CASE("vector field filtration degree") {
  WeightedChart w = weighted_coordinates(examples::example1(), Submanifold::origin(3));
  CHECK(*vf_filtration_degree(vf("dy"), w) == -2);
  CHECK(*vf_filtration_degree(vf("dz"), w) == -3);
  CHECK(*vf_filtration_degree(vf("dx + x*dz"), w) == -1);
  // x~ d/dx~ for the first slot is x * X in the original chart.
  CHECK(*vf_filtration_degree(vf("x*dx + x^2*dz"), w) == 0);
  CHECK(*vf_filtration_degree(vf("y*dy"), w) == 0);
  CHECK(*vf_filtration_degree(vf("dx"), w) == -2);
  CHECK_FALSE(vf_filtration_degree(VectorField(3), w));
}

TEST_CASE("homogeneous approximation") {
  WeightedChart w = weighted_coordinates(examples::example1(), Submanifold::origin(3));
  CHECK(homogeneous_approx(R("z"), w) == R("1/2*x^2"));
  CHECK(homogeneous_approx(R("z - 1/2*x^2"), w) == R("z"));
  CHECK(homogeneous_approx(R("x*y"), w) == R("x*y"));
  CHECK_THROWS_AS(homogeneous_approx(RatFunc(3), w), std::invalid_argument);
  CHECK(homogeneous_approx(vf("dz"), w) == vf("dz"));
  CHECK(homogeneous_approx(vf("dy"), w) == vf("dy"));
  CHECK(homogeneous_approx(vf("dx + x*dz"), w) == vf("dx"));
  CHECK(homogeneous_approx(vf("dx"), w) == vf("-x*dz"));
  CHECK(homogeneous_part(vf("dx"), w, -1) == vf("dx"));
}

TEST_CASE("property: weighted chart invariants") {
  const std::vector<std::pair<Filtration, Submanifold>> cases = {
      {examples::example1(), Submanifold::origin(3)},
      {examples::example2(), Submanifold::origin(3)},
      {examples::axis_example(), examples::x_axis()}};
  for (const auto& [f, n] : cases) {
    WeightedChart w = weighted_coordinates(f, n);
    const std::size_t k0 = w.base_dimension();
    // Coordinates invert, and corrections lie in I^2 and lower-weight variables.
    for (std::size_t k = 0; k < 3; ++k) CHECK(to_weighted(w.coordinates[k], w) == RatFunc(Poly::variable(3, k)));
    for (std::size_t a = k0; a < 3; ++a) {
      const RatFunc diff = w.coordinates[a] - w.normalized.coordinates[a - k0];
      if (!diff.is_zero()) CHECK(*weighted_degree(diff, w).degree >= 2);
      CHECK(*weighted_degree(w.coordinates[a], w).degree == w.weights[a]);
      for (std::size_t b = k0; b < 3; ++b)
        CHECK(*weighted_degree(w.coordinates[a] * w.coordinates[b], w).degree == w.weights[a] + w.weights[b]);
    }
    // Generators of H_{-i} have filtration degree >= -i.
    for (int i = 1; i <= f.order(); ++i)
      for (const auto& g : f.generators(i)) CHECK(*vf_filtration_degree(g, w) >= -i);
    // Monomials of degree >= i in I^2 split into lower-degree factors.
    const auto fw = w.fiber_weights();
    for (int i = 2; i <= f.order(); ++i) {
      for (const Monomial& s : weighted_indices(fw, 2 * f.order() + 1, 2)) {
        int ws = 0;
        for (std::size_t b = 0; b < s.size(); ++b) ws += fw[b] * static_cast<int>(s[b]);
        if (ws < i) continue;
        bool split = false;
        for (std::size_t b = 0; b < s.size() && !split; ++b) {
          if (s[b] == 0) continue;
          Monomial rest = s;
          rest[b] -= 1;
          const int d1 = *weighted_degree(w.coordinates[k0 + b], w).degree;
          const int d2 = *weighted_degree(power_product(w, rest), w).degree;
          for (int j = 1; j < i && !split; ++j) split = d1 >= j && d2 >= i - j;
        }
        CHECK(split);
      }
    }
  }
}

TEST_CASE("property: bracket degrees add") {
  testgen::Gen g(41);
  Filtration f = examples::example2();
  WeightedChart w = weighted_coordinates(f, Submanifold::origin(3));
  for (int it = 0; it < 60; ++it) {
    int i = g.uniform(1, 4), j = g.uniform(1, 4);
    const auto& gi = f.generators(i);
    const auto& gj = f.generators(j);
    VectorField x = RatFunc(g.poly(3, 1)) * gi[static_cast<std::size_t>(g.uniform(0, static_cast<int>(gi.size()) - 1))];
    VectorField y = RatFunc(g.poly(3, 1)) * gj[static_cast<std::size_t>(g.uniform(0, static_cast<int>(gj.size()) - 1))];
    auto dx = vf_filtration_degree(x, w), dy = vf_filtration_degree(y, w);
    auto dxy = vf_filtration_degree(lie_bracket(x, y), w);
    if (!dx || !dy || !dxy) continue;
    CHECK(*dx >= -i);
    CHECK(*dxy >= std::max(*dx + *dy, -w.order));
  }
}
