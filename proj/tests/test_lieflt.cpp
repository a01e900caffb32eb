#include <doctest.h>

#include "examples.hpp"
#include "gen.hpp"

using namespace lieweight;
using examples::vf;

namespace {

std::vector<VectorField> vfs(std::initializer_list<const char*> s) {
  std::vector<VectorField> out;
  for (const char* e : s) out.push_back(vf(e));
  return out;
}

}  // namespace

TEST_CASE("filtration generators are cumulative") {
  Filtration f = examples::example2();
  CHECK(f.order() == 4);
  CHECK(f.generators(0).empty());
  CHECK(f.generators(1).size() == 1);
  CHECK(f.generators(2).size() == 2);
  CHECK(f.generators(3).size() == 3);
  CHECK(f.generators(4).size() == 6);
  CHECK(f.new_at(2) == std::vector<std::size_t>{1});
  CHECK(f.new_at(4) == std::vector<std::size_t>{3, 4, 5});
  CHECK(f.max_degree() == 2);
  CHECK(f.default_degree_bound() == 8);
  CHECK_THROWS_AS(Filtration(3, {}), std::invalid_argument);
}

TEST_CASE("module membership") {
  SUBCASE("x dx in <dx>") {
    auto gens = vfs({"dx"});
    auto r = module_membership(vf("x*dx"), gens, 1);
    CHECK(r.verdict == Verdict::Pass);
    REQUIRE(r.coefficients.size() == 1);
    CHECK(r.coefficients[0] == parse_poly("x", examples::xyz()));
    CHECK(verify_certificate(vf("x*dx"), gens, r));
  }
  SUBCASE("dz not in the Heisenberg distribution") {
    auto gens = vfs({"dx", "dy + x*dz"});
    auto r = module_membership(vf("dz"), gens, 4);
    CHECK(r.verdict == Verdict::Fail);
    REQUIRE(r.witness);
    CHECK(*r.witness == std::vector<Rational>{0, 0, 0});
    CHECK(verify_certificate(vf("dz"), gens, r));
  }
  SUBCASE("2x dz against the Martinet pair") {
    auto gens = vfs({"dx + (2*x + y)*dz", "dy + (x + x^2)*dz"});
    auto r = module_membership(vf("2*x*dz"), gens, 2);
    CHECK(r.verdict != Verdict::Pass);
    if (r.verdict == Verdict::Fail) CHECK(verify_certificate(vf("2*x*dz"), gens, r));
  }
  SUBCASE("inconclusive at a too small bound") {
    // x^3 dx = x^3 * dx needs a cubic coefficient.
    auto gens = vfs({"dx"});
    auto r = module_membership(vf("x^3*dx"), gens, 2);
    CHECK(r.verdict == Verdict::Inconclusive);
    CHECK(r.reason == "degree_bound");
    CHECK(r.coefficients.empty());
    CHECK_FALSE(r.witness);
    CHECK(module_membership(vf("x^3*dx"), gens, 3).verdict == Verdict::Pass);
  }
  SUBCASE("vanishing generator only pointwise") {
    // x dz in <x^2 dz>: the origin is no obstruction, x = 1 is.
    auto gens = vfs({"x^2*dz"});
    auto r = module_membership(vf("x*dz"), gens, 3);
    CHECK(r.verdict == Verdict::Inconclusive);
  }
}

TEST_CASE("bracket compatibility") {
  SUBCASE("Martinet passes at bound 2") {
    auto rep = check_bracket_compat(examples::example2(), 2);
    CHECK(rep.verdict == Verdict::Pass);
    Filtration f = examples::example2();
    for (const auto& c : rep.checks) {
      CHECK(c.result.verdict == Verdict::Pass);
      CHECK(verify_certificate(c.bracket, f.generators(c.target_level), c.result));
    }
  }
  SUBCASE("broken filtration fails at (1,1) with a pointwise witness") {
    Filtration f = examples::broken();
    auto rep = check_bracket_compat(f, f.default_degree_bound());
    CHECK(rep.verdict == Verdict::Fail);
    bool found = false;
    for (const auto& c : rep.checks) {
      if (c.result.verdict != Verdict::Fail) continue;
      CHECK(c.i == 1);
      CHECK(c.j == 1);
      CHECK(c.bracket == vf("dz"));
      CHECK(verify_certificate(c.bracket, f.generators(c.target_level), c.result));
      found = true;
    }
    CHECK(found);
  }
  SUBCASE("abelian coordinate filtration") {
    Filtration f(3, {vfs({"dx"}), vfs({"dx", "dy"}), {}});
    CHECK(check_bracket_compat(f, 2).verdict == Verdict::Pass);
  }
  SUBCASE("example 1 and Heisenberg") {
    CHECK(check_bracket_compat(examples::example1(), 4).verdict == Verdict::Pass);
    CHECK(check_bracket_compat(examples::heisenberg(), 4).verdict == Verdict::Pass);
  }
}

TEST_CASE("cleanness and weights") {
  Submanifold origin = Submanifold::origin(3);
  SUBCASE("example 1") {
    auto c = check_clean(examples::example1(), origin);
    CHECK(c.verdict == Verdict::Pass);
    CHECK(c.ranks == std::vector<std::size_t>{0, 1, 2, 3});
    CHECK(weight_sequence(c.ranks) == std::vector<int>{1, 2, 3});
  }
  SUBCASE("example 2") {
    auto c = check_clean(examples::example2(), origin);
    CHECK(c.verdict == Verdict::Pass);
    CHECK(c.ranks == std::vector<std::size_t>{0, 1, 2, 2, 3});
    CHECK(weight_sequence(c.ranks) == std::vector<int>{1, 2, 4});
  }
  SUBCASE("N = M") {
    Submanifold all(3, {0, 1, 2}, {1, 2, 3});
    auto c = check_clean(examples::example2(), all);
    CHECK(c.verdict == Verdict::Pass);
    CHECK(c.ranks == std::vector<std::size_t>{3, 3, 3, 3, 3});
    CHECK(weight_sequence(c.ranks).empty());
  }
  SUBCASE("positive-dimensional N") {
    auto c = check_clean(examples::axis_example(), examples::x_axis());
    CHECK(c.verdict == Verdict::Pass);
    CHECK(c.ranks == std::vector<std::size_t>{1, 2, 2, 3});
    CHECK(weight_sequence(c.ranks) == std::vector<int>{1, 3});
  }
  SUBCASE("rank jump along N") {
    Filtration f(3, {vfs({"x*dy"}), {}});
    auto c = check_clean(f, examples::x_axis());
    CHECK(c.verdict == Verdict::Fail);
    CHECK(c.failing_level == 1);
    REQUIRE(c.witness);
    CHECK((*c.witness)[0] != 0);
    CHECK(c.ranks[1] == 1);
    CHECK(c.generic_ranks[1] == 2);
  }
  CHECK_THROWS_AS(weight_sequence(std::vector<std::size_t>{0, 2, 1}), std::invalid_argument);
}

TEST_CASE("restrict distribution") {
  SUBCASE("dx, dy to y = 0") {
    Submanifold n(2, {0}, {0, 0});
    Chart xy({"x", "y"});
    std::vector<VectorField> gens = {parse_vf("dx", xy), parse_vf("dy", xy)};
    auto r = restrict_distribution(gens, n, 2);
    REQUIRE(r.size() == 1);
    CHECK(r[0] == parse_vf("dx", Chart({"x"})));
  }
  SUBCASE("dx + y dz to z = 0 has no tangent combination") {
    // On z = 0 the dz-component y*u vanishes only for u = 0 mod z.
    Submanifold n(3, {0, 1}, {0, 0, 0});
    auto r = restrict_distribution(vfs({"dx + y*dz"}), n, 3);
    CHECK(r.empty());
  }
  SUBCASE("dx + y dz to y = 0") {
    Submanifold n(3, {0, 2}, {0, 0, 0});
    auto r = restrict_distribution(vfs({"dx + y*dz"}), n, 2);
    REQUIRE(r.size() == 1);
    CHECK(r[0] == parse_vf("dx", Chart({"x", "z"})));
  }
  SUBCASE("already tangent generators restrict to themselves") {
    Submanifold n(3, {0, 1}, {0, 0, 0});
    auto r = restrict_distribution(vfs({"dx + z*dy", "x*dy"}), n, 2);
    Chart xy({"x", "y"});
    REQUIRE(r.size() == 2);
    CHECK(r[0] == parse_vf("dx", xy));
    CHECK(r[1] == parse_vf("x*dy", xy));
  }
}

TEST_CASE("product distribution") {
  Chart x({"x"}), u({"u"});
  std::vector<VectorField> a = {parse_vf("dx", x)}, b = {parse_vf("du", u)};
  auto p = product_distribution(x, a, u, b);
  CHECK(p.chart.names() == std::vector<std::string>{"x", "u"});
  REQUIRE(p.generators.size() == 2);
  CHECK(p.generators[0] == parse_vf("dx", p.chart));
  CHECK(p.generators[1] == parse_vf("du", p.chart));
  auto q = product_distribution(x, {}, u, b);
  REQUIRE(q.generators.size() == 1);
  CHECK(q.generators[0] == parse_vf("du", q.chart));
  CHECK_THROWS_AS(product_distribution(x, a, x, a), std::invalid_argument);

  Filtration m = examples::example2();
  auto mp = product_distribution(examples::xyz(), m.generators(2), u, b);
  REQUIRE(mp.generators.size() == 3);
  CHECK(mp.generators[1] == parse_vf("dy + (x + x^2)*dz", mp.chart));
  // Brackets on the product are computed factorwise.
  CHECK(lie_bracket(mp.generators[0], mp.generators[1]) == parse_vf("2*x*dz", mp.chart));
  CHECK(lie_bracket(mp.generators[0], mp.generators[2]).is_zero());
}

TEST_CASE("property: certificates re-verify") {
  testgen::Gen g(31);
  for (int it = 0; it < 60; ++it) {
    std::vector<VectorField> gens = {g.vf(3, 1), g.vf(3, 1)};
    VectorField v = (it % 2 == 0) ? RatFunc(g.poly(3, 1)) * gens[0] + RatFunc(g.poly(3, 1)) * gens[1] : g.vf(3, 2);
    auto r = module_membership(v, gens, 2);
    if (r.verdict != Verdict::Inconclusive) CHECK(verify_certificate(v, gens, r));
    if (it % 2 == 0) CHECK(r.verdict != Verdict::Fail);
  }
}

TEST_CASE("property: ranks monotone and weight multiplicities") {
  testgen::Gen g(32);
  for (int it = 0; it < 40; ++it) {
    std::vector<VectorField> l1 = {g.vf(3, 1)}, l2 = {g.vf(3, 1)};
    Filtration f(3, {l1, l2, {}});
    auto c = check_clean(f, Submanifold::origin(3));
    for (std::size_t i = 1; i < c.ranks.size(); ++i) CHECK(c.ranks[i] >= c.ranks[i - 1]);
    CHECK(c.ranks.back() == 3);
    auto w = weight_sequence(c.ranks);
    for (int i = 1; i <= 3; ++i)
      CHECK(static_cast<std::size_t>(std::count(w.begin(), w.end(), i)) ==
            c.ranks[static_cast<std::size_t>(i)] - c.ranks[static_cast<std::size_t>(i - 1)]);
  }
}
