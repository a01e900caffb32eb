#include "lieweight/osculating.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "lieweight/errors.hpp"

namespace lieweight {

// ---------------------------------------------------------------------------
// Graded Lie algebras

GradedLieAlg::GradedLieAlg(std::vector<int> levels, int order) : levels_(std::move(levels)), order_(order) {
  for (std::size_t k = 0; k < levels_.size(); ++k) {
    if (levels_[k] < 1 || levels_[k] > order_) throw std::invalid_argument("GradedLieAlg: level out of range");
    if (k > 0 && levels_[k] < levels_[k - 1]) throw std::invalid_argument("GradedLieAlg: levels must be sorted");
  }
  c_.assign(dimension(), std::vector<LieVector>(dimension(), zero()));
}

std::vector<std::size_t> GradedLieAlg::graded_dimensions() const {
  std::vector<std::size_t> d(static_cast<std::size_t>(order_), 0);
  for (int l : levels_) ++d[static_cast<std::size_t>(l - 1)];
  return d;
}

std::vector<std::size_t> GradedLieAlg::basis_of_level(int i) const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < levels_.size(); ++k)
    if (levels_[k] == i) out.push_back(k);
  return out;
}

void GradedLieAlg::set_bracket(std::size_t a, std::size_t b, const LieVector& v) {
  if (v.size() != dimension()) throw DimensionMismatch("set_bracket: vector has the wrong length");
  c_.at(a).at(b) = v;
  LieVector neg = v;
  for (auto& x : neg) x = -x;
  c_.at(b).at(a) = std::move(neg);
}

LieVector GradedLieAlg::bracket(const LieVector& x, const LieVector& y) const {
  if (x.size() != dimension() || y.size() != dimension()) throw DimensionMismatch("bracket: vector has the wrong length");
  LieVector out = zero();
  for (std::size_t a = 0; a < dimension(); ++a) {
    if (is_zero(x[a])) continue;
    for (std::size_t b = 0; b < dimension(); ++b) {
      if (is_zero(y[b])) continue;
      const Rational s = x[a] * y[b];
      const LieVector& c = c_[a][b];
      for (std::size_t k = 0; k < dimension(); ++k)
        if (!is_zero(c[k])) out[k] += s * c[k];
    }
  }
  return out;
}

LieVector GradedLieAlg::basis_vector(std::size_t k) const {
  LieVector v = zero();
  v.at(k) = 1;
  return v;
}

bool GradedLieAlg::is_antisymmetric() const {
  for (std::size_t a = 0; a < dimension(); ++a)
    for (std::size_t b = 0; b < dimension(); ++b)
      for (std::size_t k = 0; k < dimension(); ++k)
        if (c_[a][b][k] != -c_[b][a][k]) return false;
  return true;
}

bool GradedLieAlg::satisfies_jacobi() const {
  for (std::size_t a = 0; a < dimension(); ++a)
    for (std::size_t b = 0; b < dimension(); ++b)
      for (std::size_t c = 0; c < dimension(); ++c) {
        const LieVector ea = basis_vector(a), eb = basis_vector(b), ec = basis_vector(c);
        LieVector s = bracket(ea, bracket(eb, ec));
        const LieVector t = bracket(eb, bracket(ec, ea)), u = bracket(ec, bracket(ea, eb));
        for (std::size_t k = 0; k < dimension(); ++k)
          if (!is_zero(s[k] + t[k] + u[k])) return false;
      }
  return true;
}

bool GradedLieAlg::is_graded() const {
  for (std::size_t a = 0; a < dimension(); ++a)
    for (std::size_t b = 0; b < dimension(); ++b)
      for (std::size_t k = 0; k < dimension(); ++k)
        if (!is_zero(c_[a][b][k]) && levels_[k] != levels_[a] + levels_[b]) return false;
  return true;
}

bool GradedLieAlg::is_abelian() const {
  for (const auto& row : c_)
    for (const auto& v : row)
      for (const auto& x : v)
        if (!is_zero(x)) return false;
  return true;
}

LieVector bch(const GradedLieAlg& l, const LieVector& x, const LieVector& y) {
  LieVector out = l.zero();
  // Dynkin: sum over n and (r_1, s_1), ..., (r_n, s_n) with r_i + s_i > 0 of
  // (-1)^{n-1} / n * [X^{r_1} Y^{s_1} ... X^{r_n} Y^{s_n}] / (L prod r_i! s_i!),
  // the bracket taken right-nested over the word of length L.
  std::vector<std::pair<int, int>> seq;
  std::function<void(int, int)> walk = [&](int remaining, int total) {
    if (remaining == 0) {
      std::vector<const LieVector*> word;
      Rational denom = total;
      for (auto [r, s] : seq) {
        for (int k = 0; k < r; ++k) word.push_back(&x);
        for (int k = 0; k < s; ++k) word.push_back(&y);
        denom *= factorial(static_cast<unsigned>(r)) * factorial(static_cast<unsigned>(s));
      }
      LieVector v = *word.back();
      for (std::size_t k = word.size() - 1; k-- > 0;) v = l.bracket(*word[k], v);
      const int n = static_cast<int>(seq.size());
      Rational coeff = Rational(n % 2 == 1 ? 1 : -1) / (Rational(n) * denom);
      for (std::size_t k = 0; k < v.size(); ++k) out[k] += coeff * v[k];
      return;
    }
    for (int len = 1; len <= remaining; ++len)
      for (int r = 0; r <= len; ++r) {
        seq.emplace_back(r, len - r);
        walk(remaining - len, total);
        seq.pop_back();
      }
  };
  const int depth = std::max(l.order(), 1);
  for (int total = 1; total <= depth; ++total) walk(total, total);
  return out;
}

// ---------------------------------------------------------------------------
// Osculating algebra

namespace {

// Positions of the coordinate fields in a generator list, if all present.
std::optional<std::vector<std::size_t>> coordinate_positions(std::span<const VectorField> gens, std::size_t n) {
  std::vector<std::size_t> pos(n);
  for (std::size_t a = 0; a < n; ++a) {
    const VectorField e = VectorField::coordinate(n, a);
    auto it = std::find(gens.begin(), gens.end(), e);
    if (it == gens.end()) return std::nullopt;
    pos[a] = static_cast<std::size_t>(it - gens.begin());
  }
  return pos;
}

bool is_zero_vector(const LieVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return is_zero(x); });
}

LieVector unit(std::size_t dim, std::size_t k) {
  LieVector v(dim, Rational(0));
  v[k] = 1;
  return v;
}

std::vector<std::size_t> all_variables(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t a = 0; a < n; ++a) v[a] = a;
  return v;
}

// u(m) for some u with sum u_l gens[l] = target, or nullopt within the bound.
// With the coordinate fields among the generators the expansion is exact.
std::optional<LieVector> expand_at(const VectorField& target, std::span<const VectorField> gens,
                                   std::span<const Rational> m, int degree_bound) {
  const std::size_t n = target.dimension();
  if (auto pos = coordinate_positions(gens, n)) {
    LieVector v(gens.size(), Rational(0));
    const std::vector<Rational> val = target.evaluate(m);
    for (std::size_t a = 0; a < n; ++a) v[(*pos)[a]] += val[a];
    return v;
  }
  const std::vector<std::size_t> vars = all_variables(n);
  CombinationSolve s = solve_combination(gens, monomials_up_to(n, vars, degree_bound), vars, &target, false);
  if (!s.solution) return std::nullopt;
  return s.coefficients_at(s.solution->particular, m);
}

}  // namespace

LieVector OsculatingAlgebra::class_of(int i, const LieVector& v) const {
  const Level& lv = levels.at(static_cast<std::size_t>(i - 1));
  if (v.size() != lv.candidates) throw DimensionMismatch("class_of: vector has the wrong length");
  LieVector out = algebra.zero();
  if (lv.basis.empty()) return out;
  const std::size_t cols = lv.basis.size() + lv.relations.size();
  Matrix<Rational> a(lv.candidates, cols, Rational(0));
  for (std::size_t k = 0; k < lv.basis.size(); ++k) a(lv.basis[k], k) = 1;
  for (std::size_t k = 0; k < lv.relations.size(); ++k)
    for (std::size_t row = 0; row < lv.candidates; ++row) a(row, lv.basis.size() + k) = lv.relations[k][row];
  const auto sol = linear_solve_exact(a, v);
  if (!sol) throw InternalInconsistency("class_of: the basis and relations do not span");
  for (std::size_t k = 0; k < lv.basis.size(); ++k) out[lv.offset + k] = sol->particular[k];
  return out;
}

OsculatingAlgebra osculating_at(const Filtration& f, std::span<const Rational> m, int degree_bound) {
  const std::size_t n = f.dimension();
  const int r = f.order();
  if (m.size() != n) throw DimensionMismatch("osculating_at: point has the wrong length");
  OsculatingAlgebra out;
  out.point.assign(m.begin(), m.end());
  std::vector<int> levels;
  for (int i = 1; i <= r; ++i) {
    const auto& gens = f.generators(i);
    OsculatingAlgebra::Level lv;
    lv.candidates = gens.size();
    lv.offset = levels.size();
    // H_{-i+1}: the leading generators of the cumulative list.
    for (std::size_t l = 0; l < f.generators(i - 1).size(); ++l) lv.relations.push_back(unit(gens.size(), l));
    // I_m H_{-i}: values at m of syzygies.
    if (auto pos = coordinate_positions(gens, n)) {
      for (std::size_t l = 0; l < gens.size(); ++l) {
        LieVector v = unit(gens.size(), l);
        const std::vector<Rational> val = gens[l].evaluate(m);
        for (std::size_t a = 0; a < n; ++a) v[(*pos)[a]] -= val[a];
        if (!is_zero_vector(v)) lv.relations.push_back(std::move(v));
      }
    } else {
      const std::vector<std::size_t> vars = all_variables(n);
      CombinationSolve s = solve_combination(gens, monomials_up_to(n, vars, degree_bound), vars, nullptr, true);
      for (const auto& vec : s.solution->nullspace) {
        LieVector v = s.coefficients_at(vec, m);
        if (!is_zero_vector(v) && !in_span(lv.relations, v)) lv.relations.push_back(std::move(v));
      }
    }
    std::vector<LieVector> span = lv.relations;
    for (std::size_t l = 0; l < gens.size(); ++l) {
      LieVector e = unit(gens.size(), l);
      if (in_span(span, e)) continue;
      span.push_back(std::move(e));
      lv.basis.push_back(l);
      levels.push_back(i);
      out.representatives.push_back(gens[l]);
      out.sources.push_back(l);
    }
    out.levels.push_back(std::move(lv));
  }
  out.algebra = GradedLieAlg(levels, r);
  const std::size_t dim = levels.size();
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = a + 1; b < dim; ++b) {
      const int t = levels[a] + levels[b];
      if (t > r) continue;
      const VectorField z = lie_bracket(out.representatives[a], out.representatives[b]);
      const auto u = expand_at(z, f.generators(t), m, degree_bound);
      if (!u) {
        out.verdict = Verdict::Inconclusive;
        continue;
      }
      out.algebra.set_bracket(a, b, out.class_of(t, *u));
    }
  return out;
}

GradedSubalg tangent_subalg(const Filtration& f, const Submanifold& sub, const OsculatingAlgebra& p,
                            int degree_bound) {
  const std::size_t n = f.dimension();
  const int r = f.order();
  if (sub.ambient_dimension() != n) throw DimensionMismatch("tangent_subalg: chart mismatch");
  GradedSubalg out;
  out.dims.assign(static_cast<std::size_t>(r), 0);
  const auto& fiber = sub.fiber_indices();
  for (int i = 1; i <= r; ++i) {
    const auto& gens = f.generators(i);
    std::vector<LieVector> level_vectors;
    auto consider = [&](const LieVector& um, VectorField rep) {
      const LieVector cls = p.class_of(i, um);
      if (is_zero_vector(cls) || in_span(level_vectors, cls)) return;
      level_vectors.push_back(cls);
      out.vectors.push_back(cls);
      out.representatives.push_back(std::move(rep));
    };
    if (fiber.empty()) {
      for (std::size_t l = 0; l < gens.size(); ++l) consider(unit(gens.size(), l), gens[l]);
    } else {
      std::vector<VectorField> restricted;
      for (const auto& g : gens) {
        std::vector<RatFunc> c;
        for (std::size_t a = 0; a < n; ++a) c.push_back(restrict_to(g.coefficient(a), sub));
        restricted.emplace_back(std::move(c));
      }
      CombinationSolve s = solve_combination(restricted, monomials_up_to(n, sub.tangent_indices(), degree_bound),
                                             fiber, nullptr, true);
      for (const auto& vec : s.solution->nullspace) {
        const std::vector<Poly> u = s.coefficients(vec);
        VectorField rep(n);
        for (std::size_t l = 0; l < u.size(); ++l)
          if (!u[l].is_zero()) rep += RatFunc(u[l]) * gens[l];
        consider(s.coefficients_at(vec, p.point), std::move(rep));
      }
    }
    out.dims[static_cast<std::size_t>(i - 1)] = level_vectors.size();
  }
  return out;
}

bool is_closed(const GradedLieAlg& l, const GradedSubalg& s) {
  for (const auto& x : s.vectors)
    for (const auto& y : s.vectors)
      if (!in_span(s.vectors, l.bracket(x, y))) return false;
  return true;
}

std::vector<VectorField> kmodule_generators(const WeightedChart& w, int i, int cap) {
  std::vector<VectorField> out;
  const std::vector<std::size_t> vars = all_variables(w.n);
  const std::vector<Monomial> mons = monomials_up_to(w.n, vars, cap);
  for (std::size_t a = 0; a < w.n; ++a)
    for (const auto& s : mons) {
      int sw = 0;
      for (std::size_t b = 0; b < w.n; ++b) sw += static_cast<int>(s[b]) * w.weights[b];
      if (sw < w.weights[a] - i) continue;
      std::vector<Poly> c(w.n, Poly(w.n));
      c[a] = Poly::monomial(s);
      out.push_back(VectorField::from_polys(std::move(c)));
    }
  return out;
}

// ---------------------------------------------------------------------------
// Dimension checks

namespace {

// Components along d/dx~_a, w_a = i, of the degree -i part of x at m.
LieVector top_components(const VectorField& x, const WeightedChart& w, int i, std::span<const Rational> slot_point) {
  const VectorField h = homogeneous_part(x, w, -i);
  LieVector v;
  for (std::size_t a = w.base_dimension(); a < w.n; ++a)
    if (w.weights[a] == i) v.push_back(h.coefficient(a).evaluate(slot_point));
  return v;
}

HHItem compare(const std::string& name, std::size_t got, std::size_t expected, const std::string& what) {
  HHItem item{name, Verdict::Pass, what + " " + std::to_string(got) + ", expected " + std::to_string(expected)};
  if (got > expected) item.verdict = Verdict::Inconclusive;
  else if (got < expected) item.verdict = Verdict::Fail;
  return item;
}

}  // namespace

HHReport verify_hh(const Filtration& f, const Submanifold& n, const WeightedChart& w, int degree_bound) {
  const OsculatingAlgebra p = osculating_at(f, n.base_point(), degree_bound);
  const GradedSubalg r = tangent_subalg(f, n, p, degree_bound);
  return verify_hh(f, n, w, p, r);
}

HHReport verify_hh(const Filtration& f, const Submanifold& n, const WeightedChart& w, const OsculatingAlgebra& p,
                   const GradedSubalg& r) {
  const int order = f.order();
  HHReport rep;
  rep.p_dims = p.algebra.graded_dimensions();
  rep.r_dims = r.dims;
  rep.weight_multiplicities.assign(static_cast<std::size_t>(order), 0);
  for (std::size_t a = w.base_dimension(); a < w.n; ++a)
    if (w.weights[a] >= 1 && w.weights[a] <= order) ++rep.weight_multiplicities[static_cast<std::size_t>(w.weights[a] - 1)];
  std::size_t total = 0;
  for (std::size_t i = 0; i < rep.p_dims.size(); ++i) {
    rep.quotient_dims.push_back(rep.p_dims[i] >= rep.r_dims[i] ? rep.p_dims[i] - rep.r_dims[i] : 0);
    total += rep.quotient_dims.back();
  }

  rep.items.push_back(compare("dimension", total, w.n - w.base_dimension(), "dim p - dim r ="));

  HHItem graded{"graded_dimensions", Verdict::Pass, "all degrees match"};
  for (std::size_t i = 0; i < rep.quotient_dims.size(); ++i) {
    HHItem c = compare("", rep.quotient_dims[i], rep.weight_multiplicities[i],
                       "degree -" + std::to_string(i + 1) + ":");
    if (c.verdict != Verdict::Pass && combine(graded.verdict, c.verdict) != graded.verdict) {
      graded.verdict = combine(graded.verdict, c.verdict);
      graded.detail = c.detail;
    }
  }
  rep.items.push_back(graded);

  std::vector<Rational> slot_point;
  for (const auto& x : w.coordinates) slot_point.push_back(x.evaluate(n.base_point()));

  HHItem into{"tangent_into_l", Verdict::Pass, "every class of r_m has no constant normal part"};
  for (std::size_t k = 0; k < r.vectors.size(); ++k) {
    int level = 0;
    for (std::size_t b = 0; b < r.vectors[k].size(); ++b)
      if (!is_zero(r.vectors[k][b])) level = p.algebra.level(b);
    if (!is_zero_vector(top_components(r.representatives[k], w, level, slot_point))) {
      into.verdict = Verdict::Fail;
      into.detail = "class " + std::to_string(k) + " of degree -" + std::to_string(level) + " is not in l_m";
      break;
    }
  }
  rep.items.push_back(into);

  HHItem onto{"quotient_onto", Verdict::Pass, "p^{-i} maps onto k^{-i}/l^{-i} in every degree"};
  for (int i = 1; i <= order; ++i) {
    std::vector<LieVector> images;
    for (std::size_t b : p.algebra.basis_of_level(i))
      images.push_back(top_components(p.representatives[b], w, i, slot_point));
    const std::size_t mult = rep.weight_multiplicities[static_cast<std::size_t>(i - 1)];
    if (span_rank(images, mult) != mult) {
      onto.verdict = Verdict::Fail;
      onto.detail = "degree -" + std::to_string(i) + " is not covered";
      break;
    }
  }
  rep.items.push_back(onto);

  rep.items.push_back({"structure_constants", p.verdict,
                       p.verdict == Verdict::Pass ? "all brackets expressed" : "some brackets exceed the degree bound"});
  for (const auto& item : rep.items) rep.verdict = combine(rep.verdict, item.verdict);
  return rep;
}

}  // namespace lieweight
