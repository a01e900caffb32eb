#include "lieweight/filtration.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>

#include "lieweight/errors.hpp"

namespace lieweight {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

Verdict combine(Verdict a, Verdict b) {
  if (a == Verdict::Fail || b == Verdict::Fail) return Verdict::Fail;
  if (a == Verdict::Inconclusive || b == Verdict::Inconclusive) return Verdict::Inconclusive;
  return Verdict::Pass;
}

Filtration::Filtration(std::size_t n, std::vector<std::vector<VectorField>> levels)
    : n_(n), levels_(std::move(levels)) {
  if (levels_.empty()) throw std::invalid_argument("a filtration needs at least one level");
  cumulative_.emplace_back();
  new_at_.emplace_back();
  const int r = order();
  for (int i = 1; i <= r; ++i) {
    std::vector<VectorField> gens = cumulative_.back();
    std::vector<std::size_t> fresh;
    auto adjoin = [&](const VectorField& v) {
      if (v.dimension() != n_) throw DimensionMismatch("filtration generator on a different chart");
      if (!v.is_polynomial()) throw std::invalid_argument("filtration generators must have polynomial coefficients");
      if (v.is_zero() || std::find(gens.begin(), gens.end(), v) != gens.end()) return;
      fresh.push_back(gens.size());
      gens.push_back(v);
    };
    for (const auto& v : level(i)) adjoin(v);
    if (i == r)
      for (std::size_t a = 0; a < n_; ++a) adjoin(VectorField::coordinate(n_, a));
    cumulative_.push_back(std::move(gens));
    new_at_.push_back(std::move(fresh));
  }
}

int Filtration::max_degree() const {
  int d = 0;
  for (const auto& lvl : levels_)
    for (const auto& v : lvl) d = std::max(d, v.degree());
  return d;
}

// ---------------------------------------------------------------------------
// Bounded solves

std::vector<Monomial> monomials_up_to(std::size_t nvars, std::span<const std::size_t> vars, int d) {
  std::vector<Monomial> out;
  if (d < 0) return out;
  out.emplace_back(nvars);
  std::vector<Monomial> layer = {Monomial(nvars)};
  for (int deg = 1; deg <= d; ++deg) {
    // Extend by variables at or after the last one used to avoid repeats.
    std::vector<Monomial> next;
    for (const auto& m : layer) {
      std::size_t last = 0;
      for (std::size_t k = 0; k < vars.size(); ++k)
        if (m[vars[k]] > 0) last = k;
      for (std::size_t k = last; k < vars.size(); ++k) {
        Monomial e = m;
        e[vars[k]] += 1;
        next.push_back(std::move(e));
      }
    }
    std::sort(next.begin(), next.end(), TermOrder{});
    next.erase(std::unique(next.begin(), next.end()), next.end());
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

std::vector<Poly> CombinationSolve::coefficients(std::span<const Rational> unknowns) const {
  const std::size_t nv = basis.empty() ? 0 : basis.front().size();
  std::vector<Poly> out(count, Poly(nv));
  for (std::size_t k = 0; k < basis.size(); ++k)
    for (std::size_t j = 0; j < count; ++j) {
      const Rational& c = unknowns[k * count + j];
      if (!is_zero(c)) out[j] += Poly::monomial(basis[k], c);
    }
  return out;
}

std::vector<Rational> CombinationSolve::coefficients_at(std::span<const Rational> unknowns,
                                                        std::span<const Rational> point) const {
  std::vector<Rational> out(count, Rational(0));
  for (std::size_t k = 0; k < basis.size(); ++k) {
    Rational mono = 1;
    bool mono_done = false;
    for (std::size_t j = 0; j < count; ++j) {
      const Rational& c = unknowns[k * count + j];
      if (is_zero(c)) continue;
      if (!mono_done) {
        for (std::size_t v = 0; v < basis[k].size(); ++v)
          for (unsigned e = 0; e < basis[k][v]; ++e) mono *= point[v];
        mono_done = true;
      }
      out[j] += c * mono;
    }
  }
  return out;
}

CombinationSolve solve_combination(std::span<const VectorField> gens, std::vector<Monomial> basis,
                                   std::span<const std::size_t> components, const VectorField* target,
                                   bool want_nullspace) {
  CombinationSolve out;
  out.basis = std::move(basis);
  out.count = gens.size();
  const std::size_t cols = out.basis.size() * out.count;
  std::map<std::pair<std::size_t, Monomial>, std::pair<SparseRow, Rational>> rows;
  for (std::size_t a : components) {
    for (std::size_t j = 0; j < gens.size(); ++j) {
      const Poly g = gens[j].poly_coefficient(a);
      for (const auto& [mu, c] : g.terms())
        for (std::size_t k = 0; k < out.basis.size(); ++k)
          rows[{a, out.basis[k] * mu}].first.emplace_back(k * out.count + j, c);
    }
    if (target != nullptr) {
      const Poly t = target->poly_coefficient(a);
      for (const auto& [beta, c] : t.terms()) rows[{a, beta}].second = c;
    }
  }
  SparseLinearSystem sys(cols);
  for (auto& [key, row] : rows) {
    sys.add_row(std::move(row.first), row.second);
    if (!sys.consistent()) break;
  }
  out.solution = sys.solve(want_nullspace);
  return out;
}

// ---------------------------------------------------------------------------
// Membership

std::vector<std::vector<Rational>> sample_points(std::size_t n, std::size_t max_points) {
  std::vector<std::vector<Rational>> pts;
  pts.emplace_back(n, Rational(0));
  static const int grid[] = {0, 1, -1, 2, -2};
  // Odometer over the grid, skipping the origin already listed.
  std::vector<std::size_t> idx(n, 0);
  std::size_t grid_budget = max_points * 3 / 4;
  while (pts.size() < grid_budget && n > 0) {
    std::size_t k = 0;
    while (k < n && ++idx[k] == 5) idx[k++] = 0;
    if (k == n) break;
    std::vector<Rational> p(n);
    for (std::size_t a = 0; a < n; ++a) p[a] = grid[idx[a]];
    pts.push_back(std::move(p));
  }
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  while (pts.size() < max_points && n > 0) {
    std::vector<Rational> p(n);
    for (std::size_t a = 0; a < n; ++a) {
      const long num = static_cast<long>(rng() % 15) - 7;
      const long den = static_cast<long>(rng() % 5) + 1;
      p[a] = Rational(num, den);
      p[a].canonicalize();
    }
    pts.push_back(std::move(p));
  }
  return pts;
}

namespace {

bool in_pointwise_span(const VectorField& v, std::span<const VectorField> gens, std::span<const Rational> p) {
  std::vector<std::vector<Rational>> vals;
  vals.reserve(gens.size());
  for (const auto& g : gens) vals.push_back(g.evaluate(p));
  const std::vector<Rational> target = v.evaluate(p);
  return in_span(vals, target);
}

std::vector<std::size_t> all_indices(std::size_t n) {
  std::vector<std::size_t> out(n);
  for (std::size_t a = 0; a < n; ++a) out[a] = a;
  return out;
}

}  // namespace

MembershipResult module_membership(const VectorField& v, std::span<const VectorField> gens, int degree_bound) {
  const std::size_t n = v.dimension();
  for (const auto& g : gens)
    if (g.dimension() != n) throw DimensionMismatch("module_membership: chart mismatch");
  MembershipResult res;
  if (v.is_zero()) {
    res.verdict = Verdict::Pass;
    res.coefficients.assign(gens.size(), Poly(n));
    return res;
  }
  for (const auto& p : sample_points(n)) {
    if (!in_pointwise_span(v, gens, p)) {
      res.verdict = Verdict::Fail;
      res.witness = p;
      return res;
    }
  }
  const auto vars = all_indices(n);
  const auto comps = all_indices(n);
  CombinationSolve s = solve_combination(gens, monomials_up_to(n, vars, degree_bound), comps, &v, false);
  if (s.solution) {
    res.verdict = Verdict::Pass;
    res.coefficients = s.coefficients(s.solution->particular);
    return res;
  }
  res.verdict = Verdict::Inconclusive;
  res.reason = "degree_bound";
  return res;
}

bool verify_certificate(const VectorField& v, std::span<const VectorField> gens, const MembershipResult& r) {
  switch (r.verdict) {
    case Verdict::Pass: {
      if (r.coefficients.size() != gens.size()) return false;
      VectorField acc(v.dimension());
      for (std::size_t j = 0; j < gens.size(); ++j) acc += RatFunc(r.coefficients[j]) * gens[j];
      return acc == v;
    }
    case Verdict::Fail:
      return r.witness && !in_pointwise_span(v, gens, *r.witness);
    case Verdict::Inconclusive:
      return false;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Bracket compatibility

BracketCompatReport check_bracket_compat(const Filtration& f, int degree_bound) {
  BracketCompatReport rep;
  const int r = f.order();
  const std::size_t n = f.dimension();
  for (int i = 1; i <= r; ++i) {
    for (int j = i; j <= r; ++j) {
      for (std::size_t gi : f.new_at(i)) {
        for (std::size_t hj : f.new_at(j)) {
          if (i == j && hj <= gi) continue;
          BracketCheck c;
          c.i = i;
          c.j = j;
          c.first = gi;
          c.second = hj;
          c.bracket = lie_bracket(f.generators(i)[gi], f.generators(j)[hj]);
          c.target_level = std::min(i + j, r);
          const auto& target = f.generators(c.target_level);
          if (i + j >= r) {
            // H_{-r} contains the coordinate fields: expand in them.
            c.result.verdict = Verdict::Pass;
            c.result.coefficients.assign(target.size(), Poly(n));
            for (std::size_t a = 0; a < n; ++a) {
              auto pos = std::find(target.begin(), target.end(), VectorField::coordinate(n, a));
              c.result.coefficients[static_cast<std::size_t>(pos - target.begin())] =
                  c.bracket.poly_coefficient(a);
            }
          } else {
            c.result = module_membership(c.bracket, target, degree_bound);
          }
          rep.verdict = combine(rep.verdict, c.result.verdict);
          rep.checks.push_back(std::move(c));
        }
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Cleanness

namespace {

// Rows: tangent basis of N, then generator values restricted to N.
Matrix<RatFunc> restricted_span_matrix(std::span<const VectorField> gens, const Submanifold& sub) {
  const std::size_t n = sub.ambient_dimension();
  const auto& tangent = sub.tangent_indices();
  Matrix<RatFunc> m(tangent.size() + gens.size(), n, RatFunc(n));
  for (std::size_t k = 0; k < tangent.size(); ++k) m(k, tangent[k]) = RatFunc::constant(n, 1);
  for (std::size_t j = 0; j < gens.size(); ++j)
    for (std::size_t a = 0; a < n; ++a) m(tangent.size() + j, a) = restrict_to(gens[j].coefficient(a), sub);
  return m;
}

Matrix<Rational> evaluate_matrix(const Matrix<RatFunc>& m, std::span<const Rational> p) {
  Matrix<Rational> out(m.rows(), m.cols(), Rational(0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).evaluate(p);
  return out;
}

}  // namespace

CleanResult check_clean(const Filtration& f, const Submanifold& sub) {
  if (sub.ambient_dimension() != f.dimension()) throw DimensionMismatch("check_clean: chart mismatch");
  CleanResult res;
  const std::size_t n = f.dimension();
  const auto& fiber = sub.fiber_indices();
  const auto& tangent = sub.tangent_indices();
  for (int i = 0; i <= f.order(); ++i) {
    const Matrix<RatFunc> m = restricted_span_matrix(f.generators(i), sub);
    const std::size_t generic = rank(m);
    const std::size_t at_m = rank(evaluate_matrix(m, sub.base_point()));
    res.generic_ranks.push_back(generic);
    res.ranks.push_back(at_m);
    if (generic != at_m && res.verdict == Verdict::Pass) {
      res.verdict = Verdict::Fail;
      res.failing_level = i;
      // A point of N where the rank exceeds the rank at m.
      for (const auto& q : sample_points(tangent.size())) {
        std::vector<Rational> p(n, Rational(0));
        for (std::size_t k = 0; k < tangent.size(); ++k) p[tangent[k]] = q[k];
        (void)fiber;
        try {
          if (rank(evaluate_matrix(m, p)) > at_m) {
            res.witness = p;
            break;
          }
        } catch (const std::domain_error&) {
          // denominator vanishes there; try the next point
        }
      }
    }
  }
  return res;
}

std::vector<int> weight_sequence(std::span<const std::size_t> ranks) {
  if (ranks.empty()) throw std::invalid_argument("weight_sequence: no ranks");
  std::vector<int> w;
  for (std::size_t i = 1; i < ranks.size(); ++i) {
    if (ranks[i] < ranks[i - 1]) throw std::invalid_argument("weight_sequence: ranks must be non-decreasing");
    for (std::size_t k = ranks[i - 1]; k < ranks[i]; ++k) w.push_back(static_cast<int>(i));
  }
  return w;
}

// ---------------------------------------------------------------------------
// Restriction and products

std::vector<VectorField> restrict_distribution(std::span<const VectorField> gens, const Submanifold& sub,
                                               int degree_bound) {
  const std::size_t n = sub.ambient_dimension();
  const auto& tangent = sub.tangent_indices();
  const std::size_t k0 = tangent.size();
  std::vector<VectorField> restricted;
  for (const auto& g : gens) {
    if (g.dimension() != n) throw DimensionMismatch("restrict_distribution: chart mismatch");
    std::vector<RatFunc> c;
    for (std::size_t a = 0; a < n; ++a) c.push_back(restrict_to(g.coefficient(a), sub));
    restricted.emplace_back(std::move(c));
  }
  // Combinations whose normal components vanish on N.
  CombinationSolve s = solve_combination(restricted, monomials_up_to(n, tangent, degree_bound),
                                         sub.fiber_indices(), nullptr, true);
  std::vector<std::size_t> index_map(n, 0);
  for (std::size_t k = 0; k < k0; ++k) index_map[tangent[k]] = k;
  std::vector<VectorField> out;
  for (const auto& vec : s.solution->nullspace) {
    const std::vector<Poly> u = s.coefficients(vec);
    std::vector<Poly> comps(k0, Poly(k0));
    for (std::size_t j = 0; j < u.size(); ++j) {
      if (u[j].is_zero()) continue;
      for (std::size_t k = 0; k < k0; ++k)
        comps[k] += (u[j] * restricted[j].poly_coefficient(tangent[k])).embed(k0, index_map);
    }
    VectorField y = VectorField::from_polys(std::move(comps));
    if (y.is_zero()) continue;
    // Skip fields already generated by the ones kept so far.
    if (!out.empty() && module_membership(y, out, degree_bound).verdict == Verdict::Pass) continue;
    out.push_back(std::move(y));
  }
  return out;
}

ProductDistribution product_distribution(const Chart& a, std::span<const VectorField> gens_a, const Chart& b,
                                         std::span<const VectorField> gens_b) {
  std::vector<std::string> names = a.names();
  for (const auto& nm : b.names()) {
    if (a.index_of(nm)) throw std::invalid_argument("product_distribution: variable '" + nm + "' appears twice");
    names.push_back(nm);
  }
  ProductDistribution out{Chart(names), {}};
  const std::size_t na = a.dimension(), nb = b.dimension(), n = na + nb;
  std::vector<std::size_t> map_a(na), map_b(nb);
  for (std::size_t i = 0; i < na; ++i) map_a[i] = i;
  for (std::size_t i = 0; i < nb; ++i) map_b[i] = na + i;
  auto lift = [&](const VectorField& v, std::span<const std::size_t> map, std::size_t offset) {
    std::vector<RatFunc> c(n, RatFunc(n));
    for (std::size_t k = 0; k < v.dimension(); ++k) c[offset + k] = v.coefficient(k).embed(n, map);
    return VectorField(std::move(c));
  };
  for (const auto& v : gens_a) {
    if (v.dimension() != na) throw DimensionMismatch("product_distribution: chart mismatch");
    out.generators.push_back(lift(v, map_a, 0));
  }
  for (const auto& v : gens_b) {
    if (v.dimension() != nb) throw DimensionMismatch("product_distribution: chart mismatch");
    out.generators.push_back(lift(v, map_b, na));
  }
  return out;
}

}  // namespace lieweight
