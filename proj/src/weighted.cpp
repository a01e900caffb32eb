#include "lieweight/weighted.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <stdexcept>

#include "lieweight/errors.hpp"

namespace lieweight {

namespace {

// V^s f for one function, memoized over s. V^s = V_{a1} V^{s - e_{a1}} with
// a1 the first nonzero slot of s.
class WordEvaluator {
 public:
  WordEvaluator(std::span<const VectorField> frame, RatFunc f) : frame_(frame) {
    memo_.emplace(Monomial(frame.size()), std::move(f));
  }

  const RatFunc& operator()(const Monomial& s) {
    if (auto it = memo_.find(s); it != memo_.end()) return it->second;
    std::size_t a1 = 0;
    while (s[a1] == 0) ++a1;
    Monomial rest = s;
    rest[a1] -= 1;
    RatFunc inner = (*this)(rest);
    RatFunc value = inner.is_zero() ? inner : apply(frame_[a1], inner);
    return memo_.emplace(s, std::move(value)).first->second;
  }

 private:
  std::span<const VectorField> frame_;
  std::map<Monomial, RatFunc> memo_;
};

int dot(std::span<const int> w, const Monomial& s) {
  int acc = 0;
  for (std::size_t b = 0; b < s.size(); ++b) acc += w[b] * static_cast<int>(s[b]);
  return acc;
}

Rational multi_factorial(const Monomial& s) {
  Rational out = 1;
  for (std::size_t b = 0; b < s.size(); ++b) out *= factorial(s[b]);
  return out;
}

void enumerate(std::span<const int> w, int bound, std::size_t slot, Monomial& cur, int used,
               std::vector<Monomial>& out) {
  if (slot == w.size()) {
    out.push_back(cur);
    return;
  }
  for (unsigned e = 0;; ++e) {
    const int wt = used + w[slot] * static_cast<int>(e);
    if (wt >= bound) break;
    cur[slot] = e;
    enumerate(w, bound, slot + 1, cur, wt, out);
    if (w[slot] <= 0) break;  // weight-0 slots are never multiplied
  }
  cur[slot] = 0;
}

}  // namespace

std::vector<Monomial> weighted_indices(std::span<const int> weights, int bound, unsigned min_order) {
  std::vector<Monomial> out;
  if (bound <= 0) return out;
  Monomial cur(weights.size());
  enumerate(weights, bound, 0, cur, 0, out);
  std::erase_if(out, [&](const Monomial& s) { return s.degree() < min_order; });
  std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a < b;
  });
  return out;
}

Frame select_frame(const Filtration& f, const Submanifold& n, const CleanResult& clean) {
  if (clean.verdict != Verdict::Pass) throw PreconditionError("submanifold is not certified clean");
  if (clean.ranks.size() != static_cast<std::size_t>(f.order()) + 1)
    throw std::invalid_argument("select_frame: rank list does not match the filtration");
  const std::size_t dim = f.dimension();
  std::vector<std::vector<Rational>> span;
  for (std::size_t b : n.tangent_indices()) {
    std::vector<Rational> e(dim, Rational(0));
    e[b] = 1;
    span.push_back(std::move(e));
  }
  Frame frame;
  for (int i = 1; i <= f.order(); ++i) {
    std::size_t adopted = 0;
    const auto& gens = f.generators(i);
    for (std::size_t j = 0; j < gens.size(); ++j) {
      std::vector<Rational> v = gens[j].evaluate(n.base_point());
      if (in_span(span, v)) continue;
      span.push_back(std::move(v));
      frame.fields.push_back(gens[j]);
      frame.levels.push_back(i);
      frame.sources.push_back(j);
      ++adopted;
    }
    const auto ui = static_cast<std::size_t>(i);
    if (adopted != clean.ranks[ui] - clean.ranks[ui - 1])
      throw PreconditionError("frame selection disagrees with the rank sequence");
  }
  if (frame.fields.size() != n.fiber_indices().size())
    throw PreconditionError("frame does not span the normal directions at m");
  return frame;
}

NormalizedFrame normalize_chart(const Frame& frame, const Submanifold& n) {
  const std::size_t dim = n.ambient_dimension();
  const auto& fiber = n.fiber_indices();
  const std::size_t nf = fiber.size();
  if (frame.fields.size() != nf) throw std::invalid_argument("normalize_chart: frame size differs from codimension");
  NormalizedFrame out;
  out.pairing = Matrix<RatFunc>(nf, nf, RatFunc(dim));
  Matrix<Rational> at_m(nf, nf, Rational(0));
  for (std::size_t a = 0; a < nf; ++a)
    for (std::size_t c = 0; c < nf; ++c) {
      out.pairing(a, c) = restrict_to(frame.fields[a].coefficient(fiber[c]), n);
      at_m(a, c) = out.pairing(a, c).evaluate(n.base_point());
    }
  if (rank(at_m) != nf) throw PreconditionError("frame pairing is singular at the base point");
  auto inv = inverse(out.pairing, RatFunc(dim), RatFunc::constant(dim, 1));
  if (!inv) throw PreconditionError("frame pairing is singular along N");
  out.pairing_inverse = std::move(*inv);
  for (std::size_t a = 0; a < nf; ++a) {
    RatFunc x(dim);
    for (std::size_t c = 0; c < nf; ++c)
      if (!out.pairing_inverse(c, a).is_zero())
        x += out.pairing_inverse(c, a) * RatFunc(Poly::variable(dim, fiber[c]));
    out.coordinates.push_back(std::move(x));
  }
  return out;
}

int filtration_degree(const RatFunc& f, std::span<const VectorField> frame, std::span<const int> weights,
                      const Submanifold& n, int cap) {
  if (frame.size() != weights.size()) throw std::invalid_argument("filtration_degree: one weight per frame field");
  WordEvaluator words(frame, f);
  int degree = cap;
  for (const Monomial& s : weighted_indices(weights, cap, 0)) {
    const int ws = dot(weights, s);
    if (ws >= degree) continue;
    if (!restrict_to(words(s), n).is_zero()) degree = ws;
  }
  return degree;
}

namespace {

RatFunc monomial_in(std::span<const RatFunc> coords, const Monomial& s, std::size_t dim) {
  RatFunc out = RatFunc::constant(dim, 1);
  for (std::size_t b = 0; b < s.size(); ++b)
    for (unsigned e = 0; e < s[b]; ++e) out *= coords[b];
  return out;
}

std::vector<std::string> slot_names_for(const Submanifold& n, const NormalizedFrame& nf, std::size_t dim,
                                        const std::vector<std::string>* names) {
  std::vector<std::string> out;
  const auto& fiber = n.fiber_indices();
  auto name = [&](std::size_t a) { return names ? (*names)[a] : "x" + std::to_string(a + 1); };
  for (std::size_t b : n.tangent_indices()) out.push_back(name(b));
  // Pair slot a with the first unused fiber variable c with G(a, c)(m) != 0.
  std::vector<bool> used(fiber.size(), false);
  for (std::size_t a = 0; a < fiber.size(); ++a) {
    bool found = false;
    for (std::size_t c = 0; c < fiber.size() && !found; ++c) {
      if (used[c] || is_zero(nf.pairing(a, c).evaluate(n.base_point()))) continue;
      used[c] = true;
      out.push_back(name(fiber[c]));
      found = true;
    }
    if (!found) {
      out.resize(n.tangent_indices().size());
      for (std::size_t k = 0; k < fiber.size(); ++k) out.push_back("t" + std::to_string(k + 1));
      break;
    }
  }
  (void)dim;
  return out;
}

WeightedChart build(const Filtration& f, const Submanifold& n, const CleanResult& clean,
                    const std::vector<std::string>* names) {
  const std::size_t dim = f.dimension();
  const int r = f.order();
  WeightedChart w;
  w.n = dim;
  w.order = r;
  w.tangent = n.tangent_indices();
  w.fiber = n.fiber_indices();
  w.base_point = n.base_point();
  w.frame = select_frame(f, n, clean);
  w.normalized = normalize_chart(w.frame, n);
  const std::size_t k0 = w.tangent.size();
  const std::size_t nf = w.fiber.size();
  const std::vector<int>& fw = w.frame.levels;

  for (std::size_t b : w.tangent) {
    w.weights.push_back(0);
    w.coordinates.emplace_back(Poly::variable(dim, b));
  }
  std::vector<RatFunc> fiber_coords;  // x~ over fiber slots, final once processed
  std::vector<std::vector<std::pair<Monomial, RatFunc>>> corrections(nf);
  for (std::size_t a = 0; a < nf; ++a) {
    w.weights.push_back(fw[a]);
    RatFunc current = w.normalized.coordinates[a];
    if (fw[a] >= 3) {
      // Terms of x~_a, each with its own cache of V^s values.
      std::vector<WordEvaluator> terms;
      terms.emplace_back(w.frame.fields, current);
      for (const Monomial& s : weighted_indices(fw, fw[a], 2)) {
        RatFunc val(dim);
        for (auto& t : terms) val += restrict_to(t(s), n);
        const RatFunc xs = monomial_in(fiber_coords, s, dim);
        WordEvaluator on_xs(w.frame.fields, xs);
        const RatFunc cs = restrict_to(on_xs(s), n);
        const Rational expected = multi_factorial(s);
        if (!(cs == RatFunc::constant(dim, expected)))
          throw InternalInconsistency("normalization constant differs from s!");
        if (val.is_zero()) {
          w.records.push_back({a, s, expected, RatFunc(dim)});
          continue;
        }
        RatFunc chi = -val / RatFunc::constant(dim, expected);
        if (is_zero(chi.den().evaluate(n.base_point())))
          throw PreconditionError("correction coefficient is singular at the base point");
        w.records.push_back({a, s, expected, chi});
        corrections[a].emplace_back(s, chi);
        current += chi * xs;
        terms.emplace_back(w.frame.fields, chi * xs);
      }
    }
    const int got = filtration_degree(current, w.frame.fields, fw, n, r);
    if (got != std::min(fw[a], r)) throw InternalInconsistency("weighted coordinate has the wrong filtration degree");
    fiber_coords.push_back(current);
    w.coordinates.push_back(std::move(current));
  }

  // Inverse: base x_b = t_b; x^_a = t_a - sum chi_au(t) t^u; x_c = sum_a G(a, c) x^_a.
  std::vector<std::size_t> to_slot(dim, 0);
  for (std::size_t i = 0; i < k0; ++i) to_slot[w.tangent[i]] = i;
  auto base_to_slots = [&](const RatFunc& g) { return g.embed(dim, to_slot); };
  std::vector<RatFunc> hat(nf, RatFunc(dim));
  for (std::size_t a = 0; a < nf; ++a) {
    hat[a] = RatFunc(Poly::variable(dim, k0 + a));
    for (const auto& [u, chi] : corrections[a]) {
      Monomial tu(dim);
      for (std::size_t b = 0; b < nf; ++b) tu[k0 + b] = u[b];
      hat[a] -= base_to_slots(chi) * RatFunc(Poly::monomial(tu));
    }
  }
  w.inverse.assign(dim, RatFunc(dim));
  for (std::size_t i = 0; i < k0; ++i) w.inverse[w.tangent[i]] = RatFunc(Poly::variable(dim, i));
  for (std::size_t c = 0; c < nf; ++c) {
    RatFunc x(dim);
    for (std::size_t a = 0; a < nf; ++a)
      if (!w.normalized.pairing(a, c).is_zero()) x += base_to_slots(w.normalized.pairing(a, c)) * hat[a];
    w.inverse[w.fiber[c]] = std::move(x);
  }
  w.slot_names = slot_names_for(n, w.normalized, dim, names);
  return w;
}

}  // namespace

WeightedChart weighted_coordinates(const Filtration& f, const Submanifold& n, const CleanResult& clean) {
  return build(f, n, clean, nullptr);
}

WeightedChart weighted_coordinates(const Filtration& f, const Submanifold& n) {
  return weighted_coordinates(f, n, check_clean(f, n));
}

WeightedChart weighted_coordinates(const Filtration& f, const Submanifold& n, const Chart& chart) {
  const CleanResult clean = check_clean(f, n);
  return build(f, n, clean, &chart.names());
}

RatFunc to_weighted(const RatFunc& f, const WeightedChart& w) {
  if (f.nvars() != w.n) throw DimensionMismatch("to_weighted: chart mismatch");
  return substitute(f, w.inverse);
}

namespace {

// Weighted degree of a monomial in the slot chart; base slots weigh 0.
int slot_weight(const Monomial& m, const WeightedChart& w) {
  int acc = 0;
  for (std::size_t k = 0; k < m.size(); ++k) acc += w.weights[k] * static_cast<int>(m[k]);
  return acc;
}

void check_base_denominator(const RatFunc& g, const WeightedChart& w) {
  for (std::size_t k = w.base_dimension(); k < w.n; ++k)
    if (g.den().depends_on(k)) throw InternalInconsistency("denominator involves a fiber coordinate");
}

WeightedDegreeResult degree_in_slots(const RatFunc& g, const WeightedChart& w) {
  WeightedDegreeResult res;
  if (g.is_zero()) return res;
  check_base_denominator(g, w);
  for (const auto& [m, c] : g.num().terms()) {
    const int d = slot_weight(m, w);
    if (!res.degree || d < *res.degree) {
      res.degree = d;
      res.witness = m;
    }
  }
  return res;
}

RatFunc part_in_slots(const RatFunc& g, const WeightedChart& w, int i) {
  if (g.is_zero()) return g;
  check_base_denominator(g, w);
  Poly num(w.n);
  for (const auto& [m, c] : g.num().terms())
    if (slot_weight(m, w) == i) num += Poly::monomial(m, c);
  return RatFunc(std::move(num), g.den());
}

}  // namespace

WeightedDegreeResult weighted_degree(const RatFunc& f, const WeightedChart& w) {
  return degree_in_slots(to_weighted(f, w), w);
}

VectorField to_weighted(const VectorField& x, const WeightedChart& w) {
  if (x.dimension() != w.n) throw DimensionMismatch("to_weighted: chart mismatch");
  std::vector<RatFunc> c;
  c.reserve(w.n);
  for (const auto& coord : w.coordinates) c.push_back(to_weighted(apply(x, coord), w));
  return VectorField(std::move(c));
}

std::optional<int> vf_filtration_degree(const VectorField& x, const WeightedChart& w) {
  const VectorField y = to_weighted(x, w);
  std::optional<int> best;
  for (std::size_t k = 0; k < w.n; ++k) {
    const auto d = degree_in_slots(y.coefficient(k), w);
    if (!d.degree) continue;
    const int j = *d.degree - w.weights[k];
    if (!best || j < *best) best = j;
  }
  if (best) best = std::max(*best, -w.order);
  return best;
}

RatFunc homogeneous_part(const RatFunc& f, const WeightedChart& w, int i) {
  return part_in_slots(to_weighted(f, w), w, i);
}

RatFunc homogeneous_approx(const RatFunc& f, const WeightedChart& w) {
  const RatFunc g = to_weighted(f, w);
  const auto d = degree_in_slots(g, w);
  if (!d.degree) throw std::invalid_argument("homogeneous_approx of the zero function");
  return part_in_slots(g, w, *d.degree);
}

VectorField homogeneous_part(const VectorField& x, const WeightedChart& w, int j) {
  const VectorField y = to_weighted(x, w);
  std::vector<RatFunc> c;
  for (std::size_t k = 0; k < w.n; ++k) c.push_back(part_in_slots(y.coefficient(k), w, j + w.weights[k]));
  return VectorField(std::move(c));
}

VectorField homogeneous_approx(const VectorField& x, const WeightedChart& w) {
  const VectorField y = to_weighted(x, w);
  std::optional<int> best;
  for (std::size_t k = 0; k < w.n; ++k) {
    const auto d = degree_in_slots(y.coefficient(k), w);
    if (d.degree && (!best || *d.degree - w.weights[k] < *best)) best = *d.degree - w.weights[k];
  }
  if (!best) throw std::invalid_argument("homogeneous_approx of the zero field");
  std::vector<RatFunc> c;
  for (std::size_t k = 0; k < w.n; ++k) c.push_back(part_in_slots(y.coefficient(k), w, *best + w.weights[k]));
  return VectorField(std::move(c));
}

}  // namespace lieweight
