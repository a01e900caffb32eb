#include "lieweight/jets.hpp"

#include <random>

#include "lieweight/errors.hpp"

namespace lieweight {

JetPoint JetPoint::at(std::span<const Rational> point, int r) {
  JetPoint u(point.size(), r);
  for (std::size_t a = 0; a < point.size(); ++a) u(0, a) = point[a];
  return u;
}

TruncSeries<Rational> JetPoint::component(std::size_t a) const {
  std::vector<Rational> c;
  for (int i = 0; i <= r_; ++i) c.push_back((*this)(i, a));
  return TruncSeries<Rational>(std::move(c));
}

Chart jet_chart(const Chart& base, int r) {
  std::vector<std::string> names;
  for (int i = 0; i <= r; ++i)
    for (const auto& nm : base.names()) names.push_back(nm + "_" + std::to_string(i));
  return Chart(std::move(names));
}

namespace {

// Substitutes series for the variables of f, term by term with cached powers.
template <class T>
TruncSeries<T> substitute_series(const Poly& f, const std::vector<TruncSeries<T>>& vars, const T& zero,
                                 const T& one) {
  const int r = vars.empty() ? 0 : vars.front().order();
  TruncSeries<T> out(r, zero);
  std::vector<std::vector<TruncSeries<T>>> powers(vars.size());
  TruncSeries<T> unit(r, zero);
  unit[0] = one;
  for (const auto& [m, c] : f.terms()) {
    TruncSeries<T> t = unit;
    for (std::size_t a = 0; a < m.size(); ++a) {
      if (m[a] == 0) continue;
      auto& pw = powers[a];
      if (pw.empty()) pw.push_back(vars[a]);
      while (pw.size() < m[a]) pw.push_back(pw.back() * vars[a]);
      t = t * pw[m[a] - 1];
    }
    out += t.scaled(T(c * one));
  }
  return out;
}

}  // namespace

TruncSeries<Rational> eval_jet(const JetPoint& u, const Poly& f) {
  if (f.nvars() != u.dimension()) throw DimensionMismatch("eval_jet: chart mismatch");
  std::vector<TruncSeries<Rational>> vars;
  for (std::size_t a = 0; a < u.dimension(); ++a) vars.push_back(u.component(a));
  return substitute_series<Rational>(f, vars, Rational(0), Rational(1));
}

TruncSeries<Rational> eval_jet(const JetPoint& u, const RatFunc& f) {
  if (f.is_polynomial()) return eval_jet(u, f.as_poly());
  return eval_jet(u, f.num()) * eval_jet(u, f.den()).inverse();
}

std::vector<Poly> lift_components(const Poly& f, int r) {
  const std::size_t n = f.nvars();
  const std::size_t nj = (static_cast<std::size_t>(r) + 1) * n;
  std::vector<TruncSeries<Poly>> vars;
  for (std::size_t a = 0; a < n; ++a) {
    TruncSeries<Poly> s(r, Poly(nj));
    for (int i = 0; i <= r; ++i) s[static_cast<std::size_t>(i)] = Poly::variable(nj, jet_index(n, i, a));
    vars.push_back(std::move(s));
  }
  TruncSeries<Poly> s = substitute_series<Poly>(f, vars, Poly(nj), Poly::constant(nj, 1));
  return s.coefficients();
}

Poly lift_function(const Poly& f, int i, int r) {
  if (i < 0 || i > r) throw std::out_of_range("lift_function: component index out of range");
  return lift_components(f, r)[static_cast<std::size_t>(i)];
}

VectorField lift_vf(const VectorField& x, int j, int r) {
  if (j < 0 || j > r) throw std::out_of_range("lift_vf: lift index out of range");
  const std::size_t n = x.dimension();
  const std::size_t nj = (static_cast<std::size_t>(r) + 1) * n;
  std::vector<Poly> c(nj, Poly(nj));
  for (std::size_t a = 0; a < n; ++a) {
    if (x.coefficient(a).is_zero()) continue;
    const std::vector<Poly> lifts = lift_components(x.poly_coefficient(a), r);
    for (int k = j; k <= r; ++k) c[jet_index(n, k, a)] = lifts[static_cast<std::size_t>(k - j)];
  }
  return VectorField::from_polys(std::move(c));
}

void LiftCombination::add(Poly coefficient, VectorField field, int lift) {
  const std::size_t nj = (static_cast<std::size_t>(r_) + 1) * n_;
  if (coefficient.nvars() != nj || field.dimension() != n_) throw DimensionMismatch("LiftCombination: chart mismatch");
  if (lift < 0) throw std::out_of_range("LiftCombination: negative lift index");
  if (lift > r_ || coefficient.is_zero()) return;
  terms_.push_back({std::move(coefficient), std::move(field), lift});
}

VectorField LiftCombination::to_field() const {
  const std::size_t nj = (static_cast<std::size_t>(r_) + 1) * n_;
  VectorField out(nj);
  for (const auto& t : terms_) out += RatFunc(t.coefficient) * lift_vf(t.field, t.lift, r_);
  return out;
}

LiftCombination koszul_shift(const LiftCombination& l) {
  LiftCombination out(l.dimension(), l.order());
  for (const auto& t : l.terms())
    if (t.lift + 1 <= l.order()) out.add(t.coefficient, t.field, t.lift + 1);
  return out;
}

VectorField koszul_shift(const VectorField& v, std::size_t n, int r) {
  const std::size_t nj = (static_cast<std::size_t>(r) + 1) * n;
  if (v.dimension() != nj) throw DimensionMismatch("koszul_shift: not a field on the jet chart");
  std::vector<RatFunc> c(nj, RatFunc(nj));
  for (int k = 0; k < r; ++k)
    for (std::size_t a = 0; a < n; ++a) c[jet_index(n, k + 1, a)] = v.coefficient(jet_index(n, k, a));
  return VectorField(std::move(c));
}

JetPoint scalar_action(const Rational& t, const JetPoint& u) {
  JetPoint out = u;
  Rational p = 1;
  for (int i = 0; i <= u.order(); ++i) {
    for (std::size_t a = 0; a < u.dimension(); ++a) out(i, a) = p * u(i, a);
    p *= t;
  }
  return out;
}

JetPoint tm_action(std::span<const Rational> v, const JetPoint& u) {
  if (v.size() != u.dimension()) throw DimensionMismatch("tm_action: vector has the wrong length");
  JetPoint out = u;
  for (std::size_t a = 0; a < v.size(); ++a) out(u.order(), a) -= v[a];
  return out;
}

TruncSeries<Poly> u_exp_apply(const URElem& e, const TruncSeries<Poly>& f) {
  const int r = f.order();
  for (const auto& [j, x] : e.terms)
    if (j < 1) throw std::invalid_argument("unipotent elements only have terms of positive level");
  // sum_k t^k X^k f / k!; X raises the e-degree, so X^{r+1} = 0.
  TruncSeries<Poly> out = f;
  TruncSeries<Poly> term = f;
  for (int k = 1; k <= r; ++k) {
    TruncSeries<Poly> next(r, f.zero());
    for (const auto& [j, x] : e.terms) {
      if (j > r) continue;
      TruncSeries<Poly> applied(r, f.zero());
      for (int i = 0; i + j <= r; ++i) {
        const Poly& g = term[static_cast<std::size_t>(i)];
        if (!g.is_zero()) applied[static_cast<std::size_t>(i + j)] = apply(x, g);
      }
      next += applied;
    }
    term = next.scaled(Poly::constant(f.zero().nvars(), e.t / k));
    out += term;
  }
  return out;
}

TruncSeries<Poly> u_exp_apply(const URElem& e, const Poly& f, int r) {
  TruncSeries<Poly> s(r, Poly(f.nvars()));
  s[0] = f;
  return u_exp_apply(e, s);
}

JetPoint u_exp_act(const URElem& e, const JetPoint& u) {
  const std::size_t n = u.dimension();
  const int r = u.order();
  const URElem inv = e.inverse();
  JetPoint out(n, r);
  for (std::size_t a = 0; a < n; ++a) {
    const TruncSeries<Poly> g = u_exp_apply(inv, Poly::variable(n, a), r);
    TruncSeries<Rational> acc(r, Rational(0));
    for (int k = 0; k <= r; ++k) {
      const Poly& gk = g[static_cast<std::size_t>(k)];
      if (!gk.is_zero()) acc += eval_jet(u, gk).shifted(k);
    }
    for (int i = 0; i <= r; ++i) out(i, a) = acc[static_cast<std::size_t>(i)];
  }
  return out;
}

bool q_membership(const JetPoint& u, const WeightedChart& w) {
  if (u.dimension() != w.n) throw DimensionMismatch("q_membership: chart mismatch");
  for (std::size_t k = w.base_dimension(); k < w.n; ++k) {
    const TruncSeries<Rational> s = eval_jet(u, w.coordinates[k]);
    for (int i = 0; i < w.weights[k] && i <= u.order(); ++i)
      if (!is_zero(s[static_cast<std::size_t>(i)])) return false;
  }
  return true;
}

namespace {

Rational draw_coefficient(std::mt19937_64& rng) {
  static const int nums[] = {-2, -1, 1, 2};
  const long p = nums[rng() % 4];
  const long q = static_cast<long>(rng() % 3) + 1;
  Rational c(p, q);
  c.canonicalize();
  return c;
}

// Random element of H_{-j}: generators with constant or affine coefficients.
VectorField draw_level_element(const std::vector<VectorField>& gens, std::size_t n, std::mt19937_64& rng) {
  VectorField x(n);
  for (const auto& g : gens) {
    Poly c = Poly::constant(n, draw_coefficient(rng));
    if (rng() % 2 == 0) c += Poly::variable(n, rng() % n) * draw_coefficient(rng);
    x += RatFunc(c) * g;
  }
  return x;
}

}  // namespace

FlowoutReport flowout_sample(const Filtration& f, const WeightedChart& w, std::size_t count, std::uint64_t seed) {
  FlowoutReport rep;
  std::mt19937_64 rng(seed);
  const std::size_t n = w.n;
  const int r = w.order;
  for (std::size_t s = 0; s < count; ++s) {
    JetPoint u = JetPoint::at(w.base_point, r);
    for (std::size_t b : w.tangent)
      for (int i = 1; i <= r; ++i) u(i, b) = draw_coefficient(rng);
    const int factors = static_cast<int>(rng() % 3) + 1;
    for (int k = 0; k < factors; ++k) {
      URElem e;
      for (int j = 1; j <= r; ++j) e.terms.emplace_back(j, draw_level_element(f.generators(j), n, rng));
      u = u_exp_act(e, u);
    }
    ++rep.tested;
    if (!q_membership(u, w)) {
      ++rep.failed;
      if (!rep.first_failure) rep.first_failure = u;
    }
  }
  rep.verdict = rep.failed == 0 ? Verdict::Pass : Verdict::Fail;
  return rep;
}

QDimension q_dimension(std::span<const std::size_t> ranks) {
  QDimension q;
  q.graded.assign(ranks.begin(), ranks.end());
  for (std::size_t k : ranks) q.total += k;
  return q;
}

}  // namespace lieweight
