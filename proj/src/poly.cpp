#include "lieweight/poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "lieweight/errors.hpp"

namespace lieweight {

// ---------------------------------------------------------------- Monomial

Monomial Monomial::variable(std::size_t nvars, std::size_t index, unsigned power) {
  Monomial m(nvars);
  m.exps_.at(index) = power;
  return m;
}

unsigned Monomial::degree() const { return std::accumulate(exps_.begin(), exps_.end(), 0u); }

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) out.exps_[i] += other.exps_[i];
  return out;
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] > other.exps_[i]) return false;
  return true;
}

Monomial Monomial::operator/(const Monomial& other) const {
  Monomial out(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) out.exps_[i] -= other.exps_[i];
  return out;
}

bool grlex_less(const Monomial& a, const Monomial& b) {
  const unsigned da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  return a < b;
}

bool TermOrder::operator()(const Monomial& a, const Monomial& b) const {
  const unsigned da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  return b < a;
}

// ---------------------------------------------------------------- Poly

void Poly::check_same(const Poly& other) const {
  if (nvars_ != other.nvars_) {
    std::ostringstream os;
    os << "polynomial chart mismatch: " << nvars_ << " vs " << other.nvars_ << " variables";
    throw DimensionMismatch(os.str());
  }
}

namespace {

// GMP assumes canonical operands; values built from (p, q) pairs may not be.
Rational canonical(Rational c) {
  c.canonicalize();
  return c;
}

}  // namespace

Poly Poly::constant(std::size_t nvars, const Rational& c) {
  Poly p(nvars);
  if (!lieweight::is_zero(c)) p.terms_.emplace(Monomial(nvars), canonical(c));
  return p;
}

Poly Poly::variable(std::size_t nvars, std::size_t index) {
  Poly p(nvars);
  p.terms_.emplace(Monomial::variable(nvars, index), Rational(1));
  return p;
}

Poly Poly::monomial(const Monomial& m, const Rational& c) {
  Poly p(m.size());
  if (!lieweight::is_zero(c)) p.terms_.emplace(m, canonical(c));
  return p;
}

Poly Poly::from_terms(std::size_t nvars, std::span<const std::pair<Monomial, Rational>> terms) {
  Poly p(nvars);
  for (const auto& [m, c] : terms) {
    if (m.size() != nvars) throw DimensionMismatch("monomial length differs from chart dimension");
    p.terms_[m] += canonical(c);
  }
  std::erase_if(p.terms_, [](const auto& t) { return lieweight::is_zero(t.second); });
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational Poly::constant_term() const { return coefficient(Monomial(nvars_)); }

Rational Poly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

int Poly::degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(terms_.rbegin()->first.degree());
}

int Poly::degree_in(std::size_t var) const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m[var]));
  return d;
}

const std::pair<const Monomial, Rational>& Poly::leading_term() const {
  // Within the top degree the TermOrder puts the lex-largest monomial first.
  const unsigned top = terms_.rbegin()->first.degree();
  auto it = std::find_if(terms_.begin(), terms_.end(),
                         [top](const auto& t) { return t.first.degree() == top; });
  return *it;
}

Poly Poly::operator-() const {
  Poly out(*this);
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

Poly& Poly::operator+=(const Poly& other) {
  check_same(other);
  for (const auto& [m, c] : other.terms_) {
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (lieweight::is_zero(it->second)) terms_.erase(it);
    }
  }
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  check_same(other);
  for (const auto& [m, c] : other.terms_) {
    auto [it, inserted] = terms_.try_emplace(m, -c);
    if (!inserted) {
      it->second -= c;
      if (lieweight::is_zero(it->second)) terms_.erase(it);
    }
  }
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  a.check_same(b);
  Poly out(a.nvars_);
  if (a.is_zero() || b.is_zero()) return out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.terms_[ma * mb] += ca * cb;
  std::erase_if(out.terms_, [](const auto& t) { return lieweight::is_zero(t.second); });
  return out;
}

Poly& Poly::operator*=(const Poly& other) { return *this = *this * other; }

Poly& Poly::operator*=(const Rational& c) {
  if (lieweight::is_zero(c)) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

bool Poly::operator==(const Poly& other) const {
  return nvars_ == other.nvars_ && terms_ == other.terms_;
}

Poly Poly::pow(unsigned k) const {
  Poly result = constant(nvars_, 1);
  Poly base = *this;
  while (k > 0) {
    if (k & 1u) result *= base;
    k >>= 1u;
    if (k > 0) base *= base;
  }
  return result;
}

Poly Poly::diff(std::size_t var) const {
  if (var >= nvars_) throw DimensionMismatch("differentiation variable out of range");
  Poly out(nvars_);
  for (const auto& [m, c] : terms_) {
    if (m[var] == 0) continue;
    Monomial d = m;
    d[var] -= 1;
    out.terms_.emplace(d, c * m[var]);
  }
  return out;
}

Rational Poly::evaluate(std::span<const Rational> point) const {
  if (point.size() != nvars_) throw DimensionMismatch("evaluation point has wrong dimension");
  Rational sum = 0;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < nvars_; ++i)
      for (unsigned k = 0; k < m[i]; ++k) t *= point[i];
    sum += t;
  }
  return sum;
}

Poly Poly::substitute(std::span<const Poly> images) const {
  if (images.size() != nvars_) throw DimensionMismatch("substitution needs one image per variable");
  const std::size_t target = images.empty() ? 0 : images.front().nvars();
  for (const auto& img : images)
    if (img.nvars() != target) throw DimensionMismatch("substitution images on different charts");
  // Cache powers per variable.
  std::vector<std::vector<Poly>> powers(nvars_);
  auto power = [&](std::size_t var, unsigned k) -> const Poly& {
    auto& cache = powers[var];
    if (cache.empty()) cache.push_back(constant(target, 1));
    while (cache.size() <= k) cache.push_back(cache.back() * images[var]);
    return cache[k];
  };
  Poly out(target);
  for (const auto& [m, c] : terms_) {
    Poly t = constant(target, c);
    for (std::size_t i = 0; i < nvars_; ++i)
      if (m[i] > 0) t *= power(i, m[i]);
    out += t;
  }
  return out;
}

Poly Poly::partial_evaluate(std::span<const std::size_t> vars,
                            std::span<const Rational> values) const {
  if (vars.size() != values.size()) throw std::invalid_argument("partial_evaluate: size mismatch");
  Poly out(nvars_);
  for (const auto& [m, c] : terms_) {
    Monomial reduced = m;
    Rational coeff = c;
    bool vanished = false;
    for (std::size_t k = 0; k < vars.size() && !vanished; ++k) {
      const unsigned e = m[vars[k]];
      if (e == 0) continue;
      if (lieweight::is_zero(values[k])) {
        vanished = true;
        break;
      }
      for (unsigned j = 0; j < e; ++j) coeff *= values[k];
      reduced[vars[k]] = 0;
    }
    if (vanished) continue;
    auto [it, inserted] = out.terms_.try_emplace(reduced, coeff);
    if (!inserted) {
      it->second += coeff;
      if (lieweight::is_zero(it->second)) out.terms_.erase(it);
    }
  }
  return out;
}

Poly Poly::embed(std::size_t new_nvars, std::span<const std::size_t> index_map) const {
  if (index_map.size() != nvars_) throw DimensionMismatch("embed: index map has wrong length");
  Poly out(new_nvars);
  for (const auto& [m, c] : terms_) {
    Monomial e(new_nvars);
    for (std::size_t i = 0; i < nvars_; ++i) e[index_map[i]] += m[i];
    out.terms_[e] += c;
  }
  std::erase_if(out.terms_, [](const auto& t) { return lieweight::is_zero(t.second); });
  return out;
}

std::vector<Poly> Poly::coefficients_in(std::size_t var) const {
  std::vector<Poly> out(static_cast<std::size_t>(std::max(degree_in(var), 0)) + 1, Poly(nvars_));
  for (const auto& [m, c] : terms_) {
    Monomial rest = m;
    rest[var] = 0;
    out[m[var]].terms_.emplace(rest, c);
  }
  return out;
}

Rational Poly::content() const {
  if (terms_.empty()) return 0;
  mpz_class num = 0, den = 1;
  for (const auto& [m, c] : terms_) {
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.get_num_mpz_t());
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  }
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// ---------------------------------------------------------------- division

std::optional<Poly> divide_exact(const Poly& a, const Poly& b) {
  if (a.nvars() != b.nvars()) throw DimensionMismatch("divide_exact: chart mismatch");
  if (b.is_zero()) throw std::domain_error("division by the zero polynomial");
  Poly q(a.nvars());
  Poly r = a;
  const auto& [mb, cb] = b.leading_term();
  while (!r.is_zero()) {
    const auto& [mr, cr] = r.leading_term();
    if (!mb.divides(mr)) return std::nullopt;
    Poly t = Poly::monomial(mr / mb, cr / cb);
    q += t;
    r -= t * b;
  }
  return q;
}

// ---------------------------------------------------------------- gcd

namespace {

Poly normalize_gcd(Poly p) {
  if (p.is_zero()) return p;
  p *= Rational(1) / p.content();
  if (sgn(p.leading_term().second) < 0) p = -p;
  return p;
}

Poly exact_quotient(const Poly& a, const Poly& b) {
  auto q = divide_exact(a, b);
  if (!q) throw InternalInconsistency("gcd: expected exact division");
  return *std::move(q);
}

Poly content_in(const Poly& p, std::size_t var);

Poly pseudo_remainder(const Poly& a, const Poly& b, std::size_t var) {
  const int db = b.degree_in(var);
  const Poly lcb = b.coefficients_in(var)[static_cast<std::size_t>(db)];
  Poly r = a;
  while (!r.is_zero() && r.degree_in(var) >= db) {
    const int dr = r.degree_in(var);
    const Poly lcr = r.coefficients_in(var)[static_cast<std::size_t>(dr)];
    const Poly shift =
        Poly::monomial(Monomial::variable(a.nvars(), var, static_cast<unsigned>(dr - db)));
    r = lcb * r - lcr * shift * b;
  }
  return r;
}

Poly primitive_part(const Poly& p, std::size_t var) { return exact_quotient(p, content_in(p, var)); }

Poly content_in(const Poly& p, std::size_t var) {
  Poly g(p.nvars());
  for (const Poly& c : p.coefficients_in(var)) {
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_constant()) break;
  }
  return g;
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
  if (a.nvars() != b.nvars()) throw DimensionMismatch("gcd: chart mismatch");
  if (a.is_zero()) return normalize_gcd(b);
  if (b.is_zero()) return normalize_gcd(a);
  if (a.is_constant() || b.is_constant()) return Poly::constant(a.nvars(), 1);

  std::size_t var = a.nvars();
  for (std::size_t v = 0; v < a.nvars() && var == a.nvars(); ++v)
    if (a.depends_on(v) || b.depends_on(v)) var = v;

  if (!a.depends_on(var)) return gcd(a, content_in(b, var));
  if (!b.depends_on(var)) return gcd(content_in(a, var), b);

  const Poly ca = content_in(a, var);
  const Poly cb = content_in(b, var);
  Poly pa = exact_quotient(a, ca);
  Poly pb = exact_quotient(b, cb);
  const Poly c = gcd(ca, cb);
  if (pa.degree_in(var) < pb.degree_in(var)) std::swap(pa, pb);

  Poly g(a.nvars());
  for (;;) {
    Poly r = pseudo_remainder(pa, pb, var);
    if (r.is_zero()) {
      g = pb;
      break;
    }
    if (r.degree_in(var) == 0) {
      g = Poly::constant(a.nvars(), 1);
      break;
    }
    pa = std::move(pb);
    pb = primitive_part(r, var);
  }
  if (!g.is_constant()) g = primitive_part(g, var);
  return normalize_gcd(c * g);
}

}  // namespace lieweight
