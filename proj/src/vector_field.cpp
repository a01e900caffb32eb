#include "lieweight/vector_field.hpp"

#include <algorithm>
#include <stdexcept>

#include "lieweight/errors.hpp"

namespace lieweight {

namespace {

void check_dims(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw DimensionMismatch(std::string(what) + ": chart mismatch");
}

}  // namespace

VectorField::VectorField(std::vector<RatFunc> coeffs) : coeffs_(std::move(coeffs)) {
  for (const auto& c : coeffs_) check_dims(c.nvars(), coeffs_.size(), "vector field");
}

VectorField VectorField::from_polys(std::vector<Poly> coeffs) {
  std::vector<RatFunc> r;
  r.reserve(coeffs.size());
  for (auto& p : coeffs) r.emplace_back(std::move(p));
  return VectorField(std::move(r));
}

VectorField VectorField::coordinate(std::size_t n, std::size_t a) {
  VectorField v(n);
  v.coeffs_.at(a) = RatFunc::constant(n, 1);
  return v;
}

bool VectorField::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const RatFunc& f) { return f.is_zero(); });
}

bool VectorField::is_polynomial() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const RatFunc& f) { return f.is_polynomial(); });
}

int VectorField::degree() const {
  int d = -1;
  for (const auto& c : coeffs_) d = std::max(d, c.num().degree());
  return d;
}

std::vector<Rational> VectorField::evaluate(std::span<const Rational> point) const {
  std::vector<Rational> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(c.evaluate(point));
  return out;
}

VectorField VectorField::operator-() const {
  VectorField out(*this);
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

VectorField& VectorField::operator+=(const VectorField& other) {
  check_dims(dimension(), other.dimension(), "vector field sum");
  for (std::size_t a = 0; a < coeffs_.size(); ++a) coeffs_[a] += other.coeffs_[a];
  return *this;
}

VectorField& VectorField::operator-=(const VectorField& other) {
  check_dims(dimension(), other.dimension(), "vector field difference");
  for (std::size_t a = 0; a < coeffs_.size(); ++a) coeffs_[a] -= other.coeffs_[a];
  return *this;
}

VectorField& VectorField::operator*=(const RatFunc& f) {
  check_dims(dimension(), f.nvars(), "vector field scaling");
  for (auto& c : coeffs_) c *= f;
  return *this;
}

bool VectorField::operator==(const VectorField& other) const { return coeffs_ == other.coeffs_; }

VectorField lie_bracket(const VectorField& x, const VectorField& y) {
  check_dims(x.dimension(), y.dimension(), "lie_bracket");
  const std::size_t n = x.dimension();
  std::vector<RatFunc> out(n, RatFunc(n));
  for (std::size_t a = 0; a < n; ++a) out[a] = apply(x, y.coefficient(a)) - apply(y, x.coefficient(a));
  return VectorField(std::move(out));
}

RatFunc apply(const VectorField& x, const RatFunc& f) {
  check_dims(x.dimension(), f.nvars(), "apply");
  RatFunc out(f.nvars());
  for (std::size_t a = 0; a < x.dimension(); ++a) {
    const RatFunc& c = x.coefficient(a);
    if (c.is_zero()) continue;
    RatFunc d = f.diff(a);
    if (d.is_zero()) continue;
    out += c * d;
  }
  return out;
}

Poly apply(const VectorField& x, const Poly& f) {
  check_dims(x.dimension(), f.nvars(), "apply");
  Poly out(f.nvars());
  for (std::size_t a = 0; a < x.dimension(); ++a) {
    const RatFunc& c = x.coefficient(a);
    if (c.is_zero()) continue;
    Poly d = f.diff(a);
    if (d.is_zero()) continue;
    out += c.as_poly() * d;
  }
  return out;
}

RatFunc apply_word(const DiffOpWord& word, const RatFunc& f) {
  RatFunc g = f;
  const auto& fs = word.factors();
  for (auto it = fs.rbegin(); it != fs.rend(); ++it) {
    if (g.is_zero()) break;
    g = apply(*it, g);
  }
  return g;
}

RatFunc restrict_to(const RatFunc& f, const Submanifold& n) {
  check_dims(f.nvars(), n.ambient_dimension(), "restrict_to");
  const auto& fiber = n.fiber_indices();
  const std::vector<Rational> zeros(fiber.size(), Rational(0));
  Poly den = f.den().partial_evaluate(fiber, zeros);
  if (den.is_zero()) throw PreconditionError("denominator vanishes identically on the submanifold");
  return RatFunc(f.num().partial_evaluate(fiber, zeros), std::move(den));
}

}  // namespace lieweight
