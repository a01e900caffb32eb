#include "lieweight/ratfunc.hpp"

#include <stdexcept>

#include "lieweight/errors.hpp"

namespace lieweight {

RatFunc::RatFunc(Poly p) : num_(std::move(p)), den_(Poly::constant(num_.nvars(), 1)) {}

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (num_.nvars() != den_.nvars()) throw DimensionMismatch("rational function: chart mismatch");
  if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
  normalize();
}

void RatFunc::normalize() {
  if (num_.is_zero()) {
    den_ = Poly::constant(num_.nvars(), 1);
    return;
  }
  if (!den_.is_constant() && num_.degree() <= kGcdDegreeLimit && den_.degree() <= kGcdDegreeLimit) {
    const Poly g = gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = *divide_exact(num_, g);
      den_ = *divide_exact(den_, g);
    }
  }
  Rational scale = Rational(1) / den_.content();
  if (sgn(den_.leading_term().second) < 0) scale = -scale;
  if (scale != 1) {
    num_ *= scale;
    den_ *= scale;
  }
}

Poly RatFunc::as_poly() const {
  if (!den_.is_constant()) throw std::domain_error("rational function is not a polynomial");
  return num_;
}

Rational RatFunc::as_constant() const {
  if (!is_constant()) throw std::domain_error("rational function is not constant");
  return num_.constant_term();
}

RatFunc& RatFunc::operator+=(const RatFunc& other) {
  if (den_.is_constant() && other.den_.is_constant()) {
    num_ += other.num_;
    if (num_.is_zero()) den_ = Poly::constant(num_.nvars(), 1);
    return *this;
  }
  if (den_ == other.den_) {
    num_ += other.num_;
  } else {
    num_ = num_ * other.den_ + other.num_ * den_;
    den_ *= other.den_;
  }
  normalize();
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& other) { return *this += -other; }

RatFunc& RatFunc::operator*=(const RatFunc& other) {
  if (den_.is_constant() && other.den_.is_constant()) {
    num_ *= other.num_;
    if (num_.is_zero()) den_ = Poly::constant(num_.nvars(), 1);
    return *this;
  }
  num_ *= other.num_;
  den_ *= other.den_;
  normalize();
  return *this;
}

RatFunc& RatFunc::operator/=(const RatFunc& other) {
  if (other.is_zero()) throw std::domain_error("division by the zero rational function");
  num_ *= other.den_;
  den_ *= other.num_;
  normalize();
  return *this;
}

bool RatFunc::operator==(const RatFunc& other) const {
  if (nvars() != other.nvars()) return false;
  if (den_ == other.den_) return num_ == other.num_;
  return num_ * other.den_ == other.num_ * den_;
}

RatFunc RatFunc::diff(std::size_t var) const {
  if (den_.is_constant()) return RatFunc(num_.diff(var), den_, Normalized{});
  return RatFunc(num_.diff(var) * den_ - num_ * den_.diff(var), den_ * den_);
}

Rational RatFunc::evaluate(std::span<const Rational> point) const {
  const Rational d = den_.evaluate(point);
  if (lieweight::is_zero(d)) throw std::domain_error("denominator vanishes at evaluation point");
  return num_.evaluate(point) / d;
}

RatFunc RatFunc::partial_evaluate(std::span<const std::size_t> vars,
                                  std::span<const Rational> values) const {
  Poly d = den_.partial_evaluate(vars, values);
  if (d.is_zero()) throw std::domain_error("denominator vanishes identically after restriction");
  return RatFunc(num_.partial_evaluate(vars, values), std::move(d));
}

RatFunc RatFunc::embed(std::size_t new_nvars, std::span<const std::size_t> index_map) const {
  return RatFunc(num_.embed(new_nvars, index_map), den_.embed(new_nvars, index_map));
}

RatFunc substitute(const Poly& p, std::span<const RatFunc> images) {
  if (images.size() != p.nvars()) throw DimensionMismatch("substitution needs one image per variable");
  const std::size_t target = images.empty() ? 0 : images.front().nvars();
  bool polynomial = true;
  for (const auto& img : images) {
    if (img.nvars() != target) throw DimensionMismatch("substitution images on different charts");
    polynomial = polynomial && img.is_polynomial();
  }
  if (polynomial) {
    std::vector<Poly> polys;
    polys.reserve(images.size());
    for (const auto& img : images) polys.push_back(img.as_poly());
    return RatFunc(p.substitute(polys));
  }
  std::vector<std::vector<RatFunc>> powers(p.nvars());
  auto power = [&](std::size_t var, unsigned k) -> const RatFunc& {
    auto& cache = powers[var];
    if (cache.empty()) cache.push_back(RatFunc::constant(target, 1));
    while (cache.size() <= k) cache.push_back(cache.back() * images[var]);
    return cache[k];
  };
  RatFunc out(target);
  for (const auto& [m, c] : p.terms()) {
    RatFunc t = RatFunc::constant(target, c);
    for (std::size_t i = 0; i < p.nvars(); ++i)
      if (m[i] > 0) t *= power(i, m[i]);
    out += t;
  }
  return out;
}

RatFunc substitute(const RatFunc& f, std::span<const RatFunc> images) {
  RatFunc den = substitute(f.den(), images);
  if (den.is_zero()) throw std::domain_error("substitution makes the denominator vanish");
  return substitute(f.num(), images) / den;
}

}  // namespace lieweight
