#pragma once

#include <span>

#include "lieweight/poly.hpp"

namespace lieweight {

/// Quotient of polynomials over Q.
///
/// Normal form: the denominator has coprime integer coefficients and a
/// positive grlex-leading coefficient; a constant denominator is 1. A common
/// polynomial factor is cancelled when both parts have total degree at most
/// kGcdDegreeLimit. Equality compares cross products, so it does not depend
/// on whether the gcd step ran.
class RatFunc {
 public:
  static constexpr int kGcdDegreeLimit = 8;

  explicit RatFunc(std::size_t nvars = 0) : num_(nvars), den_(Poly::constant(nvars, 1)) {}
  RatFunc(Poly p);  // NOLINT(google-explicit-constructor): polynomials embed
  /// Throws std::domain_error when den is zero.
  RatFunc(Poly num, Poly den);

  static RatFunc constant(std::size_t nvars, const Rational& c) {
    return RatFunc(Poly::constant(nvars, c));
  }

  std::size_t nvars() const { return num_.nvars(); }
  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  /// Throws std::domain_error if the denominator is not constant.
  Poly as_poly() const;
  /// Valid for constant values only.
  Rational as_constant() const;

  RatFunc operator-() const { return RatFunc(-num_, den_, Normalized{}); }
  RatFunc& operator+=(const RatFunc& other);
  RatFunc& operator-=(const RatFunc& other);
  RatFunc& operator*=(const RatFunc& other);
  RatFunc& operator/=(const RatFunc& other);
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  bool operator==(const RatFunc& other) const;

  RatFunc diff(std::size_t var) const;
  /// Throws std::domain_error if the denominator vanishes at the point.
  Rational evaluate(std::span<const Rational> point) const;
  RatFunc partial_evaluate(std::span<const std::size_t> vars, std::span<const Rational> values) const;
  RatFunc embed(std::size_t new_nvars, std::span<const std::size_t> index_map) const;

 private:
  struct Normalized {};
  RatFunc(Poly num, Poly den, Normalized) : num_(std::move(num)), den_(std::move(den)) {}
  void normalize();

  Poly num_;
  Poly den_;
};

inline bool is_zero(const RatFunc& f) { return f.is_zero(); }

/// Simultaneous substitution of rational-function images into a polynomial.
RatFunc substitute(const Poly& p, std::span<const RatFunc> images);
RatFunc substitute(const RatFunc& f, std::span<const RatFunc> images);

}  // namespace lieweight
