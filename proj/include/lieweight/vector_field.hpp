#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lieweight/ratfunc.hpp"
#include "lieweight/submanifold.hpp"

namespace lieweight {

/// X = sum_a f_a d/dx_a on an n-dimensional polynomial chart.
class VectorField {
 public:
  explicit VectorField(std::size_t n = 0) : coeffs_(n, RatFunc(n)) {}
  /// Throws DimensionMismatch unless every coefficient lives on an
  /// n-variable chart with n = coeffs.size().
  explicit VectorField(std::vector<RatFunc> coeffs);
  static VectorField from_polys(std::vector<Poly> coeffs);
  /// d/dx_a.
  static VectorField coordinate(std::size_t n, std::size_t a);

  std::size_t dimension() const { return coeffs_.size(); }
  const RatFunc& coefficient(std::size_t a) const { return coeffs_.at(a); }
  const std::vector<RatFunc>& coefficients() const { return coeffs_; }
  bool is_zero() const;
  bool is_polynomial() const;
  /// Throws std::domain_error if the coefficient is not polynomial.
  Poly poly_coefficient(std::size_t a) const { return coeffs_.at(a).as_poly(); }
  /// Largest total degree of a numerator (-1 for the zero field).
  int degree() const;

  std::vector<Rational> evaluate(std::span<const Rational> point) const;

  VectorField operator-() const;
  VectorField& operator+=(const VectorField& other);
  VectorField& operator-=(const VectorField& other);
  VectorField& operator*=(const RatFunc& f);
  friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
  friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
  friend VectorField operator*(const RatFunc& f, VectorField x) { return x *= f; }
  bool operator==(const VectorField& other) const;

 private:
  std::vector<RatFunc> coeffs_;
};

/// [X, Y]^a = sum_b (X^b d_b Y^a - Y^b d_b X^a).
VectorField lie_bracket(const VectorField& x, const VectorField& y);

/// Lie derivative X f = sum_a X^a df/dx_a.
RatFunc apply(const VectorField& x, const RatFunc& f);
/// Polynomial shortcut; throws std::domain_error if X has a non-polynomial
/// coefficient.
Poly apply(const VectorField& x, const Poly& f);

/// Composite operator V_1 o V_2 o ... o V_k; applied right to left.
class DiffOpWord {
 public:
  DiffOpWord() = default;
  explicit DiffOpWord(std::vector<VectorField> factors) : factors_(std::move(factors)) {}
  const std::vector<VectorField>& factors() const { return factors_; }
  std::size_t order() const { return factors_.size(); }

 private:
  std::vector<VectorField> factors_;
};

RatFunc apply_word(const DiffOpWord& word, const RatFunc& f);

/// Sets every fiber coordinate to zero. The result keeps the ambient chart
/// but only involves tangent variables. Throws PreconditionError if the
/// denominator vanishes identically on N.
RatFunc restrict_to(const RatFunc& f, const Submanifold& n);

}  // namespace lieweight
