#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "lieweight/rational.hpp"

namespace lieweight {

/// Exponent vector x^s = x_1^{s_1} ... x_n^{s_n}.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<unsigned> exps) : exps_(std::move(exps)) {}
  Monomial(std::initializer_list<unsigned> exps) : exps_(exps) {}

  static Monomial variable(std::size_t nvars, std::size_t index, unsigned power = 1);

  std::size_t size() const { return exps_.size(); }
  unsigned operator[](std::size_t i) const { return exps_[i]; }
  unsigned& operator[](std::size_t i) { return exps_[i]; }
  std::span<const unsigned> exponents() const { return exps_; }

  unsigned degree() const;
  bool is_one() const { return degree() == 0; }

  Monomial operator*(const Monomial& other) const;
  bool divides(const Monomial& other) const;
  /// Requires divides(other) == true when called as other / *this.
  Monomial operator/(const Monomial& other) const;

  /// Plain lexicographic comparison of exponent vectors.
  auto operator<=>(const Monomial&) const = default;
  bool operator==(const Monomial&) const = default;

 private:
  std::vector<unsigned> exps_;
};

/// Graded lexicographic order (x_1 > x_2 > ... > x_n); the leading term of a
/// polynomial is its grlex-largest monomial.
bool grlex_less(const Monomial& a, const Monomial& b);

/// Storage and print order: ascending total degree, and within one degree the
/// lexicographically larger monomial first (so "z - x^2 - x*y").
struct TermOrder {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Sparse polynomial with rational coefficients in a fixed number of
/// variables. Zero coefficients are never stored, so equality of term maps is
/// equality of polynomials.
class Poly {
 public:
  using Terms = std::map<Monomial, Rational, TermOrder>;

  explicit Poly(std::size_t nvars = 0) : nvars_(nvars) {}

  static Poly constant(std::size_t nvars, const Rational& c);
  static Poly variable(std::size_t nvars, std::size_t index);
  static Poly monomial(const Monomial& m, const Rational& c = 1);
  /// Sums repeated monomials; the result is independent of input order.
  static Poly from_terms(std::size_t nvars, std::span<const std::pair<Monomial, Rational>> terms);

  std::size_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  Rational coefficient(const Monomial& m) const;

  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  int degree_in(std::size_t var) const;
  bool depends_on(std::size_t var) const { return degree_in(var) > 0; }

  /// Grlex-largest term. Precondition: !is_zero().
  const std::pair<const Monomial, Rational>& leading_term() const;

  Poly operator-() const;
  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Poly& other);
  Poly& operator*=(const Rational& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  bool operator==(const Poly& other) const;

  Poly pow(unsigned k) const;
  Poly diff(std::size_t var) const;
  Rational evaluate(std::span<const Rational> point) const;
  /// Simultaneous substitution x_a -> images[a]; all images share a chart.
  Poly substitute(std::span<const Poly> images) const;
  /// Sets the listed variables to the given values, keeping the chart.
  Poly partial_evaluate(std::span<const std::size_t> vars, std::span<const Rational> values) const;
  /// Moves variable a to position index_map[a] of a chart with new_nvars
  /// variables.
  Poly embed(std::size_t new_nvars, std::span<const std::size_t> index_map) const;

  /// Coefficients with respect to one variable: result[k] is the coefficient
  /// of var^k (a polynomial not involving var).
  std::vector<Poly> coefficients_in(std::size_t var) const;

  /// Largest rational c > 0 such that this/c has coprime integer
  /// coefficients. Zero for the zero polynomial.
  Rational content() const;

 private:
  void check_same(const Poly& other) const;

  std::size_t nvars_ = 0;
  Terms terms_;
};

inline bool is_zero(const Poly& p) { return p.is_zero(); }

/// Exact quotient a / b, or nullopt when b does not divide a.
std::optional<Poly> divide_exact(const Poly& a, const Poly& b);

/// Greatest common divisor over Q, normalized to coprime integer coefficients
/// with positive grlex-leading coefficient (gcd(0, 0) = 0).
Poly gcd(const Poly& a, const Poly& b);

}  // namespace lieweight
