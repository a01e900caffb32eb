#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "lieweight/filtration.hpp"
#include "lieweight/weighted.hpp"

namespace lieweight {

/// c_0 + c_1 e + ... + c_r e^r with e^{r+1} = 0. T is Rational, Poly or
/// RatFunc.
template <class T>
class TruncSeries {
 public:
  TruncSeries() = default;
  TruncSeries(int order, const T& zero) : c_(static_cast<std::size_t>(order) + 1, zero) {}
  explicit TruncSeries(std::vector<T> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) throw std::invalid_argument("a truncated series needs at least one coefficient");
  }

  int order() const { return static_cast<int>(c_.size()) - 1; }
  const T& operator[](std::size_t i) const { return c_.at(i); }
  T& operator[](std::size_t i) { return c_.at(i); }
  const std::vector<T>& coefficients() const { return c_; }

  TruncSeries& operator+=(const TruncSeries& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  TruncSeries& operator-=(const TruncSeries& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
  friend TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }
  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
    a.check(b);
    TruncSeries out(a.order(), a.zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; i + j < a.c_.size(); ++j)
        if (!is_zero(b.c_[j])) out.c_[i + j] += a.c_[i] * b.c_[j];
    }
    return out;
  }
  TruncSeries scaled(const T& s) const {
    TruncSeries out = *this;
    for (auto& c : out.c_) c = c * s;
    return out;
  }
  /// Multiplication by e^k.
  TruncSeries shifted(int k) const {
    TruncSeries out(order(), zero());
    for (std::size_t i = 0; i + static_cast<std::size_t>(k) < c_.size(); ++i) out.c_[i + static_cast<std::size_t>(k)] = c_[i];
    return out;
  }
  bool operator==(const TruncSeries& o) const { return c_ == o.c_; }

  /// Multiplicative inverse; requires an invertible constant term.
  TruncSeries inverse() const {
    if (is_zero(c_[0])) throw std::domain_error("series with zero constant term is not invertible");
    TruncSeries out(order(), zero());
    const T one = c_[0] / c_[0];
    out.c_[0] = one / c_[0];
    for (std::size_t k = 1; k < c_.size(); ++k) {
      T acc = zero();
      for (std::size_t i = 1; i <= k; ++i)
        if (!is_zero(c_[i])) acc += c_[i] * out.c_[k - i];
      out.c_[k] = zero() - acc / c_[0];
    }
    return out;
  }

  T zero() const {
    T z = c_[0];
    z -= c_[0];
    return z;
  }

 private:
  void check(const TruncSeries& o) const {
    if (o.c_.size() != c_.size()) throw std::invalid_argument("truncated series of different orders");
  }

  std::vector<T> c_;
};

/// Point of T_rM: components x_a^{(i)} for i = 0..r.
class JetPoint {
 public:
  JetPoint(std::size_t n, int r) : n_(n), r_(r), x_((static_cast<std::size_t>(r) + 1) * n, Rational(0)) {}
  /// The constant jet at a point.
  static JetPoint at(std::span<const Rational> point, int r);

  std::size_t dimension() const { return n_; }
  int order() const { return r_; }
  Rational& operator()(int i, std::size_t a) { return x_.at(static_cast<std::size_t>(i) * n_ + a); }
  const Rational& operator()(int i, std::size_t a) const { return x_.at(static_cast<std::size_t>(i) * n_ + a); }
  std::vector<Rational> base() const { return std::vector<Rational>(x_.begin(), x_.begin() + static_cast<std::ptrdiff_t>(n_)); }
  TruncSeries<Rational> component(std::size_t a) const;
  /// Values in jet-chart order (index i * n + a).
  const std::vector<Rational>& flat() const { return x_; }
  bool operator==(const JetPoint&) const = default;

 private:
  std::size_t n_;
  int r_;
  std::vector<Rational> x_;
};

/// Jet-chart index of x_a^{(i)}.
inline std::size_t jet_index(std::size_t n, int i, std::size_t a) { return static_cast<std::size_t>(i) * n + a; }

/// Names "<var>_<i>" for the (r+1) n jet variables.
Chart jet_chart(const Chart& base, int r);

/// sum_i f^{(i)}(u) e^i.
TruncSeries<Rational> eval_jet(const JetPoint& u, const Poly& f);
/// Throws std::domain_error if the denominator vanishes at the base point.
TruncSeries<Rational> eval_jet(const JetPoint& u, const RatFunc& f);

/// f^{(0)}, ..., f^{(r)} as polynomials on the jet chart.
std::vector<Poly> lift_components(const Poly& f, int r);
Poly lift_function(const Poly& f, int i, int r);

/// X^{(-j)} = sum_a sum_{k >= j} f_a^{(k-j)} d/dx_a^{(k)}; X must have
/// polynomial coefficients.
VectorField lift_vf(const VectorField& x, int j, int r);

/// sum_k g_k X_k^{(-j_k)} with coefficients on the jet chart.
class LiftCombination {
 public:
  struct Term {
    Poly coefficient;
    VectorField field;
    int lift;
  };

  LiftCombination(std::size_t n, int r) : n_(n), r_(r) {}
  void add(Poly coefficient, VectorField field, int lift);
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t dimension() const { return n_; }
  int order() const { return r_; }
  VectorField to_field() const;

 private:
  std::size_t n_;
  int r_;
  std::vector<Term> terms_;
};

/// e . X^{(-j)} = X^{(-j-1)}, e . X^{(-r)} = 0, extended linearly.
LiftCombination koszul_shift(const LiftCombination& l);
/// The same action on an arbitrary jet-chart field: d/dx_a^{(k)} moves to
/// d/dx_a^{(k+1)}, top components drop out.
VectorField koszul_shift(const VectorField& v, std::size_t n, int r);

/// x_a^{(i)} -> t^i x_a^{(i)}.
JetPoint scalar_action(const Rational& t, const JetPoint& u);
/// u - v e^r.
JetPoint tm_action(std::span<const Rational> v, const JetPoint& u);

/// exp(t sum_j X_j e^j) in the unipotent group; levels j >= 1.
struct URElem {
  std::vector<std::pair<int, VectorField>> terms;
  Rational t = 1;

  URElem inverse() const { return URElem{terms, -t}; }
};

/// exp(tX) applied to f, as a series of polynomials on M.
TruncSeries<Poly> u_exp_apply(const URElem& e, const TruncSeries<Poly>& f);
TruncSeries<Poly> u_exp_apply(const URElem& e, const Poly& f, int r);

/// U . u = u o U^{-1}.
JetPoint u_exp_act(const URElem& e, const JetPoint& u);

/// Whether x~_a^{(i)}(u) = 0 for every slot a and every i < w_a.
bool q_membership(const JetPoint& u, const WeightedChart& w);

struct FlowoutReport {
  Verdict verdict = Verdict::Pass;
  std::size_t tested = 0;
  std::size_t failed = 0;
  std::optional<JetPoint> first_failure;
};

/// Applies seeded random products of exponentials of level generators to
/// random jets of N at m and tests Q-membership of every result.
FlowoutReport flowout_sample(const Filtration& f, const WeightedChart& w, std::size_t count, std::uint64_t seed);

struct QDimension {
  std::size_t total = 0;
  /// dim of the graded pieces of the linear approximation, k_0..k_r.
  std::vector<std::size_t> graded;
};

QDimension q_dimension(std::span<const std::size_t> ranks);

}  // namespace lieweight
