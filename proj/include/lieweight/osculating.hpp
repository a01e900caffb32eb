#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "lieweight/filtration.hpp"
#include "lieweight/weighted.hpp"

namespace lieweight {

using LieVector = std::vector<Rational>;

/// Finite-dimensional negatively graded Lie algebra over Q. Basis element k
/// has degree -level(k), with levels nondecreasing in k.
class GradedLieAlg {
 public:
  GradedLieAlg() = default;
  GradedLieAlg(std::vector<int> levels, int order);

  std::size_t dimension() const { return levels_.size(); }
  int order() const { return order_; }
  int level(std::size_t k) const { return levels_.at(k); }
  const std::vector<int>& levels() const { return levels_; }
  /// dim of the degree -1, ..., -r pieces.
  std::vector<std::size_t> graded_dimensions() const;
  /// Basis positions of degree -i.
  std::vector<std::size_t> basis_of_level(int i) const;

  /// Sets [e_a, e_b] = v and [e_b, e_a] = -v.
  void set_bracket(std::size_t a, std::size_t b, const LieVector& v);
  const LieVector& bracket_basis(std::size_t a, std::size_t b) const { return c_.at(a).at(b); }
  LieVector bracket(const LieVector& x, const LieVector& y) const;
  LieVector zero() const { return LieVector(dimension(), Rational(0)); }
  LieVector basis_vector(std::size_t k) const;

  bool is_antisymmetric() const;
  bool satisfies_jacobi() const;
  /// c^k_{ab} = 0 unless level k = level a + level b <= r.
  bool is_graded() const;
  bool is_abelian() const;

 private:
  std::vector<int> levels_;
  int order_ = 0;
  std::vector<std::vector<LieVector>> c_;
};

/// Baker-Campbell-Hausdorff product through the Dynkin series, truncated at
/// bracket length r (exact for a graded algebra of depth r).
LieVector bch(const GradedLieAlg& l, const LieVector& x, const LieVector& y);

/// p_m = H_{-i} / (H_{-i+1} + I_m H_{-i}) with representatives.
struct OsculatingAlgebra {
  GradedLieAlg algebra;
  /// Pass, or inconclusive when some bracket was not expressible within the
  /// degree bound (the structure constants are then unverified).
  Verdict verdict = Verdict::Pass;
  std::vector<VectorField> representatives;
  /// Basis element k is the class of generators(level k)[source[k]].
  std::vector<std::size_t> sources;
  std::vector<Rational> point;

  struct Level {
    std::size_t candidates = 0;
    /// Spanning set of the relation space inside Q^candidates.
    std::vector<LieVector> relations;
    /// Candidate positions of the basis, in order.
    std::vector<std::size_t> basis;
    std::size_t offset = 0;  // position of the first basis element
  };
  std::vector<Level> levels;  // index i - 1

  /// Class of sum_l v_l [generators(i)[l]] in algebra coordinates.
  LieVector class_of(int i, const LieVector& v) const;
};

OsculatingAlgebra osculating_at(const Filtration& f, std::span<const Rational> m, int degree_bound);

/// Graded subspace of an algebra given by spanning vectors.
struct GradedSubalg {
  std::vector<LieVector> vectors;  // a basis, grouped by level
  std::vector<std::size_t> dims;   // per level 1..r
  std::vector<VectorField> representatives;
  Verdict verdict = Verdict::Pass;
};

/// r_m: classes of the fields of H_{-i} tangent to N, for m the base point
/// of N. The tangency solve uses coefficients in the coordinates of N.
GradedSubalg tangent_subalg(const Filtration& f, const Submanifold& n, const OsculatingAlgebra& p, int degree_bound);

bool is_closed(const GradedLieAlg& l, const GradedSubalg& s);

/// x~^s d/dx~_a with s.w >= w_a - i and |s| <= cap, on the slot chart; by
/// slot a, then s in ascending degree.
std::vector<VectorField> kmodule_generators(const WeightedChart& w, int i, int cap);

struct HHItem {
  std::string name;
  Verdict verdict = Verdict::Pass;
  std::string detail;
};

struct HHReport {
  Verdict verdict = Verdict::Pass;
  std::vector<std::size_t> p_dims, r_dims, quotient_dims;
  /// Number of fiber slots of each weight 1..r.
  std::vector<std::size_t> weight_multiplicities;
  std::vector<HHItem> items;
};

/// Dimension and subalgebra checks comparing P_m / R_m with the fiber of the
/// weighted normal bundle at the base point of N:
///   dimension          dim p - dim r = n - k_0
///   graded_dimensions  dim p^{-i} - dim r^{-i} = k_i - k_{i-1}
///   tangent_into_l     r_m lands in l_m under p_m -> k_m
///   quotient_onto      p^{-i} -> k^{-i} / l^{-i} is onto
/// A surplus on the p side is reported inconclusive (possibly missed
/// relations at the degree bound), a deficit as a failure.
HHReport verify_hh(const Filtration& f, const Submanifold& n, const WeightedChart& w, int degree_bound);
HHReport verify_hh(const Filtration& f, const Submanifold& n, const WeightedChart& w, const OsculatingAlgebra& p,
                   const GradedSubalg& r);

}  // namespace lieweight
