#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "lieweight/chart.hpp"
#include "lieweight/filtration.hpp"

namespace lieweight {

/// Transverse fields V_{k0+1}, ..., V_n, one per fiber slot, in slot order.
struct Frame {
  std::vector<VectorField> fields;
  /// V_a is taken from H_{-levels[a]}; this is the weight of slot a.
  std::vector<int> levels;
  /// Position of V_a in generators(levels[a]).
  std::vector<std::size_t> sources;
};

/// Greedy scan over levels 1..r and the generator lists in order, adopting a
/// generator when its value at m leaves the span of T_mN and the fields
/// already chosen. Throws PreconditionError unless cleanness passed and the
/// scan adopts exactly k_i - k_{i-1} fields at level i.
Frame select_frame(const Filtration& f, const Submanifold& n, const CleanResult& clean);

/// Fiber coordinates dual to a frame along N.
struct NormalizedFrame {
  /// G(a, c) = (V_a x_c)|_N over fiber slots a and fiber variables c.
  Matrix<RatFunc> pairing;
  Matrix<RatFunc> pairing_inverse;
  /// x^_a = sum_c (G^{-1})(c, a) x_c, so that (V_a x^_b)|_N = delta_ab.
  std::vector<RatFunc> coordinates;
};

/// Throws PreconditionError when det G vanishes at m.
NormalizedFrame normalize_chart(const Frame& frame, const Submanifold& n);

/// Multi-indices s over the fiber slots with w.s < bound and |s| >= min_order,
/// ordered by |s| and then lexicographically.
std::vector<Monomial> weighted_indices(std::span<const int> weights, int bound, unsigned min_order);

/// Largest i <= cap such that (V^s f)|_N = 0 whenever w.s < i. V^s applies
/// V_1^{s_1} V_2^{s_2} ... with the rightmost factor first.
int filtration_degree(const RatFunc& f, std::span<const VectorField> frame, std::span<const int> weights,
                      const Submanifold& n, int cap);

/// One step of the coordinate recursion: x~_slot gained chi * x~^s, where
/// c = (V^s x~^s)|_N is always s!.
struct CorrectionRecord {
  std::size_t slot = 0;  // fiber slot
  Monomial s;            // over fiber slots
  Rational c;
  RatFunc chi;
};

/// Weighted coordinates adapted to a filtration along N.
///
/// Slots: first the coordinates of N (weight 0, unchanged), then one slot
/// per frame field. coordinates[k] is x~_k written in the original chart;
/// inverse[c] writes the original x_c in the slot chart.
struct WeightedChart {
  std::size_t n = 0;
  int order = 0;
  std::vector<std::size_t> tangent;  // original indices of the base slots
  std::vector<std::size_t> fiber;    // original fiber variables, sorted
  std::vector<Rational> base_point;
  Frame frame;
  NormalizedFrame normalized;
  std::vector<int> weights;
  std::vector<RatFunc> coordinates;
  std::vector<RatFunc> inverse;
  std::vector<CorrectionRecord> records;
  /// Names for the slot chart (base names, then the fiber variable each
  /// frame field pairs with at m).
  std::vector<std::string> slot_names;

  std::size_t base_dimension() const { return tangent.size(); }
  Submanifold submanifold() const { return Submanifold(n, tangent, base_point); }
  Chart slot_chart() const { return Chart(slot_names); }
  std::vector<int> fiber_weights() const {
    return std::vector<int>(weights.begin() + static_cast<std::ptrdiff_t>(tangent.size()), weights.end());
  }
};

/// Builds weighted coordinates: cleanness, frame, normalization and the
/// recursion over admissible multi-indices for every slot of weight >= 3.
/// Throws PreconditionError if N is not clean, InternalInconsistency if a
/// normalization constant differs from s! or verification fails.
WeightedChart weighted_coordinates(const Filtration& f, const Submanifold& n);
WeightedChart weighted_coordinates(const Filtration& f, const Submanifold& n, const CleanResult& clean);
/// Same, naming the slots after the chart's variables.
WeightedChart weighted_coordinates(const Filtration& f, const Submanifold& n, const Chart& chart);

/// f rewritten in the slot chart.
RatFunc to_weighted(const RatFunc& f, const WeightedChart& w);

struct WeightedDegreeResult {
  /// nullopt for the zero function.
  std::optional<int> degree;
  /// A slot-chart monomial attaining the degree.
  Monomial witness;
};

WeightedDegreeResult weighted_degree(const RatFunc& f, const WeightedChart& w);

/// X in the slot chart: coefficient k is X(x~_k) rewritten.
VectorField to_weighted(const VectorField& x, const WeightedChart& w);

/// Largest j with every coefficient of d/dx~_a of weighted degree >= w_a + j,
/// floored at -r. nullopt for the zero field.
std::optional<int> vf_filtration_degree(const VectorField& x, const WeightedChart& w);

/// Part of weighted degree exactly i, in the slot chart.
RatFunc homogeneous_part(const RatFunc& f, const WeightedChart& w, int i);
/// Lowest-degree part; throws std::invalid_argument for f = 0.
RatFunc homogeneous_approx(const RatFunc& f, const WeightedChart& w);

/// Part of filtration degree exactly j, in the slot chart.
VectorField homogeneous_part(const VectorField& x, const WeightedChart& w, int j);
/// Throws std::invalid_argument for the zero field.
VectorField homogeneous_approx(const VectorField& x, const WeightedChart& w);

}  // namespace lieweight
