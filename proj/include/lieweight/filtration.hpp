#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lieweight/chart.hpp"
#include "lieweight/linalg.hpp"
#include "lieweight/submanifold.hpp"
#include "lieweight/vector_field.hpp"

namespace lieweight {

enum class Verdict { Pass, Fail, Inconclusive };

std::string to_string(Verdict v);

/// Worst of two verdicts: fail > inconclusive > pass.
Verdict combine(Verdict a, Verdict b);

/// Singular Lie filtration H_{-1} ⊂ ... ⊂ H_{-r} given by generator lists.
///
/// levels[i-1] holds the generators supplied for level -i. The module H_{-i}
/// is generated by the union of the lists for levels -1..-i; at level -r the
/// coordinate fields are always adjoined, since H_{-r} is every vector field.
class Filtration {
 public:
  /// Throws std::invalid_argument when there are no levels or a generator
  /// has non-polynomial coefficients, DimensionMismatch on chart mismatch.
  Filtration(std::size_t n, std::vector<std::vector<VectorField>> levels);

  std::size_t dimension() const { return n_; }
  int order() const { return static_cast<int>(levels_.size()); }
  /// The list supplied for level -i (1 <= i <= r).
  const std::vector<VectorField>& level(int i) const { return levels_.at(static_cast<std::size_t>(i - 1)); }
  /// Generators of H_{-i}; i = 0 gives the empty list.
  const std::vector<VectorField>& generators(int i) const { return cumulative_.at(static_cast<std::size_t>(i)); }
  /// Positions in generators(i) of the fields not already in generators(i-1).
  const std::vector<std::size_t>& new_at(int i) const { return new_at_.at(static_cast<std::size_t>(i)); }

  int max_degree() const;
  /// 2 * (largest generator degree) + r.
  int default_degree_bound() const { return 2 * max_degree() + order(); }

 private:
  std::size_t n_;
  std::vector<std::vector<VectorField>> levels_;
  std::vector<std::vector<VectorField>> cumulative_;
  std::vector<std::vector<std::size_t>> new_at_;
};

struct MembershipResult {
  Verdict verdict = Verdict::Inconclusive;
  /// Pass: v = sum_j coefficients[j] * gens[j].
  std::vector<Poly> coefficients;
  /// Fail: a point where v is not in the span of the generator values.
  std::optional<std::vector<Rational>> witness;
  /// Inconclusive: why ("degree_bound").
  std::string reason;
};

/// Decides v ∈ span_{C[x]} gens up to a coefficient degree bound. Sampling
/// for a pointwise obstruction runs first (origin, small integer grid, then
/// seeded rational points); otherwise a bounded linear solve looks for
/// polynomial coefficients. Neither succeeding gives inconclusive.
MembershipResult module_membership(const VectorField& v, std::span<const VectorField> gens, int degree_bound);

/// Re-checks a pass or fail certificate exactly. Always false for
/// inconclusive results.
bool verify_certificate(const VectorField& v, std::span<const VectorField> gens, const MembershipResult& r);

/// The points tried by the pointwise obstruction search, in order.
std::vector<std::vector<Rational>> sample_points(std::size_t n, std::size_t max_points = 256);

struct BracketCheck {
  int i = 0, j = 0;           // levels of the two generators, i <= j
  std::size_t first = 0;      // index into generators(i)
  std::size_t second = 0;     // index into generators(j)
  VectorField bracket;
  int target_level = 0;       // min(i + j, r)
  MembershipResult result;
};

struct BracketCompatReport {
  Verdict verdict = Verdict::Pass;
  std::vector<BracketCheck> checks;
};

/// [H_{-i}, H_{-j}] ⊂ H_{-i-j}, checked on brackets of generators that are
/// new at their level. Pairs with i + j >= r land in H_{-r} and are
/// certified directly by their coordinate expansion.
BracketCompatReport check_bracket_compat(const Filtration& f, int degree_bound);

struct CleanResult {
  Verdict verdict = Verdict::Pass;
  /// k_0, ..., k_r: rank of T_mN + H_{-i}|_m.
  std::vector<std::size_t> ranks;
  /// Generic rank of the same spans along N.
  std::vector<std::size_t> generic_ranks;
  /// Fail: first level with a rank jump and a point of N exhibiting it.
  std::optional<int> failing_level;
  std::optional<std::vector<Rational>> witness;
};

/// Rank of T N + H_{-i} is constant near m along N iff the generic rank over
/// the function field of N equals the rank at m.
CleanResult check_clean(const Filtration& f, const Submanifold& n);

/// w_a = i for k_{i-1} < a <= k_i, over the fiber slots a = k_0+1..n.
/// Throws std::invalid_argument if the ranks decrease.
std::vector<int> weight_sequence(std::span<const std::size_t> ranks);

/// Generators of the restriction of span(gens) to N, as fields on N's own
/// chart (variables in tangent-index order). Only combinations with
/// coefficients of degree <= degree_bound in the coordinates of N are
/// searched.
std::vector<VectorField> restrict_distribution(std::span<const VectorField> gens, const Submanifold& n,
                                               int degree_bound);

struct ProductDistribution {
  Chart chart;
  std::vector<VectorField> generators;
};

/// Generators on the product chart (A's variables first). Throws
/// std::invalid_argument on a variable-name clash.
ProductDistribution product_distribution(const Chart& a, std::span<const VectorField> gens_a, const Chart& b,
                                         std::span<const VectorField> gens_b);

// Bounded linear solves shared with the osculating-algebra code.

/// Monomials of total degree <= d in the listed variables (ascending degree).
std::vector<Monomial> monomials_up_to(std::size_t nvars, std::span<const std::size_t> vars, int d);

/// Unknown coefficients u_j = sum_k c_{k,j} basis[k]; column k * count + j.
struct CombinationSolve {
  std::vector<Monomial> basis;
  std::size_t count = 0;
  std::optional<LinearSolution> solution;

  std::vector<Poly> coefficients(std::span<const Rational> unknowns) const;
  /// u_j evaluated at a point.
  std::vector<Rational> coefficients_at(std::span<const Rational> unknowns, std::span<const Rational> point) const;
};

/// Solves sum_j u_j gens[j]^a = target^a for the listed components a, with
/// u_j ranging over span(basis). A null target means the homogeneous system.
CombinationSolve solve_combination(std::span<const VectorField> gens, std::vector<Monomial> basis,
                                   std::span<const std::size_t> components, const VectorField* target,
                                   bool want_nullspace);

}  // namespace lieweight
