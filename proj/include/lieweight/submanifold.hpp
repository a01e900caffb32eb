#pragma once

#include <cstddef>
#include <vector>

#include "lieweight/rational.hpp"

namespace lieweight {

/// Coordinate submanifold N = {x_a = 0 : a not tangent} through a rational
/// base point m on N.
class Submanifold {
 public:
  /// Throws std::invalid_argument if an index is out of range or repeated,
  /// or if the base point does not lie on N.
  Submanifold(std::size_t ambient_dimension, std::vector<std::size_t> tangent,
              std::vector<Rational> base_point);

  static Submanifold origin(std::size_t ambient_dimension);

  std::size_t ambient_dimension() const { return base_point_.size(); }
  /// k0 = dim N.
  std::size_t dimension() const { return tangent_.size(); }
  const std::vector<std::size_t>& tangent_indices() const { return tangent_; }
  const std::vector<std::size_t>& fiber_indices() const { return fiber_; }
  bool is_tangent(std::size_t a) const { return tangent_mask_.at(a); }
  const std::vector<Rational>& base_point() const { return base_point_; }
  /// Restriction of the base point to the tangent coordinates.
  std::vector<Rational> base_coordinates() const;

 private:
  std::vector<std::size_t> tangent_;
  std::vector<std::size_t> fiber_;
  std::vector<bool> tangent_mask_;
  std::vector<Rational> base_point_;
};

}  // namespace lieweight
