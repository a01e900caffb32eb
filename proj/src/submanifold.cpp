#include "lieweight/submanifold.hpp"

#include <algorithm>
#include <stdexcept>

namespace lieweight {

Submanifold::Submanifold(std::size_t ambient_dimension, std::vector<std::size_t> tangent,
                         std::vector<Rational> base_point)
    : tangent_(std::move(tangent)),
      tangent_mask_(ambient_dimension, false),
      base_point_(std::move(base_point)) {
  if (base_point_.size() != ambient_dimension)
    throw std::invalid_argument("base point needs one entry per chart variable");
  std::sort(tangent_.begin(), tangent_.end());
  for (std::size_t a : tangent_) {
    if (a >= ambient_dimension) throw std::invalid_argument("tangent index out of range");
    if (tangent_mask_[a]) throw std::invalid_argument("repeated tangent index");
    tangent_mask_[a] = true;
  }
  for (std::size_t a = 0; a < ambient_dimension; ++a) {
    if (tangent_mask_[a]) continue;
    fiber_.push_back(a);
    if (!is_zero(base_point_[a]))
      throw std::invalid_argument("base point is not on the submanifold");
  }
}

Submanifold Submanifold::origin(std::size_t ambient_dimension) {
  return Submanifold(ambient_dimension, {}, std::vector<Rational>(ambient_dimension, Rational(0)));
}

std::vector<Rational> Submanifold::base_coordinates() const {
  std::vector<Rational> out;
  out.reserve(tangent_.size());
  for (std::size_t a : tangent_) out.push_back(base_point_[a]);
  return out;
}

}  // namespace lieweight
