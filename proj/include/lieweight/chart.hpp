#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lieweight {

/// Ordered coordinate names x_1, ..., x_n of a polynomial chart.
class Chart {
 public:
  Chart() = default;
  /// Throws std::invalid_argument on empty, malformed or repeated names.
  explicit Chart(std::vector<std::string> names);

  std::size_t dimension() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::size_t> index_of(std::string_view name) const;

  bool operator==(const Chart&) const = default;

  static bool valid_identifier(std::string_view s);

 private:
  std::vector<std::string> names_;
};

}  // namespace lieweight
