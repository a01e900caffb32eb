#include "lieweight/linalg.hpp"

#include <algorithm>
#include <map>

#include "lieweight/errors.hpp"

namespace lieweight {

namespace {

// a -= factor * b, both sorted by column.
void axpy(SparseRow& a, const Rational& factor, const SparseRow& b) {
  SparseRow out;
  out.reserve(a.size() + b.size());
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      out.push_back(std::move(*ia++));
    } else if (ia == a.end() || ib->first < ia->first) {
      out.emplace_back(ib->first, -factor * ib->second);
      ++ib;
    } else {
      Rational v = ia->second - factor * ib->second;
      if (!is_zero(v)) out.emplace_back(ia->first, std::move(v));
      ++ia;
      ++ib;
    }
  }
  a = std::move(out);
}

}  // namespace

SparseLinearSystem::PivotRow* SparseLinearSystem::find_pivot(std::size_t col) {
  auto it = std::lower_bound(pivots_.begin(), pivots_.end(), col,
                             [](const auto& p, std::size_t c) { return p.first < c; });
  return (it != pivots_.end() && it->first == col) ? &it->second : nullptr;
}

void SparseLinearSystem::add_row(SparseRow row, const Rational& rhs) {
  std::erase_if(row, [](const auto& e) { return is_zero(e.second); });
  std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& e : row)
    if (e.first >= cols_) throw std::out_of_range("sparse row column index out of range");
  Rational b = rhs;
  while (!row.empty()) {
    const std::size_t lead = row.front().first;
    PivotRow* p = find_pivot(lead);
    if (p == nullptr) {
      const Rational inv = Rational(1) / row.front().second;
      for (auto& e : row) e.second *= inv;
      b *= inv;
      auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), lead,
                                  [](const auto& q, std::size_t c) { return q.first < c; });
      pivots_.insert(pos, {lead, PivotRow{std::move(row), std::move(b)}});
      return;
    }
    const Rational factor = row.front().second;
    axpy(row, factor, p->entries);
    b -= factor * p->rhs;
  }
  if (!is_zero(b)) consistent_ = false;
}

std::optional<LinearSolution> SparseLinearSystem::solve(bool want_nullspace) {
  if (!consistent_) return std::nullopt;
  // Back substitution: with pivots processed by decreasing column, every row
  // used for elimination is already fully reduced.
  for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
    PivotRow& row = it->second;
    std::vector<std::pair<std::size_t, Rational>> hits;
    for (auto e = row.entries.begin() + 1; e != row.entries.end(); ++e)
      if (find_pivot(e->first) != nullptr) hits.emplace_back(e->first, e->second);
    for (const auto& [col, factor] : hits) {
      const PivotRow* p = find_pivot(col);
      axpy(row.entries, factor, p->entries);
      row.rhs -= factor * p->rhs;
    }
  }
  LinearSolution sol;
  sol.particular.assign(cols_, Rational(0));
  std::vector<bool> is_pivot(cols_, false);
  for (const auto& [col, row] : pivots_) {
    sol.particular[col] = row.rhs;
    sol.pivot_columns.push_back(col);
    is_pivot[col] = true;
  }
  if (!want_nullspace) return sol;
  // Column index of non-pivot entries: free column -> (pivot column, value).
  std::map<std::size_t, std::vector<std::pair<std::size_t, Rational>>> by_free;
  for (const auto& [col, row] : pivots_)
    for (auto e = row.entries.begin() + 1; e != row.entries.end(); ++e)
      by_free[e->first].emplace_back(col, e->second);
  for (std::size_t f = 0; f < cols_; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(cols_, Rational(0));
    v[f] = 1;
    if (auto it = by_free.find(f); it != by_free.end())
      for (const auto& [pc, val] : it->second) v[pc] = -val;
    sol.nullspace.push_back(std::move(v));
  }
  return sol;
}

std::optional<LinearSolution> linear_solve_exact(const Matrix<Rational>& a,
                                                 std::span<const Rational> b) {
  if (b.size() != a.rows()) throw DimensionMismatch("linear_solve_exact: rhs length differs from row count");
  SparseLinearSystem sys(a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    SparseRow row;
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!is_zero(a(i, j))) row.emplace_back(j, a(i, j));
    sys.add_row(std::move(row), b[i]);
  }
  return sys.solve();
}

std::size_t span_rank(std::span<const std::vector<Rational>> vectors, std::size_t dim) {
  SparseLinearSystem sys(dim);
  for (const auto& v : vectors) {
    SparseRow row;
    for (std::size_t j = 0; j < v.size(); ++j)
      if (!is_zero(v[j])) row.emplace_back(j, v[j]);
    sys.add_row(std::move(row), 0);
  }
  return sys.rank();
}

bool in_span(std::span<const std::vector<Rational>> vectors, std::span<const Rational> v) {
  const std::size_t dim = v.size();
  std::vector<std::vector<Rational>> all(vectors.begin(), vectors.end());
  const std::size_t r0 = span_rank(all, dim);
  all.emplace_back(v.begin(), v.end());
  return span_rank(all, dim) == r0;
}

}  // namespace lieweight
