#include "ietlab/linalg.hpp"

#include "ietlab/errors.hpp"

#include <algorithm>

namespace ietlab {

Rat dot(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  if (a.size() != b.size()) throw StructuralError("dot of unequal lengths");
  Rat sum(0);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) sum += a[i] * b[i];
  return sum;
}

Mat mat_mul(const Mat& a, const Mat& b) {
  if (a.empty() || b.empty()) return {};
  const std::size_t inner = b.size(), cols = b[0].size();
  Mat out(a.size(), std::vector<Rat>(cols, Rat(0)));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != inner) throw StructuralError("matrix shape mismatch");
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < cols; ++j)
        if (b[k][j] != 0) out[i][j] += a[i][k] * b[k][j];
    }
  }
  return out;
}

Mat transpose(const Mat& m) {
  if (m.empty()) return {};
  Mat out(m[0].size(), std::vector<Rat>(m.size(), Rat(0)));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) out[j][i] = m[i][j];
  return out;
}

std::vector<Rat> mat_apply(const Mat& m, const std::vector<Rat>& v) {
  std::vector<Rat> out;
  out.reserve(m.size());
  for (const std::vector<Rat>& row : m) out.push_back(dot(row, v));
  return out;
}

std::vector<std::size_t> rref(Mat& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t cols = m[0].size();
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t p = row;
    while (p < m.size() && m[p][col] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[row], m[p]);
    Rat lead = m[row][col];
    for (std::size_t c = col; c < cols; ++c) m[row][c] /= lead;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col] == 0) continue;
      Rat f = m[r][col];
      for (std::size_t c = col; c < cols; ++c) m[r][c] -= f * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  m.resize(row);
  return pivots;
}

std::size_t mat_rank(Mat m) { return rref(m).size(); }

std::optional<std::vector<Rat>> solve_linear(Mat m, std::vector<Rat> b) {
  if (m.size() != b.size()) throw StructuralError("solve shape mismatch");
  if (m.empty()) return std::vector<Rat>{};
  const std::size_t cols = m[0].size();
  for (std::size_t i = 0; i < m.size(); ++i) m[i].push_back(b[i]);
  std::vector<std::size_t> pivots = rref(m);
  std::vector<Rat> u(cols, Rat(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] == cols) return std::nullopt; // 0 = nonzero
    u[pivots[r]] = m[r][cols];
  }
  return u;
}

Mat kernel_basis(Mat m, std::size_t cols) {
  std::vector<std::size_t> pivots = rref(m);
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  Mat basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rat> u(cols, Rat(0));
    u[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) u[pivots[r]] = -m[r][f];
    basis.push_back(std::move(u));
  }
  return basis;
}

} // namespace ietlab
