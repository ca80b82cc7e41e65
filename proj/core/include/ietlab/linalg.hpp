#pragma once

#include "ietlab/rational.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace ietlab {

using Mat = std::vector<std::vector<Rat>>;

Rat dot(const std::vector<Rat>& a, const std::vector<Rat>& b);
Mat mat_mul(const Mat& a, const Mat& b);
Mat transpose(const Mat& m);
std::vector<Rat> mat_apply(const Mat& m, const std::vector<Rat>& v);

std::size_t mat_rank(Mat m);

// Reduced row echelon form in place; zero rows are dropped.  Returns the
// pivot column of each remaining row.
std::vector<std::size_t> rref(Mat& m);

// One solution of M u = b, free variables set to 0; nullopt if inconsistent.
std::optional<std::vector<Rat>> solve_linear(Mat m, std::vector<Rat> b);

// Rows spanning {u : M u = 0}, one per free column of the echelon form,
// ordered by free column.
Mat kernel_basis(Mat m, std::size_t cols);

} // namespace ietlab
