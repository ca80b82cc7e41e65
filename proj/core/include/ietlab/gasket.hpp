#pragma once

#include "ietlab/field_vector.hpp"
#include "ietlab/linalg.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace ietlab {

// Projective triple of nonnegative coordinates, at least one positive.
// Never renormalized: every test below is homogeneous.
using GasketPoint = std::array<FieldVector, 3>;
using RatTriple = std::array<Rat, 3>;

// The three unimodular moves: index i adds the other two coordinates to
// coordinate i.
Mat gasket_matrix(int index); // 1..3

GasketPoint gasket_apply(const GasketPoint& p, int index);
RatTriple gasket_apply(const RatTriple& p, int index);

// Inverse move; requires the point strictly inside cell `index`
// (coordinate i strictly exceeds the sum of the others), else CellViolationError.
GasketPoint gasket_unapply(const GasketPoint& p, int index);
RatTriple gasket_unapply(const RatTriple& p, int index);

struct CellClass {
  int cell; // 1..3, or 0 when no coordinate dominates
  bool tie; // some coordinate equals the sum of the others
};

CellClass gasket_cell(const GasketPoint& p);
CellClass gasket_cell(const RatTriple& p);

struct GasketEscaped {
  std::size_t step; // subtractions performed before the point left the cells
  bool tie;         // left through a cell boundary rather than the gap
};

struct GasketIndexStarved {
  std::vector<int> missing; // indices absent from the last `window` moves
  std::size_t window;
  std::size_t step;
};

struct GasketInside {
  std::size_t depth; // survived this many subtractions
};

using GasketVerdict =
    std::variant<GasketEscaped, GasketIndexStarved, GasketInside>;

struct MembershipTrace {
  GasketVerdict verdict;
  std::vector<int> cells; // cell classified at each step, 1..3
};

bool gasket_escaped(const MembershipTrace& trace);

// Runs the subtractive loop: classify, record the cell, subtract, repeat.
// Stops on escape, on a window of moves that never uses some index, or after
// `depth` subtractions.
MembershipTrace gasket_membership(const GasketPoint& p, std::size_t depth,
                                  std::size_t window = 30);
MembershipTrace gasket_membership(const RatTriple& p, std::size_t depth,
                                  std::size_t window = 30);

// Chart between the parameter slice {a >= 0, 3a1 + 2a2 + 2a3 = 1} and gasket
// coordinates: b = (a1, a1+a2+a3, 2a1+a2+2a3), normalized so b1 + 2b2 = 1.
std::array<FieldVector, 3> slice_chart(const std::array<FieldVector, 3>& a);
RatTriple slice_chart(const RatTriple& a);
std::array<FieldVector, 3> slice_chart_inverse(const std::array<FieldVector, 3>& b);
RatTriple slice_chart_inverse(const RatTriple& b);

// Strict inequalities cut out by the chart image of the open slice.
bool balanced_region(const std::array<FieldVector, 3>& b);
bool balanced_region(const RatTriple& b);

enum class RasterRegion { Delta, Example4Slice, Example3Square };

struct RasterResult {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> pixels; // row-major, 0 = in set, 255 = out
};

// Deterministic over thread count: rows are computed independently from
// pixel-center coordinates.
RasterResult render_raster(RasterRegion region, std::size_t width,
                           std::size_t height, std::size_t depth,
                           unsigned threads = 1);

std::string serialize_pgm(const RasterResult& raster);
std::uint64_t fnv1a64(const std::string& bytes);

} // namespace ietlab
