#include "ietlab/gasket.hpp"

#include "ietlab/errors.hpp"

#include <algorithm>
#include <thread>
#include <type_traits>

namespace ietlab {

Mat gasket_matrix(int index) {
  if (index < 1 || index > 3) throw StructuralError("move index must be 1..3");
  Mat m(3, std::vector<Rat>(3, Rat(0)));
  for (int i = 0; i < 3; ++i) m[i][i] = 1;
  for (int j = 0; j < 3; ++j) m[index - 1][j] = 1;
  return m;
}

namespace {

void validate_point(const GasketPoint& p) {
  bool positive = false;
  for (const FieldVector& c : p) {
    int s = fv_sign(c);
    if (s < 0) throw DomainError("point coordinates must be nonnegative");
    if (s > 0) positive = true;
  }
  if (!positive) throw DomainError("point must have a positive coordinate");
}

void validate_point(const RatTriple& p) {
  bool positive = false;
  for (const Rat& c : p) {
    if (sgn(c) < 0) throw DomainError("point coordinates must be nonnegative");
    if (sgn(c) > 0) positive = true;
  }
  if (!positive) throw DomainError("point must have a positive coordinate");
}

} // namespace

GasketPoint gasket_apply(const GasketPoint& p, int index) {
  if (index < 1 || index > 3) throw StructuralError("move index must be 1..3");
  GasketPoint q = p;
  q[index - 1] = p[0] + p[1] + p[2];
  return q;
}

RatTriple gasket_apply(const RatTriple& p, int index) {
  if (index < 1 || index > 3) throw StructuralError("move index must be 1..3");
  RatTriple q = p;
  q[index - 1] = p[0] + p[1] + p[2];
  return q;
}

GasketPoint gasket_unapply(const GasketPoint& p, int index) {
  CellClass c = gasket_cell(p);
  if (c.tie || c.cell != index)
    throw CellViolationError("point is not strictly inside the requested cell");
  GasketPoint q = p;
  q[index - 1] = p[index - 1].scaled(Rat(2)) - (p[0] + p[1] + p[2]);
  return q;
}

RatTriple gasket_unapply(const RatTriple& p, int index) {
  CellClass c = gasket_cell(p);
  if (c.tie || c.cell != index)
    throw CellViolationError("point is not strictly inside the requested cell");
  RatTriple q = p;
  q[index - 1] = 2 * p[index - 1] - (p[0] + p[1] + p[2]);
  return q;
}

CellClass gasket_cell(const GasketPoint& p) {
  validate_point(p);
  FieldVector total = p[0] + p[1] + p[2];
  CellClass out{0, false};
  for (int i = 0; i < 3; ++i) {
    int s = fv_sign(p[i].scaled(Rat(2)) - total);
    if (s == 0) out.tie = true;
    else if (s > 0) out.cell = i + 1;
  }
  return out;
}

CellClass gasket_cell(const RatTriple& p) {
  validate_point(p);
  Rat total = p[0] + p[1] + p[2];
  CellClass out{0, false};
  for (int i = 0; i < 3; ++i) {
    int s = sgn(2 * p[i] - total);
    if (s == 0) out.tie = true;
    else if (s > 0) out.cell = i + 1;
  }
  return out;
}

bool gasket_escaped(const MembershipTrace& trace) {
  // Starvation certifies non-membership just as a direct escape does.
  return !std::holds_alternative<GasketInside>(trace.verdict);
}

namespace {

// Shared subtractive loop.  Cell classification and the subtraction itself
// are supplied by the caller so the exact and integer paths stay in step.
template <typename Classify, typename Subtract>
MembershipTrace membership_loop(std::size_t depth, std::size_t window,
                                Classify classify, Subtract subtract) {
  MembershipTrace trace{GasketInside{depth}, {}};
  std::array<std::size_t, 3> window_counts{0, 0, 0};
  for (std::size_t step = 0; step < depth; ++step) {
    CellClass c = classify();
    if (c.tie) {
      trace.verdict = GasketEscaped{step, true};
      return trace;
    }
    if (c.cell == 0) {
      trace.verdict = GasketEscaped{step, false};
      return trace;
    }
    trace.cells.push_back(c.cell);
    ++window_counts[c.cell - 1];
    if (window > 0 && trace.cells.size() > window)
      --window_counts[trace.cells[trace.cells.size() - 1 - window] - 1];
    if (window > 0 && trace.cells.size() >= window) {
      std::vector<int> missing;
      for (int i = 0; i < 3; ++i)
        if (window_counts[i] == 0) missing.push_back(i + 1);
      if (!missing.empty()) {
        trace.verdict = GasketIndexStarved{missing, window, trace.cells.size()};
        return trace;
      }
    }
    subtract(c.cell);
  }
  return trace;
}

} // namespace

MembershipTrace gasket_membership(const GasketPoint& p, std::size_t depth,
                                  std::size_t window) {
  validate_point(p);
  GasketPoint q = p;
  return membership_loop(
      depth, window,
      [&q]() {
        FieldVector total = q[0] + q[1] + q[2];
        CellClass out{0, false};
        for (int i = 0; i < 3; ++i) {
          int s = fv_sign(q[i].scaled(Rat(2)) - total);
          if (s == 0) out.tie = true;
          else if (s > 0) out.cell = i + 1;
        }
        return out;
      },
      [&q](int cell) {
        FieldVector total = q[0] + q[1] + q[2];
        q[cell - 1] = q[cell - 1].scaled(Rat(2)) - total;
      });
}

MembershipTrace gasket_membership(const RatTriple& p, std::size_t depth,
                                  std::size_t window) {
  validate_point(p);
  // Clear denominators once; the loop then runs on shrinking integers.
  Int lcm(1);
  for (const Rat& c : p)
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
  std::array<Int, 3> q;
  for (int i = 0; i < 3; ++i) q[i] = p[i].get_num() * (lcm / p[i].get_den());
  return membership_loop(
      depth, window,
      [&q]() {
        Int total = q[0] + q[1] + q[2];
        CellClass out{0, false};
        for (int i = 0; i < 3; ++i) {
          int s = sgn(Int(2 * q[i] - total));
          if (s == 0) out.tie = true;
          else if (s > 0) out.cell = i + 1;
        }
        return out;
      },
      [&q](int cell) {
        Int total = q[0] + q[1] + q[2];
        q[cell - 1] = 2 * q[cell - 1] - total;
      });
}

namespace {

template <typename T> void chart_domain_check(const std::array<T, 3>& a) {
  // slice equation: 3 a1 + 2 a2 + 2 a3 = 1, coordinates nonnegative
  if constexpr (std::is_same_v<T, FieldVector>) {
    for (const FieldVector& c : a)
      if (fv_sign(c) < 0)
        throw ChartDomainError("slice coordinates must be nonnegative");
    FieldVector lhs = a[0].scaled(Rat(3)) + a[1].scaled(Rat(2)) + a[2].scaled(Rat(2));
    if (!(lhs - FieldVector::constant(a[0].basis(), Rat(1))).is_zero())
      throw ChartDomainError("slice equation 3a1+2a2+2a3=1 violated");
  } else {
    for (const Rat& c : a)
      if (sgn(c) < 0)
        throw ChartDomainError("slice coordinates must be nonnegative");
    if (3 * a[0] + 2 * a[1] + 2 * a[2] != 1)
      throw ChartDomainError("slice equation 3a1+2a2+2a3=1 violated");
  }
}

} // namespace

std::array<FieldVector, 3> slice_chart(const std::array<FieldVector, 3>& a) {
  chart_domain_check(a);
  return {a[0], a[0] + a[1] + a[2],
          a[0].scaled(Rat(2)) + a[1] + a[2].scaled(Rat(2))};
}

RatTriple slice_chart(const RatTriple& a) {
  chart_domain_check(a);
  return {a[0], a[0] + a[1] + a[2], 2 * a[0] + a[1] + 2 * a[2]};
}

std::array<FieldVector, 3> slice_chart_inverse(const std::array<FieldVector, 3>& b) {
  std::array<FieldVector, 3> a = {b[0], b[1].scaled(Rat(2)) - b[2],
                                  b[2] - b[0] - b[1]};
  chart_domain_check(a);
  return a;
}

RatTriple slice_chart_inverse(const RatTriple& b) {
  RatTriple a = {b[0], 2 * b[1] - b[2], b[2] - b[0] - b[1]};
  chart_domain_check(a);
  return a;
}

bool balanced_region(const std::array<FieldVector, 3>& b) {
  const BasisPtr& basis = b[0].basis();
  FieldVector half = FieldVector::constant(basis, Rat(1, 2));
  return fv_sign(b[0]) > 0 && fv_less(b[0], b[1]) && fv_less(b[1], b[2]) &&
         fv_less(half, b[2]) && fv_less(b[2], b[1].scaled(Rat(2)));
}

bool balanced_region(const RatTriple& b) {
  return sgn(b[0]) > 0 && b[0] < b[1] && b[1] < b[2] && b[2] > Rat(1, 2) &&
         b[2] < 2 * b[1];
}

namespace {

// 0 = in set (never escaped within depth), 255 = out.
std::uint8_t raster_pixel(RasterRegion region, std::size_t row, std::size_t col,
                          std::size_t width, std::size_t height,
                          std::size_t depth) {
  Rat cx(2 * col + 1, 2 * width);  // (col + 1/2) / width
  Rat cy(2 * row + 1, 2 * height); // (row + 1/2) / height
  cx.canonicalize();
  cy.canonicalize();
  switch (region) {
  case RasterRegion::Delta: {
    Rat a3 = 1 - cx - cy;
    if (sgn(a3) < 0) return 255;
    return gasket_escaped(gasket_membership(RatTriple{cx, cy, a3}, depth)) ? 255
                                                                           : 0;
  }
  case RasterRegion::Example4Slice: {
    Rat a1 = cy / 3;            // vertical axis: a1 in [0, 1/3]
    Rat a2 = cx / 2;            // horizontal axis: a2 in [0, 1/2]
    Rat a3 = (1 - 3 * a1 - 2 * a2) / 2;
    if (sgn(a3) < 0) return 255;
    RatTriple b = slice_chart(RatTriple{a1, a2, a3});
    return gasket_escaped(gasket_membership(b, depth)) ? 255 : 0;
  }
  case RasterRegion::Example3Square: {
    Rat a1 = cy / 4;            // vertical axis: a1 in [0, 1/4]
    Rat a2 = 3 * cx / 4;        // horizontal axis: a2 in [0, 3/4]
    // valid parameters need a2 < 3 a1; the obstruction-free part is a2 < a1
    return (a2 < 3 * a1 && a2 < a1) ? 0 : 255;
  }
  }
  return 255;
}

} // namespace

RasterResult render_raster(RasterRegion region, std::size_t width,
                           std::size_t height, std::size_t depth,
                           unsigned threads) {
  if (width == 0 || height == 0) throw DomainError("raster needs positive size");
  RasterResult out;
  out.width = width;
  out.height = height;
  out.pixels.assign(width * height, 255);
  if (threads == 0)
    threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, 64);

  auto worker = [&](std::size_t row_begin, std::size_t row_end) {
    for (std::size_t r = row_begin; r < row_end; ++r)
      for (std::size_t c = 0; c < width; ++c)
        out.pixels[r * width + c] =
            raster_pixel(region, r, c, width, height, depth);
  };

  if (threads <= 1 || height <= 1) {
    worker(0, height);
  } else {
    std::vector<std::thread> pool;
    std::size_t chunk = (height + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      std::size_t begin = t * chunk;
      std::size_t end = std::min(height, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(worker, begin, end);
    }
    for (std::thread& th : pool) th.join();
  }
  return out;
}

std::string serialize_pgm(const RasterResult& raster) {
  std::string out = "P5\n" + std::to_string(raster.width) + " " +
                    std::to_string(raster.height) + "\n255\n";
  out.append(reinterpret_cast<const char*>(raster.pixels.data()),
             raster.pixels.size());
  return out;
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

} // namespace ietlab
