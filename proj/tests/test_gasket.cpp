#include "ietlab/errors.hpp"
#include "ietlab/gasket.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <numeric>

using namespace ietlab;
using namespace ietlab::testing;

namespace {

RatTriple rt(const Rat& a, const Rat& b, const Rat& c) { return {a, b, c}; }

std::size_t black_count(const RasterResult& r) {
  std::size_t n = 0;
  for (std::uint8_t p : r.pixels)
    if (p == 0) ++n;
  return n;
}

// Perron eigenvector of the cycle product [[4,3,2],[2,2,1],[1,1,1]] by exact
// rational power iteration, returned as a basis point (1 : g1 : g2) with
// forty-digit generator approximations.
GasketPoint perron_point() {
  Mat a{{Rat(4), Rat(3), Rat(2)}, {Rat(2), Rat(2), Rat(1)}, {Rat(1), Rat(1), Rat(1)}};
  std::vector<Rat> v{Rat(1), Rat(1), Rat(1)};
  for (int it = 0; it < 420; ++it) {
    v = mat_apply(a, v);
    Rat lead = v[0]; // copy before the loop rewrites v[0] itself
    for (auto& c : v) c /= lead;
  }
  auto basis = std::make_shared<GeneratorBasis>(
      std::vector<std::string>{"1", "p2", "p3"},
      std::vector<std::string>{decimal_string(v[1], 40),
                               decimal_string(v[2], 40)},
      40);
  return {FieldVector::constant(basis, Rat(1)), FieldVector::generator(basis, 1),
          FieldVector::generator(basis, 2)};
}

} // namespace

TEST_CASE("move matrices add the other coordinates") {
  CHECK(gasket_matrix(1) == Mat{{Rat(1), Rat(1), Rat(1)},
                                {Rat(0), Rat(1), Rat(0)},
                                {Rat(0), Rat(0), Rat(1)}});
  CHECK(gasket_matrix(2) == Mat{{Rat(1), Rat(0), Rat(0)},
                                {Rat(1), Rat(1), Rat(1)},
                                {Rat(0), Rat(0), Rat(1)}});
  CHECK(gasket_matrix(3) == Mat{{Rat(1), Rat(0), Rat(0)},
                                {Rat(0), Rat(1), Rat(0)},
                                {Rat(1), Rat(1), Rat(1)}});
  CHECK_THROWS_AS(gasket_matrix(0), StructuralError);
  CHECK_THROWS_AS(gasket_matrix(4), StructuralError);
}

TEST_CASE("apply and unapply are inverse on rational triples") {
  RatTriple p = rt(Rat(3, 10), Rat(1, 5), Rat(1, 2));
  for (int index = 1; index <= 3; ++index) {
    RatTriple q = gasket_apply(p, index);
    CHECK(gasket_unapply(q, index) == p);
  }
  CHECK(gasket_apply(p, 1) == rt(Rat(1), Rat(1, 5), Rat(1, 2)));
  // (1:1:1) lies in no cell, so every unapply is refused
  for (int index = 1; index <= 3; ++index)
    CHECK_THROWS_AS(gasket_unapply(rt(Rat(1), Rat(1), Rat(1)), index),
                    CellViolationError);
}

TEST_CASE("cell classification and ties") {
  CHECK(gasket_cell(rt(Rat(1), Rat(1), Rat(1))).cell == 0);
  CHECK_FALSE(gasket_cell(rt(Rat(1), Rat(1), Rat(1))).tie);
  CellClass boundary = gasket_cell(rt(Rat(2), Rat(1), Rat(1)));
  CHECK(boundary.tie);
  CellClass inside = gasket_cell(rt(Rat(3), Rat(1), Rat(1)));
  CHECK(inside.cell == 1);
  CHECK_FALSE(inside.tie);
  CHECK(gasket_cell(rt(Rat(1, 10), Rat(7, 10), Rat(1, 5))).cell == 2);
  CHECK_THROWS_AS(gasket_cell(rt(Rat(-1), Rat(1), Rat(1))), DomainError);
  CHECK_THROWS_AS(gasket_cell(rt(Rat(0), Rat(0), Rat(0))), DomainError);
}

TEST_CASE("membership verdicts on the landmark points") {
  MembershipTrace center = gasket_membership(rt(Rat(1), Rat(1), Rat(1)), 10);
  REQUIRE(std::holds_alternative<GasketEscaped>(center.verdict));
  CHECK(std::get<GasketEscaped>(center.verdict).step == 0);
  CHECK_FALSE(std::get<GasketEscaped>(center.verdict).tie);
  CHECK(gasket_escaped(center));
  CHECK(center.cells.empty());

  MembershipTrace tie = gasket_membership(rt(Rat(2), Rat(1), Rat(1)), 10);
  REQUIRE(std::holds_alternative<GasketEscaped>(tie.verdict));
  CHECK(std::get<GasketEscaped>(tie.verdict).tie);

  MembershipTrace axis = gasket_membership(rt(Rat(1), Rat(0), Rat(0)), 100);
  REQUIRE(std::holds_alternative<GasketIndexStarved>(axis.verdict));
  const auto& starved = std::get<GasketIndexStarved>(axis.verdict);
  CHECK(starved.missing == std::vector<int>{2, 3});
  CHECK(starved.window == 30);
  CHECK(gasket_escaped(axis));
}

TEST_CASE("membership survives on the cycling eigenvector point") {
  GasketPoint p = perron_point();
  MembershipTrace trace = gasket_membership(p, 60);
  REQUIRE(std::holds_alternative<GasketInside>(trace.verdict));
  CHECK(std::get<GasketInside>(trace.verdict).depth == 60);
  CHECK_FALSE(gasket_escaped(trace));
  REQUIRE(trace.cells.size() == 60);
  for (std::size_t s = 0; s < trace.cells.size(); ++s)
    CHECK(trace.cells[s] == static_cast<int>(s % 3) + 1);
}

TEST_CASE("exact and rational membership agree on rational points") {
  std::mt19937_64 rng(1213);
  for (int trial = 0; trial < 30; ++trial) {
    Rat a = random_unit_rat(rng, 1009);
    Rat b = random_unit_rat(rng, 1013);
    Rat c = random_unit_rat(rng, 1019);
    RatTriple p = rt(a, b, c);
    GasketPoint q{rat_fv(a), rat_fv(b), rat_fv(c)};
    MembershipTrace tp = gasket_membership(p, 40);
    MembershipTrace tq = gasket_membership(q, 40);
    CHECK(tp.cells == tq.cells);
    CHECK(tp.verdict.index() == tq.verdict.index());
    CHECK(gasket_escaped(tp) == gasket_escaped(tq));
  }
}

TEST_CASE("window zero disables starvation detection") {
  MembershipTrace axis = gasket_membership(rt(Rat(1), Rat(0), Rat(0)), 50, 0);
  REQUIRE(std::holds_alternative<GasketInside>(axis.verdict));
  CHECK(axis.cells == std::vector<int>(50, 1));
}

TEST_CASE("slice chart on the vertices and back") {
  // vertex a = (1/3, 0, 0) maps to b proportional to (1:1:2)
  RatTriple b1 = slice_chart(rt(Rat(1, 3), Rat(0), Rat(0)));
  CHECK(b1 == rt(Rat(1, 3), Rat(1, 3), Rat(2, 3)));
  RatTriple b2 = slice_chart(rt(Rat(0), Rat(1, 2), Rat(0)));
  CHECK(b2 == rt(Rat(0), Rat(1, 2), Rat(1, 2)));
  RatTriple b3 = slice_chart(rt(Rat(0), Rat(0), Rat(1, 2)));
  CHECK(b3 == rt(Rat(0), Rat(1, 2), Rat(1)));
  // normalization b1 + 2 b2 = 1 holds across the slice
  std::mt19937_64 rng(88);
  for (int trial = 0; trial < 20; ++trial) {
    Rat a1 = random_unit_rat(rng, 997) / 4;
    Rat a2 = random_unit_rat(rng, 991) / 4;
    Rat a3 = (1 - 3 * a1 - 2 * a2) / 2;
    if (sgn(a3) < 0) continue;
    RatTriple a = rt(a1, a2, a3);
    RatTriple b = slice_chart(a);
    CHECK(b[0] + 2 * b[1] == 1);
    CHECK(slice_chart_inverse(b) == a);
  }
  CHECK_THROWS_AS(slice_chart(rt(Rat(1), Rat(1), Rat(1))), ChartDomainError);
  CHECK_THROWS_AS(slice_chart(rt(Rat(-1, 10), Rat(1, 2), Rat(3, 20))),
                  ChartDomainError);
}

TEST_CASE("slice chart round trips on field vectors") {
  BasisPtr basis = pooled_basis(1);
  // a1 = 1/10 + r/100, a2 = 1/10 - r/100, a3 = (1 - 3a1 - 2a2)/2
  std::array<FieldVector, 3> a{
      FieldVector(basis, {Rat(1, 10), Rat(1, 100)}),
      FieldVector(basis, {Rat(1, 10), Rat(-1, 100)}),
      FieldVector(basis, {Rat(1, 4), Rat(-1, 200)})};
  auto b = slice_chart(a);
  auto back = slice_chart_inverse(b);
  for (int i = 0; i < 3; ++i) CHECK(back[i] == a[i]);
  FieldVector norm = b[0] + b[1] + b[1];
  CHECK(norm == FieldVector::constant(basis, Rat(1)));
}

TEST_CASE("balanced region membership") {
  CHECK(balanced_region(rt(Rat(1, 10), Rat(9, 20), Rat(51, 100))));
  CHECK_FALSE(balanced_region(rt(Rat(1, 10), Rat(9, 20), Rat(2, 5))));   // b3 < 1/2
  CHECK_FALSE(balanced_region(rt(Rat(9, 20), Rat(1, 10), Rat(51, 100)))); // b1 > b2
  CHECK_FALSE(balanced_region(rt(Rat(1, 10), Rat(9, 20), Rat(19, 20)))); // b3 > 2 b2
  CHECK_FALSE(balanced_region(rt(Rat(0), Rat(1, 2), Rat(3, 5))));        // b1 = 0
}

TEST_CASE("rasters are deterministic across thread counts") {
  RasterResult one = render_raster(RasterRegion::Delta, 48, 32, 6, 1);
  RasterResult four = render_raster(RasterRegion::Delta, 48, 32, 6, 4);
  RasterResult dflt = render_raster(RasterRegion::Delta, 48, 32, 6, 0);
  CHECK(one.pixels == four.pixels);
  CHECK(one.pixels == dflt.pixels);
  CHECK(one.width == 48);
  CHECK(one.height == 32);
  CHECK(one.pixels.size() == 48 * 32);
}

TEST_CASE("triangle raster is symmetric and thins with depth") {
  RasterResult prev = render_raster(RasterRegion::Delta, 64, 64, 2, 2);
  // swapping the first two coordinates mirrors the picture across the
  // diagonal, and the membership loop treats indices symmetrically
  for (std::size_t r = 0; r < 64; ++r)
    for (std::size_t c = 0; c < 64; ++c)
      CHECK(prev.pixels[r * 64 + c] == prev.pixels[c * 64 + r]);
  std::size_t last = black_count(prev);
  for (std::size_t depth : {4, 8, 16}) {
    RasterResult next = render_raster(RasterRegion::Delta, 64, 64, depth, 2);
    std::size_t count = black_count(next);
    CHECK(count < last);
    last = count;
  }
}

TEST_CASE("all three raster regions produce sensible masses") {
  for (RasterRegion region : {RasterRegion::Delta, RasterRegion::Example4Slice,
                              RasterRegion::Example3Square}) {
    RasterResult r = render_raster(region, 32, 32, 4, 2);
    std::size_t black = black_count(r);
    CHECK(black > 0);
    CHECK(black < r.pixels.size());
  }
}

TEST_CASE("pgm serialization carries the exact header") {
  RasterResult r;
  r.width = 3;
  r.height = 2;
  r.pixels = {0, 255, 0, 255, 0, 255};
  std::string pgm = serialize_pgm(r);
  CHECK(pgm.substr(0, 11) == "P5\n3 2\n255\n");
  CHECK(pgm.size() == 11 + 6);
  CHECK(pgm[11] == '\0');
  CHECK(static_cast<unsigned char>(pgm[12]) == 255);
}

TEST_CASE("fnv1a64 matches the reference values") {
  CHECK(fnv1a64("") == 14695981039346656037ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a64("hello") == 0xa430d84680aabd0bULL);
}
