#include "ietlab/field_vector.hpp"
#include "ietlab/gasket.hpp"
#include "ietlab/iet.hpp"
#include "ietlab/restriction.hpp"

#include <benchmark/benchmark.h>

using namespace ietlab;

namespace {

Iet golden_rotation() {
  auto basis = std::make_shared<const GeneratorBasis>(
      std::vector<std::string>{"1", "(1+sqrt(5))/2"},
      std::vector<Rat>{Rat(1),
                       parse_decimal(sqrt_decimal(5, 40)) / 2 + Rat(1, 2)},
      pow10_inverse(30));
  FieldVector phi = FieldVector::generator(basis, 1);
  FieldVector one = FieldVector::constant(basis, Rat(1));
  std::vector<FieldVector> lengths{one + one - phi, phi - one};
  return Iet(Permutation::from_one_based({2, 1}), lengths);
}

void BM_GoldenOrbitStep(benchmark::State& state) {
  Iet t = golden_rotation();
  FieldVector x = FieldVector::zero(t.lengths()[0].basis());
  for (auto _ : state) {
    x = t.eval(x);
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(BM_GoldenOrbitStep);

void BM_ComposePower(benchmark::State& state) {
  Iet t = golden_rotation();
  PiecewiseTranslation map = t.to_piecewise();
  for (auto _ : state) {
    PiecewiseTranslation p = iet_power(t, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(p);
  }
}
BENCHMARK(BM_ComposePower)->Arg(4)->Arg(8);

void BM_GasketMembershipRational(benchmark::State& state) {
  RatTriple p{Rat(383, 1000), Rat(333, 1000), Rat(284, 1000)};
  for (auto _ : state) {
    MembershipTrace trace = gasket_membership(p, 24);
    benchmark::DoNotOptimize(trace);
  }
}
BENCHMARK(BM_GasketMembershipRational);

void BM_RasterRow(benchmark::State& state) {
  for (auto _ : state) {
    RasterResult r = render_raster(RasterRegion::Delta, 64, 1, 8, 1);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_RasterRow);

void BM_SafMatrix(benchmark::State& state) {
  Iet t = golden_rotation();
  for (auto _ : state) {
    SafMatrix m = saf_invariant(t);
    benchmark::DoNotOptimize(m);
  }
}
BENCHMARK(BM_SafMatrix);

void BM_FirstReturn(benchmark::State& state) {
  Iet t = golden_rotation();
  FieldVector cut = t.lengths()[0];
  for (auto _ : state) {
    FirstReturn fr = first_return(t, cut);
    benchmark::DoNotOptimize(fr);
  }
}
BENCHMARK(BM_FirstReturn);

}  // namespace

BENCHMARK_MAIN();
