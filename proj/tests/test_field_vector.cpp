#include "ietlab/errors.hpp"
#include "ietlab/field_vector.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cstdlib>

using namespace ietlab;
using namespace ietlab::testing;

TEST_CASE("basis construction enforces the leading generator") {
  CHECK_THROWS_AS(GeneratorBasis({"x"}, std::vector<std::string>{}),
                  StructuralError);
  CHECK_THROWS_AS(GeneratorBasis({"1", "g"}, std::vector<std::string>{}),
                  StructuralError);
  CHECK_THROWS_AS(
      GeneratorBasis({"1"}, std::vector<Rat>{Rat(2)}, Rat(1, 100)),
      StructuralError);
  CHECK_THROWS_AS(GeneratorBasis({"1"}, std::vector<Rat>{Rat(1)}, Rat(0)),
                  StructuralError);
  GeneratorBasis b({"1", "r"}, std::vector<std::string>{"1.25"}, 20);
  CHECK(b.size() == 2);
  CHECK(b.value(0) == 1);
  CHECK(b.value(1) == Rat(5, 4));
  CHECK(b.guard() == pow10_inverse(10));
}

TEST_CASE("default precision honors the environment") {
  unsetenv("IETLAB_PRECISION");
  CHECK(default_precision() == 40);
  setenv("IETLAB_PRECISION", "60", 1);
  CHECK(default_precision() == 60);
  setenv("IETLAB_PRECISION", "5", 1);
  CHECK_THROWS_AS(default_precision(), DomainError);
  setenv("IETLAB_PRECISION", "abc", 1);
  CHECK_THROWS_AS(default_precision(), DomainError);
  unsetenv("IETLAB_PRECISION");
}

TEST_CASE("arithmetic is coordinatewise and exact") {
  BasisPtr b = sqrt5_basis();
  FieldVector u(b, {Rat(1, 3), Rat(-2)});
  FieldVector v(b, {Rat(2, 3), Rat(2)});
  CHECK((u + v) == FieldVector::constant(b, Rat(1)));
  CHECK((u - u).is_zero());
  CHECK((-u) == FieldVector(b, {Rat(-1, 3), Rat(2)}));
  CHECK(u.scaled(Rat(3)) == FieldVector(b, {Rat(1), Rat(-6)}));
  CHECK(u.coeff(1) == Rat(-2));
  FieldVector w = u;
  w += v;
  w -= u;
  CHECK(w == v);
}

TEST_CASE("approx sums coordinates against generator values") {
  BasisPtr b = sqrt5_basis();
  // phi - 1 = -1/2 + sqrt5/2 ~ 0.618...
  FieldVector x(b, {Rat(-1, 2), Rat(1, 2)});
  Rat a = x.approx();
  CHECK(a > Rat(61, 100));
  CHECK(a < Rat(62, 100));
  CHECK(rat_fv(Rat(3, 7)).approx() == Rat(3, 7));
}

TEST_CASE("comparison decides exactly when it can") {
  BasisPtr b = sqrt5_basis();
  FieldVector x(b, {Rat(-1, 2), Rat(1, 2)});
  CHECK(fv_compare(x, x) == Cmp::EQ);
  // rational differences are exact regardless of magnitude
  FieldVector tiny = FieldVector::constant(b, pow10_inverse(200));
  CHECK(fv_compare(x + tiny, x) == Cmp::GT);
  CHECK(fv_compare(x - tiny, x) == Cmp::LT);
  // sqrt5 versus 2.2360679...: decided from the approximations
  CHECK(fv_compare(FieldVector::generator(b, 1),
                   FieldVector::constant(b, Rat(9, 4))) == Cmp::LT);
  CHECK(fv_less(FieldVector::constant(b, Rat(11, 5)),
                FieldVector::generator(b, 1)));
  CHECK(fv_sign(x) == 1);
  CHECK(fv_sign(-x) == -1);
  CHECK(fv_sign(x - x) == 0);
}

TEST_CASE("comparison refuses to guess inside the guard") {
  BasisPtr b = sqrt5_basis();
  // sqrt5 differs from its own truncation by < 10^-40, well inside the
  // 10^-30 guard, and the difference is supported off generator 0.
  FieldVector g = FieldVector::generator(b, 1);
  FieldVector trunc = FieldVector::constant(b, b->value(1));
  CHECK_THROWS_AS(fv_compare(g, trunc), PrecisionExhausted);
}

TEST_CASE("min and max return references to the arguments") {
  BasisPtr b = sqrt5_basis();
  FieldVector u = FieldVector::constant(b, Rat(1, 3));
  FieldVector v = FieldVector::constant(b, Rat(1, 2));
  CHECK(&fv_min(u, v) == &u);
  CHECK(&fv_max(u, v) == &v);
  CHECK(&fv_min(u, u) == &u);
}

TEST_CASE("rank of coordinate rows") {
  BasisPtr b = sqrt5_basis();
  FieldVector u(b, {Rat(1), Rat(2)});
  FieldVector v(b, {Rat(2), Rat(4)});
  FieldVector w(b, {Rat(0), Rat(1)});
  CHECK(fv_rank({u, v}) == 1);
  CHECK(fv_rank({u, w}) == 2);
  CHECK(fv_rank({u, v, w}) == 2);
  CHECK(fv_rank({}) == 0);
  CHECK(fv_rank({FieldVector::zero(b)}) == 0);
}

TEST_CASE("hash respects exact equality") {
  BasisPtr b = sqrt5_basis();
  FieldVector u(b, {Rat(1, 3), Rat(-2)});
  FieldVector v(b, {Rat(2, 6), Rat(-2)});
  CHECK(u == v);
  CHECK(u.hash() == v.hash());
  CHECK(u.hash() != FieldVector(b, {Rat(1, 3), Rat(2)}).hash());
}

TEST_CASE("mismatched bases are rejected") {
  FieldVector u = rat_fv(Rat(1));
  FieldVector v = FieldVector::constant(sqrt5_basis(), Rat(1));
  CHECK_THROWS_AS(u + v, StructuralError);
  CHECK_THROWS_AS(fv_compare(u, v), StructuralError);
}
