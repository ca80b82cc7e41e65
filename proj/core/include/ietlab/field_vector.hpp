#pragma once

#include "ietlab/rational.hpp"

#include <memory>
#include <string>
#include <vector>

namespace ietlab {

// A basis of real numbers assumed linearly independent over Q.  Generator 0 is
// always the literal 1 with exact value 1; the remaining generators carry
// truncated decimal approximations good to `digits` places.  Comparisons that
// cannot be decided from the approximations alone (difference smaller than
// `guard` with support off generator 0) throw PrecisionExhausted rather than
// guess.
class GeneratorBasis {
public:
  // Decimal-string generators, e.g. {"0.6180339887..."}; generator 0 ("1") is
  // implicit and must not be passed.  digits==0 means IETLAB_PRECISION or 40.
  GeneratorBasis(std::vector<std::string> names,
                 const std::vector<std::string>& decimals,
                 unsigned digits = 0);

  // Exact rational generator values (used for derived bases, e.g. after a
  // first-return renormalization divides generators by an algebraic scale).
  GeneratorBasis(std::vector<std::string> names, std::vector<Rat> values,
                 Rat guard);

  std::size_t size() const { return values_.size(); }
  const std::string& name(std::size_t k) const { return names_[k]; }
  const Rat& value(std::size_t k) const { return values_[k]; }
  const Rat& guard() const { return guard_; }
  unsigned digits() const { return digits_; }

private:
  std::vector<std::string> names_;
  std::vector<Rat> values_; // values_[0] == 1 exactly
  Rat guard_;
  unsigned digits_ = 0;
};

using BasisPtr = std::shared_ptr<const GeneratorBasis>;

BasisPtr rational_basis(); // the shared one-generator basis {1}

enum class Cmp { LT, EQ, GT };

// Element of the Q-span of a generator basis, stored as exact rational
// coordinates.  Arithmetic is exact; only order comparisons consult the
// generator approximations.
class FieldVector {
public:
  FieldVector() = default;
  FieldVector(BasisPtr basis, std::vector<Rat> coeffs);

  static FieldVector zero(const BasisPtr& basis);
  static FieldVector constant(const BasisPtr& basis, const Rat& c);
  static FieldVector generator(const BasisPtr& basis, std::size_t k);

  const BasisPtr& basis() const { return basis_; }
  const std::vector<Rat>& coeffs() const { return coeffs_; }
  const Rat& coeff(std::size_t k) const { return coeffs_[k]; }

  bool is_zero() const;       // all coordinates zero (exact)
  bool is_rational() const;   // support contained in generator 0
  Rat approx() const;         // sum of coeff * generator value, exact Rat

  FieldVector operator+(const FieldVector& o) const;
  FieldVector operator-(const FieldVector& o) const;
  FieldVector operator-() const;
  FieldVector& operator+=(const FieldVector& o);
  FieldVector& operator-=(const FieldVector& o);
  FieldVector scaled(const Rat& c) const;

  bool operator==(const FieldVector& o) const; // exact coordinate equality

  std::uint64_t hash() const;

private:
  BasisPtr basis_;
  std::vector<Rat> coeffs_;
};

// Three-way order comparison.  Equal coordinates give EQ outright.  A nonzero
// difference supported only on generator 0 is decided exactly.  Otherwise the
// approximate difference decides, unless it falls inside the basis guard, in
// which case PrecisionExhausted is thrown.
Cmp fv_compare(const FieldVector& a, const FieldVector& b);

bool fv_less(const FieldVector& a, const FieldVector& b);
bool fv_less_equal(const FieldVector& a, const FieldVector& b);
int fv_sign(const FieldVector& a); // -1, 0, +1 via comparison against zero

const FieldVector& fv_min(const FieldVector& a, const FieldVector& b);
const FieldVector& fv_max(const FieldVector& a, const FieldVector& b);

// Rank over Q of the coordinate matrix of `rows` (exact Gaussian elimination).
std::size_t fv_rank(const std::vector<FieldVector>& rows);

// Reads IETLAB_PRECISION (decimal digit count) or returns 40.
unsigned default_precision();

} // namespace ietlab
