#pragma once

#include "ietlab/homology.hpp"
#include "ietlab/iet.hpp"
#include "ietlab/linalg.hpp"

#include <optional>
#include <utility>

namespace ietlab {

// Rational subspace of Q^n holding integral relations among interval
// lengths.  Stored canonically: reduced echelon rows scaled to primitive
// integer vectors, so equal subspaces compare equal rowwise.
class RestrictionSpace {
public:
  RestrictionSpace(std::size_t ambient, Mat spanning_rows);

  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return rows_.size(); }
  const Mat& rows() const { return rows_; }
  bool contains(const std::vector<Rat>& v) const;
  bool operator==(const RestrictionSpace& o) const;

private:
  std::size_t ambient_;
  Mat rows_;
};

// Row k holds the coefficients of generator k across the lengths (d x n).
Mat coefficient_matrix(const std::vector<FieldVector>& lengths);

// All rational relations sum r_i a_i = 0 satisfied by the lengths.
RestrictionSpace full_restriction_lattice(const std::vector<FieldVector>& lengths);
RestrictionSpace full_restriction_lattice(const Iet& map);

// Orthogonal complement within Q^n.
RestrictionSpace annihilator(const RestrictionSpace& space);

// A restriction is rich when the annihilator of its relation space is
// isotropic for the transposition form; otherwise a pair of annihilator
// vectors with nonzero pairing witnesses poverty.
struct Dichotomy {
  bool rich;
  Rat obstruction; // u^T Omega v for the witness pair, 0 when rich
  std::optional<std::pair<std::vector<Rat>, std::vector<Rat>>> witness;
};

Dichotomy classify_rich_poor(const RestrictionSpace& space,
                             const Permutation& perm);

// Antisymmetric d x d matrix A Omega A^T over the generator coefficients;
// vanishes exactly on rich length data.
class SafMatrix {
public:
  explicit SafMatrix(Mat entries);

  std::size_t size() const { return entries_.size(); }
  const Rat& entry(std::size_t k, std::size_t l) const { return entries_[k][l]; }
  const Mat& matrix() const { return entries_; }
  bool is_zero() const;
  bool operator==(const SafMatrix& o) const { return entries_ == o.entries_; }

private:
  Mat entries_;
};

SafMatrix saf_invariant(const Iet& map);
SafMatrix saf_invariant(const Permutation& perm,
                        const std::vector<FieldVector>& lengths);

struct SeparatingCycle {
  std::vector<Rat> witness; // primitive integer u annihilating the lattice
  std::vector<Rat> cycle;   // s = Omega u
  FieldVector pairing;      // s . a, nonzero exactly
};

std::optional<SeparatingCycle> find_separating_cycle(const Iet& map);

// Validates a claimed cycle s: some u solves Omega u = s with u orthogonal
// to the restriction space, and s . a is exactly nonzero.
bool check_separating_cycle(const Permutation& perm,
                            const RestrictionSpace& space,
                            const std::vector<Rat>& cycle,
                            const std::vector<FieldVector>& lengths);

// Family of 2k-interval exchanges whose relation space is spanned by
// e_i - e_{i+2}; poor for every k with a two-indicator witness pair.
Permutation alternating_family_permutation(std::size_t k);
RestrictionSpace alternating_family_restriction(std::size_t k);

} // namespace ietlab
