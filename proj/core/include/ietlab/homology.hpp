#pragma once

#include "ietlab/iet.hpp"
#include "ietlab/linalg.hpp"
#include "ietlab/permutation.hpp"

namespace ietlab {

// Antisymmetric integer form recording which interval pairs the exchange
// transposes: entry(i,j) = +1 when interval i precedes j in the domain but
// follows it in the image.
class OmegaForm {
public:
  explicit OmegaForm(const Permutation& perm);

  std::size_t size() const { return entries_.size(); }
  int entry(std::size_t i, std::size_t j) const { return entries_[i][j]; }
  std::vector<Rat> apply(const std::vector<Rat>& u) const;
  Rat pair(const std::vector<Rat>& u, const std::vector<Rat>& v) const; // u^T O v
  Mat as_matrix() const;
  std::size_t rank() const; // always even

private:
  std::vector<std::vector<int>> entries_;
};

struct SurfaceInvariants {
  std::size_t rank;
  std::size_t genus;         // rank / 2
  std::size_t marked_points; // n + 1 - 2 genus
};

SurfaceInvariants surface_invariants(const Permutation& perm);

// Dot product of a cycle against a restriction vector.
Rat pairing(const std::vector<Rat>& u, const std::vector<Rat>& r);

// Drift of the cycle u against the length data: (Omega u) . a, exact.
FieldVector asymptotic_pairing(const std::vector<Rat>& u, const Iet& map);
FieldVector asymptotic_pairing(const std::vector<Rat>& u,
                               const Permutation& perm,
                               const std::vector<FieldVector>& lengths);

} // namespace ietlab
