#include "ietlab/homology.hpp"

#include "ietlab/errors.hpp"

namespace ietlab {

OmegaForm::OmegaForm(const Permutation& perm) {
  const std::size_t n = perm.size();
  const Permutation inv = perm.inverse();
  entries_.assign(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i < j && inv(i) > inv(j)) entries_[i][j] = 1;
      else if (i > j && inv(i) < inv(j)) entries_[i][j] = -1;
    }
}

std::vector<Rat> OmegaForm::apply(const std::vector<Rat>& u) const {
  if (u.size() != size()) throw StructuralError("cycle length mismatch");
  std::vector<Rat> out(size(), Rat(0));
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j)
      if (entries_[i][j] != 0 && u[j] != 0)
        out[i] += Rat(entries_[i][j]) * u[j];
  return out;
}

Rat OmegaForm::pair(const std::vector<Rat>& u, const std::vector<Rat>& v) const {
  return dot(u, apply(v));
}

Mat OmegaForm::as_matrix() const {
  Mat m(size(), std::vector<Rat>(size(), Rat(0)));
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j) m[i][j] = entries_[i][j];
  return m;
}

std::size_t OmegaForm::rank() const { return mat_rank(as_matrix()); }

SurfaceInvariants surface_invariants(const Permutation& perm) {
  OmegaForm omega(perm);
  std::size_t rank = omega.rank();
  if (rank % 2 != 0) throw StructuralError("antisymmetric form with odd rank");
  return SurfaceInvariants{rank, rank / 2, perm.size() + 1 - rank};
}

Rat pairing(const std::vector<Rat>& u, const std::vector<Rat>& r) {
  return dot(u, r);
}

FieldVector asymptotic_pairing(const std::vector<Rat>& u,
                               const Permutation& perm,
                               const std::vector<FieldVector>& lengths) {
  if (u.size() != lengths.size())
    throw StructuralError("cycle length mismatch");
  OmegaForm omega(perm);
  std::vector<Rat> s = omega.apply(u);
  FieldVector sum = FieldVector::zero(lengths.front().basis());
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i] != 0) sum += lengths[i].scaled(s[i]);
  return sum;
}

FieldVector asymptotic_pairing(const std::vector<Rat>& u, const Iet& map) {
  return asymptotic_pairing(u, map.perm(), map.lengths());
}

} // namespace ietlab
