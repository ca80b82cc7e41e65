#include "ietlab/restriction.hpp"

#include "ietlab/errors.hpp"

namespace ietlab {

RestrictionSpace::RestrictionSpace(std::size_t ambient, Mat spanning_rows)
    : ambient_(ambient) {
  for (const std::vector<Rat>& r : spanning_rows)
    if (r.size() != ambient)
      throw StructuralError("restriction row of wrong length");
  rref(spanning_rows);
  rows_.reserve(spanning_rows.size());
  for (const std::vector<Rat>& r : spanning_rows)
    rows_.push_back(primitive_integer_vector(r));
}

bool RestrictionSpace::contains(const std::vector<Rat>& v) const {
  if (v.size() != ambient_) throw StructuralError("vector of wrong length");
  Mat m = rows_;
  m.push_back(v);
  return mat_rank(std::move(m)) == rows_.size();
}

bool RestrictionSpace::operator==(const RestrictionSpace& o) const {
  return ambient_ == o.ambient_ && rows_ == o.rows_;
}

Mat coefficient_matrix(const std::vector<FieldVector>& lengths) {
  if (lengths.empty()) throw StructuralError("no lengths");
  const std::size_t d = lengths.front().basis()->size();
  Mat a(d, std::vector<Rat>(lengths.size(), Rat(0)));
  for (std::size_t i = 0; i < lengths.size(); ++i)
    for (std::size_t k = 0; k < d; ++k) a[k][i] = lengths[i].coeff(k);
  return a;
}

RestrictionSpace full_restriction_lattice(const std::vector<FieldVector>& lengths) {
  return RestrictionSpace(lengths.size(),
                          kernel_basis(coefficient_matrix(lengths), lengths.size()));
}

RestrictionSpace full_restriction_lattice(const Iet& map) {
  return full_restriction_lattice(map.lengths());
}

RestrictionSpace annihilator(const RestrictionSpace& space) {
  return RestrictionSpace(space.ambient(),
                          kernel_basis(space.rows(), space.ambient()));
}

Dichotomy classify_rich_poor(const RestrictionSpace& space,
                             const Permutation& perm) {
  if (space.ambient() != perm.size())
    throw StructuralError("restriction and permutation sizes differ");
  RestrictionSpace ann = annihilator(space);
  OmegaForm omega(perm);
  for (std::size_t p = 0; p < ann.dim(); ++p)
    for (std::size_t q = p + 1; q < ann.dim(); ++q) {
      Rat val = omega.pair(ann.rows()[p], ann.rows()[q]);
      if (val != 0)
        return Dichotomy{false, val,
                         std::make_pair(ann.rows()[p], ann.rows()[q])};
    }
  return Dichotomy{true, Rat(0), std::nullopt};
}

SafMatrix::SafMatrix(Mat entries) : entries_(std::move(entries)) {
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    if (entries_[k].size() != entries_.size())
      throw StructuralError("invariant matrix must be square");
    for (std::size_t l = 0; l < entries_.size(); ++l)
      if (entries_[k][l] != -entries_[l][k])
        throw StructuralError("invariant matrix must be antisymmetric");
  }
}

bool SafMatrix::is_zero() const {
  for (const std::vector<Rat>& row : entries_)
    for (const Rat& v : row)
      if (v != 0) return false;
  return true;
}

SafMatrix saf_invariant(const Permutation& perm,
                        const std::vector<FieldVector>& lengths) {
  Mat a = coefficient_matrix(lengths);
  Mat omega = OmegaForm(perm).as_matrix();
  return SafMatrix(mat_mul(mat_mul(a, omega), transpose(a)));
}

SafMatrix saf_invariant(const Iet& map) {
  return saf_invariant(map.perm(), map.lengths());
}

std::optional<SeparatingCycle> find_separating_cycle(const Iet& map) {
  RestrictionSpace ann = annihilator(full_restriction_lattice(map));
  OmegaForm omega(map.perm());
  for (const std::vector<Rat>& w : ann.rows()) {
    FieldVector drift = asymptotic_pairing(w, map);
    if (drift.is_zero()) continue;
    std::vector<Rat> u = primitive_integer_vector(w);
    FieldVector pairing_value = asymptotic_pairing(u, map);
    return SeparatingCycle{u, omega.apply(u), std::move(pairing_value)};
  }
  return std::nullopt;
}

bool check_separating_cycle(const Permutation& perm,
                            const RestrictionSpace& space,
                            const std::vector<Rat>& cycle,
                            const std::vector<FieldVector>& lengths) {
  const std::size_t n = perm.size();
  if (cycle.size() != n || space.ambient() != n || lengths.size() != n)
    throw StructuralError("cycle check size mismatch");
  Mat system = OmegaForm(perm).as_matrix();
  std::vector<Rat> rhs = cycle;
  for (const std::vector<Rat>& r : space.rows()) {
    system.push_back(r);
    rhs.emplace_back(0);
  }
  if (!solve_linear(std::move(system), std::move(rhs))) return false;
  FieldVector drift = FieldVector::zero(lengths.front().basis());
  for (std::size_t i = 0; i < n; ++i)
    if (cycle[i] != 0) drift += lengths[i].scaled(cycle[i]);
  return !drift.is_zero();
}

Permutation alternating_family_permutation(std::size_t k) {
  if (k < 2) throw StructuralError("family needs k >= 2");
  const std::size_t n = 2 * k;
  std::vector<std::size_t> images(n);
  for (std::size_t j = 1; j <= k - 1; ++j) {
    images[2 * j - 2] = 2 * j + 2; // one-based slot 2j-1 holds 2j+2
    images[2 * j - 1] = 2 * j + 1; // one-based slot 2j holds 2j+1
  }
  images[n - 2] = 2;
  images[n - 1] = 1;
  return Permutation::from_one_based(images);
}

RestrictionSpace alternating_family_restriction(std::size_t k) {
  if (k < 2) throw StructuralError("family needs k >= 2");
  const std::size_t n = 2 * k;
  Mat rows;
  for (std::size_t i = 0; i + 2 < n; ++i) {
    std::vector<Rat> r(n, Rat(0));
    r[i] = 1;
    r[i + 2] = -1;
    rows.push_back(std::move(r));
  }
  return RestrictionSpace(n, std::move(rows));
}

} // namespace ietlab
