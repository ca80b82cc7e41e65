#include "ietlab/field_vector.hpp"

#include "ietlab/errors.hpp"

#include <cstdlib>

namespace ietlab {

unsigned default_precision() {
  if (const char* env = std::getenv("IETLAB_PRECISION")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 12 && v <= 10000)
      return static_cast<unsigned>(v);
    throw DomainError("IETLAB_PRECISION must be an integer in [12, 10000]");
  }
  return 40;
}

namespace {

Rat guard_for(unsigned digits) {
  // Comparisons closer than 10^-(digits-10) to zero are unreliable: the
  // generator values themselves are only good to `digits` places.
  return pow10_inverse(digits - 10);
}

} // namespace

GeneratorBasis::GeneratorBasis(std::vector<std::string> names,
                               const std::vector<std::string>& decimals,
                               unsigned digits) {
  if (digits == 0) digits = default_precision();
  if (names.size() != decimals.size() + 1)
    throw StructuralError("generator names must be decimals plus leading \"1\"");
  if (names.empty() || names[0] != "1")
    throw StructuralError("generator 0 must be named \"1\"");
  digits_ = digits;
  guard_ = guard_for(digits);
  names_ = std::move(names);
  values_.reserve(decimals.size() + 1);
  values_.emplace_back(1);
  for (const std::string& d : decimals) values_.push_back(parse_decimal(d));
}

GeneratorBasis::GeneratorBasis(std::vector<std::string> names,
                               std::vector<Rat> values, Rat guard)
    : names_(std::move(names)), values_(std::move(values)),
      guard_(std::move(guard)) {
  if (names_.size() != values_.size() || values_.empty())
    throw StructuralError("generator names and values must align");
  for (Rat& v : values_) v.canonicalize();
  guard_.canonicalize();
  if (values_[0] != 1)
    throw StructuralError("generator 0 must have exact value 1");
  if (sgn(guard_) <= 0) throw StructuralError("guard must be positive");
}

BasisPtr rational_basis() {
  static const BasisPtr basis = std::make_shared<GeneratorBasis>(
      std::vector<std::string>{"1"}, std::vector<std::string>{});
  return basis;
}

FieldVector::FieldVector(BasisPtr basis, std::vector<Rat> coeffs)
    : basis_(std::move(basis)), coeffs_(std::move(coeffs)) {
  if (!basis_) throw StructuralError("field vector needs a basis");
  if (coeffs_.size() != basis_->size())
    throw StructuralError("coefficient count does not match basis size");
  // mpq_equal and hashing assume canonical form; raw mpq_class(p, q)
  // construction does not reduce.
  for (Rat& c : coeffs_) c.canonicalize();
}

FieldVector FieldVector::zero(const BasisPtr& basis) {
  return FieldVector(basis, std::vector<Rat>(basis->size(), Rat(0)));
}

FieldVector FieldVector::constant(const BasisPtr& basis, const Rat& c) {
  std::vector<Rat> coeffs(basis->size(), Rat(0));
  coeffs[0] = c;
  return FieldVector(basis, std::move(coeffs));
}

FieldVector FieldVector::generator(const BasisPtr& basis, std::size_t k) {
  if (k >= basis->size()) throw StructuralError("generator index out of range");
  std::vector<Rat> coeffs(basis->size(), Rat(0));
  coeffs[k] = 1;
  return FieldVector(basis, std::move(coeffs));
}

bool FieldVector::is_zero() const {
  for (const Rat& c : coeffs_)
    if (c != 0) return false;
  return true;
}

bool FieldVector::is_rational() const {
  for (std::size_t k = 1; k < coeffs_.size(); ++k)
    if (coeffs_[k] != 0) return false;
  return true;
}

Rat FieldVector::approx() const {
  Rat sum(0);
  for (std::size_t k = 0; k < coeffs_.size(); ++k)
    if (coeffs_[k] != 0) sum += coeffs_[k] * basis_->value(k);
  return sum;
}

namespace {

void require_same_basis(const FieldVector& a, const FieldVector& b) {
  if (a.basis() != b.basis())
    throw StructuralError("field vectors from different bases");
}

} // namespace

FieldVector FieldVector::operator+(const FieldVector& o) const {
  FieldVector r = *this;
  r += o;
  return r;
}

FieldVector FieldVector::operator-(const FieldVector& o) const {
  FieldVector r = *this;
  r -= o;
  return r;
}

FieldVector FieldVector::operator-() const {
  FieldVector r = *this;
  for (Rat& c : r.coeffs_) c = -c;
  return r;
}

FieldVector& FieldVector::operator+=(const FieldVector& o) {
  require_same_basis(*this, o);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  return *this;
}

FieldVector& FieldVector::operator-=(const FieldVector& o) {
  require_same_basis(*this, o);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
  return *this;
}

FieldVector FieldVector::scaled(const Rat& c) const {
  FieldVector r = *this;
  for (Rat& x : r.coeffs_) x *= c;
  return r;
}

bool FieldVector::operator==(const FieldVector& o) const {
  require_same_basis(*this, o);
  return coeffs_ == o.coeffs_;
}

std::uint64_t FieldVector::hash() const {
  std::uint64_t h = 0x8f0c5e1d3b9a742fULL;
  for (const Rat& c : coeffs_) h = hash_combine(h, hash_rat(c));
  return h;
}

Cmp fv_compare(const FieldVector& a, const FieldVector& b) {
  if (a.basis() != b.basis())
    throw StructuralError("field vectors from different bases");
  FieldVector delta = a - b;
  if (delta.is_zero()) return Cmp::EQ;
  if (delta.is_rational())
    return sgn(delta.coeff(0)) < 0 ? Cmp::LT : Cmp::GT;
  Rat value = delta.approx();
  if (abs(value) < a.basis()->guard())
    throw PrecisionExhausted(
        "comparison within guard band; raise IETLAB_PRECISION");
  return sgn(value) < 0 ? Cmp::LT : Cmp::GT;
}

bool fv_less(const FieldVector& a, const FieldVector& b) {
  return fv_compare(a, b) == Cmp::LT;
}

bool fv_less_equal(const FieldVector& a, const FieldVector& b) {
  return fv_compare(a, b) != Cmp::GT;
}

int fv_sign(const FieldVector& a) {
  switch (fv_compare(a, FieldVector::zero(a.basis()))) {
  case Cmp::LT: return -1;
  case Cmp::EQ: return 0;
  case Cmp::GT: return 1;
  }
  return 0;
}

const FieldVector& fv_min(const FieldVector& a, const FieldVector& b) {
  return fv_less(b, a) ? b : a;
}

const FieldVector& fv_max(const FieldVector& a, const FieldVector& b) {
  return fv_less(a, b) ? b : a;
}

std::size_t fv_rank(const std::vector<FieldVector>& rows) {
  if (rows.empty()) return 0;
  std::vector<std::vector<Rat>> m;
  m.reserve(rows.size());
  for (const FieldVector& r : rows) m.push_back(r.coeffs());
  const std::size_t cols = m[0].size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < m.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < m.size() && m[pivot][col] == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[rank], m[pivot]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][col] == 0) continue;
      Rat f = m[r][col] / m[rank][col];
      for (std::size_t c = col; c < cols; ++c) m[r][c] -= f * m[rank][c];
    }
    ++rank;
  }
  return rank;
}

} // namespace ietlab
