#include "ietlab/permutation.hpp"

#include "ietlab/errors.hpp"

#include <algorithm>

namespace ietlab {

Permutation::Permutation(std::vector<std::size_t> images)
    : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t v : images_) {
    if (v >= images_.size() || seen[v])
      throw StructuralError("not a permutation of {0..n-1}");
    seen[v] = true;
  }
}

Permutation Permutation::from_one_based(const std::vector<std::size_t>& images) {
  std::vector<std::size_t> shifted;
  shifted.reserve(images.size());
  for (std::size_t v : images) {
    if (v == 0) throw StructuralError("one-based permutation contains 0");
    shifted.push_back(v - 1);
  }
  return Permutation(std::move(shifted));
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::size_t> images(n);
  for (std::size_t i = 0; i < n; ++i) images[i] = i;
  return Permutation(std::move(images));
}

std::vector<std::size_t> Permutation::to_one_based() const {
  std::vector<std::size_t> out;
  out.reserve(images_.size());
  for (std::size_t v : images_) out.push_back(v + 1);
  return out;
}

Permutation Permutation::inverse() const {
  std::vector<std::size_t> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = i;
  return Permutation(std::move(inv));
}

Permutation Permutation::compose(const Permutation& inner) const {
  if (size() != inner.size())
    throw StructuralError("composing permutations of different sizes");
  std::vector<std::size_t> out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = images_[inner(i)];
  return Permutation(std::move(out));
}

bool Permutation::is_irreducible() const {
  std::size_t running_max = 0;
  for (std::size_t k = 0; k + 1 < images_.size(); ++k) {
    running_max = std::max(running_max, images_[k]);
    if (running_max == k) return false;
  }
  return true;
}

std::string Permutation::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(images_[i] + 1);
  }
  out += "]";
  return out;
}

} // namespace ietlab
