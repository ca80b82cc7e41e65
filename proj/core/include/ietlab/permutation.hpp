#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace ietlab {

// Permutation of {0, ..., n-1}, stored 0-indexed.  User-facing interfaces
// (JSON, CLI) use 1-indexed images; convert at the boundary.
class Permutation {
public:
  Permutation() = default;
  explicit Permutation(std::vector<std::size_t> images); // 0-indexed
  static Permutation from_one_based(const std::vector<std::size_t>& images);
  static Permutation identity(std::size_t n);

  std::size_t size() const { return images_.size(); }
  std::size_t operator()(std::size_t i) const { return images_[i]; }
  const std::vector<std::size_t>& images() const { return images_; }
  std::vector<std::size_t> to_one_based() const;

  Permutation inverse() const;
  // (a.compose(b))(i) == a(b(i))
  Permutation compose(const Permutation& inner) const;

  // No proper prefix {0..k} is invariant: max over the first k+1 images
  // exceeds k for every k < n-1.
  bool is_irreducible() const;

  bool operator==(const Permutation& o) const { return images_ == o.images_; }

  std::string to_string() const; // 1-indexed, e.g. "[2,4,3,1]"

private:
  std::vector<std::size_t> images_;
};

} // namespace ietlab
