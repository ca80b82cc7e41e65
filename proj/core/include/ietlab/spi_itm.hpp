#pragma once

#include "ietlab/iet.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace ietlab {

// Partial isometry of [0,1): x in [a,b) translates to [c,d), with
// b - a == d - c exactly.
struct SpiArm {
  FieldVector a, b, c, d;
};

// System of partial isometries of [0,1) with suspension data: heights[i]
// carries the slit of arm i's domain, heights[i + k] the slit of its image.
// Heights are pairwise distinct and lie strictly between 0 and 1; some arm
// endpoint reaches 0 and some reaches 1.
class Spi {
public:
  Spi(std::vector<SpiArm> arms, std::vector<FieldVector> heights);

  std::size_t arm_count() const { return arms_.size(); }
  const std::vector<SpiArm>& arms() const { return arms_; }
  const std::vector<FieldVector>& heights() const { return heights_; }
  const BasisPtr& basis() const { return basis_; }

private:
  std::vector<SpiArm> arms_;
  std::vector<FieldVector> heights_;
  BasisPtr basis_;
};

// Total domain length minus 1.
FieldVector spi_excess(const Spi& spi);

struct SuspensionLeafCycle {
  std::size_t edge;  // resume edge whose band recurred (0..2k-1)
  FieldVector left;  // recurring x-interval
  FieldVector right;
};

struct DoubleSuspension {
  Iet iet;    // first return of the upward flow to the bottom edge
  bool fills; // every flow leaf meets the bottom edge
  std::optional<SuspensionLeafCycle> cycle; // witness when fills is false
};

// Suspends each arm as a pair of horizontal slits; crossing a domain slit
// teleports just above the matching image slit and conversely.  The bottom
// return map is always an interval exchange; `fills` reports whether leaves
// trapped between slits exist (detected as exact band recurrence).
DoubleSuspension double_suspension(const Spi& spi);

// Seven-interval family attached to ascending domain lengths b1 < b2 < b3
// with images ending at 1.  Throws ChartDomainError off the parameter region.
Iet family_k3(const FieldVector& b1, const FieldVector& b2,
              const FieldVector& b3);

// Interval translation mapping: piece [L_{i-1}, L_i) translates by t_i.
// Images stay inside [0,1] but need not be disjoint, so the map can lose
// surjectivity; iterated images are nested.
class Itm {
public:
  Itm(std::vector<FieldVector> lengths, std::vector<FieldVector> translations);

  std::size_t size() const { return lengths_.size(); }
  const std::vector<FieldVector>& lengths() const { return lengths_; }
  const std::vector<FieldVector>& translations() const { return translations_; }
  const FieldVector& breakpoint(std::size_t i) const { return breaks_[i]; }
  const BasisPtr& basis() const { return basis_; }

private:
  std::vector<FieldVector> lengths_;
  std::vector<FieldVector> translations_;
  std::vector<FieldVector> breaks_; // n+1 partial sums
  BasisPtr basis_;
};

// Finite union of disjoint half-open intervals, kept sorted and merged.
class IntervalSet {
public:
  IntervalSet() = default;
  static IntervalSet full(const BasisPtr& basis);

  void add(FieldVector left, FieldVector right);
  const std::vector<std::pair<FieldVector, FieldVector>>& parts() const {
    return parts_;
  }
  bool empty() const { return parts_.empty(); }
  FieldVector total_length() const; // needs at least one part
  bool operator==(const IntervalSet& o) const;

private:
  std::vector<std::pair<FieldVector, FieldVector>> parts_;
};

IntervalSet itm_image_step(const Itm& map, const IntervalSet& set);

struct ItmFiniteType {
  std::size_t index; // first m with T(S_m) == S_m
  IntervalSet attractor;
};

struct ItmUndetermined {
  std::size_t cap;
};

using ItmTypeResult = std::variant<ItmFiniteType, ItmUndetermined>;

// Iterates S_{m+1} = T(S_m) from S_0 = [0,1) until the sets stabilize or
// `cap` images have been taken.
ItmTypeResult itm_finite_type(const Itm& map, std::size_t cap);

} // namespace ietlab
