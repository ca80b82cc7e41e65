#pragma once

#include "ietlab/field_vector.hpp"
#include "ietlab/permutation.hpp"

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

namespace ietlab {

// Half-open interval [left, right) translated by shift.
struct Piece {
  FieldVector left;
  FieldVector right;
  FieldVector shift;

  FieldVector length() const { return right - left; }
  FieldVector image_left() const { return left + shift; }
  FieldVector image_right() const { return right + shift; }
};

// Piecewise translation bijection of [0,1).  Pieces tile [0,1) in domain
// order; their images tile [0,1) as well (checked on construction).  Adjacent
// pieces with equal shift are merged, so piece boundaries are genuine.
class PiecewiseTranslation {
public:
  explicit PiecewiseTranslation(std::vector<Piece> pieces);
  static PiecewiseTranslation identity(const BasisPtr& basis);

  const std::vector<Piece>& pieces() const { return pieces_; }
  const BasisPtr& basis() const { return basis_; }

  std::size_t locate(const FieldVector& x) const; // piece index containing x
  FieldVector eval(const FieldVector& x) const;

  PiecewiseTranslation inverse() const;

private:
  std::vector<Piece> pieces_;
  BasisPtr basis_;
};

// (second o first): apply `first`, then `second`.  Piece count of the result
// is bounded by the sum of the inputs' counts; exceeding `piece_cap` throws
// ResourceLimit.
PiecewiseTranslation compose(const PiecewiseTranslation& first,
                             const PiecewiseTranslation& second,
                             std::size_t piece_cap = 1000000);

// Maximal intervals on which the map is the identity, in domain order.
std::vector<std::pair<FieldVector, FieldVector>>
detect_fixed_intervals(const PiecewiseTranslation& map);

// Interval exchange data without the unit-total constraint; used for
// induction chains whose supports shrink.
struct IetData {
  Permutation perm; // image slot j holds source interval perm(j)
  std::vector<FieldVector> lengths;

  FieldVector total() const;
};

// Interval exchange transformation of [0,1): n intervals with positive
// lengths summing to exactly 1 (coefficientwise); image slot j carries source
// interval perm(j).
class Iet {
public:
  Iet(Permutation perm, std::vector<FieldVector> lengths);

  std::size_t size() const { return lengths_.size(); }
  const Permutation& perm() const { return perm_; }
  const std::vector<FieldVector>& lengths() const { return lengths_; }
  const BasisPtr& basis() const { return basis_; }

  const FieldVector& x(std::size_t i) const { return left_[i]; }    // 0..n
  const FieldVector& xt(std::size_t j) const { return image_left_[j]; }
  FieldVector shift(std::size_t source) const;

  std::size_t locate(const FieldVector& x) const; // source interval of x
  FieldVector eval(const FieldVector& x) const;
  FieldVector eval_inverse(const FieldVector& y) const;

  PiecewiseTranslation to_piecewise() const;
  IetData data() const { return IetData{perm_, lengths_}; }

private:
  Permutation perm_;
  std::vector<FieldVector> lengths_;
  std::vector<std::size_t> slot_;       // image slot of each source interval
  std::vector<FieldVector> left_;       // n+1 partial sums of lengths
  std::vector<FieldVector> image_left_; // n+1 partial sums in image order
  BasisPtr basis_;
};

PiecewiseTranslation iet_power(const Iet& map, std::size_t exponent,
                               std::size_t piece_cap = 1000000);

// First-return system of an interval exchange to [0, cut).
struct FirstReturn {
  Iet iet;                   // return map rescaled to unit length
  FieldVector scale;         // the cut, in the original basis
  std::vector<Piece> raw_pieces;        // unmerged return pieces, original basis
  std::vector<FieldVector> raw_lengths; // their lengths, original basis
};

// Follows bands of points until every orbit re-enters [0, cut).  The rescaled
// map lives on a derived generator basis when `cut` is irrational (each
// generator divided by the cut, with the dependent one eliminated against 1).
FirstReturn first_return(const Iet& map, const FieldVector& cut);

// One step of right Rauzy induction on unrenormalized data: cut the shorter
// of the last source interval and the last image interval.  Equal lengths
// throw TieError.
IetData rauzy_step(const IetData& data);

// start, then `steps` successive inductions (length steps+1).
std::vector<IetData> rauzy_chain(const IetData& start, std::size_t steps);

struct SaddleConnection {
  std::size_t from;  // discontinuity index, 1..n-1
  std::size_t to;    // discontinuity index, 1..n-1
  std::size_t steps; // smallest m >= 1 with T^m(x_from) == x_to
};

std::optional<SaddleConnection> saddle_connection_search(const Iet& map,
                                                         std::size_t depth);

// Visit counts of the n source intervals along x, T(x), ..., T^{steps-1}(x).
std::vector<std::size_t> occupation_vector(const Iet& map,
                                           const FieldVector& start,
                                           std::size_t steps);

struct NonMinimalPeriodic {
  std::size_t period;
  FieldVector interval_left; // leftmost maximal interval fixed by T^period
  FieldVector interval_right;
};

struct NoObstructionUpTo {
  std::size_t depth;
  double max_frequency_deviation; // sup |visit frequency - interval length|
};

using MinimalityVerdict =
    std::variant<NonMinimalPeriodic, SaddleConnection, NoObstructionUpTo>;

// Periodic-interval certificates are sought through power_cap first; then
// discontinuity orbits are advanced in lockstep through `depth` steps looking
// for saddle connections and accumulating occupation statistics.
MinimalityVerdict minimality_verdict(const Iet& map, std::size_t depth,
                                     std::size_t power_cap,
                                     std::size_t piece_cap = 1000000);

} // namespace ietlab
