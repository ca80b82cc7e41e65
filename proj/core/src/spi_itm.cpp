#include "ietlab/spi_itm.hpp"

#include "ietlab/errors.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

namespace ietlab {

Spi::Spi(std::vector<SpiArm> arms, std::vector<FieldVector> heights)
    : arms_(std::move(arms)), heights_(std::move(heights)) {
  if (arms_.empty()) throw StructuralError("system needs at least one arm");
  if (heights_.size() != 2 * arms_.size())
    throw StructuralError("need one height per slit (2k total)");
  basis_ = arms_.front().a.basis();
  const FieldVector zero = FieldVector::zero(basis_);
  const FieldVector one = FieldVector::constant(basis_, Rat(1));
  bool touches_zero = false, touches_one = false;
  for (const SpiArm& arm : arms_) {
    for (const FieldVector* v : {&arm.a, &arm.b, &arm.c, &arm.d})
      if (v->basis() != basis_) throw StructuralError("arms over mixed bases");
    if (fv_compare(arm.a, zero) == Cmp::LT || fv_compare(arm.c, zero) == Cmp::LT)
      throw StructuralError("arm extends below 0");
    if (fv_compare(arm.b, one) == Cmp::GT || fv_compare(arm.d, one) == Cmp::GT)
      throw StructuralError("arm extends above 1");
    if (fv_compare(arm.a, arm.b) != Cmp::LT || fv_compare(arm.c, arm.d) != Cmp::LT)
      throw StructuralError("arm intervals must have positive length");
    if (!((arm.b - arm.a) - (arm.d - arm.c)).is_zero())
      throw StructuralError("arm domain and image lengths differ");
    if (arm.a.is_zero() || arm.c.is_zero()) touches_zero = true;
    if ((arm.b - one).is_zero() || (arm.d - one).is_zero()) touches_one = true;
  }
  if (!touches_zero || !touches_one)
    throw StructuralError("arm endpoints must reach both 0 and 1");
  for (std::size_t i = 0; i < heights_.size(); ++i) {
    if (heights_[i].basis() != basis_)
      throw StructuralError("heights over mixed bases");
    if (fv_sign(heights_[i]) <= 0 || fv_compare(heights_[i], one) != Cmp::LT)
      throw StructuralError("heights must lie strictly between 0 and 1");
    for (std::size_t j = 0; j < i; ++j)
      if ((heights_[i] - heights_[j]).is_zero())
        throw StructuralError("slit heights must be pairwise distinct");
  }
}

FieldVector spi_excess(const Spi& spi) {
  FieldVector sum = FieldVector::zero(spi.basis());
  for (const SpiArm& arm : spi.arms()) sum += arm.b - arm.a;
  return sum - FieldVector::constant(spi.basis(), Rat(1));
}

namespace {

struct Slit {
  FieldVector height;
  FieldVector left, right; // x-range
  FieldVector shift;       // translation applied when crossing
  std::size_t resume;      // slit index whose top the band resumes above
};

struct RisingSeg {
  FieldVector left, right;
  FieldVector origin_left;
};

struct SuspBand {
  std::size_t after; // rise from just above this slit; SIZE_MAX = bottom
  FieldVector left, right;
  FieldVector origin_left;
};

struct SuspensionFrame {
  std::vector<Slit> slits;          // indexed like heights
  std::vector<std::size_t> order;   // slit indices by increasing height
  BasisPtr basis;
};

SuspensionFrame build_frame(const Spi& spi) {
  SuspensionFrame f;
  f.basis = spi.basis();
  const std::size_t k = spi.arm_count();
  for (std::size_t i = 0; i < k; ++i) {
    const SpiArm& arm = spi.arms()[i];
    f.slits.push_back(Slit{spi.heights()[i], arm.a, arm.b, arm.c - arm.a, i + k});
  }
  for (std::size_t i = 0; i < k; ++i) {
    const SpiArm& arm = spi.arms()[i];
    f.slits.push_back(Slit{spi.heights()[i + k], arm.c, arm.d, arm.a - arm.c, i});
  }
  f.order.resize(f.slits.size());
  for (std::size_t i = 0; i < f.order.size(); ++i) f.order[i] = i;
  std::sort(f.order.begin(), f.order.end(), [&](std::size_t a, std::size_t b) {
    return fv_less(f.slits[a].height, f.slits[b].height);
  });

  // Bands resume "just above" a slit.  The crossing order below uses strict
  // exact height comparisons, which equals the small-offset picture for any
  // offset under the least height gap; distinct heights guarantee that gap
  // is positive.
  if (f.order.size() >= 2) {
    FieldVector min_gap =
        f.slits[f.order[1]].height - f.slits[f.order[0]].height;
    for (std::size_t t = 2; t < f.order.size(); ++t) {
      FieldVector gap =
          f.slits[f.order[t]].height - f.slits[f.order[t - 1]].height;
      if (fv_less(gap, min_gap)) min_gap = std::move(gap);
    }
    if (fv_sign(min_gap) <= 0)
      throw StructuralError("slit heights must be separated");
  }
  return f;
}

// Raises one band through every slit strictly above its starting level.
// Sub-bands that cross a slit are handed to `emit`; parts reaching the top
// go to `arrived`.
template <typename Emit, typename Arrive>
void raise_band(const SuspensionFrame& f, const SuspBand& band, Emit emit,
                Arrive arrived) {
  std::vector<RisingSeg> segs{{band.left, band.right, band.origin_left}};
  const FieldVector* level =
      band.after == SIZE_MAX ? nullptr : &f.slits[band.after].height;
  for (std::size_t oi = 0; oi < f.order.size() && !segs.empty(); ++oi) {
    const Slit& slit = f.slits[f.order[oi]];
    if (level && !fv_less(*level, slit.height)) continue;
    std::vector<RisingSeg> keep;
    for (RisingSeg& seg : segs) {
      const FieldVector& il = fv_max(seg.left, slit.left);
      const FieldVector& ir = fv_min(seg.right, slit.right);
      if (!fv_less(il, ir)) {
        keep.push_back(std::move(seg));
        continue;
      }
      if (fv_less(seg.left, il))
        keep.push_back(RisingSeg{seg.left, il, seg.origin_left});
      emit(f.order[oi],
           SuspBand{slit.resume, il + slit.shift, ir + slit.shift,
                    seg.origin_left + (il - seg.left)});
      if (fv_less(ir, seg.right))
        keep.push_back(
            RisingSeg{ir, seg.right, seg.origin_left + (ir - seg.left)});
    }
    segs = std::move(keep);
  }
  for (RisingSeg& seg : segs) arrived(std::move(seg));
}

} // namespace

DoubleSuspension double_suspension(const Spi& spi) {
  SuspensionFrame frame = build_frame(spi);
  const BasisPtr& basis = spi.basis();
  const std::size_t band_cap = 100000;

  // Bottom phase: the return pieces of the upward flow assemble into an
  // interval exchange of [0,1).
  std::vector<Piece> returned;
  std::deque<SuspBand> queue;
  queue.push_back(SuspBand{SIZE_MAX, FieldVector::zero(basis),
                           FieldVector::constant(basis, Rat(1)),
                           FieldVector::zero(basis)});
  std::size_t processed = 0;
  while (!queue.empty()) {
    if (++processed > band_cap)
      throw ResourceLimit("suspension bottom phase exceeded its budget");
    SuspBand band = std::move(queue.front());
    queue.pop_front();
    raise_band(
        frame, band,
        [&](std::size_t, SuspBand next) { queue.push_back(std::move(next)); },
        [&](RisingSeg seg) {
          returned.push_back(Piece{seg.origin_left,
                                   seg.origin_left + (seg.right - seg.left),
                                   seg.left - seg.origin_left});
        });
    if (queue.size() > band_cap || returned.size() > band_cap)
      throw ResourceLimit("suspension bottom phase exceeded its budget");
  }

  std::sort(returned.begin(), returned.end(),
            [](const Piece& a, const Piece& b) { return fv_less(a.left, b.left); });
  std::vector<Piece> merged;
  for (Piece& p : returned) {
    if (!merged.empty() && (merged.back().shift - p.shift).is_zero() &&
        (merged.back().right - p.left).is_zero())
      merged.back().right = p.right;
    else
      merged.push_back(std::move(p));
  }
  std::vector<std::size_t> by_image(merged.size());
  for (std::size_t i = 0; i < merged.size(); ++i) by_image[i] = i;
  std::sort(by_image.begin(), by_image.end(), [&](std::size_t a, std::size_t b) {
    return fv_less(merged[a].image_left(), merged[b].image_left());
  });
  std::vector<FieldVector> lengths;
  lengths.reserve(merged.size());
  for (const Piece& p : merged) lengths.push_back(p.length());
  Iet bottom(Permutation(std::move(by_image)), std::move(lengths));

  // Leaf phase: launch a band from just above every slit; a leaf family that
  // never reaches the transversal shows up as an exact state recurrence.
  bool fills = true;
  std::optional<SuspensionLeafCycle> cycle;
  for (std::size_t e = 0; e < frame.slits.size() && fills; ++e) {
    struct StateKey {
      std::size_t edge;
      FieldVector left, right;
    };
    std::vector<StateKey> visited;
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> index;
    auto remember = [&](std::size_t edge, const FieldVector& l,
                        const FieldVector& r) {
      std::uint64_t h = hash_combine(edge, hash_combine(l.hash(), r.hash()));
      auto& bucket = index[h];
      for (std::size_t id : bucket) {
        const StateKey& s = visited[id];
        if (s.edge == edge && s.left == l && s.right == r) return true;
      }
      bucket.push_back(visited.size());
      visited.push_back(StateKey{edge, l, r});
      return false;
    };

    const Slit& launch = frame.slits[e];
    remember(e, launch.left, launch.right);
    std::deque<SuspBand> work;
    work.push_back(SuspBand{e, launch.left, launch.right, launch.left});
    std::size_t steps = 0;
    while (!work.empty() && fills) {
      if (++steps > band_cap)
        throw ResourceLimit("suspension leaf phase exceeded its budget");
      SuspBand band = std::move(work.front());
      work.pop_front();
      raise_band(
          frame, band,
          [&](std::size_t, SuspBand next) {
            if (remember(next.after, next.left, next.right)) {
              fills = false;
              cycle = SuspensionLeafCycle{next.after, next.left, next.right};
            } else {
              work.push_back(std::move(next));
            }
          },
          [](RisingSeg) {});
      if (work.size() > band_cap)
        throw ResourceLimit("suspension leaf phase exceeded its budget");
    }
  }

  return DoubleSuspension{std::move(bottom), fills, std::move(cycle)};
}

Iet family_k3(const FieldVector& b1, const FieldVector& b2,
              const FieldVector& b3) {
  const BasisPtr& basis = b1.basis();
  const FieldVector one = FieldVector::constant(basis, Rat(1));
  FieldVector c1 = one - b1, c2 = one - b2, c3 = one - b3;
  if (fv_sign(b1) <= 0 || !fv_less(b1, b2) || !fv_less(b2, b3) ||
      !fv_less(b3, c2) || !fv_less(c3, b3) ||
      !fv_less(b3.scaled(Rat(2)), b2 + c1))
    throw ChartDomainError(
        "need 0 < b1 < b2 < b3 < 1-b2, 1-b3 < b3, 2 b3 < b2 + 1 - b1");
  std::vector<FieldVector> lengths{
      b1, b2 + c1 - b3.scaled(Rat(2)), b3 - c3, b3 - b2, c2 - b3, b2 - b1, b1};
  return Iet(Permutation::from_one_based({3, 5, 7, 2, 6, 1, 4}),
             std::move(lengths));
}

Itm::Itm(std::vector<FieldVector> lengths, std::vector<FieldVector> translations)
    : lengths_(std::move(lengths)), translations_(std::move(translations)) {
  if (lengths_.empty() || lengths_.size() != translations_.size())
    throw StructuralError("lengths and translations must align");
  basis_ = lengths_.front().basis();
  const FieldVector one = FieldVector::constant(basis_, Rat(1));
  FieldVector sum = FieldVector::zero(basis_);
  breaks_.push_back(sum);
  for (const FieldVector& l : lengths_) {
    if (l.basis() != basis_) throw StructuralError("lengths over mixed bases");
    if (fv_sign(l) <= 0) throw StructuralError("piece lengths must be positive");
    sum += l;
    breaks_.push_back(sum);
  }
  if (!(sum - one).is_zero())
    throw StructuralError("piece lengths must sum to exactly 1");
  for (std::size_t i = 0; i < translations_.size(); ++i) {
    if (translations_[i].basis() != basis_)
      throw StructuralError("translations over mixed bases");
    if (fv_compare(breaks_[i] + translations_[i], FieldVector::zero(basis_)) ==
        Cmp::LT)
      throw StructuralError("piece image extends below 0");
    if (fv_compare(breaks_[i + 1] + translations_[i], one) == Cmp::GT)
      throw StructuralError("piece image extends above 1");
  }
}

IntervalSet IntervalSet::full(const BasisPtr& basis) {
  IntervalSet s;
  s.add(FieldVector::zero(basis), FieldVector::constant(basis, Rat(1)));
  return s;
}

void IntervalSet::add(FieldVector left, FieldVector right) {
  if (!fv_less(left, right)) return; // empty or degenerate
  parts_.emplace_back(std::move(left), std::move(right));
  std::sort(parts_.begin(), parts_.end(),
            [](const auto& a, const auto& b) { return fv_less(a.first, b.first); });
  std::vector<std::pair<FieldVector, FieldVector>> merged;
  for (auto& p : parts_) {
    if (!merged.empty() && fv_less_equal(p.first, merged.back().second)) {
      if (fv_less(merged.back().second, p.second))
        merged.back().second = p.second;
    } else {
      merged.push_back(std::move(p));
    }
  }
  parts_ = std::move(merged);
}

FieldVector IntervalSet::total_length() const {
  if (parts_.empty()) throw StructuralError("measuring an empty set");
  FieldVector sum = FieldVector::zero(parts_.front().first.basis());
  for (const auto& p : parts_) sum += p.second - p.first;
  return sum;
}

bool IntervalSet::operator==(const IntervalSet& o) const {
  if (parts_.size() != o.parts_.size()) return false;
  for (std::size_t i = 0; i < parts_.size(); ++i)
    if (!(parts_[i].first - o.parts_[i].first).is_zero() ||
        !(parts_[i].second - o.parts_[i].second).is_zero())
      return false;
  return true;
}

IntervalSet itm_image_step(const Itm& map, const IntervalSet& set) {
  IntervalSet out;
  for (const auto& part : set.parts()) {
    for (std::size_t i = 0; i < map.size(); ++i) {
      const FieldVector& il = fv_max(part.first, map.breakpoint(i));
      const FieldVector& ir = fv_min(part.second, map.breakpoint(i + 1));
      if (fv_less(il, ir))
        out.add(il + map.translations()[i], ir + map.translations()[i]);
    }
  }
  return out;
}

ItmTypeResult itm_finite_type(const Itm& map, std::size_t cap) {
  IntervalSet current = IntervalSet::full(map.basis());
  for (std::size_t m = 0; m < cap; ++m) {
    IntervalSet next = itm_image_step(map, current);
    if (next == current) return ItmFiniteType{m, std::move(current)};
    current = std::move(next);
  }
  return ItmUndetermined{cap};
}

} // namespace ietlab
