#include "ietlab/iet.hpp"

#include "ietlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <unordered_map>

namespace ietlab {

namespace {

std::vector<Piece> merge_equal_shifts(std::vector<Piece> pieces) {
  std::vector<Piece> out;
  for (Piece& p : pieces) {
    if (!out.empty() && (out.back().shift - p.shift).is_zero() &&
        (out.back().right - p.left).is_zero()) {
      out.back().right = p.right;
    } else {
      out.push_back(std::move(p));
    }
  }
  return out;
}

} // namespace

PiecewiseTranslation::PiecewiseTranslation(std::vector<Piece> pieces) {
  if (pieces.empty()) throw StructuralError("piecewise map needs pieces");
  basis_ = pieces.front().left.basis();
  for (const Piece& p : pieces)
    if (p.left.basis() != basis_ || p.right.basis() != basis_ ||
        p.shift.basis() != basis_)
      throw StructuralError("pieces from different bases");
  std::erase_if(pieces, [](const Piece& p) { return (p.right - p.left).is_zero(); });
  if (pieces.empty()) throw StructuralError("piecewise map has no mass");
  std::sort(pieces.begin(), pieces.end(),
            [](const Piece& a, const Piece& b) { return fv_less(a.left, b.left); });
  pieces = merge_equal_shifts(std::move(pieces));
  const FieldVector one = FieldVector::constant(basis_, Rat(1));
  if (!pieces.front().left.is_zero())
    throw StructuralError("domain does not start at 0");
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (fv_compare(pieces[i].left, pieces[i].right) != Cmp::LT)
      throw StructuralError("piece with nonpositive length");
    if (i + 1 < pieces.size() &&
        !(pieces[i].right - pieces[i + 1].left).is_zero())
      throw StructuralError("domain pieces do not tile [0,1)");
  }
  if (!(pieces.back().right - one).is_zero())
    throw StructuralError("domain does not end at 1");

  std::vector<std::size_t> by_image(pieces.size());
  for (std::size_t i = 0; i < by_image.size(); ++i) by_image[i] = i;
  std::sort(by_image.begin(), by_image.end(), [&](std::size_t a, std::size_t b) {
    return fv_less(pieces[a].image_left(), pieces[b].image_left());
  });
  if (!pieces[by_image.front()].image_left().is_zero())
    throw StructuralError("images do not start at 0");
  for (std::size_t k = 0; k + 1 < by_image.size(); ++k)
    if (!(pieces[by_image[k]].image_right() -
          pieces[by_image[k + 1]].image_left())
             .is_zero())
      throw StructuralError("images do not tile [0,1)");
  if (!(pieces[by_image.back()].image_right() - one).is_zero())
    throw StructuralError("images do not end at 1");

  pieces_ = std::move(pieces);
}

PiecewiseTranslation PiecewiseTranslation::identity(const BasisPtr& basis) {
  Piece p{FieldVector::zero(basis), FieldVector::constant(basis, Rat(1)),
          FieldVector::zero(basis)};
  return PiecewiseTranslation({p});
}

std::size_t PiecewiseTranslation::locate(const FieldVector& x) const {
  if (fv_compare(x, pieces_.front().left) == Cmp::LT)
    throw DomainError("point below 0");
  std::size_t lo = 0, hi = pieces_.size() - 1;
  while (lo < hi) {
    std::size_t mid = (lo + hi + 1) / 2;
    if (fv_less_equal(pieces_[mid].left, x))
      lo = mid;
    else
      hi = mid - 1;
  }
  if (!fv_less(x, pieces_[lo].right)) throw DomainError("point at or above 1");
  return lo;
}

FieldVector PiecewiseTranslation::eval(const FieldVector& x) const {
  return x + pieces_[locate(x)].shift;
}

PiecewiseTranslation PiecewiseTranslation::inverse() const {
  std::vector<Piece> inv;
  inv.reserve(pieces_.size());
  for (const Piece& p : pieces_)
    inv.push_back(Piece{p.image_left(), p.image_right(), -p.shift});
  return PiecewiseTranslation(std::move(inv));
}

PiecewiseTranslation compose(const PiecewiseTranslation& first,
                             const PiecewiseTranslation& second,
                             std::size_t piece_cap) {
  if (first.basis() != second.basis())
    throw StructuralError("composing maps over different bases");
  std::vector<Piece> out;
  for (const Piece& p : first.pieces()) {
    FieldVector y = p.image_left();
    const FieldVector y_end = p.image_right();
    std::size_t q = second.locate(y);
    while (true) {
      const Piece& piece = second.pieces()[q];
      const FieldVector& seg_r = fv_min(y_end, piece.right);
      out.push_back(Piece{y - p.shift, seg_r - p.shift, p.shift + piece.shift});
      if (out.size() > piece_cap)
        throw ResourceLimit("composition exceeded piece cap");
      if ((seg_r - y_end).is_zero()) break;
      y = seg_r;
      ++q;
    }
  }
  return PiecewiseTranslation(std::move(out));
}

std::vector<std::pair<FieldVector, FieldVector>>
detect_fixed_intervals(const PiecewiseTranslation& map) {
  std::vector<std::pair<FieldVector, FieldVector>> out;
  for (const Piece& p : map.pieces()) {
    if (!p.shift.is_zero()) continue;
    if (!out.empty() && (out.back().second - p.left).is_zero())
      out.back().second = p.right;
    else
      out.emplace_back(p.left, p.right);
  }
  return out;
}

FieldVector IetData::total() const {
  FieldVector sum = FieldVector::zero(lengths.front().basis());
  for (const FieldVector& a : lengths) sum += a;
  return sum;
}

Iet::Iet(Permutation perm, std::vector<FieldVector> lengths)
    : perm_(std::move(perm)), lengths_(std::move(lengths)) {
  if (lengths_.empty() || perm_.size() != lengths_.size())
    throw StructuralError("permutation and lengths must agree and be nonempty");
  basis_ = lengths_.front().basis();
  FieldVector sum = FieldVector::zero(basis_);
  left_.push_back(sum);
  for (const FieldVector& a : lengths_) {
    if (a.basis() != basis_) throw StructuralError("lengths over mixed bases");
    if (fv_sign(a) <= 0) throw DomainError("interval lengths must be positive");
    sum += a;
    left_.push_back(sum);
  }
  if (!(sum - FieldVector::constant(basis_, Rat(1))).is_zero())
    throw StructuralError("interval lengths must sum to exactly 1");
  FieldVector isum = FieldVector::zero(basis_);
  image_left_.push_back(isum);
  slot_.resize(lengths_.size());
  for (std::size_t j = 0; j < lengths_.size(); ++j) {
    slot_[perm_(j)] = j;
    isum += lengths_[perm_(j)];
    image_left_.push_back(isum);
  }
}

FieldVector Iet::shift(std::size_t source) const {
  return image_left_[slot_[source]] - left_[source];
}

std::size_t Iet::locate(const FieldVector& x) const {
  if (fv_compare(x, left_.front()) == Cmp::LT) throw DomainError("point below 0");
  std::size_t lo = 0, hi = lengths_.size() - 1;
  while (lo < hi) {
    std::size_t mid = (lo + hi + 1) / 2;
    if (fv_less_equal(left_[mid], x))
      lo = mid;
    else
      hi = mid - 1;
  }
  if (!fv_less(x, left_[lo + 1])) throw DomainError("point at or above 1");
  return lo;
}

FieldVector Iet::eval(const FieldVector& x) const {
  return x + shift(locate(x));
}

FieldVector Iet::eval_inverse(const FieldVector& y) const {
  if (fv_compare(y, image_left_.front()) == Cmp::LT)
    throw DomainError("point below 0");
  std::size_t lo = 0, hi = lengths_.size() - 1;
  while (lo < hi) {
    std::size_t mid = (lo + hi + 1) / 2;
    if (fv_less_equal(image_left_[mid], y))
      lo = mid;
    else
      hi = mid - 1;
  }
  if (!fv_less(y, image_left_[lo + 1])) throw DomainError("point at or above 1");
  return y - shift(perm_(lo));
}

PiecewiseTranslation Iet::to_piecewise() const {
  std::vector<Piece> pieces;
  pieces.reserve(lengths_.size());
  for (std::size_t i = 0; i < lengths_.size(); ++i)
    pieces.push_back(Piece{left_[i], left_[i + 1], shift(i)});
  return PiecewiseTranslation(std::move(pieces));
}

PiecewiseTranslation iet_power(const Iet& map, std::size_t exponent,
                               std::size_t piece_cap) {
  PiecewiseTranslation step = map.to_piecewise();
  PiecewiseTranslation acc = PiecewiseTranslation::identity(map.basis());
  for (std::size_t k = 0; k < exponent; ++k) acc = compose(acc, step, piece_cap);
  return acc;
}

namespace {

// Change of generators that realizes division by `cut`.  With cut = sum s_k
// g_k, the rescaled numbers l/cut live in the span of {g_k/cut}; those
// generators satisfy sum s_k (g_k/cut) = 1, so one of them (index kstar) is
// eliminated in favor of the literal 1.
struct RescaledBasis {
  BasisPtr basis;
  bool rational;     // cut is rational: same basis, divide coordinates
  Rat rational_cut;  // valid when rational
  std::size_t kstar; // eliminated index otherwise
  std::vector<Rat> s;

  std::vector<Rat> transform(const std::vector<Rat>& l) const {
    if (rational) {
      std::vector<Rat> out = l;
      for (Rat& c : out) c /= rational_cut;
      return out;
    }
    std::vector<Rat> out;
    out.reserve(l.size());
    out.push_back(l[kstar] / s[kstar]);
    for (std::size_t k = 0; k < l.size(); ++k) {
      if (k == kstar) continue;
      out.push_back(l[k] - l[kstar] * s[k] / s[kstar]);
    }
    return out;
  }
};

RescaledBasis rescaled_basis(const BasisPtr& old, const FieldVector& cut) {
  RescaledBasis r;
  r.s = cut.coeffs();
  if (cut.is_rational()) {
    r.basis = old;
    r.rational = true;
    r.rational_cut = r.s[0];
    r.kstar = 0;
    return r;
  }
  r.rational = false;
  r.kstar = 0;
  for (std::size_t k = 0; k < r.s.size(); ++k)
    if (r.s[k] != 0) r.kstar = k;
  Rat value = cut.approx();
  std::vector<std::string> names{"1"};
  std::vector<Rat> values{Rat(1)};
  for (std::size_t k = 0; k < old->size(); ++k) {
    if (k == r.kstar) continue;
    names.push_back("(" + old->name(k) + ")/s");
    values.push_back(old->value(k) / value);
  }
  r.basis = std::make_shared<GeneratorBasis>(std::move(names), std::move(values),
                                             old->guard() / value);
  return r;
}

struct Band {
  FieldVector left;
  FieldVector right;
  FieldVector origin_left;
};

} // namespace

FirstReturn first_return(const Iet& map, const FieldVector& cut) {
  if (cut.basis() != map.basis())
    throw StructuralError("cut must live over the map's basis");
  const FieldVector one = FieldVector::constant(map.basis(), Rat(1));
  if (fv_sign(cut) <= 0 || fv_compare(cut, one) == Cmp::GT)
    throw DomainError("cut must lie in (0, 1]");

  const std::size_t band_cap = 200000;
  std::size_t processed = 0;
  std::deque<Band> queue;
  queue.push_back(
      Band{FieldVector::zero(map.basis()), cut, FieldVector::zero(map.basis())});
  std::vector<Piece> returned;

  while (!queue.empty()) {
    if (++processed > band_cap)
      throw ResourceLimit("first-return band following exceeded its budget");
    Band band = std::move(queue.front());
    queue.pop_front();
    FieldVector curr = band.left;
    FieldVector origin = band.origin_left;
    std::size_t i = map.locate(curr);
    while (true) {
      const FieldVector& seg_r = fv_min(band.right, map.x(i + 1));
      FieldVector sigma = map.shift(i);
      FieldVector img_l = curr + sigma;
      FieldVector img_r = seg_r + sigma;
      if (fv_less_equal(img_r, cut)) {
        returned.push_back(
            Piece{origin, origin + (seg_r - curr), img_l - origin});
      } else if (fv_less_equal(cut, img_l)) {
        queue.push_back(Band{img_l, img_r, origin});
      } else {
        FieldVector head = cut - img_l;
        returned.push_back(Piece{origin, origin + head, img_l - origin});
        queue.push_back(Band{cut, img_r, origin + head});
      }
      if (returned.size() > band_cap || queue.size() > band_cap)
        throw ResourceLimit("first-return band following exceeded its budget");
      origin += seg_r - curr;
      if ((seg_r - band.right).is_zero()) break;
      curr = seg_r;
      ++i;
    }
  }

  std::sort(returned.begin(), returned.end(),
            [](const Piece& a, const Piece& b) { return fv_less(a.left, b.left); });
  if (!returned.front().left.is_zero())
    throw StructuralError("return pieces do not start at 0");
  for (std::size_t k = 0; k + 1 < returned.size(); ++k)
    if (!(returned[k].right - returned[k + 1].left).is_zero())
      throw StructuralError("return pieces do not tile the cut interval");
  if (!(returned.back().right - cut).is_zero())
    throw StructuralError("return pieces do not reach the cut");

  std::vector<FieldVector> raw_lengths;
  raw_lengths.reserve(returned.size());
  for (const Piece& p : returned) raw_lengths.push_back(p.length());

  std::vector<Piece> merged = merge_equal_shifts(returned);
  std::vector<std::size_t> by_image(merged.size());
  for (std::size_t k = 0; k < merged.size(); ++k) by_image[k] = k;
  std::sort(by_image.begin(), by_image.end(), [&](std::size_t a, std::size_t b) {
    return fv_less(merged[a].image_left(), merged[b].image_left());
  });
  if (!merged[by_image.front()].image_left().is_zero())
    throw StructuralError("return images do not start at 0");
  for (std::size_t k = 0; k + 1 < by_image.size(); ++k)
    if (!(merged[by_image[k]].image_right() -
          merged[by_image[k + 1]].image_left())
             .is_zero())
      throw StructuralError("return images do not tile the cut interval");
  if (!(merged[by_image.back()].image_right() - cut).is_zero())
    throw StructuralError("return images do not reach the cut");

  RescaledBasis rb = rescaled_basis(map.basis(), cut);
  std::vector<FieldVector> new_lengths;
  new_lengths.reserve(merged.size());
  for (const Piece& p : merged)
    new_lengths.emplace_back(rb.basis, rb.transform(p.length().coeffs()));

  Iet ret(Permutation(std::move(by_image)), std::move(new_lengths));
  return FirstReturn{std::move(ret), cut, std::move(returned),
                     std::move(raw_lengths)};
}

IetData rauzy_step(const IetData& data) {
  const std::size_t n = data.lengths.size();
  if (n < 2 || data.perm.size() != n)
    throw StructuralError("induction needs at least two intervals");
  const std::size_t t = data.perm(n - 1); // source in the last image slot
  const FieldVector& a_src = data.lengths[n - 1];
  const FieldVector& a_img = data.lengths[t];
  Cmp cmp = (t == n - 1) ? Cmp::EQ : fv_compare(a_src, a_img);
  if (cmp == Cmp::EQ)
    throw TieError("induction undefined: final intervals have equal length");

  const std::vector<std::size_t>& L = data.perm.images();
  std::vector<std::size_t> Lp;
  std::vector<FieldVector> lengths;
  Lp.reserve(n);
  lengths.reserve(n);

  if (cmp == Cmp::GT) {
    // Last source interval survives, shortened by the last image interval.
    lengths = data.lengths;
    lengths[n - 1] = a_src - a_img;
    for (std::size_t j = 0; j + 1 < n; ++j) {
      if (L[j] == n - 1) {
        Lp.push_back(n - 1);
        Lp.push_back(t);
      } else {
        Lp.push_back(L[j]);
      }
    }
  } else {
    // Last image interval survives, shortened; the cut part becomes a fresh
    // source immediately after t, and later sources shift up by one.
    for (std::size_t k = 0; k < n; ++k) {
      if (k < t) lengths.push_back(data.lengths[k]);
      else if (k == t) lengths.push_back(a_img - a_src);
      else if (k == t + 1) lengths.push_back(a_src);
      else lengths.push_back(data.lengths[k - 1]);
    }
    std::size_t jstar = data.perm.inverse()(n - 1);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == jstar) Lp.push_back(t + 1);
      else if (j == n - 1) Lp.push_back(t);
      else Lp.push_back(L[j] + (L[j] > t ? 1 : 0));
    }
  }
  return IetData{Permutation(std::move(Lp)), std::move(lengths)};
}

std::vector<IetData> rauzy_chain(const IetData& start, std::size_t steps) {
  std::vector<IetData> chain;
  chain.reserve(steps + 1);
  chain.push_back(start);
  for (std::size_t k = 0; k < steps; ++k)
    chain.push_back(rauzy_step(chain.back()));
  return chain;
}

namespace {

struct LockstepOutcome {
  std::optional<SaddleConnection> hit;
  double max_deviation = 0.0;
};

LockstepOutcome lockstep_orbits(const Iet& map, std::size_t depth) {
  LockstepOutcome out;
  const std::size_t n = map.size();
  if (n < 2 || depth == 0) return out;

  std::unordered_map<std::uint64_t, std::vector<std::size_t>> targets;
  for (std::size_t j = 1; j < n; ++j) targets[map.x(j).hash()].push_back(j);
  auto find_target = [&](const FieldVector& p) -> std::size_t {
    auto it = targets.find(p.hash());
    if (it != targets.end())
      for (std::size_t j : it->second)
        if (p == map.x(j)) return j;
    return 0;
  };

  std::vector<FieldVector> pos;
  for (std::size_t j = 1; j < n; ++j) pos.push_back(map.x(j));
  std::vector<std::vector<std::size_t>> counts(pos.size(),
                                               std::vector<std::size_t>(n, 0));

  for (std::size_t m = 1; m <= depth; ++m) {
    for (std::size_t i = 0; i < pos.size(); ++i) {
      std::size_t idx = map.locate(pos[i]);
      ++counts[i][idx];
      pos[i] += map.shift(idx);
      if (std::size_t j = find_target(pos[i]); j != 0) {
        out.hit = SaddleConnection{i + 1, j, m};
        return out;
      }
    }
  }

  for (std::size_t i = 0; i < pos.size(); ++i)
    for (std::size_t k = 0; k < n; ++k) {
      double freq = static_cast<double>(counts[i][k]) / static_cast<double>(depth);
      double len = map.lengths()[k].approx().get_d();
      out.max_deviation = std::max(out.max_deviation, std::abs(freq - len));
    }
  return out;
}

} // namespace

std::optional<SaddleConnection> saddle_connection_search(const Iet& map,
                                                         std::size_t depth) {
  return lockstep_orbits(map, depth).hit;
}

std::vector<std::size_t> occupation_vector(const Iet& map,
                                           const FieldVector& start,
                                           std::size_t steps) {
  std::vector<std::size_t> counts(map.size(), 0);
  FieldVector p = start;
  for (std::size_t m = 0; m < steps; ++m) {
    std::size_t idx = map.locate(p);
    ++counts[idx];
    p += map.shift(idx);
  }
  return counts;
}

MinimalityVerdict minimality_verdict(const Iet& map, std::size_t depth,
                                     std::size_t power_cap,
                                     std::size_t piece_cap) {
  PiecewiseTranslation step = map.to_piecewise();
  PiecewiseTranslation acc = PiecewiseTranslation::identity(map.basis());
  for (std::size_t p = 1; p <= power_cap; ++p) {
    acc = compose(acc, step, piece_cap);
    auto fixed = detect_fixed_intervals(acc);
    if (!fixed.empty())
      return NonMinimalPeriodic{p, fixed.front().first, fixed.front().second};
  }
  LockstepOutcome lo = lockstep_orbits(map, depth);
  if (lo.hit) return *lo.hit;
  return NoObstructionUpTo{depth, lo.max_deviation};
}

} // namespace ietlab
