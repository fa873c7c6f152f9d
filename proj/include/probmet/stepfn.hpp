#pragma once

#include <algorithm>
#include <span>
#include <vector>

#include "probmet/rational.hpp"

namespace probmet {

/// Left-continuous distance distribution function on [0, inf]: a
/// nondecreasing step function with phi(0) = 0 and phi(inf) = 1, stored as
/// its finite jumps. Jump i raises the value to jumps_[i].value for
/// arguments strictly above jumps_[i].at.
///
/// Canonical invariants: abscissae strictly increasing and finite; values
/// strictly increasing, positive, <= 1. If the last value is below 1 the
/// remaining mass sits in an implicit jump at infinity. An empty jump list
/// is the function that is 0 at every finite argument and 1 at infinity.
class DistanceDistribution {
 public:
  struct Jump {
    Rat at;         // finite, >= 0
    UnitVal value;  // value on (at, next)
    friend bool operator==(const Jump& a, const Jump& b) {
      return a.at == b.at && a.value == b.value;
    }
  };

  DistanceDistribution() = default;

  /// The two-valued function jumping straight to 1 at 0: the identity
  /// distance of a point to itself.
  static DistanceDistribution zero_distance() {
    return from_jumps({Jump{Rat(0), UnitVal::one()}});
  }

  /// Builds from a jump list with strictly increasing abscissae and
  /// nondecreasing values; zero-height jumps are merged away. Decreasing
  /// values or unordered abscissae throw std::invalid_argument.
  static DistanceDistribution from_jumps(std::vector<Jump> raw) {
    DistanceDistribution f;
    UnitVal prev = UnitVal::zero();
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (raw[i].at.is_negative())
        throw std::invalid_argument("jump point must be >= 0");
      if (i > 0 && !(raw[i - 1].at < raw[i].at))
        throw std::invalid_argument("jump points must be strictly increasing");
      if (raw[i].value < prev)
        throw std::invalid_argument(
            "distribution values must be nondecreasing");
      if (raw[i].value > prev) f.jumps_.push_back(raw[i]);
      prev = raw[i].value;
    }
    return f;
  }

  const std::vector<Jump>& jumps() const { return jumps_; }

  bool is_zero_distance() const {
    return jumps_.size() == 1 && jumps_[0].at == Rat(0) &&
           jumps_[0].value.is_one();
  }

  /// Value at the end of the finite range (before any implicit jump at inf).
  UnitVal final_value() const {
    return jumps_.empty() ? UnitVal::zero() : jumps_.back().value;
  }

  /// phi(gamma). Left-continuous: at a jump point the value is the one from
  /// the left. phi(0) = 0 and phi(inf) = 1 unconditionally.
  UnitVal eval(const ExtReal& gamma) const {
    if (gamma.is_inf()) return UnitVal::one();
    if (gamma.is_zero()) return UnitVal::zero();
    const Rat& g = gamma.finite();
    UnitVal v = UnitVal::zero();
    for (const Jump& j : jumps_) {
      if (j.at < g)
        v = j.value;
      else
        break;
    }
    return v;
  }

  /// Value taken immediately to the right of a finite abscissa: the limit
  /// of phi over arguments decreasing to gamma from above.
  UnitVal value_right_of(const Rat& gamma) const {
    UnitVal v = UnitVal::zero();
    for (const Jump& j : jumps_) {
      if (j.at <= gamma)
        v = j.value;
      else
        break;
    }
    return v;
  }

  friend bool operator==(const DistanceDistribution& a,
                         const DistanceDistribution& b) {
    return a.jumps_ == b.jumps_;
  }
  friend bool operator!=(const DistanceDistribution& a,
                         const DistanceDistribution& b) {
    return !(a == b);
  }

 private:
  std::vector<Jump> jumps_;
};

/// One member of a level family: lambda |-> d_lambda on (0, 1], a
/// nonincreasing, left-continuous step function into [0, inf]. Stored as
/// consecutive segments; segment i covers (segs_[i-1].end, segs_[i].end]
/// (0 for the first) and the last end is exactly 1.
///
/// Canonical invariants: ends strictly increasing, values strictly
/// decreasing. Left-continuity and the density property
/// d_lambda = inf_{rho < lambda} d_rho are then automatic.
class LevelFunction {
 public:
  struct Seg {
    UnitVal end;    // right endpoint, inclusive
    ExtReal value;  // value on (prev end, end]
    friend bool operator==(const Seg& a, const Seg& b) {
      return a.end == b.end && a.value == b.value;
    }
  };

  LevelFunction() : segs_{Seg{UnitVal::one(), ExtReal(0)}} {}

  static LevelFunction constant(const ExtReal& v) {
    LevelFunction f;
    f.segs_ = {Seg{UnitVal::one(), v}};
    return f;
  }

  /// Builds from segments with strictly increasing ends, last end 1, and
  /// nonincreasing values; equal-valued neighbours are merged. Increasing
  /// values or a bad end sequence throw std::invalid_argument.
  static LevelFunction from_segments(std::vector<Seg> raw) {
    if (raw.empty()) throw std::invalid_argument("level function needs segments");
    LevelFunction f;
    f.segs_.clear();
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (raw[i].end.is_zero())
        throw std::invalid_argument("segment end must be > 0");
      if (i > 0 && !(raw[i - 1].end < raw[i].end))
        throw std::invalid_argument("segment ends must be strictly increasing");
      if (i > 0 && raw[i].value > raw[i - 1].value)
        throw std::invalid_argument(
            "level values must be nonincreasing (left-continuous canonical "
            "step form)");
      if (!f.segs_.empty() && raw[i].value == f.segs_.back().value)
        f.segs_.back().end = raw[i].end;  // merge equal run
      else
        f.segs_.push_back(raw[i]);
    }
    if (!f.segs_.back().end.is_one())
      throw std::invalid_argument("last segment must end at 1");
    return f;
  }

  const std::vector<Seg>& segments() const { return segs_; }

  /// Left endpoint (exclusive) of segment i.
  UnitVal left_end(std::size_t i) const {
    return i == 0 ? UnitVal::zero() : segs_[i - 1].end;
  }

  bool is_zero() const {
    return segs_.size() == 1 && segs_[0].value.is_zero();
  }

  /// d_lambda for 0 < lambda <= 1; lambda = 0 is outside the domain.
  ExtReal eval(const UnitVal& lambda) const {
    if (lambda.is_zero())
      throw std::domain_error("level functions are defined on (0,1] only");
    for (const Seg& s : segs_)
      if (lambda <= s.end) return s.value;
    throw std::logic_error("unreachable: last segment ends at 1");
  }

  /// Value immediately to the right of a < 1: the limit of d over levels
  /// decreasing to a from above.
  ExtReal value_right_of(const UnitVal& a) const {
    for (const Seg& s : segs_)
      if (a < s.end) return s.value;
    throw std::logic_error("value_right_of requires an argument < 1");
  }

  /// Supremum over (0,1]; nonincreasing, so the first segment's value.
  ExtReal sup() const { return segs_.front().value; }

  /// Value at level 1, the smallest one.
  ExtReal at_one() const { return segs_.back().value; }

  friend bool operator==(const LevelFunction& a, const LevelFunction& b) {
    return a.segs_ == b.segs_;
  }
  friend bool operator!=(const LevelFunction& a, const LevelFunction& b) {
    return !(a == b);
  }

 private:
  std::vector<Seg> segs_;
};

/// Sorted union of all segment ends of fns; the coarsest grid on which all
/// of them are simultaneously constant per interval.
inline std::vector<UnitVal> common_ends(std::span<const LevelFunction> fns) {
  std::vector<UnitVal> ends;
  for (const LevelFunction& f : fns)
    for (const LevelFunction::Seg& s : f.segments()) ends.push_back(s.end);
  std::sort(ends.begin(), ends.end());
  ends.erase(std::unique(ends.begin(), ends.end()), ends.end());
  return ends;
}

namespace detail {
template <class Pick>
LevelFunction pointwise_combine(std::span<const LevelFunction> fns, Pick pick) {
  if (fns.empty())
    throw std::invalid_argument("pointwise combination of an empty list");
  std::vector<LevelFunction::Seg> segs;
  for (const UnitVal& e : common_ends(fns)) {
    ExtReal v = fns.front().eval(e);
    for (std::size_t i = 1; i < fns.size(); ++i) v = pick(v, fns[i].eval(e));
    segs.push_back({e, v});
  }
  return LevelFunction::from_segments(std::move(segs));
}
}  // namespace detail

/// Levelwise max of finitely many level functions (nonempty list).
inline LevelFunction pointwise_sup(std::span<const LevelFunction> fns) {
  return detail::pointwise_combine(fns, [](const ExtReal& a, const ExtReal& b) {
    return max(a, b);
  });
}

/// Levelwise min of finitely many level functions (nonempty list).
inline LevelFunction pointwise_min(std::span<const LevelFunction> fns) {
  return detail::pointwise_combine(fns, [](const ExtReal& a, const ExtReal& b) {
    return min(a, b);
  });
}

inline LevelFunction pointwise_sup(std::initializer_list<LevelFunction> fns) {
  std::vector<LevelFunction> v(fns);
  return pointwise_sup(std::span<const LevelFunction>(v));
}
inline LevelFunction pointwise_min(std::initializer_list<LevelFunction> fns) {
  std::vector<LevelFunction> v(fns);
  return pointwise_min(std::span<const LevelFunction>(v));
}

}  // namespace probmet
