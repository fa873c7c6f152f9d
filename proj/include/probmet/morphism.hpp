#pragma once

#include "probmet/space.hpp"

namespace probmet {

/// A function between carriers, stored by index. Carriers are part of the
/// value so composition can insist on exact endpoint agreement.
struct PointMap {
  Carrier source, target;
  std::vector<std::size_t> map;  // source index -> target index

  static PointMap identity(const Carrier& c) {
    PointMap f{c, c, {}};
    f.map.resize(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) f.map[i] = i;
    return f;
  }

  /// Total assignment by ids; every source point must be mapped, unknown
  /// ids on either side throw.
  static PointMap from_assignments(
      Carrier src, Carrier tgt,
      const std::vector<std::pair<std::string, std::string>>& pairs) {
    PointMap f{std::move(src), std::move(tgt), {}};
    constexpr std::size_t unset = static_cast<std::size_t>(-1);
    f.map.assign(f.source.size(), unset);
    for (const auto& [a, b] : pairs) {
      std::size_t i = f.source.index_of(a);
      if (f.map[i] != unset)
        throw std::invalid_argument("point \"" + a + "\" mapped twice");
      f.map[i] = f.target.index_of(b);
    }
    for (std::size_t i = 0; i < f.map.size(); ++i)
      if (f.map[i] == unset)
        throw std::invalid_argument("point \"" + f.source.id(i) +
                                    "\" has no image");
    return f;
  }

  std::size_t apply(std::size_t i) const { return map.at(i); }
  const std::string& apply_id(const std::string& id) const {
    return target.id(map.at(source.index_of(id)));
  }

  bool injective() const {
    std::vector<bool> hit(target.size(), false);
    for (std::size_t t : map) {
      if (hit[t]) return false;
      hit[t] = true;
    }
    return true;
  }

  bool surjective() const {
    std::vector<bool> hit(target.size(), false);
    for (std::size_t t : map) hit[t] = true;
    for (bool h : hit)
      if (!h) return false;
    return true;
  }

  friend bool operator==(const PointMap& a, const PointMap& b) {
    return a.source == b.source && a.target == b.target && a.map == b.map;
  }
};

/// g after f; f's target carrier must equal g's source carrier exactly.
inline PointMap compose(const PointMap& g, const PointMap& f) {
  if (f.target != g.source)
    throw std::invalid_argument("composition endpoint mismatch");
  PointMap h{f.source, g.target, {}};
  h.map.reserve(f.map.size());
  for (std::size_t t : f.map) h.map.push_back(g.map.at(t));
  return h;
}

namespace detail {
inline void require_endpoints(const PointMap& f, const Carrier& src,
                              const Carrier& tgt) {
  if (f.source != src || f.target != tgt)
    throw std::invalid_argument("map endpoints do not match the given spaces");
}
}  // namespace detail

/// Non-expansiveness on the level presentation: for every source pair the
/// image distance is <= the source distance at every level. Both step
/// functions are constant between common segment ends, so comparing at the
/// ends decides the property exactly. Spaces must share a t-norm tag.
inline Report is_nonexpansive(const PointMap& f, const LevelSpace& X,
                              const LevelSpace& Y) {
  detail::require_endpoints(f, X.carrier, Y.carrier);
  if (X.tnorm != Y.tnorm)
    throw std::invalid_argument("t-norm mismatch between spaces");
  Report rep;
  bool ok = true;
  const std::size_t n = X.carrier.size();
  for (std::size_t i = 0; i < n && ok; ++i)
    for (std::size_t j = i + 1; j < n && ok; ++j) {
      if (f.map[i] == f.map[j]) continue;  // image distance is zero
      const LevelFunction& dX = X.fn(i, j);
      const LevelFunction& dY = Y.fn(f.map[i], f.map[j]);
      std::vector<LevelFunction> both{dX, dY};
      for (const UnitVal& e : common_ends(both)) {
        ExtReal lhs = dY.eval(e), rhs = dX.eval(e);
        if (lhs <= rhs) continue;
        ok = false;
        Witness w;
        w.law = Law::NonExpansive;
        w.points = {X.carrier.id(i), X.carrier.id(j)};
        w.params = {{"lambda", e.str()}};
        w.lhs = lhs.str();
        w.relation = "<=";
        w.rhs = rhs.str();
        rep.witnesses.push_back(std::move(w));
        break;
      }
    }
  rep.laws.emplace_back("non-expansive", ok ? "pass" : "fail");
  rep.pass = ok;
  return rep;
}

/// Distribution-form counterpart: the image pair's distribution dominates
/// the source pair's pointwise (closer points carry more mass early).
/// Compared on the union of jump points, one step beyond the last, plus
/// the fixed endpoints 0 and infinity, which together cover all arguments.
inline Report is_nonexpansive(const PointMap& f, const DdfSpace& X,
                              const DdfSpace& Y) {
  detail::require_endpoints(f, X.carrier, Y.carrier);
  if (X.tnorm != Y.tnorm)
    throw std::invalid_argument("t-norm mismatch between spaces");
  Report rep;
  bool ok = true;
  const std::size_t n = X.carrier.size();
  for (std::size_t i = 0; i < n && ok; ++i)
    for (std::size_t j = i + 1; j < n && ok; ++j) {
      if (f.map[i] == f.map[j]) continue;
      const DistanceDistribution& aX = X.fn(i, j);
      const DistanceDistribution& aY = Y.fn(f.map[i], f.map[j]);
      std::vector<Rat> pts;
      for (const auto& jp : aX.jumps()) pts.push_back(jp.at);
      for (const auto& jp : aY.jumps()) pts.push_back(jp.at);
      std::sort(pts.begin(), pts.end());
      pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
      pts.push_back(pts.empty() ? Rat(1) : pts.back() + Rat(1));
      for (const Rat& c : pts) {
        // value on the interval ending at c, then just beyond the last
        // jump via the final candidate point
        UnitVal lhs = aX.value_right_of(c), rhs = aY.value_right_of(c);
        if (lhs <= rhs) continue;
        ok = false;
        Witness w;
        w.law = Law::NonExpansive;
        w.points = {X.carrier.id(i), X.carrier.id(j)};
        // a concrete argument strictly inside the violating interval
        Rat gamma = c + Rat(1, 2);
        for (const auto& jp : aX.jumps())
          if (c < jp.at) {
            gamma = c + (jp.at - c) * Rat(1, 2);
            break;
          }
        for (const auto& jp : aY.jumps())
          if (c < jp.at && jp.at < gamma) gamma = c + (jp.at - c) * Rat(1, 2);
        if (aX.eval(ExtReal(gamma)) != lhs || aY.eval(ExtReal(gamma)) != rhs)
          throw std::logic_error("non-expansive witness construction broke");
        w.params = {{"gamma", gamma.str()}};
        w.lhs = lhs.str();
        w.relation = "<=";
        w.rhs = rhs.str();
        rep.witnesses.push_back(std::move(w));
        break;
      }
    }
  rep.laws.emplace_back("non-expansive", ok ? "pass" : "fail");
  rep.pass = ok;
  return rep;
}

/// Replays a non-expansiveness witness against the pair of spaces.
inline bool replay_witness(const PointMap& f, const LevelSpace& X,
                           const LevelSpace& Y, const Witness& w) {
  try {
    if (w.law != Law::NonExpansive || w.points.size() != 2) return false;
    std::size_t i = X.carrier.index_of(w.points[0]);
    std::size_t j = X.carrier.index_of(w.points[1]);
    UnitVal l = UnitVal::parse(detail::find_param(w, "lambda"));
    ExtReal lhs = Y.pair_fn(f.map[i], f.map[j]).eval(l);
    ExtReal rhs = X.pair_fn(i, j).eval(l);
    return lhs > rhs && lhs.str() == w.lhs && rhs.str() == w.rhs;
  } catch (const std::exception&) {
    return false;
  }
}

inline bool replay_witness(const PointMap& f, const DdfSpace& X,
                           const DdfSpace& Y, const Witness& w) {
  try {
    if (w.law != Law::NonExpansive || w.points.size() != 2) return false;
    std::size_t i = X.carrier.index_of(w.points[0]);
    std::size_t j = X.carrier.index_of(w.points[1]);
    ExtReal g = ExtReal::parse(detail::find_param(w, "gamma"));
    UnitVal lhs = X.pair_fn(i, j).eval(g);
    UnitVal rhs = Y.pair_fn(f.map[i], f.map[j]).eval(g);
    return lhs > rhs && lhs.str() == w.lhs && rhs.str() == w.rhs;
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace probmet
