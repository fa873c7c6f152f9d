#pragma once

#include <cstdint>

#include "probmet/construct.hpp"
#include "probmet/morphism.hpp"
#include "probmet/space.hpp"

namespace probmet {

/// One entourage of the strong uniformity: pairs closer than gamma at
/// level lambda. gamma must be finite and positive.
struct Entourage {
  UnitVal lambda;
  Rat gamma;

  Entourage(UnitVal l, Rat g) : lambda(l), gamma(g) {
    if (l.is_zero()) throw std::invalid_argument("entourage level must be > 0");
    if (!(Rat(0) < g)) throw std::invalid_argument("entourage radius must be > 0");
  }

  bool contains(const LevelSpace& s, std::size_t x, std::size_t y) const {
    return s.pair_fn(x, y).eval(lambda) < ExtReal(gamma);
  }
};

/// Explicit finite topology: the open sets as index bitmasks. Carrier size
/// is capped so enumeration stays total.
struct FiniteTopology {
  Carrier carrier;
  std::vector<std::uint32_t> opens;  // sorted ascending as integers

  bool is_open(std::uint32_t mask) const {
    return std::binary_search(opens.begin(), opens.end(), mask);
  }
};

namespace detail {

/// min_{a in A} d(y,a) as a level function; infinity for empty A.
inline LevelFunction distance_to_set(const LevelSpace& s, std::size_t y,
                                     const std::vector<std::size_t>& A) {
  if (A.empty()) return LevelFunction::constant(ExtReal::infinity());
  std::vector<LevelFunction> fns;
  fns.reserve(A.size());
  for (std::size_t a : A) fns.push_back(s.pair_fn(y, a));
  return pointwise_min(fns);
}

inline std::vector<std::size_t> indices_of(const Carrier& c,
                                           const std::vector<std::string>& ids) {
  std::vector<std::size_t> idx;
  idx.reserve(ids.size());
  for (const std::string& id : ids) idx.push_back(c.index_of(id));
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  return idx;
}

/// Levelwise sum of two step functions.
inline LevelFunction fn_sum(const LevelFunction& f, const LevelFunction& g) {
  std::vector<LevelFunction> both{f, g};
  std::vector<LevelFunction::Seg> segs;
  for (const UnitVal& e : common_ends(both))
    segs.push_back({e, f.eval(e) + g.eval(e)});
  return LevelFunction::from_segments(segs);
}

}  // namespace detail

/// Closure in the strong topology: y lies in cl(A) iff its distance to A
/// is zero at every level, i.e. the levelwise min over A is the constant
/// zero function. Exact, and linear in the table. Result keeps carrier
/// order. cl(empty) = empty (the min over nothing is infinite).
inline std::vector<std::string> closure(const LevelSpace& s,
                                        const std::vector<std::string>& A) {
  std::vector<std::size_t> idx = detail::indices_of(s.carrier, A);
  std::vector<std::string> out;
  for (std::size_t y = 0; y < s.carrier.size(); ++y)
    if (detail::distance_to_set(s, y, idx).is_zero())
      out.push_back(s.carrier.id(y));
  return out;
}

/// The strong topology as an explicit open-set family. A set is open iff
/// every member has a basic neighbourhood V(y; lambda, gamma) inside it;
/// the candidate neighbourhoods are finite because every pair function is
/// a step function (level candidates: common segment ends around y; radius
/// candidates: the distinct positive finite values plus one beyond).
/// Carriers above 16 points are rejected to keep the 2^n sweep bounded.
inline FiniteTopology strong_topology(const LevelSpace& s) {
  const std::size_t n = s.carrier.size();
  if (n > 16)
    throw std::invalid_argument(
        "explicit topology enumeration is capped at 16 points");

  // Minimal data per point: all basic neighbourhoods as bitmasks.
  std::vector<std::vector<std::uint32_t>> hoods(n);
  for (std::size_t y = 0; y < n; ++y) {
    std::vector<LevelFunction> around;
    around.reserve(n > 0 ? n - 1 : 0);
    for (std::size_t x = 0; x < n; ++x)
      if (x != y) around.push_back(s.pair_fn(x, y));
    std::vector<UnitVal> levels =
        around.empty() ? std::vector<UnitVal>{UnitVal::one()}
                       : common_ends(around);
    for (const UnitVal& l : levels) {
      std::vector<Rat> radii;
      for (const LevelFunction& f : around) {
        ExtReal v = f.eval(l);
        if (!v.is_inf() && !v.is_zero()) radii.push_back(v.finite());
      }
      std::sort(radii.begin(), radii.end());
      radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
      radii.push_back(radii.empty() ? Rat(1) : radii.back() + Rat(1));
      for (const Rat& g : radii) {
        std::uint32_t mask = 0;
        for (std::size_t x = 0; x < n; ++x)
          if (s.pair_fn(x, y).eval(l) < ExtReal(g))
            mask |= (std::uint32_t{1} << x);
        hoods[y].push_back(mask);
      }
    }
    std::sort(hoods[y].begin(), hoods[y].end());
    hoods[y].erase(std::unique(hoods[y].begin(), hoods[y].end()),
                   hoods[y].end());
  }

  FiniteTopology topo{s.carrier, {}};
  const std::uint32_t full = (std::uint32_t{1} << n) - 1;
  for (std::uint32_t o = 0; o <= full; ++o) {
    bool open = true;
    for (std::size_t y = 0; y < n && open; ++y) {
      if (!(o & (std::uint32_t{1} << y))) continue;
      bool found = false;
      for (std::uint32_t h : hoods[y])
        if ((h & ~o) == 0) {
          found = true;
          break;
        }
      open = found;
    }
    if (open) topo.opens.push_back(o);
  }
  return topo;
}

/// Four equivalent separation tests, all computed, compared, and required
/// to agree (a mismatch is an implementation bug and throws):
///  (1) every non-expansive map from the two-point zero-distance space is
///      constant,
///  (2) the separation law holds on the table,
///  (3) the entourages intersect in the diagonal,
///  (4) the strong topology is T0.
inline Report is_T0(const LevelSpace& s) {
  const std::size_t n = s.carrier.size();

  // (1) maps from I2: pairs (u,v); non-expansive iff d(u,v) is zero.
  bool t1 = true;
  std::size_t w_u = 0, w_v = 0;
  {
    Carrier two{{"0", "1"}};
    LevelSpace i2 = LevelSpace::make(two, s.tnorm, false);
    i2.dist.at(0, 1) = LevelFunction::constant(ExtReal(0));
    for (std::size_t u = 0; u < n && t1; ++u)
      for (std::size_t v = 0; v < n && t1; ++v) {
        if (u == v) continue;
        PointMap f{two, s.carrier, {u, v}};
        if (is_nonexpansive(f, i2, s).pass) {
          t1 = false;
          w_u = u;
          w_v = v;
        }
      }
  }

  // (2) the table itself.
  bool t2 = true;
  for (std::size_t i = 0; i < n && t2; ++i)
    for (std::size_t j = i + 1; j < n && t2; ++j)
      if (s.fn(i, j).is_zero()) t2 = false;

  // (3) intersection of entourages: a pair survives all of them iff its
  // function vanishes at the candidate levels with every positive radius.
  bool t3 = true;
  for (std::size_t i = 0; i < n && t3; ++i)
    for (std::size_t j = i + 1; j < n && t3; ++j) {
      const LevelFunction& f = s.fn(i, j);
      bool in_all = true;
      for (const LevelFunction::Seg& seg : f.segments()) {
        ExtReal v = f.eval(seg.end);
        if (v.is_zero()) continue;
        Rat radius = v.is_inf() ? Rat(1) : v.finite();
        if (!Entourage(seg.end, radius).contains(s, i, j)) {
          in_all = false;
          break;
        }
      }
      if (in_all) t3 = false;  // off-diagonal pair inside every entourage
    }

  // (4) point distinguishability in the explicit topology.
  bool t4 = true;
  if (n <= 16) {
    FiniteTopology topo = strong_topology(s);
    for (std::size_t i = 0; i < n && t4; ++i)
      for (std::size_t j = i + 1; j < n && t4; ++j) {
        bool split = false;
        for (std::uint32_t o : topo.opens) {
          bool a = o & (std::uint32_t{1} << i), b = o & (std::uint32_t{1} << j);
          if (a != b) {
            split = true;
            break;
          }
        }
        if (!split) t4 = false;
      }
  } else {
    t4 = t2;  // topology enumeration capped; the table answer stands in
  }

  if (t1 != t2 || t2 != t3 || t3 != t4)
    throw std::logic_error("T0 characterizations disagree: implementation bug");

  Report rep;
  rep.laws.emplace_back("t0", t1 ? "pass" : "fail");
  rep.pass = t1;
  if (!t1) {
    Witness w;
    w.law = Law::T0;
    w.points = {s.carrier.id(w_u), s.carrier.id(w_v)};
    w.lhs = "d(" + s.carrier.id(w_u) + "," + s.carrier.id(w_v) + ")";
    w.relation = "!=";
    w.rhs = "0 at some level";
    rep.witnesses.push_back(std::move(w));
  }
  return rep;
}

struct MorphismClass {
  bool mono{};
  bool epi{};
  bool regular_mono{};
};

/// Classifies a non-expansive map (throws if it is not one, carrying the
/// witness in the message):
///   mono          <=> injective,
///   epi           <=> the image is dense (closure = whole codomain),
///   regular mono  <=> injective + domain structure is the pullback of the
///                     codomain's + the image is closure-fixed.
inline MorphismClass classify_morphism(const PointMap& f, const LevelSpace& X,
                                       const LevelSpace& Y) {
  Report ne = is_nonexpansive(f, X, Y);
  if (!ne.pass)
    throw std::invalid_argument("map is not non-expansive:\n" +
                                ne.witnesses.front().render());
  MorphismClass c;
  c.mono = f.injective();

  std::vector<std::string> image;
  for (std::size_t t : f.map) image.push_back(Y.carrier.id(t));
  std::vector<std::string> cl = closure(Y, image);
  c.epi = cl.size() == Y.carrier.size();

  bool initial = true;
  if (c.mono) {
    for (std::size_t i = 0; i < X.carrier.size() && initial; ++i)
      for (std::size_t j = i + 1; j < X.carrier.size() && initial; ++j)
        if (X.fn(i, j) != Y.pair_fn(f.map[i], f.map[j])) initial = false;
  }
  std::vector<std::size_t> img_idx = detail::indices_of(Y.carrier, image);
  c.regular_mono = c.mono && initial && cl.size() == img_idx.size();
  return c;
}

/// The separating cospan for a point outside a closure: the codomain Z
/// keeps everything outside cl(A) and adds one sink point absorbing cl(A)
/// at the set distance. Distances between kept points shortcut through
/// the collapsed set whenever that is shorter; without the shortcut the
/// triangle law through the sink can fail (two tight clusters with the
/// set straddling them break it). u is the collapse, v is the constant
/// sink map; they agree on A (indeed on cl(A)) and split at the given
/// point. Requires a separated space, otherwise Z inherits zero pairs.
struct Cospan {
  LevelSpace Z;
  PointMap u, v;
};

inline Cospan cospan_witness(const LevelSpace& Y,
                             const std::vector<std::string>& A,
                             const std::string& y) {
  if (!Y.separated)
    throw std::invalid_argument(
        "cospan witness requires a separated space");
  std::size_t y_idx = Y.carrier.index_of(y);
  std::vector<std::size_t> a_idx = detail::indices_of(Y.carrier, A);
  std::vector<std::string> cl = closure(Y, A);
  for (const std::string& c : cl)
    if (c == y)
      throw std::invalid_argument("point \"" + y +
                                  "\" lies in the closure: no separating "
                                  "cospan exists");
  (void)y_idx;

  std::vector<bool> in_cl(Y.carrier.size(), false);
  for (const std::string& c : cl) in_cl[Y.carrier.index_of(c)] = true;

  // Fresh sink id: "0", then underscores until free.
  std::string sink = "0";
  while (Y.carrier.contains(sink)) sink += '_';

  std::vector<std::string> ids;
  std::vector<std::size_t> orig;  // original index per kept point
  for (std::size_t i = 0; i < Y.carrier.size(); ++i)
    if (!in_cl[i]) {
      ids.push_back(Y.carrier.id(i));
      orig.push_back(i);
    }
  const std::size_t kept = ids.size();
  ids.push_back(sink);

  std::vector<LevelFunction> to_set;
  to_set.reserve(kept);
  for (std::size_t a = 0; a < kept; ++a)
    to_set.push_back(detail::distance_to_set(Y, orig[a], a_idx));

  LevelSpace Z = LevelSpace::make(Carrier{std::move(ids)}, Y.tnorm,
                                  /*sep=*/true);
  for (std::size_t a = 0; a < kept; ++a)
    for (std::size_t b = a + 1; b < kept; ++b)
      Z.dist.at(a, b) = pointwise_min(
          {Y.fn(orig[a], orig[b]), detail::fn_sum(to_set[a], to_set[b])});
  for (std::size_t a = 0; a < kept; ++a) Z.dist.at(a, kept) = to_set[a];

  PointMap u{Y.carrier, Z.carrier, {}};
  u.map.assign(Y.carrier.size(), kept);  // cl(A) goes to the sink
  for (std::size_t a = 0; a < kept; ++a) u.map[orig[a]] = a;
  PointMap v{Y.carrier, Z.carrier, {}};
  v.map.assign(Y.carrier.size(), kept);
  return {std::move(Z), std::move(u), std::move(v)};
}

/// Upper approximation of the regular closure from a supplied family of
/// cospans: the points on which every pair agrees. Pairs must agree on A
/// and share endpoints with Y; validity and non-expansiveness of the pairs
/// are the caller's contract. An empty family yields the whole carrier.
inline std::vector<std::string> reg_closure_sampled(
    const LevelSpace& Y, const std::vector<std::string>& A,
    const std::vector<Cospan>& cospans) {
  std::vector<std::size_t> a_idx = detail::indices_of(Y.carrier, A);
  for (const Cospan& c : cospans) {
    if (c.u.source != Y.carrier || c.v.source != Y.carrier ||
        c.u.target != c.v.target)
      throw std::invalid_argument("cospan endpoints do not match");
    for (std::size_t a : a_idx)
      if (c.u.map[a] != c.v.map[a])
        throw std::invalid_argument("cospan maps disagree on the subset");
  }
  std::vector<std::string> out;
  for (std::size_t i = 0; i < Y.carrier.size(); ++i) {
    bool everywhere = true;
    for (const Cospan& c : cospans)
      if (c.u.map[i] != c.v.map[i]) {
        everywhere = false;
        break;
      }
    if (everywhere) out.push_back(Y.carrier.id(i));
  }
  return out;
}

}  // namespace probmet
