#pragma once

// Seeded instance generators for the property suites. Valid spaces come
// out of constructions that preserve the axioms for every t-norm
// (levelwise staircases of nested metrics, sups, caps, point
// duplication); corruptions break exactly the law the test expects.

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <probmet/probmet.hpp>

namespace gen {

using namespace probmet;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::int64_t pick(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(eng_);
  }

  /// True with probability num/den.
  bool coin(int num = 1, int den = 2) { return pick(1, den) <= num; }

  template <class T>
  const T& choose(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(pick(0, static_cast<std::int64_t>(v.size()) - 1))];
  }

 private:
  std::mt19937_64 eng_;
};

inline Carrier rand_carrier(std::size_t n, const std::string& prefix = "p") {
  std::vector<std::string> ids;
  ids.reserve(n);
  for (std::size_t i = 0; i < n; ++i) ids.push_back(prefix + std::to_string(i));
  return Carrier{std::move(ids)};
}

/// Positive rational with small numerator and denominator.
inline Rat rand_pos_rat(Rng& r, std::int64_t max_num = 8,
                        std::int64_t max_den = 4) {
  return Rat(r.pick(1, max_num), r.pick(1, max_den));
}

/// Random extended metric: symmetric table repaired by shortest paths.
/// Separated instances keep every entry positive (path sums of positive
/// edges stay positive); otherwise zero edges may appear.
inline MetricSpace rand_metric(Rng& r, const Carrier& c, bool separated,
                               bool allow_inf = true) {
  MetricSpace m = MetricSpace::make(c, separated);
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = i + 1; j < c.size(); ++j) {
      if (allow_inf && r.coin(1, 6))
        m.dist.at(i, j) = ExtReal::infinity();
      else if (!separated && r.coin(1, 6))
        m.dist.at(i, j) = ExtReal(0);
      else
        m.dist.at(i, j) = ExtReal(rand_pos_rat(r));
    }
  MetricSpace fixed = path_metric(m);
  fixed.separated = separated;
  return fixed;
}

inline MetricSpace metric_sum(const MetricSpace& a, const MetricSpace& b) {
  MetricSpace out = a;
  for (std::size_t i = 0; i < a.carrier.size(); ++i)
    for (std::size_t j = i + 1; j < a.carrier.size(); ++j)
      out.dist.at(i, j) = a.dist.at(i, j) + b.dist.at(i, j);
  return out;
}

inline std::vector<UnitVal> rand_thresholds(Rng& r, std::size_t want) {
  std::vector<UnitVal> out;
  for (std::size_t i = 0; i < want; ++i) {
    std::int64_t den = r.pick(2, 16);
    std::int64_t num = r.pick(1, den - 1);
    out.emplace_back(Rat(num, den));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Copy a point: the twin sits at distance zero from the original and
/// mirrors all its other distances. Keeps every axiom except (UH).
inline LevelSpace duplicate_point(Rng& r, const LevelSpace& s) {
  std::size_t p =
      static_cast<std::size_t>(r.pick(0, static_cast<std::int64_t>(s.carrier.size()) - 1));
  std::vector<std::string> ids = s.carrier.ids();
  std::string twin = s.carrier.id(p) + "_twin";
  while (s.carrier.contains(twin)) twin += '_';
  ids.push_back(twin);
  LevelSpace out = LevelSpace::make(Carrier{std::move(ids)}, s.tnorm, false);
  std::size_t n = s.carrier.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) out.dist.at(i, j) = s.fn(i, j);
  for (std::size_t i = 0; i < n; ++i)
    if (i != p) out.dist.at(i, n) = s.pair_fn(i, p);
  // out.dist.at(p, n) stays the zero function: the twin collapses.
  return out;
}

/// Valid space for any t-norm: a staircase of nested metrics
/// m_1 >= m_2 >= ... (suffix sums), optionally capped at a constant,
/// optionally floored to infinity at small levels. Non-separated
/// variants duplicate a point afterwards.
inline LevelSpace rand_space(Rng& r, std::size_t n, TNorm t,
                             bool separated = true, bool allow_inf = true) {
  std::size_t base_n = separated ? n : (n > 1 ? n - 1 : 1);
  Carrier c = rand_carrier(base_n);
  std::vector<UnitVal> thresholds =
      rand_thresholds(r, static_cast<std::size_t>(r.pick(0, 3)));
  std::size_t stages = thresholds.size() + 1;

  // Stage metrics from the last one up, so they nest downward.
  std::vector<MetricSpace> m(stages, MetricSpace::make(c, true));
  m[stages - 1] = rand_metric(r, c, true, allow_inf);
  for (std::size_t i = stages - 1; i > 0; --i)
    m[i - 1] = metric_sum(m[i], rand_metric(r, c, true, allow_inf));

  LevelSpace s = LevelSpace::make(c, t, true);
  for (std::size_t i = 0; i < base_n; ++i)
    for (std::size_t j = i + 1; j < base_n; ++j) {
      std::vector<LevelFunction::Seg> segs;
      for (std::size_t k = 0; k < stages; ++k)
        segs.push_back({k + 1 < stages ? thresholds[k] : UnitVal::one(),
                        m[k].dist.at(i, j)});
      s.dist.at(i, j) = LevelFunction::from_segments(segs);
    }

  if (r.coin(1, 3)) {
    LevelFunction cap = LevelFunction::constant(ExtReal(rand_pos_rat(r, 6)));
    for (std::size_t i = 0; i < base_n; ++i)
      for (std::size_t j = i + 1; j < base_n; ++j)
        s.dist.at(i, j) = pointwise_min({s.fn(i, j), cap});
  }
  if (allow_inf && r.coin(1, 4)) {
    std::vector<UnitVal> tau = rand_thresholds(r, 1);
    if (!tau.empty()) {
      LevelFunction floor = LevelFunction::from_segments(
          {{tau[0], ExtReal::infinity()}, {UnitVal::one(), ExtReal(0)}});
      for (std::size_t i = 0; i < base_n; ++i)
        for (std::size_t j = i + 1; j < base_n; ++j)
          s.dist.at(i, j) = pointwise_sup({s.fn(i, j), floor});
    }
  }

  if (!separated && n > 1) return duplicate_point(r, s);
  if (!separated) s.separated = false;  // 1-point space, claim withdrawn
  return s;
}

inline DdfSpace rand_ddf_space(Rng& r, std::size_t n, TNorm t,
                               bool separated = true, bool allow_inf = true) {
  return phi(rand_space(r, n, t, separated, allow_inf));
}

/// Breaks the mixed triangle inequality and nothing else the validator
/// reaches first: d(x,z) jumps above sup d(x,y) + sup d(y,z) near level
/// zero, which no valid family allows. Falls back to the 0/0/1 pattern
/// when every triple has an infinite leg.
inline LevelSpace corrupt_ut(Rng& r, LevelSpace s) {
  const std::size_t n = s.carrier.size();
  std::vector<std::array<std::size_t, 3>> triples;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = x + 1; z < n; ++z) {
        if (y == x || y == z) continue;
        if (!s.fn(std::min(x, y), std::max(x, y)).sup().is_inf() &&
            !s.fn(std::min(y, z), std::max(y, z)).sup().is_inf())
          triples.push_back({x, y, z});
      }
  if (triples.empty()) {
    if (n < 3) throw std::invalid_argument("need 3 points to corrupt");
    s.dist.at(0, 1) = LevelFunction::constant(ExtReal(0));
    s.dist.at(1, 2) = LevelFunction::constant(ExtReal(0));
    s.dist.at(0, 2) = LevelFunction::constant(ExtReal(1));
    s.separated = false;
    return s;
  }
  auto [x, y, z] = r.choose(triples);
  ExtReal w = s.fn(std::min(x, y), std::max(x, y)).sup() +
              s.fn(std::min(y, z), std::max(y, z)).sup();
  Rat raised = w.finite() + Rat(1);
  std::vector<LevelFunction::Seg> segs;
  for (const LevelFunction::Seg& seg : s.fn(x, z).segments())
    segs.push_back(seg);
  segs.front().value = ExtReal(raised);
  s.dist.at(x, z) = LevelFunction::from_segments(segs);
  return s;
}

/// Valid family with a false separation claim.
inline LevelSpace corrupt_uh(Rng& r, const LevelSpace& s) {
  LevelSpace out = duplicate_point(r, s);
  out.separated = true;
  return out;
}

inline PointMap rand_map(Rng& r, const Carrier& src, const Carrier& tgt) {
  PointMap f{src, tgt, {}};
  f.map.reserve(src.size());
  for (std::size_t i = 0; i < src.size(); ++i)
    f.map.push_back(static_cast<std::size_t>(
        r.pick(0, static_cast<std::int64_t>(tgt.size()) - 1)));
  return f;
}

inline std::vector<std::string> rand_subset(Rng& r, const Carrier& c,
                                            bool allow_empty = true) {
  std::vector<std::string> out;
  for (const std::string& id : c.ids())
    if (r.coin()) out.push_back(id);
  if (out.empty() && !allow_empty)
    out.push_back(c.id(static_cast<std::size_t>(
        r.pick(0, static_cast<std::int64_t>(c.size()) - 1))));
  return out;
}

}  // namespace gen
