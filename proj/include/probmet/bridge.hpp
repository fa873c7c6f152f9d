#pragma once

#include "probmet/morphism.hpp"
#include "probmet/space.hpp"

namespace probmet {

/// Extended (pseudo)metric space: symmetric table of distances in
/// [0, inf], zero on the diagonal. `separated` claims d(x,y) > 0 for
/// distinct points; validate_metric checks the claim.
struct MetricSpace {
  Carrier carrier;
  bool separated = true;
  PairTable<ExtReal> dist;

  static MetricSpace make(Carrier c, bool sep) {
    std::size_t n = c.size();
    return {std::move(c), sep, PairTable<ExtReal>(n, ExtReal(0))};
  }

  /// Diagonal-aware distance.
  ExtReal at(std::size_t i, std::size_t j) const {
    if (i == j) return ExtReal(0);
    return dist.at(i, j);
  }

  friend bool operator==(const MetricSpace& a, const MetricSpace& b) {
    return a.carrier == b.carrier && a.separated == b.separated &&
           a.dist == b.dist;
  }
};

/// Triangle inequality over all ordered triples, plus the separation
/// claim when made. Symmetry and zero self-distance hold by construction.
inline Report validate_metric(const MetricSpace& m) {
  const std::size_t n = m.carrier.size();
  Report rep;
  rep.laws.emplace_back("symmetry", "pass (by construction)");
  rep.laws.emplace_back("zero-self-distance", "pass (by construction)");

  bool tri_ok = true;
  for (std::size_t x = 0; x < n && tri_ok; ++x)
    for (std::size_t y = 0; y < n && tri_ok; ++y)
      for (std::size_t z = 0; z < n && tri_ok; ++z) {
        if (x == y || y == z || x == z) continue;
        ExtReal rhs = m.at(x, y) + m.at(y, z);
        if (!(m.at(x, z) <= rhs)) {
          tri_ok = false;
          Witness w;
          w.law = Law::Triangle;
          w.points = {m.carrier.id(x), m.carrier.id(y), m.carrier.id(z)};
          w.lhs = "d(" + m.carrier.id(x) + "," + m.carrier.id(z) +
                  ") = " + m.at(x, z).str();
          w.relation = ">";
          w.rhs = "d(" + m.carrier.id(x) + "," + m.carrier.id(y) + ") + d(" +
                  m.carrier.id(y) + "," + m.carrier.id(z) +
                  ") = " + rhs.str();
          rep.witnesses.push_back(std::move(w));
        }
      }
  rep.laws.emplace_back("triangle", tri_ok ? "pass" : "fail");

  bool sep_ok = true;
  if (m.separated) {
    for (std::size_t i = 0; i < n && sep_ok; ++i)
      for (std::size_t j = i + 1; j < n && sep_ok; ++j)
        if (m.dist.at(i, j).is_zero()) {
          sep_ok = false;
          Witness w;
          w.law = Law::Separation;
          w.points = {m.carrier.id(i), m.carrier.id(j)};
          w.lhs = "d(" + m.carrier.id(i) + "," + m.carrier.id(j) + ")";
          w.relation = "=";
          w.rhs = "0";
          rep.witnesses.push_back(std::move(w));
        }
    rep.laws.emplace_back("separation", sep_ok ? "pass" : "fail");
  } else {
    rep.laws.emplace_back("separation", "not claimed");
  }

  rep.pass = tri_ok && sep_ok;
  return rep;
}

inline bool replay_witness(const MetricSpace& m, const Witness& w) {
  if (w.law == Law::Triangle) {
    if (w.points.size() != 3) return false;
    std::size_t x = m.carrier.index_of(w.points[0]);
    std::size_t y = m.carrier.index_of(w.points[1]);
    std::size_t z = m.carrier.index_of(w.points[2]);
    return !(m.at(x, z) <= m.at(x, y) + m.at(y, z));
  }
  if (w.law == Law::Separation) {
    if (w.points.size() != 2) return false;
    return m.separated &&
           m.at(m.carrier.index_of(w.points[0]),
                m.carrier.index_of(w.points[1]))
               .is_zero();
  }
  return false;
}

namespace detail {

inline void require_valid_metric(const MetricSpace& m, const char* who) {
  Report rep = validate_metric(m);
  if (!rep.pass)
    throw std::invalid_argument(std::string(who) + " requires a valid " +
                                "metric space:\n" +
                                rep.witnesses.front().render());
}

inline void require_valid_level(const LevelSpace& s, const char* who) {
  Report rep = validate_level_space(s);
  if (!rep.pass)
    throw std::invalid_argument(std::string(who) + " requires a valid " +
                                "space:\n" + rep.witnesses.front().render());
}

}  // namespace detail

/// A metric space as a probabilistic one: the same distance at every
/// level. The constant family satisfies the mixed triangle inequality for
/// every t-norm, so the t-norm is a free choice.
inline LevelSpace embed_metric(const MetricSpace& m, TNorm t) {
  detail::require_valid_metric(m, "embed");
  LevelSpace s = LevelSpace::make(m.carrier, t, m.separated);
  const std::size_t n = m.carrier.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      s.dist.at(i, j) = LevelFunction::constant(m.dist.at(i, j));
  return s;
}

struct Coreflection {
  MetricSpace space;
  PointMap counit;  // identity on points: embed(space) -> original
};

/// The largest metric below the whole family: the level-0+ value, which
/// for a canonical step function is its first segment. Requires a valid
/// separated space; the result is then separated as well (the sup of a
/// nonzero step function is nonzero).
inline Coreflection coreflect(const LevelSpace& s) {
  detail::require_valid_level(s, "coreflect");
  if (!s.separated)
    throw std::invalid_argument("coreflect requires a separated space");
  MetricSpace m = MetricSpace::make(s.carrier, /*sep=*/true);
  const std::size_t n = s.carrier.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      m.dist.at(i, j) = s.fn(i, j).sup();
  return {std::move(m), PointMap::identity(s.carrier)};
}

/// Shortest-path regularization: the largest triangle-respecting table
/// below the input. All-pairs relaxation with absorbing infinity; the
/// separation flag is recomputed, not copied.
inline MetricSpace path_metric(const MetricSpace& m) {
  const std::size_t n = m.carrier.size();
  MetricSpace out = m;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        if (k == i || k == j) continue;
        ExtReal via = out.at(i, k) + out.at(k, j);
        if (via < out.dist.at(i, j)) out.dist.at(i, j) = via;
      }
  out.separated = true;
  for (std::size_t i = 0; i < n && out.separated; ++i)
    for (std::size_t j = i + 1; j < n && out.separated; ++j)
      if (out.dist.at(i, j).is_zero()) out.separated = false;
  return out;
}

struct Reflection {
  MetricSpace space;
  PointMap unit;  // original carrier -> quotient carrier
};

/// Universal metric quotient: take the level-1 values (the smallest in
/// the family), repair the triangle inequality by shortest paths, then
/// collapse zero-distance classes. The composite map is the unit; every
/// non-expansive map into a separated metric space factors through it.
inline Reflection reflect(const LevelSpace& s) {
  detail::require_valid_level(s, "reflect");
  const std::size_t n = s.carrier.size();
  MetricSpace floor = MetricSpace::make(s.carrier, false);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      floor.dist.at(i, j) = s.fn(i, j).at_one();
  MetricSpace path = path_metric(floor);

  // Zero classes are transitive once the triangle inequality holds, so a
  // single forward scan labels them; representatives keep carrier order.
  std::vector<std::size_t> cls(n);
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < n; ++i) {
    bool fresh = true;
    for (std::size_t r = 0; r < reps.size(); ++r)
      if (path.at(reps[r], i).is_zero()) {
        cls[i] = r;
        fresh = false;
        break;
      }
    if (fresh) {
      cls[i] = reps.size();
      reps.push_back(i);
    }
  }

  std::vector<std::string> ids;
  ids.reserve(reps.size());
  for (std::size_t r : reps) ids.push_back(s.carrier.id(r));
  MetricSpace q = MetricSpace::make(Carrier{std::move(ids)}, /*sep=*/true);
  for (std::size_t a = 0; a < reps.size(); ++a)
    for (std::size_t b = a + 1; b < reps.size(); ++b)
      q.dist.at(a, b) = path.at(reps[a], reps[b]);

  // Representative independence is forced by the triangle inequality;
  // anything else is an internal error, not bad input.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (cls[i] == cls[j]) continue;
      if (path.at(i, j) != q.at(cls[i], cls[j]))
        throw std::logic_error("zero-class collapse changed a distance");
    }

  PointMap unit{s.carrier, q.carrier, cls};
  return {std::move(q), std::move(unit)};
}

}  // namespace probmet
