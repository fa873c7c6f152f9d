#pragma once

#include "probmet/morphism.hpp"
#include "probmet/space.hpp"

namespace probmet {

/// A family of maps out of one carrier into structured spaces, the input of
/// initial_lift. Every leg's map must start at `domain` and land in its
/// space's carrier, and all legs must share one t-norm.
struct StructuredSource {
  Carrier domain;
  std::vector<std::pair<PointMap, LevelSpace>> legs;
};

namespace detail {
/// Separation is detected on the finished table, never assumed.
inline bool table_separated(const LevelSpace& s) {
  for (std::size_t i = 0; i < s.carrier.size(); ++i)
    for (std::size_t j = i + 1; j < s.carrier.size(); ++j)
      if (s.fn(i, j).is_zero()) return false;
  return true;
}
}  // namespace detail

/// Smallest structure on the domain making every leg non-expansive:
/// per pair the levelwise sup of the pulled-back distances. For finite
/// families of canonical step functions the sup is itself canonical and
/// left-continuous, so no further regularization is needed.
inline LevelSpace initial_lift(const StructuredSource& src) {
  if (src.legs.empty())
    throw std::invalid_argument("initial lift of an empty source");
  const TNorm t = src.legs.front().second.tnorm;
  for (const auto& [f, sp] : src.legs) {
    if (f.source != src.domain)
      throw std::invalid_argument("leg map does not start at the domain");
    if (f.target != sp.carrier)
      throw std::invalid_argument("leg map does not land in its space");
    if (sp.tnorm != t)
      throw std::invalid_argument("t-norm mismatch across source legs");
  }
  LevelSpace out = LevelSpace::make(src.domain, t, /*sep=*/false);
  const std::size_t n = src.domain.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      std::vector<LevelFunction> pulled;
      pulled.reserve(src.legs.size());
      for (const auto& [f, sp] : src.legs)
        pulled.push_back(sp.pair_fn(f.map[i], f.map[j]));
      out.dist.at(i, j) = pointwise_sup(pulled);
    }
  out.separated = detail::table_separated(out);
  return out;
}

/// Cartesian product with the initial structure of the projection source.
/// Point ids are the component ids joined as "(a,b,...)"; enumeration is
/// lexicographic in the factor orders (last factor fastest). Throws when
/// the carrier would exceed `cap` points.
inline std::pair<LevelSpace, std::vector<PointMap>> product(
    const std::vector<LevelSpace>& factors, std::size_t cap = 4096) {
  if (factors.empty())
    throw std::invalid_argument("product of an empty factor list");
  const TNorm t = factors.front().tnorm;
  for (const LevelSpace& f : factors)
    if (f.tnorm != t)
      throw std::invalid_argument("t-norm mismatch across product factors");

  std::size_t total = 1;
  for (const LevelSpace& f : factors) {
    std::size_t m = f.carrier.size();
    if (m == 0) {
      total = 0;
      break;
    }
    if (total > cap / m)
      throw std::invalid_argument("product carrier exceeds size cap");
    total *= m;
  }

  std::vector<std::string> ids;
  std::vector<std::vector<std::size_t>> tuples;
  ids.reserve(total);
  tuples.reserve(total);
  if (total > 0) {
    std::vector<std::size_t> idx(factors.size(), 0);
    bool done = false;
    while (!done) {
      std::string id = "(";
      for (std::size_t k = 0; k < factors.size(); ++k) {
        if (k) id += ',';
        id += factors[k].carrier.id(idx[k]);
      }
      id += ')';
      ids.push_back(std::move(id));
      tuples.push_back(idx);
      std::size_t k = factors.size();
      while (k-- > 0) {
        if (++idx[k] < factors[k].carrier.size()) break;
        idx[k] = 0;
        if (k == 0) done = true;
      }
    }
  }
  Carrier prod_carrier{std::move(ids)};

  std::vector<PointMap> projections;
  projections.reserve(factors.size());
  for (std::size_t k = 0; k < factors.size(); ++k) {
    PointMap p{prod_carrier, factors[k].carrier, {}};
    p.map.reserve(tuples.size());
    for (const auto& tup : tuples) p.map.push_back(tup[k]);
    projections.push_back(std::move(p));
  }

  StructuredSource src{prod_carrier, {}};
  for (std::size_t k = 0; k < factors.size(); ++k)
    src.legs.emplace_back(projections[k], factors[k]);
  return {initial_lift(src), std::move(projections)};
}

/// Restriction to a point subset (kept in the ambient carrier order). The
/// separation claim carries over: restricting cannot create zero pairs.
inline LevelSpace subspace(const LevelSpace& s,
                           const std::vector<std::string>& subset) {
  std::vector<bool> keep(s.carrier.size(), false);
  for (const std::string& id : subset) keep[s.carrier.index_of(id)] = true;
  std::vector<std::string> ids;
  std::vector<std::size_t> orig;
  for (std::size_t i = 0; i < s.carrier.size(); ++i)
    if (keep[i]) {
      ids.push_back(s.carrier.id(i));
      orig.push_back(i);
    }
  LevelSpace out = LevelSpace::make(Carrier{std::move(ids)}, s.tnorm,
                                    s.separated);
  for (std::size_t i = 0; i < orig.size(); ++i)
    for (std::size_t j = i + 1; j < orig.size(); ++j)
      out.dist.at(i, j) = s.fn(orig[i], orig[j]);
  return out;
}

/// Collapses the "distance identically zero" relation (an equivalence by
/// the mixed-triangle law) onto smallest-index representatives. Requires a
/// space that satisfies the mixed-triangle law; on such input the induced
/// table is independent of representatives, which is re-checked here and
/// breaks loudly if the precondition was violated. The result is separated
/// by construction.
inline std::pair<LevelSpace, PointMap> t0_quotient(const LevelSpace& s) {
  const std::size_t n = s.carrier.size();
  std::vector<std::size_t> cls(n);
  for (std::size_t i = 0; i < n; ++i) cls[i] = i;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (cls[j] == j && s.fn(i, j).is_zero()) cls[j] = cls[i];

  std::vector<std::size_t> reps;  // ascending original indices
  std::vector<std::size_t> rep_slot(n);
  for (std::size_t i = 0; i < n; ++i)
    if (cls[i] == i) {
      rep_slot[i] = reps.size();
      reps.push_back(i);
    }

  std::vector<std::string> ids;
  ids.reserve(reps.size());
  for (std::size_t r : reps) ids.push_back(s.carrier.id(r));
  LevelSpace out = LevelSpace::make(Carrier{std::move(ids)}, s.tnorm,
                                    /*sep=*/true);
  for (std::size_t a = 0; a < reps.size(); ++a)
    for (std::size_t b = a + 1; b < reps.size(); ++b)
      out.dist.at(a, b) = s.fn(reps[a], reps[b]);

  // Representative independence: every cross-class pair must agree with
  // the representative pair. Fails only if the input broke the law.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (cls[i] == cls[j] || i == j) continue;
      if (s.fn(i, j) != out.fn(rep_slot[cls[i]], rep_slot[cls[j]]))
        throw std::logic_error(
            "zero-distance quotient is not well defined: input violates the "
            "mixed-triangle law");
    }

  PointMap q{s.carrier, out.carrier, {}};
  q.map.reserve(n);
  for (std::size_t i = 0; i < n; ++i) q.map.push_back(rep_slot[cls[i]]);
  return {std::move(out), std::move(q)};
}

}  // namespace probmet
