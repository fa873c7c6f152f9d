#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "probmet/rational.hpp"
#include "probmet/report.hpp"
#include "probmet/stepfn.hpp"
#include "probmet/tnorm.hpp"

namespace probmet {

/// Ordered finite point set. Order is significant: it fixes pair-key order
/// in files, enumeration order of validators, and representative choices.
class Carrier {
 public:
  Carrier() = default;
  explicit Carrier(std::vector<std::string> ids) : ids_(std::move(ids)) {
    for (std::size_t i = 0; i < ids_.size(); ++i) {
      if (ids_[i].empty()) throw std::invalid_argument("empty point id");
      if (!index_.emplace(ids_[i], i).second)
        throw std::invalid_argument("duplicate point id \"" + ids_[i] + "\"");
    }
  }

  std::size_t size() const { return ids_.size(); }
  const std::vector<std::string>& ids() const { return ids_; }
  const std::string& id(std::size_t i) const { return ids_.at(i); }

  bool contains(const std::string& id) const { return index_.count(id) != 0; }

  std::size_t index_of(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end())
      throw std::invalid_argument("unknown point id \"" + id + "\"");
    return it->second;
  }

  friend bool operator==(const Carrier& a, const Carrier& b) {
    return a.ids_ == b.ids_;
  }
  friend bool operator!=(const Carrier& a, const Carrier& b) {
    return !(a == b);
  }

 private:
  std::vector<std::string> ids_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Symmetric off-diagonal table: one cell per unordered pair i < j.
template <class Fn>
class PairTable {
 public:
  PairTable() = default;
  explicit PairTable(std::size_t n, Fn init = Fn())
      : n_(n), cells_(n < 2 ? 0 : n * (n - 1) / 2, std::move(init)) {}

  const Fn& at(std::size_t i, std::size_t j) const {
    return cells_[offset(i, j)];
  }
  Fn& at(std::size_t i, std::size_t j) { return cells_[offset(i, j)]; }

  std::size_t points() const { return n_; }

  friend bool operator==(const PairTable& a, const PairTable& b) {
    return a.n_ == b.n_ && a.cells_ == b.cells_;
  }

 private:
  std::size_t offset(std::size_t i, std::size_t j) const {
    if (i == j) throw std::logic_error("diagonal access on pair table");
    if (i > j) std::swap(i, j);
    return i * (2 * n_ - i - 1) / 2 + (j - i - 1);
  }

  std::size_t n_{0};
  std::vector<Fn> cells_;
};

/// Level-family presentation: per unordered pair a nonincreasing
/// left-continuous step function of the level. `separated` records whether
/// the space claims that distinct points sit at nonzero distance; when
/// false the space lives in the larger, non-separated category and the
/// separation law is simply not claimed.
struct LevelSpace {
  Carrier carrier;
  TNorm tnorm{TNorm::Minimum};
  bool separated{true};
  PairTable<LevelFunction> dist;

  static LevelSpace make(Carrier c, TNorm t, bool sep) {
    LevelSpace s;
    s.dist = PairTable<LevelFunction>(c.size());
    s.carrier = std::move(c);
    s.tnorm = t;
    s.separated = sep;
    return s;
  }

  const LevelFunction& fn(std::size_t i, std::size_t j) const {
    return dist.at(i, j);
  }
  /// Diagonal-aware copy: d(x,x) is constantly zero.
  LevelFunction pair_fn(std::size_t i, std::size_t j) const {
    return i == j ? LevelFunction::constant(ExtReal(0)) : dist.at(i, j);
  }

  friend bool operator==(const LevelSpace& a, const LevelSpace& b) {
    return a.carrier == b.carrier && a.tnorm == b.tnorm &&
           a.separated == b.separated && a.dist == b.dist;
  }
};

/// Distribution presentation: per unordered pair a distance distribution
/// function; alpha(x, y, gamma) is the probability-style mass below gamma.
struct DdfSpace {
  Carrier carrier;
  TNorm tnorm{TNorm::Minimum};
  bool separated{true};
  PairTable<DistanceDistribution> dist;

  static DdfSpace make(Carrier c, TNorm t, bool sep) {
    DdfSpace s;
    s.dist = PairTable<DistanceDistribution>(c.size());
    s.carrier = std::move(c);
    s.tnorm = t;
    s.separated = sep;
    return s;
  }

  const DistanceDistribution& fn(std::size_t i, std::size_t j) const {
    return dist.at(i, j);
  }
  DistanceDistribution pair_fn(std::size_t i, std::size_t j) const {
    return i == j ? DistanceDistribution::zero_distance() : dist.at(i, j);
  }

  friend bool operator==(const DdfSpace& a, const DdfSpace& b) {
    return a.carrier == b.carrier && a.tnorm == b.tnorm &&
           a.separated == b.separated && a.dist == b.dist;
  }
};

namespace detail {

/// Exact mixed-triangle check for one ordered triple (x, y, z), reading
/// d(x,y) and d(y,z) segment pairs against d(x,z).
///
/// For levels on constancy intervals (a,b] x (a',b'] the guard
/// (1-lambda')*(1-lambda) > 1-eps activates exactly the eps strictly above
/// eps_hat = 1 - (1-a')*(1-a), and the worst left side is the value of
/// d(x,z) immediately right of eps_hat (nonincreasing + left-continuous).
/// So one right-limit comparison per interval pair decides the axiom.
inline bool ut_check_triple(const LevelSpace& s, std::size_t x, std::size_t y,
                            std::size_t z, Witness* out) {
  const LevelFunction& dxy = s.fn(x, y);
  const LevelFunction& dyz = s.fn(y, z);
  const LevelFunction& dxz = s.fn(x, z);
  const auto& segs1 = dxy.segments();
  const auto& segs2 = dyz.segments();
  for (std::size_t ia = 0; ia < segs1.size(); ++ia) {
    const UnitVal a = dxy.left_end(ia);
    const UnitVal b = segs1[ia].end;
    const ExtReal& w = segs1[ia].value;
    for (std::size_t ib = 0; ib < segs2.size(); ++ib) {
      const UnitVal a2 = dyz.left_end(ib);
      const UnitVal b2 = segs2[ib].end;
      const ExtReal& w2 = segs2[ib].value;
      const UnitVal eps_hat = tnorm_residual_threshold(s.tnorm, a, a2);
      if (eps_hat.is_one()) continue;  // guard can never fire here
      const ExtReal lhs = dxz.value_right_of(eps_hat);
      const ExtReal rhs = w + w2;
      if (lhs <= rhs) continue;

      if (out) {
        // Concrete violating levels. eps is the right endpoint eps_star of
        // the d(x,z) segment just right of eps_hat; lambda, lambda' move a
        // quarter of eps_star - eps_hat into their intervals, which keeps
        // the guard strict for all three t-norms.
        UnitVal eps_star = UnitVal::one();
        for (const auto& seg : dxz.segments())
          if (eps_hat < seg.end) {
            eps_star = seg.end;
            break;
          }
        Rat g = eps_star.rat() - eps_hat.rat();
        Rat u = g * Rat(1, 4);
        if (b.rat() - a.rat() < u) u = b.rat() - a.rat();
        if (b2.rat() - a2.rat() < u) u = b2.rat() - a2.rat();
        UnitVal lambda(a.rat() + u), lambda2(a2.rat() + u);
        if (!(tnorm_residual_threshold(s.tnorm, lambda, lambda2) < eps_star) ||
            dxz.eval(eps_star) != lhs || dxy.eval(lambda) != w ||
            dyz.eval(lambda2) != w2)
          throw std::logic_error("mixed-triangle witness construction broke");
        out->law = Law::MixedTriangle;
        out->points = {s.carrier.id(x), s.carrier.id(y), s.carrier.id(z)};
        out->params = {{"eps", eps_star.str()},
                       {"lambda", lambda.str()},
                       {"lambda'", lambda2.str()}};
        out->lhs = lhs.str();
        out->relation = "<=";
        out->rhs = rhs.str();
      }
      return false;
    }
  }
  return true;
}

}  // namespace detail

/// Decides the mixed-triangle law exactly (all levels, not a sample) and,
/// when the space claims separation, the separation law. Symmetry and
/// density hold by representation. First violation in lexicographic
/// triple/interval order is reported with a replayable witness.
inline Report validate_level_space(const LevelSpace& s) {
  Report rep;
  rep.laws.emplace_back("symmetry", "pass (by construction)");
  rep.laws.emplace_back("density", "pass (by construction)");

  const std::size_t n = s.carrier.size();
  bool ut_ok = true;
  // Triples with a repeated point hold automatically: d(x,x) = 0 handles
  // x = z, and monotonicity in the level handles x = y and y = z.
  for (std::size_t x = 0; x < n && ut_ok; ++x)
    for (std::size_t y = 0; y < n && ut_ok; ++y) {
      if (y == x) continue;
      for (std::size_t z = 0; z < n && ut_ok; ++z) {
        if (z == x || z == y) continue;
        Witness w;
        if (!detail::ut_check_triple(s, x, y, z, &w)) {
          rep.witnesses.push_back(std::move(w));
          ut_ok = false;
        }
      }
    }
  rep.laws.emplace_back("mixed-triangle", ut_ok ? "pass" : "fail");

  if (s.separated) {
    bool uh_ok = true;
    for (std::size_t i = 0; i < n && uh_ok; ++i)
      for (std::size_t j = i + 1; j < n && uh_ok; ++j)
        if (s.fn(i, j).is_zero()) {
          Witness w;
          w.law = Law::Separation;
          w.points = {s.carrier.id(i), s.carrier.id(j)};
          w.lhs = "d(" + s.carrier.id(i) + "," + s.carrier.id(j) + ")";
          w.relation = "!=";
          w.rhs = "0 at some level";
          rep.witnesses.push_back(std::move(w));
          uh_ok = false;
        }
    rep.laws.emplace_back("separation", uh_ok ? "pass" : "fail");
  } else {
    rep.laws.emplace_back("separation", "not claimed");
  }

  rep.pass = rep.witnesses.empty();
  return rep;
}

/// Decides the distribution-form triangle law exactly. For each ordered
/// triple and each pair of constancy intervals of alpha(x,y,-), alpha(y,z,-)
/// the right side is constant and the infimum of alpha(x,z,-) over the sum
/// range is its value immediately right of the interval corner, so one
/// comparison per interval pair decides the law. Separation (no distinct
/// pair at the zero-distance distribution) is checked when claimed.
inline Report validate_ddf_space(const DdfSpace& s) {
  Report rep;
  rep.laws.emplace_back("distribution", "pass (by construction)");
  rep.laws.emplace_back("zero-self-distance", "pass (by construction)");
  rep.laws.emplace_back("symmetry", "pass (by construction)");

  const std::size_t n = s.carrier.size();
  bool p5_ok = true;
  for (std::size_t x = 0; x < n && p5_ok; ++x)
    for (std::size_t y = 0; y < n && p5_ok; ++y) {
      if (y == x) continue;
      for (std::size_t z = 0; z < n && p5_ok; ++z) {
        if (z == x || z == y) continue;
        const DistanceDistribution& f = s.fn(x, y);  // s side
        const DistanceDistribution& g = s.fn(y, z);  // r side
        const DistanceDistribution& h = s.fn(x, z);
        const auto& jf = f.jumps();
        const auto& jg = g.jumps();
        for (std::size_t i = 0; i < jf.size() && p5_ok; ++i)
          for (std::size_t j = 0; j < jg.size() && p5_ok; ++j) {
            const Rat corner = jf[i].at + jg[j].at;
            const UnitVal lhs = h.value_right_of(corner);
            const UnitVal rhs = tnorm_apply(s.tnorm, jg[j].value, jf[i].value);
            if (lhs >= rhs) continue;
            p5_ok = false;

            // Concrete (r, s): step a quarter of the smallest relevant jump
            // gap past the corner so all three functions still take the
            // interval values used above.
            Rat delta(1);
            bool bounded = false;
            auto tighten = [&](const Rat& gap) {
              if (!bounded || gap < delta) delta = gap;
              bounded = true;
            };
            if (i + 1 < jf.size()) tighten(jf[i + 1].at - jf[i].at);
            if (j + 1 < jg.size()) tighten(jg[j + 1].at - jg[j].at);
            for (const auto& jh : h.jumps())
              if (corner < jh.at) {
                tighten(jh.at - corner);
                break;
              }
            if (bounded) delta *= Rat(1, 4);
            const Rat sp = jf[i].at + delta;
            const Rat rp = jg[j].at + delta;
            if (f.eval(ExtReal(sp)) != jf[i].value ||
                g.eval(ExtReal(rp)) != jg[j].value ||
                h.eval(ExtReal(rp + sp)) != lhs)
              throw std::logic_error("prob-triangle witness construction broke");
            Witness w;
            w.law = Law::ProbTriangle;
            w.points = {s.carrier.id(x), s.carrier.id(y), s.carrier.id(z)};
            w.params = {{"r", rp.str()}, {"s", sp.str()}};
            w.lhs = lhs.str();
            w.relation = ">=";
            w.rhs = rhs.str();
            rep.witnesses.push_back(std::move(w));
          }
      }
    }
  rep.laws.emplace_back("prob-triangle", p5_ok ? "pass" : "fail");

  if (s.separated) {
    bool p4_ok = true;
    for (std::size_t i = 0; i < n && p4_ok; ++i)
      for (std::size_t j = i + 1; j < n && p4_ok; ++j)
        if (s.fn(i, j).is_zero_distance()) {
          Witness w;
          w.law = Law::Separation;
          w.points = {s.carrier.id(i), s.carrier.id(j)};
          w.lhs = "alpha(" + s.carrier.id(i) + "," + s.carrier.id(j) + ",-)";
          w.relation = "!=";
          w.rhs = "zero-distance distribution";
          rep.witnesses.push_back(std::move(w));
          p4_ok = false;
        }
    rep.laws.emplace_back("separation", p4_ok ? "pass" : "fail");
  } else {
    rep.laws.emplace_back("separation", "not claimed");
  }

  rep.pass = rep.witnesses.empty();
  return rep;
}

/// Sampling oracle: checks the mixed-triangle law only at levels drawn
/// from `levels` (for eps, lambda, lambda' alike). Any violation it finds
/// is genuine; it can miss violations between sample points. For a fixed
/// (lambda, lambda') the worst admissible eps is the smallest sampled
/// level above the residual threshold, so one comparison per level pair
/// suffices.
inline Report ut_oracle_points(const LevelSpace& s,
                               std::vector<UnitVal> levels) {
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  while (!levels.empty() && levels.front().is_zero())
    levels.erase(levels.begin());
  if (levels.empty())
    throw std::invalid_argument("oracle needs at least one level in (0,1]");

  const std::size_t n = s.carrier.size();
  const std::size_t m = levels.size();
  Report rep;

  // Pair-indexed eval tables over the sample levels.
  auto pidx = [n](std::size_t i, std::size_t j) {
    if (i > j) std::swap(i, j);
    return i * (2 * n - i - 1) / 2 + (j - i - 1);
  };
  std::vector<std::vector<ExtReal>> evals(n < 2 ? 0 : n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      auto& row = evals[pidx(i, j)];
      row.reserve(m);
      for (const UnitVal& l : levels) row.push_back(s.fn(i, j).eval(l));
    }

  // firstEps[k][k2]: index of the smallest sampled eps the guard admits.
  std::vector<std::vector<std::ptrdiff_t>> first_eps(
      m, std::vector<std::ptrdiff_t>(m, -1));
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t k2 = 0; k2 < m; ++k2) {
      UnitVal th = tnorm_residual_threshold(s.tnorm, levels[k], levels[k2]);
      auto it = std::upper_bound(levels.begin(), levels.end(), th);
      if (it != levels.end()) first_eps[k][k2] = it - levels.begin();
    }

  bool ok = true;
  for (std::size_t x = 0; x < n && ok; ++x)
    for (std::size_t y = 0; y < n && ok; ++y) {
      if (y == x) continue;
      for (std::size_t z = 0; z < n && ok; ++z) {
        if (z == x || z == y) continue;
        const auto& dxy = evals[pidx(x, y)];
        const auto& dyz = evals[pidx(y, z)];
        const auto& dxz = evals[pidx(x, z)];
        for (std::size_t k = 0; k < m && ok; ++k)
          for (std::size_t k2 = 0; k2 < m && ok; ++k2) {
            std::ptrdiff_t e = first_eps[k][k2];
            if (e < 0) continue;
            const ExtReal rhs = dxy[k] + dyz[k2];
            if (dxz[static_cast<std::size_t>(e)] <= rhs) continue;
            ok = false;
            Witness w;
            w.law = Law::MixedTriangle;
            w.points = {s.carrier.id(x), s.carrier.id(y), s.carrier.id(z)};
            w.params = {{"eps", levels[static_cast<std::size_t>(e)].str()},
                        {"lambda", levels[k].str()},
                        {"lambda'", levels[k2].str()}};
            w.lhs = dxz[static_cast<std::size_t>(e)].str();
            w.relation = "<=";
            w.rhs = rhs.str();
            rep.witnesses.push_back(std::move(w));
          }
      }
    }
  rep.laws.emplace_back("mixed-triangle(sampled)", ok ? "pass" : "fail");
  rep.pass = ok;
  return rep;
}

inline Report ut_oracle_grid(const LevelSpace& s, int n) {
  return ut_oracle_points(s, unit_grid(n));
}

namespace detail {
inline std::string find_param(const Witness& w, const std::string& key) {
  for (const auto& [k, v] : w.params)
    if (k == key) return v;
  throw std::invalid_argument("witness lacks parameter \"" + key + "\"");
}
}  // namespace detail

/// Re-evaluates a witness against a level space: true iff the recorded
/// violation reproduces exactly (guard satisfied, inequality broken, and
/// the recorded sides match the recomputed ones).
inline bool replay_witness(const LevelSpace& s, const Witness& w) {
  try {
    if (w.law == Law::MixedTriangle) {
      if (w.points.size() != 3) return false;
      std::size_t x = s.carrier.index_of(w.points[0]);
      std::size_t y = s.carrier.index_of(w.points[1]);
      std::size_t z = s.carrier.index_of(w.points[2]);
      UnitVal eps = UnitVal::parse(detail::find_param(w, "eps"));
      UnitVal l = UnitVal::parse(detail::find_param(w, "lambda"));
      UnitVal l2 = UnitVal::parse(detail::find_param(w, "lambda'"));
      if (!(tnorm_residual_threshold(s.tnorm, l, l2) < eps)) return false;
      ExtReal lhs = s.pair_fn(x, z).eval(eps);
      ExtReal rhs = s.pair_fn(x, y).eval(l) + s.pair_fn(y, z).eval(l2);
      return lhs > rhs && lhs.str() == w.lhs && rhs.str() == w.rhs;
    }
    if (w.law == Law::Separation) {
      if (w.points.size() != 2 || !s.separated) return false;
      std::size_t i = s.carrier.index_of(w.points[0]);
      std::size_t j = s.carrier.index_of(w.points[1]);
      return i != j && s.fn(i, j).is_zero();
    }
  } catch (const std::exception&) {
    return false;
  }
  return false;
}

/// Distribution-form counterpart of replay_witness.
inline bool replay_witness(const DdfSpace& s, const Witness& w) {
  try {
    if (w.law == Law::ProbTriangle) {
      if (w.points.size() != 3) return false;
      std::size_t x = s.carrier.index_of(w.points[0]);
      std::size_t y = s.carrier.index_of(w.points[1]);
      std::size_t z = s.carrier.index_of(w.points[2]);
      Rat r = Rat::parse(detail::find_param(w, "r"));
      Rat sp = Rat::parse(detail::find_param(w, "s"));
      UnitVal lhs = s.pair_fn(x, z).eval(ExtReal(r + sp));
      UnitVal rhs = tnorm_apply(s.tnorm, s.pair_fn(y, z).eval(ExtReal(r)),
                                s.pair_fn(x, y).eval(ExtReal(sp)));
      return lhs < rhs && lhs.str() == w.lhs && rhs.str() == w.rhs;
    }
    if (w.law == Law::Separation) {
      if (w.points.size() != 2 || !s.separated) return false;
      std::size_t i = s.carrier.index_of(w.points[0]);
      std::size_t j = s.carrier.index_of(w.points[1]);
      return i != j && s.fn(i, j).is_zero_distance();
    }
  } catch (const std::exception&) {
    return false;
  }
  return false;
}

}  // namespace probmet
