#pragma once

#include <functional>
#include <vector>

#include "probmet/rational.hpp"
#include "probmet/report.hpp"

namespace probmet {

/// The three built-in continuous t-norms. Every space carries one tag; all
/// cross-level reasoning (guards, residual thresholds) goes through it.
enum class TNorm { Minimum, Product, Lukasiewicz };

inline const char* tnorm_name(TNorm t) {
  switch (t) {
    case TNorm::Minimum: return "min";
    case TNorm::Product: return "product";
    case TNorm::Lukasiewicz: return "lukasiewicz";
  }
  throw std::logic_error("unreachable t-norm tag");
}

inline TNorm tnorm_from_name(std::string_view s) {
  if (s == "min") return TNorm::Minimum;
  if (s == "product") return TNorm::Product;
  if (s == "lukasiewicz") return TNorm::Lukasiewicz;
  throw std::invalid_argument("unknown t-norm \"" + std::string(s) +
                              "\" (expected min, product, or lukasiewicz)");
}

inline UnitVal tnorm_apply(TNorm t, const UnitVal& a, const UnitVal& b) {
  switch (t) {
    case TNorm::Minimum:
      return min(a, b);
    case TNorm::Product:
      return UnitVal(a.rat() * b.rat());
    case TNorm::Lukasiewicz: {
      Rat s = a.rat() + b.rat() - Rat(1);
      return s.is_negative() ? UnitVal::zero() : UnitVal(s);
    }
  }
  throw std::logic_error("unreachable t-norm tag");
}

/// Smallest level eps at which the mixed-triangle guard can fire for
/// left endpoints lambda, lambda': everything strictly above
/// 1 - (1-lambda')*(1-lambda) activates the constraint.
inline UnitVal tnorm_residual_threshold(TNorm t, const UnitVal& lambda,
                                        const UnitVal& lambda2) {
  return tnorm_apply(t, lambda2.one_minus(), lambda.one_minus()).one_minus();
}

/// Uniform grid {1/n, ..., n/n} used by the sampling oracles.
inline std::vector<UnitVal> unit_grid(int n) {
  if (n < 1) throw std::invalid_argument("grid resolution must be >= 1");
  std::vector<UnitVal> g;
  g.reserve(n);
  for (int k = 1; k <= n; ++k) g.emplace_back(Rat(k, n));
  return g;
}

/// Checks the t-norm laws (commutativity, associativity, unit, monotonicity)
/// for an arbitrary binary operation on an exhaustive unit grid of resolution
/// n. The built-ins must always pass; the hook exists so a caller can probe
/// a custom operation before trusting it.
inline Report tnorm_laws_check(
    const std::function<UnitVal(const UnitVal&, const UnitVal&)>& op, int n) {
  Report rep;
  std::vector<UnitVal> g = unit_grid(n);
  g.insert(g.begin(), UnitVal::zero());

  auto fail = [&](const char* law, std::initializer_list<UnitVal> args,
                  const UnitVal& lhs, const UnitVal& rhs) {
    Witness w;
    w.law = Law::TNormLaw;
    int i = 0;
    for (const UnitVal& a : args)
      w.params.emplace_back(std::string("arg") + std::to_string(i++), a.str());
    w.params.emplace_back("law", law);
    w.lhs = lhs.str();
    w.relation = "==";
    w.rhs = rhs.str();
    rep.witnesses.push_back(std::move(w));
  };

  bool comm = true, assoc = true, unit = true, mono = true;
  for (const UnitVal& a : g) {
    UnitVal ua = op(a, UnitVal::one());
    if (unit && ua != a) {
      fail("unit", {a}, ua, a);
      unit = false;
    }
    for (const UnitVal& b : g) {
      UnitVal ab = op(a, b);
      if (comm) {
        UnitVal ba = op(b, a);
        if (ab != ba) {
          fail("commutativity", {a, b}, ab, ba);
          comm = false;
        }
      }
      for (const UnitVal& c : g) {
        if (assoc) {
          UnitVal l = op(ab, c), r = op(a, op(b, c));
          if (l != r) {
            fail("associativity", {a, b, c}, l, r);
            assoc = false;
          }
        }
        // One-argument monotonicity; with commutativity this covers both.
        if (mono && b <= c) {
          UnitVal l = op(a, b), r = op(a, c);
          if (l > r) {
            fail("monotonicity", {a, b, c}, l, r);
            mono = false;
          }
        }
      }
    }
  }
  rep.laws.emplace_back("commutativity", comm ? "pass" : "fail");
  rep.laws.emplace_back("associativity", assoc ? "pass" : "fail");
  rep.laws.emplace_back("unit", unit ? "pass" : "fail");
  rep.laws.emplace_back("monotonicity", mono ? "pass" : "fail");
  rep.pass = rep.witnesses.empty();
  return rep;
}

inline Report tnorm_laws_check(TNorm t, int n) {
  return tnorm_laws_check(
      [t](const UnitVal& a, const UnitVal& b) { return tnorm_apply(t, a, b); },
      n);
}

}  // namespace probmet
