#pragma once

#include <string>
#include <utility>
#include <vector>

namespace probmet {

/// Which law a witness violates. Names are the descriptive ones used in all
/// user-facing output.
enum class Law {
  MixedTriangle,  // level form: cross-level triangle guarded by the t-norm
  ProbTriangle,   // ddf form: alpha(x,z,r+s) >= alpha(y,z,r) * alpha(x,y,s)
  Separation,     // distinct points must sit at nonzero distance
  Triangle,       // plain extended-metric triangle
  NonExpansive,
  TNormLaw,
  T0,
};

inline const char* law_name(Law l) {
  switch (l) {
    case Law::MixedTriangle: return "mixed-triangle";
    case Law::ProbTriangle: return "prob-triangle";
    case Law::Separation: return "separation";
    case Law::Triangle: return "triangle";
    case Law::NonExpansive: return "non-expansive";
    case Law::TNormLaw: return "tnorm-law";
    case Law::T0: return "t0";
  }
  return "?";
}

/// A concrete, replayable counterexample: the points involved (in role
/// order), the named exact parameters, and the violated relation rendered
/// as lhs RELATION rhs (the relation that was REQUIRED and does not hold).
/// Every field is an exact string in the "5" / "5/3" / "inf" grammar, so a
/// witness can be re-evaluated against the space it came from.
struct Witness {
  Law law{};
  std::vector<std::string> points;
  std::vector<std::pair<std::string, std::string>> params;
  std::string lhs, relation, rhs;

  std::string render() const {
    std::string s = "law: ";
    s += law_name(law);
    s += "\npoints:";
    for (const auto& p : points) {
      s += ' ';
      s += p;
    }
    s += '\n';
    for (const auto& [k, v] : params) {
      s += k;
      s += ": ";
      s += v;
      s += '\n';
    }
    s += "violated: ";
    s += lhs;
    s += ' ';
    s += relation;
    s += ' ';
    s += rhs;
    s += '\n';
    return s;
  }
};

/// Validator outcome. pass holds iff the witness list is empty; laws lists
/// per-law status in check order ("pass", "fail", or "not claimed" for
/// separation on spaces that do not claim it).
struct Report {
  bool pass{true};
  std::vector<std::pair<std::string, std::string>> laws;
  std::vector<Witness> witnesses;

  std::string render() const {
    std::string s;
    for (const auto& [k, v] : laws) {
      s += k;
      s += ": ";
      s += v;
      s += '\n';
    }
    for (const Witness& w : witnesses) {
      s += "witness:\n";
      std::string block = w.render();
      // indent the block two spaces for readability
      std::string ind = "  ";
      for (char c : block) {
        ind += c;
        if (c == '\n') ind += "  ";
      }
      ind.erase(ind.size() - 2);
      s += ind;
    }
    s += pass ? "all axioms pass\n" : "verdict: fail\n";
    return s;
  }
};

}  // namespace probmet
