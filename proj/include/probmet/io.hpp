#pragma once

#include <functional>
#include <variant>

#include <json.hpp>

#include "probmet/bridge.hpp"
#include "probmet/morphism.hpp"
#include "probmet/space.hpp"

namespace probmet {

// Key order in files is meaningful to humans, so keep insertion order.
using json = nlohmann::ordered_json;

/// Input rejection with the offending field path in the message.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& path, const std::string& what)
      : std::runtime_error(path.empty() ? what : path + ": " + what) {}
};

using SpaceVar = std::variant<LevelSpace, DdfSpace>;

namespace ioext {

inline std::string require_string(const json& j, const std::string& path) {
  if (j.is_number() || j.is_number_float())
    throw ParseError(path,
                     "rationals only: write numbers as strings like \"5/3\"");
  if (!j.is_string()) throw ParseError(path, "expected a string");
  return j.get<std::string>();
}

inline Rat rat_field(const json& j, const std::string& path) {
  std::string s = require_string(j, path);
  try {
    return Rat::parse(s);
  } catch (const std::exception& e) {
    throw ParseError(path, e.what());
  }
}

inline ExtReal ext_field(const json& j, const std::string& path) {
  std::string s = require_string(j, path);
  try {
    return ExtReal::parse(s);
  } catch (const std::exception& e) {
    throw ParseError(path, e.what());
  }
}

inline UnitVal unit_field(const json& j, const std::string& path) {
  std::string s = require_string(j, path);
  try {
    return UnitVal::parse(s);
  } catch (const std::exception& e) {
    throw ParseError(path, e.what());
  }
}

inline bool bool_field(const json& j, const std::string& path) {
  if (!j.is_boolean()) throw ParseError(path, "expected true or false");
  return j.get<bool>();
}

inline const json& member(const json& j, const char* key,
                          const std::string& path) {
  if (!j.is_object()) throw ParseError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end())
    throw ParseError(path, std::string("missing field \"") + key + "\"");
  return *it;
}

inline Carrier points_field(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty())
    throw ParseError(path, "expected a non-empty array of point ids");
  std::vector<std::string> ids;
  ids.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    std::string p = path + "[" + std::to_string(i) + "]";
    std::string id = require_string(j[i], p);
    if (id.empty()) throw ParseError(p, "point id must be non-empty");
    if (id.find('|') != std::string::npos)
      throw ParseError(p, "point id must not contain '|'");
    ids.push_back(std::move(id));
  }
  try {
    return Carrier{std::move(ids)};
  } catch (const std::exception& e) {
    throw ParseError(path, e.what());
  }
}

/// Shared walk over the "dist" object: exactly one entry per unordered
/// pair, keyed "a|b" with a before b in the points list.
template <typename PerPair>
void each_pair(const json& dist, const Carrier& c, const std::string& path,
               PerPair&& per) {
  if (!dist.is_object()) throw ParseError(path, "expected an object");
  std::size_t expected = c.size() * (c.size() - 1) / 2;
  if (dist.size() != expected) {
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::size_t j = i + 1; j < c.size(); ++j) {
        std::string key = c.id(i) + "|" + c.id(j);
        if (!dist.contains(key))
          throw ParseError(path, "missing pair \"" + key + "\"");
      }
    throw ParseError(path, "extra pair keys present");
  }
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = i + 1; j < c.size(); ++j) {
      std::string key = c.id(i) + "|" + c.id(j);
      auto it = dist.find(key);
      if (it == dist.end())
        throw ParseError(path, "missing pair \"" + key +
                                   "\" (keys must follow the points order)");
      per(i, j, *it, path + "[\"" + key + "\"]");
    }
}

inline LevelFunction level_fn_field(const json& j, const std::string& path) {
  if (!j.is_array())
    throw ParseError(path, "expected an array of [end, value] segments");
  std::vector<LevelFunction::Seg> segs;
  for (std::size_t i = 0; i < j.size(); ++i) {
    std::string p = path + "[" + std::to_string(i) + "]";
    if (!j[i].is_array() || j[i].size() != 2)
      throw ParseError(p, "expected [end, value]");
    UnitVal end = unit_field(j[i][0], p + "[0]");
    ExtReal value = ext_field(j[i][1], p + "[1]");
    segs.push_back({end, value});
  }
  try {
    return LevelFunction::from_segments(segs);
  } catch (const std::exception& e) {
    throw ParseError(path, e.what());
  }
}

inline DistanceDistribution ddf_fn_field(const json& j,
                                         const std::string& path) {
  if (!j.is_array())
    throw ParseError(path, "expected an array of [at, value] jumps");
  std::vector<DistanceDistribution::Jump> jumps;
  for (std::size_t i = 0; i < j.size(); ++i) {
    std::string p = path + "[" + std::to_string(i) + "]";
    if (!j[i].is_array() || j[i].size() != 2)
      throw ParseError(p, "expected [at, value]");
    Rat at = rat_field(j[i][0], p + "[0]");
    UnitVal value = unit_field(j[i][1], p + "[1]");
    jumps.push_back({at, value});
  }
  try {
    return DistanceDistribution::from_jumps(jumps);
  } catch (const std::exception& e) {
    throw ParseError(path, e.what());
  }
}

inline json level_fn_to_json(const LevelFunction& f) {
  json a = json::array();
  for (const LevelFunction::Seg& s : f.segments())
    a.push_back(json::array({s.end.str(), s.value.str()}));
  return a;
}

inline json ddf_fn_to_json(const DistanceDistribution& f) {
  json a = json::array();
  for (const DistanceDistribution::Jump& jp : f.jumps())
    a.push_back(json::array({jp.at.str(), jp.value.str()}));
  return a;
}

}  // namespace ioext

/// Space files:
/// {
///   "form": "levels" | "ddf",
///   "tnorm": "min" | "product" | "lukasiewicz",
///   "separated": bool,
///   "points": ["x", "y", ...],
///   "dist": { "x|y": [[...], ...], ... }   // one entry per pair
/// }
/// Level form lists [end, value] segments; ddf form lists [at, value]
/// jumps. All numbers are rational strings ("2", "5/3", "inf" where an
/// infinite distance is legal). Parsing enforces canonical step form but
/// not the space axioms; `verify` does that.
inline SpaceVar space_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("", "expected a JSON object");
  std::string form = ioext::require_string(ioext::member(j, "form", ""), "form");
  if (form != "levels" && form != "ddf")
    throw ParseError("form", "expected \"levels\" or \"ddf\"");
  std::string tn =
      ioext::require_string(ioext::member(j, "tnorm", ""), "tnorm");
  TNorm t;
  try {
    t = tnorm_from_name(tn);
  } catch (const std::exception& e) {
    throw ParseError("tnorm", e.what());
  }
  bool sep = ioext::bool_field(ioext::member(j, "separated", ""), "separated");
  Carrier c = ioext::points_field(ioext::member(j, "points", ""), "points");
  const json& dist = ioext::member(j, "dist", "");

  if (form == "levels") {
    LevelSpace s = LevelSpace::make(c, t, sep);
    ioext::each_pair(dist, c, "dist",
                     [&](std::size_t i, std::size_t jx, const json& cell,
                         const std::string& p) {
                       s.dist.at(i, jx) = ioext::level_fn_field(cell, p);
                     });
    return s;
  }
  DdfSpace s = DdfSpace::make(c, t, sep);
  ioext::each_pair(dist, c, "dist",
                   [&](std::size_t i, std::size_t jx, const json& cell,
                       const std::string& p) {
                     s.dist.at(i, jx) = ioext::ddf_fn_field(cell, p);
                   });
  return s;
}

inline json space_to_json(const LevelSpace& s) {
  json j = json::object();
  j["form"] = "levels";
  j["tnorm"] = tnorm_name(s.tnorm);
  j["separated"] = s.separated;
  j["points"] = json::array();
  for (const std::string& id : s.carrier.ids()) j["points"].push_back(id);
  json dist = json::object();
  for (std::size_t i = 0; i < s.carrier.size(); ++i)
    for (std::size_t jx = i + 1; jx < s.carrier.size(); ++jx)
      dist[s.carrier.id(i) + "|" + s.carrier.id(jx)] =
          ioext::level_fn_to_json(s.fn(i, jx));
  j["dist"] = std::move(dist);
  return j;
}

inline json space_to_json(const DdfSpace& s) {
  json j = json::object();
  j["form"] = "ddf";
  j["tnorm"] = tnorm_name(s.tnorm);
  j["separated"] = s.separated;
  j["points"] = json::array();
  for (const std::string& id : s.carrier.ids()) j["points"].push_back(id);
  json dist = json::object();
  for (std::size_t i = 0; i < s.carrier.size(); ++i)
    for (std::size_t jx = i + 1; jx < s.carrier.size(); ++jx)
      dist[s.carrier.id(i) + "|" + s.carrier.id(jx)] =
          ioext::ddf_fn_to_json(s.fn(i, jx));
  j["dist"] = std::move(dist);
  return j;
}

/// Metric files:
/// {
///   "form": "metric",
///   "points": [...],
///   "separated": bool,            // optional on read, defaults to true
///   "dist": { "x|y": "5/3", ... } // rational strings or "inf"
/// }
inline MetricSpace metric_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("", "expected a JSON object");
  std::string form =
      ioext::require_string(ioext::member(j, "form", ""), "form");
  if (form != "metric") throw ParseError("form", "expected \"metric\"");
  Carrier c = ioext::points_field(ioext::member(j, "points", ""), "points");
  bool sep = true;
  if (j.contains("separated"))
    sep = ioext::bool_field(j["separated"], "separated");
  MetricSpace m = MetricSpace::make(c, sep);
  ioext::each_pair(ioext::member(j, "dist", ""), c, "dist",
                   [&](std::size_t i, std::size_t jx, const json& cell,
                       const std::string& p) {
                     m.dist.at(i, jx) = ioext::ext_field(cell, p);
                   });
  return m;
}

inline json metric_to_json(const MetricSpace& m) {
  json j = json::object();
  j["form"] = "metric";
  j["points"] = json::array();
  for (const std::string& id : m.carrier.ids()) j["points"].push_back(id);
  j["separated"] = m.separated;
  json dist = json::object();
  for (std::size_t i = 0; i < m.carrier.size(); ++i)
    for (std::size_t jx = i + 1; jx < m.carrier.size(); ++jx)
      dist[m.carrier.id(i) + "|" + m.carrier.id(jx)] =
          m.dist.at(i, jx).str();
  j["dist"] = std::move(dist);
  return j;
}

/// Morphism files:
/// {
///   "source": <space object> | "path/to/space.json",
///   "target": <space object> | "path/to/space.json",
///   "map": { "x": "fx", ... }     // total on the source points
/// }
/// The resolver turns a path string into the parsed document; pass one
/// that reads files (the CLI does) or serves canned objects (tests do).
struct MorphismData {
  SpaceVar source;
  SpaceVar target;
  PointMap map;
};

inline MorphismData morphism_from_json(
    const json& j,
    const std::function<json(const std::string&)>& resolve) {
  if (!j.is_object()) throw ParseError("", "expected a JSON object");
  auto load_side = [&](const char* key) -> SpaceVar {
    const json& side = ioext::member(j, key, "");
    if (side.is_string()) {
      if (!resolve)
        throw ParseError(key, "space references are not allowed here");
      json doc;
      try {
        doc = resolve(side.get<std::string>());
      } catch (const std::exception& e) {
        throw ParseError(key, e.what());
      }
      try {
        return space_from_json(doc);
      } catch (const ParseError& e) {
        throw ParseError(std::string(key) + " -> " + side.get<std::string>(),
                         e.what());
      }
    }
    try {
      return space_from_json(side);
    } catch (const ParseError& e) {
      throw ParseError(key, e.what());
    }
  };

  SpaceVar src = load_side("source");
  SpaceVar tgt = load_side("target");
  const Carrier& sc = std::visit([](const auto& s) -> const Carrier& {
    return s.carrier;
  }, src);
  const Carrier& tc = std::visit([](const auto& s) -> const Carrier& {
    return s.carrier;
  }, tgt);

  const json& mp = ioext::member(j, "map", "");
  if (!mp.is_object()) throw ParseError("map", "expected an object");
  std::vector<std::pair<std::string, std::string>> pairs;
  for (auto it = mp.begin(); it != mp.end(); ++it)
    pairs.emplace_back(it.key(),
                       ioext::require_string(it.value(),
                                             "map[\"" + it.key() + "\"]"));
  PointMap f{sc, tc, {}};
  try {
    f = PointMap::from_assignments(sc, tc, pairs);
  } catch (const std::exception& e) {
    throw ParseError("map", e.what());
  }
  return {std::move(src), std::move(tgt), std::move(f)};
}

/// Byte-deterministic serialization: two-space indent, trailing newline.
inline std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

}  // namespace probmet
