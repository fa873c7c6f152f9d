#include <catch_amalgamated.hpp>

#include <map>

#include <probmet/convert.hpp>
#include <probmet/io.hpp>

#include "support/gen.hpp"

using namespace probmet;
using Catch::Matchers::ContainsSubstring;

namespace {

json parse(const std::string& text) { return json::parse(text); }

const char* kTwoPointFile = R"({
  "form": "levels",
  "tnorm": "min",
  "separated": true,
  "points": ["a", "b"],
  "dist": {"a|b": [["1/2", "5"], ["1", "2"]]}
})";

}  // namespace

TEST_CASE("space files parse to the expected structure") {
  SpaceVar v = space_from_json(parse(kTwoPointFile));
  REQUIRE(std::holds_alternative<LevelSpace>(v));
  const LevelSpace& s = std::get<LevelSpace>(v);
  CHECK(s.tnorm == TNorm::Minimum);
  CHECK(s.separated);
  CHECK(s.carrier.ids() == std::vector<std::string>{"a", "b"});
  CHECK(s.fn(0, 1) ==
        LevelFunction::from_segments({{UnitVal(1, 2), ExtReal(5)},
                                      {UnitVal::one(), ExtReal(2)}}));

  json d = parse(kTwoPointFile);
  d["form"] = "ddf";
  d["dist"]["a|b"] = json::array({json::array({"2", "1/2"}),
                                  json::array({"5", "1"})});
  SpaceVar w = space_from_json(d);
  REQUIRE(std::holds_alternative<DdfSpace>(w));
  CHECK(std::get<DdfSpace>(w).fn(0, 1) ==
        level_to_ddf(s.fn(0, 1)));
}

TEST_CASE("spaces survive the file format byte for byte") {
  gen::Rng rng(606);
  for (int rep = 0; rep < 30; ++rep) {
    TNorm t = static_cast<TNorm>(rng.pick(0, 2));
    LevelSpace s = gen::rand_space(
        rng, static_cast<std::size_t>(rng.pick(1, 5)), t, rng.coin(2, 3));
    CAPTURE(rep);
    SpaceVar back = space_from_json(parse(dump_json(space_to_json(s))));
    REQUIRE(std::get<LevelSpace>(back) == s);

    DdfSpace d = phi(s);
    SpaceVar dback = space_from_json(parse(dump_json(space_to_json(d))));
    REQUIRE(std::get<DdfSpace>(dback) == d);

    // serialize-parse-serialize is the identity on bytes
    std::string once = dump_json(space_to_json(s));
    std::string twice =
        dump_json(space_to_json(std::get<LevelSpace>(space_from_json(parse(once)))));
    REQUIRE(once == twice);
  }
}

TEST_CASE("serialized bytes are frozen") {
  LevelSpace s = LevelSpace::make(Carrier{{"a", "b"}}, TNorm::Minimum, true);
  s.dist.at(0, 1) = LevelFunction::constant(ExtReal(2));
  CHECK(dump_json(space_to_json(s)) == R"({
  "form": "levels",
  "tnorm": "min",
  "separated": true,
  "points": [
    "a",
    "b"
  ],
  "dist": {
    "a|b": [
      [
        "1",
        "2"
      ]
    ]
  }
}
)");
}

TEST_CASE("malformed space files are rejected with pointed messages") {
  auto reject = [](const char* mutation, auto&& fix) {
    json d = parse(kTwoPointFile);
    fix(d);
    REQUIRE_THROWS_WITH(space_from_json(d), ContainsSubstring(mutation));
  };

  reject("rationals only",
         [](json& d) { d["dist"]["a|b"][0][1] = 5; });
  reject("rationals only",
         [](json& d) { d["dist"]["a|b"][0][0] = 0.5; });
  reject("expected \"levels\" or \"ddf\"",
         [](json& d) { d["form"] = "level"; });
  reject("missing field \"tnorm\"", [](json& d) { d.erase("tnorm"); });
  reject("unknown t-norm", [](json& d) { d["tnorm"] = "drastic"; });
  reject("expected true or false",
         [](json& d) { d["separated"] = "yes"; });
  reject("non-empty array", [](json& d) { d["points"] = json::array(); });
  reject("must not contain '|'",
         [](json& d) { d["points"][0] = "a|b"; });
  reject("duplicate point id",
         [](json& d) { d["points"][1] = "a"; });
  reject("missing pair \"a|b\"",
         [](json& d) { d["dist"] = json::object(); });
  reject("keys must follow the points order", [](json& d) {
    d["dist"] = json::object();
    d["dist"]["b|a"] = json::array({json::array({"1", "2"})});
  });
  reject("extra pair keys present", [](json& d) {
    d["dist"]["zz|qq"] = json::array({json::array({"1", "2"})});
  });
  reject("expected [end, value]",
         [](json& d) { d["dist"]["a|b"][0] = json::array({"1"}); });
  reject("last segment must end at 1",
         [](json& d) { d["dist"]["a|b"][1][0] = "3/4"; });
  reject("malformed rational", [](json& d) { d["dist"]["a|b"][0][1] = "1.5"; });
  reject("malformed rational", [](json& d) { d["dist"]["a|b"][0][1] = "-1"; });

  json threept = parse(kTwoPointFile);
  threept["points"].push_back("c");
  threept["dist"]["a|c"] = json::array({json::array({"1", "1"})});
  REQUIRE_THROWS_WITH(space_from_json(threept),
                      ContainsSubstring("missing pair \"b|c\""));

  // non-monotone data reaches the step-function constructor and bounces
  json bad_order = parse(kTwoPointFile);
  bad_order["dist"]["a|b"] = json::array(
      {json::array({"1", "2"}), json::array({"1/2", "5"})});
  REQUIRE_THROWS_AS(space_from_json(bad_order), ParseError);

  json bad_ddf = parse(kTwoPointFile);
  bad_ddf["form"] = "ddf";
  bad_ddf["dist"]["a|b"] = json::array(
      {json::array({"2", "1/2"}), json::array({"5", "1/3"})});
  REQUIRE_THROWS_AS(space_from_json(bad_ddf), ParseError);
}

TEST_CASE("metric files") {
  json m = parse(R"({
    "form": "metric",
    "points": ["x", "y", "z"],
    "dist": {"x|y": "1", "x|z": "inf", "y|z": "5/3"}
  })");
  MetricSpace ms = metric_from_json(m);
  CHECK(ms.separated);  // optional field, defaults to the claim
  CHECK(ms.at(0, 1) == ExtReal(1));
  CHECK(ms.at(0, 2).is_inf());
  CHECK(ms.at(1, 2) == ExtReal(Rat(5, 3)));

  // the flag is always written back out
  json out = metric_to_json(ms);
  CHECK(out.contains("separated"));
  CHECK(metric_from_json(parse(dump_json(out))) == ms);
  CHECK(dump_json(metric_to_json(metric_from_json(parse(dump_json(out))))) ==
        dump_json(out));

  m["separated"] = false;
  CHECK_FALSE(metric_from_json(m).separated);

  m["form"] = "levels";
  REQUIRE_THROWS_WITH(metric_from_json(m), ContainsSubstring("expected \"metric\""));
  m.erase("form");
  REQUIRE_THROWS_WITH(metric_from_json(m), ContainsSubstring("missing field \"form\""));

  json numeric = parse(R"({
    "form": "metric",
    "points": ["x", "y"],
    "dist": {"x|y": 1}
  })");
  REQUIRE_THROWS_WITH(metric_from_json(numeric),
                      ContainsSubstring("rationals only"));

  gen::Rng rng(4242);
  for (int rep = 0; rep < 20; ++rep) {
    MetricSpace r = gen::rand_metric(
        rng, gen::rand_carrier(static_cast<std::size_t>(rng.pick(1, 5))),
        rng.coin(), rng.coin());
    CAPTURE(rep);
    REQUIRE(metric_from_json(parse(dump_json(metric_to_json(r)))) == r);
  }
}

TEST_CASE("morphism files") {
  json target = parse(kTwoPointFile);
  json doc = parse(R"({
    "source": "src.json",
    "target": null,
    "map": {"a": "b", "b": "b"}
  })");
  doc["target"] = target;

  std::map<std::string, json> library{{"src.json", parse(kTwoPointFile)}};
  auto resolve = [&](const std::string& name) -> json {
    auto it = library.find(name);
    if (it == library.end()) throw std::runtime_error("no such file: " + name);
    return it->second;
  };

  MorphismData md = morphism_from_json(doc, resolve);
  CHECK(std::holds_alternative<LevelSpace>(md.source));
  CHECK(md.map.map == std::vector<std::size_t>{1, 1});

  json missing = doc;
  missing["source"] = "gone.json";
  REQUIRE_THROWS_WITH(morphism_from_json(missing, resolve),
                      ContainsSubstring("no such file"));

  library["broken.json"] = parse(kTwoPointFile);
  library["broken.json"].erase("points");
  json nested = doc;
  nested["source"] = "broken.json";
  REQUIRE_THROWS_WITH(morphism_from_json(nested, resolve),
                      ContainsSubstring("source -> broken.json"));

  json partial = doc;
  partial["map"].erase("a");
  REQUIRE_THROWS_WITH(morphism_from_json(partial, resolve),
                      ContainsSubstring("has no image"));

  json stray = doc;
  stray["map"]["a"] = "zz";
  REQUIRE_THROWS_AS(morphism_from_json(stray, resolve), ParseError);

  REQUIRE_THROWS_WITH(morphism_from_json(doc, nullptr),
                      ContainsSubstring("references are not allowed"));
}
