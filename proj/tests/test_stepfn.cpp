#include <catch_amalgamated.hpp>

#include <probmet/stepfn.hpp>

using namespace probmet;

namespace {

DistanceDistribution dd(std::vector<std::pair<const char*, const char*>> js) {
  std::vector<DistanceDistribution::Jump> jumps;
  for (auto& [at, v] : js) jumps.push_back({Rat::parse(at), UnitVal::parse(v)});
  return DistanceDistribution::from_jumps(jumps);
}

LevelFunction lf(std::vector<std::pair<const char*, const char*>> ss) {
  std::vector<LevelFunction::Seg> segs;
  for (auto& [e, v] : ss) segs.push_back({UnitVal::parse(e), ExtReal::parse(v)});
  return LevelFunction::from_segments(segs);
}

}  // namespace

TEST_CASE("distance distributions evaluate left-continuously") {
  DistanceDistribution f = dd({{"2", "1/2"}, {"5", "1"}});
  CHECK(f.eval(ExtReal(0)) == UnitVal::zero());
  CHECK(f.eval(ExtReal(2)) == UnitVal::zero());          // left limit at a jump
  CHECK(f.eval(ExtReal(3)) == UnitVal::parse("1/2"));
  CHECK(f.eval(ExtReal(5)) == UnitVal::parse("1/2"));
  CHECK(f.eval(ExtReal(6)) == UnitVal::one());
  CHECK(f.eval(ExtReal::infinity()) == UnitVal::one());
  CHECK(f.final_value() == UnitVal::one());

  CHECK(f.value_right_of(Rat(2)) == UnitVal::parse("1/2"));
  CHECK(f.value_right_of(Rat(4)) == UnitVal::parse("1/2"));
  CHECK(f.value_right_of(Rat(5)) == UnitVal::one());
  CHECK(f.value_right_of(Rat(0)) == UnitVal::zero());
}

TEST_CASE("distribution canonical form is enforced") {
  CHECK_THROWS_AS(dd({{"2", "1/2"}, {"2", "1"}}), std::invalid_argument);
  CHECK_THROWS_AS(dd({{"2", "1/2"}, {"1", "1"}}), std::invalid_argument);
  CHECK_THROWS_AS(dd({{"2", "3/4"}, {"5", "1/2"}}), std::invalid_argument);

  // zero-height jumps are dropped, not kept
  DistanceDistribution g = dd({{"1", "1/2"}, {"3", "1/2"}, {"4", "1"}});
  CHECK(g.jumps().size() == 2);
  CHECK(g.jumps()[1].at == Rat(4));

  DistanceDistribution z = DistanceDistribution::zero_distance();
  CHECK(z.is_zero_distance());
  CHECK(z.eval(ExtReal(Rat(1, 1000))) == UnitVal::one());

  // a ddf may stop short of 1: mass can escape to infinity
  DistanceDistribution partial = dd({{"1", "1/3"}});
  CHECK(partial.final_value() == UnitVal::parse("1/3"));
  CHECK(partial.eval(ExtReal::infinity()) == UnitVal::one());
}

TEST_CASE("level functions are nonincreasing left-continuous steps") {
  LevelFunction f = lf({{"1/2", "5"}, {"1", "2"}});
  CHECK_THROWS_AS(f.eval(UnitVal::zero()), std::domain_error);
  CHECK(f.eval(UnitVal::parse("1/4")) == ExtReal(5));
  CHECK(f.eval(UnitVal::parse("1/2")) == ExtReal(5));
  CHECK(f.eval(UnitVal::parse("3/4")) == ExtReal(2));
  CHECK(f.eval(UnitVal::one()) == ExtReal(2));
  CHECK(f.sup() == ExtReal(5));
  CHECK(f.at_one() == ExtReal(2));
  CHECK(f.value_right_of(UnitVal::parse("1/2")) == ExtReal(2));
  CHECK(f.value_right_of(UnitVal::zero()) == ExtReal(5));

  CHECK_THROWS_AS(lf({{"1/2", "2"}, {"1", "5"}}), std::invalid_argument);
  CHECK_THROWS_AS(lf({{"1/2", "5"}, {"1/3", "2"}, {"1", "1"}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(lf({{"1/2", "5"}}), std::invalid_argument);  // must end at 1

  // equal consecutive values merge into one segment
  LevelFunction g = lf({{"1/3", "4"}, {"2/3", "4"}, {"1", "1"}});
  CHECK(g.segments().size() == 2);
  CHECK(g.segments()[0].end == UnitVal::parse("2/3"));

  CHECK(LevelFunction::constant(ExtReal(0)).is_zero());
  CHECK(LevelFunction::constant(ExtReal::infinity()).sup().is_inf());
}

TEST_CASE("pointwise lattice operations stay canonical") {
  LevelFunction a = lf({{"1/2", "5"}, {"1", "2"}});
  LevelFunction b = lf({{"1/4", "6"}, {"1", "3"}});

  LevelFunction hi = pointwise_sup({a, b});
  CHECK(hi.eval(UnitVal::parse("1/4")) == ExtReal(6));
  CHECK(hi.eval(UnitVal::parse("1/2")) == ExtReal(5));
  CHECK(hi.eval(UnitVal::parse("3/4")) == ExtReal(3));

  LevelFunction lo = pointwise_min({a, b});
  CHECK(lo.eval(UnitVal::parse("1/4")) == ExtReal(5));
  CHECK(lo.eval(UnitVal::parse("1/2")) == ExtReal(3));
  CHECK(lo.eval(UnitVal::one()) == ExtReal(2));

  // ends of the refinement not needed by the result are merged away
  LevelFunction c = lf({{"1/2", "7"}, {"1", "7"}});
  CHECK(pointwise_sup({c, c}).segments().size() == 1);

  std::vector<UnitVal> ends = common_ends(std::vector<LevelFunction>{a, b});
  CHECK(ends.size() == 3);
  CHECK(ends[0] == UnitVal::parse("1/4"));
  CHECK(ends[2] == UnitVal::one());
}

TEST_CASE("infinite segments combine correctly") {
  LevelFunction f = lf({{"1/3", "inf"}, {"1", "1"}});
  CHECK(f.eval(UnitVal::parse("1/3")).is_inf());
  CHECK(f.eval(UnitVal::parse("2/3")) == ExtReal(1));
  LevelFunction g = LevelFunction::constant(ExtReal(4));
  CHECK(pointwise_sup({f, g}).eval(UnitVal::parse("1/6")).is_inf());
  CHECK(pointwise_min({f, g}).eval(UnitVal::parse("1/6")) == ExtReal(4));
}
