// Tour of the library on a 3-point space whose validity depends on the
// t-norm: the triangle a--b--c is too tight for min but fine for the two
// weaker norms.

#include <iostream>

#include <probmet/probmet.hpp>

using namespace probmet;

static LevelSpace tight_triangle(TNorm t) {
  Carrier c{{"a", "b", "c"}};
  LevelSpace s = LevelSpace::make(c, t, true);
  LevelFunction leg = LevelFunction::from_segments(
      {{UnitVal::parse("1/2"), ExtReal::parse("2")},
       {UnitVal::one(), ExtReal::parse("1")}});
  LevelFunction far = LevelFunction::from_segments(
      {{UnitVal::parse("1/2"), ExtReal::parse("4")},
       {UnitVal::parse("3/4"), ExtReal::parse("5/2")},
       {UnitVal::one(), ExtReal::parse("2")}});
  s.dist.at(0, 1) = leg;
  s.dist.at(1, 2) = leg;
  s.dist.at(0, 2) = far;
  return s;
}

int main() {
  for (TNorm t : {TNorm::Minimum, TNorm::Product, TNorm::Lukasiewicz}) {
    LevelSpace s = tight_triangle(t);
    Report rep = validate_level_space(s);
    std::cout << "== " << tnorm_name(t) << " ==\n" << rep.render() << "\n";
    if (!rep.pass) continue;

    DdfSpace d = phi(s);
    std::cout << "alpha(a,c) as a ddf: ";
    for (const auto& j : d.fn(0, 2).jumps())
      std::cout << "(" << j.at.str() << " -> " << j.value.str() << ") ";
    std::cout << "\nround trip intact: " << (delta(d) == s ? "yes" : "no")
              << "\n";

    Coreflection co = coreflect(s);
    Reflection re = reflect(s);
    std::cout << "metric envelope  d(a,c) = " << co.space.at(0, 2).str()
              << "\nmetric quotient  d(a,c) = "
              << re.space.at(re.unit.apply(0), re.unit.apply(2)).str()
              << "\n\n";
  }
  return 0;
}
