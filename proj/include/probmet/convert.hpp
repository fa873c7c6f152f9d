#pragma once

#include "probmet/space.hpp"

namespace probmet {

/// Level family of one distribution function:
///   d_lambda = inf { finite gamma : phi(gamma) > 1 - lambda },
/// which for a step phi is the smallest jump point whose value exceeds
/// 1 - lambda, or infinity when no finite argument reaches that mass.
/// Jump points become segment values and jump values become segment ends
/// through lambda = 1 - value, so the result is canonical by construction.
inline LevelFunction ddf_to_level(const DistanceDistribution& f) {
  const auto& js = f.jumps();
  std::vector<LevelFunction::Seg> segs;
  if (!f.final_value().is_one())
    segs.push_back({f.final_value().one_minus(), ExtReal::infinity()});
  for (std::size_t i = js.size(); i-- > 1;)
    segs.push_back({js[i - 1].value.one_minus(), ExtReal(js[i].at)});
  if (!js.empty()) segs.push_back({UnitVal::one(), ExtReal(js[0].at)});
  if (segs.empty()) segs.push_back({UnitVal::one(), ExtReal::infinity()});
  return LevelFunction::from_segments(std::move(segs));
}

/// Distribution function of one level family member:
///   beta(gamma) = sup { 1 - lambda : d_lambda < gamma },  beta(inf) = 1.
/// Finite segment values become jump points and segment ends become jump
/// values through value = 1 - end; an infinite top segment becomes the
/// implicit jump at infinity.
inline DistanceDistribution level_to_ddf(const LevelFunction& d) {
  const auto& segs = d.segments();
  std::vector<DistanceDistribution::Jump> jumps;
  for (std::size_t i = segs.size(); i-- > 0;) {
    if (segs[i].value.is_inf()) break;  // only the first segment can be inf
    UnitVal after = (i == 0) ? UnitVal::one() : segs[i - 1].end.one_minus();
    jumps.push_back({segs[i].value.finite(), after});
  }
  return DistanceDistribution::from_jumps(std::move(jumps));
}

/// Space-level conversion to the level presentation. Validity of the input
/// is a precondition (checked by the validators, not re-run here); on valid
/// input the two conversions are mutually inverse identities.
inline LevelSpace delta(const DdfSpace& s) {
  LevelSpace out = LevelSpace::make(s.carrier, s.tnorm, s.separated);
  const std::size_t n = s.carrier.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      out.dist.at(i, j) = ddf_to_level(s.fn(i, j));
  return out;
}

/// Space-level conversion to the distribution presentation.
inline DdfSpace phi(const LevelSpace& s) {
  DdfSpace out = DdfSpace::make(s.carrier, s.tnorm, s.separated);
  const std::size_t n = s.carrier.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      out.dist.at(i, j) = level_to_ddf(s.fn(i, j));
  return out;
}

}  // namespace probmet
