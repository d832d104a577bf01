#include "cvbell/criteria.hpp"

#include <cmath>

namespace cvbell {

std::string_view to_string(Criterion c) {
  switch (c) {
    case Criterion::phs: return "PHS";
    case Criterion::duan: return "Duan";
    case Criterion::reid_ab: return "Reid-AB";
    case Criterion::reid_ba: return "Reid-BA";
  }
  return "unknown";
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::separable_consistent: return "separable-consistent";
    case Verdict::entangled: return "entangled";
    case Verdict::epr_steerable: return "epr-steerable";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

CriterionReport phs_check(const StandardForm& sf) {
  const double nm = sf.n * sf.m;
  const double witness = sf.n * sf.n + sf.m * sf.m + 2.0 * std::abs(sf.c1 * sf.c2) -
                         4.0 * (nm - sf.c1 * sf.c1) * (nm - sf.c2 * sf.c2);
  constexpr double threshold = 0.25;
  return {Criterion::phs, witness, threshold,
          witness <= threshold ? Verdict::separable_consistent : Verdict::entangled};
}

CriterionReport duan_check(const StandardForm& sf) {
  const double witness =
      std::sqrt((2.0 * sf.n - 1.0) * (2.0 * sf.m - 1.0)) - (sf.c1 - sf.c2);
  constexpr double threshold = 0.0;
  return {Criterion::duan, witness, threshold,
          witness < threshold ? Verdict::entangled : Verdict::inconclusive};
}

CriterionReport reid_check(const StandardForm& sf, InferenceDirection direction) {
  const double nm = sf.n * sf.m;
  const double lead = direction == InferenceDirection::a_infers_b ? sf.n * sf.n : sf.m * sf.m;
  const double witness = lead * (1.0 - sf.c1 * sf.c1 / nm) * (1.0 - sf.c2 * sf.c2 / nm);
  constexpr double threshold = 0.25;
  const Criterion name =
      direction == InferenceDirection::a_infers_b ? Criterion::reid_ab : Criterion::reid_ba;
  return {name, witness, threshold,
          witness < threshold ? Verdict::epr_steerable : Verdict::inconclusive};
}

Classification classify(const StandardForm& sf) {
  Classification out{{phs_check(sf), duan_check(sf),
                      reid_check(sf, InferenceDirection::a_infers_b),
                      reid_check(sf, InferenceDirection::b_infers_a)},
                     true};
  const bool steerable = out.reports[2].verdict == Verdict::epr_steerable ||
                         out.reports[3].verdict == Verdict::epr_steerable;
  out.hierarchy_consistent = !steerable || out.reports[0].verdict == Verdict::entangled;
  return out;
}

}  // namespace cvbell
