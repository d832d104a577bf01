#pragma once

#include <array>
#include <string_view>

#include "cvbell/gaussian_state.hpp"

namespace cvbell {

enum class Criterion { phs, duan, reid_ab, reid_ba };
enum class Verdict { separable_consistent, entangled, epr_steerable, inconclusive };
enum class InferenceDirection { a_infers_b, b_infers_a };

[[nodiscard]] std::string_view to_string(Criterion c);
[[nodiscard]] std::string_view to_string(Verdict v);

// Witness at the threshold maps to the non-entangled verdict; the raw
// witness is kept so callers can apply their own margin.
struct CriterionReport {
  Criterion name;
  double witness;
  double threshold;
  Verdict verdict;
};

// Peres-Horodecki-Simon: separable iff
// n^2 + m^2 + 2|c1 c2| - 4 (nm - c1^2)(nm - c2^2) <= 1/4.
[[nodiscard]] CriterionReport phs_check(const StandardForm& sf);

// Duan total-variance witness sqrt((2n-1)(2m-1)) - (c1 - c2), entangled when
// negative. Non-negative values are inconclusive.
[[nodiscard]] CriterionReport duan_check(const StandardForm& sf);

// Reid EPR inference variance; steerable below 1/4.
[[nodiscard]] CriterionReport reid_check(const StandardForm& sf, InferenceDirection direction);

struct Classification {
  std::array<CriterionReport, 4> reports;  // PHS, Duan, Reid A->B, Reid B->A
  // Reid-steerable (either direction) implies PHS-entangled.
  bool hierarchy_consistent;
};

[[nodiscard]] Classification classify(const StandardForm& sf);

}  // namespace cvbell
