#pragma once

// Closed-form displaced-parity CHSH function for the symmetric family
// (n, n, c, -c), with displacements 0 and sqrt(I) on mode a and 0 and
// -sqrt(I) on mode b. Local hidden-variable models obey |B| <= 2.

#include <string_view>
#include <vector>

#include "cvbell/gaussian_state.hpp"

namespace cvbell {

inline constexpr double kLocalBound = 2.0;

struct BellEvaluation {
  double displacement_intensity = 0.0;
  double value = 0.0;
  bool violates = false;  // value > 2
};

// [1 + 2 exp(-n I / D) - exp(-2 (n + c) I / D)] / (4 D), D = n^2 - c^2.
// Throws SingularState when |c| >= n and DomainError for n < 1/2 or I < 0.
[[nodiscard]] double bell_function(double intensity, double n, double c);
[[nodiscard]] BellEvaluation evaluate_bell(double intensity, double n, double c);

// Stationary point D / (n + 2c) * ln((n + c) / n) of bell_function in I.
// Requires 0 <= c < n; negative c throws UnsupportedShape (flip the
// displacement signs and pass |c|).
[[nodiscard]] double optimal_displacement(double n, double c);

// bell_function at the optimal displacement, written with r = (n + c) / n:
// [1 + 2 r^(-n / (n + 2c)) - r^(-2 (n + c) / (n + 2c))] / (4 D).
[[nodiscard]] double bell_max(double n, double c);
[[nodiscard]] BellEvaluation maximize_bell(double n, double c);

// The maximum in terms of single-mode purity mu_s = 1/(2n) and correlation
// C_ab = c/n:
//   mu_s^2 / (1 - C^2) * [1 + (1 + 2C) (1 + C)^(-2 (1 + C) / (1 + 2C))].
// Throws DomainError when mu_s^2 > 1 - C^2 beyond tolerance.
[[nodiscard]] double bell_max_from_purity(double mu_s, double correlation, Tolerance tol = {});

struct RegionBoundaries {
  double separable;   // mu_D = 1 - C
  double bell;        // mu_B, where the maximum equals 2
  double physical;    // mu_P = sqrt(1 - C^2)
};

[[nodiscard]] RegionBoundaries region_boundaries(double correlation);

enum class Region { I, II, III, unphysical };
[[nodiscard]] std::string_view to_string(Region r);

struct RegionVerdict {
  double mu_s = 0.0;
  double correlation = 0.0;
  Region region = Region::unphysical;
  RegionBoundaries boundaries{};
};

// I: mu_s <= mu_D (separable, local). II: mu_D < mu_s <= mu_B (entangled,
// local). III: mu_B < mu_s <= mu_P (entangled, violates). Beyond mu_P the
// point is unphysical. Boundary points belong to the lower region; the mu_P
// comparison carries the relative tolerance so pure points stay physical.
[[nodiscard]] RegionVerdict classify_region(double mu_s, double correlation, Tolerance tol = {});

struct RegionGridPoint {
  RegionVerdict verdict;
  double bell_max;  // NaN for unphysical points
};

// resolution x resolution nodes mu_s = (i + 1) / R, C = j / R, ordered by
// mu_s first and then C.
[[nodiscard]] std::vector<RegionGridPoint> region_grid(int resolution, Tolerance tol = {});

}  // namespace cvbell
