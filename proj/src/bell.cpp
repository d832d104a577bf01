#include "cvbell/bell.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "cvbell/error.hpp"

namespace cvbell {
namespace {

void require_state(double n, double c) {
  if (!(n >= kVacuumVariance)) {
    throw DomainError(fmt::format("Bell function requires n >= 1/2 (got {})", n));
  }
  if (!(std::abs(c) < n)) {
    throw SingularState(fmt::format("covariance matrix is singular for |c| >= n (n={}, c={})", n, c));
  }
}

void require_nonnegative_correlation(double n, double c) {
  require_state(n, c);
  if (c < 0.0) {
    throw UnsupportedShape(fmt::format(
        "Bell maximization expects c >= 0 after sign normalization (got c={})", c));
  }
}

double purity_bracket(double correlation) {
  const double exponent = -2.0 * (1.0 + correlation) / (1.0 + 2.0 * correlation);
  return 1.0 + (1.0 + 2.0 * correlation) * std::pow(1.0 + correlation, exponent);
}

void require_correlation(double correlation) {
  if (!(correlation >= 0.0 && correlation < 1.0)) {
    throw DomainError(fmt::format("correlation coefficient must lie in [0, 1) (got {})", correlation));
  }
}

}  // namespace

double bell_function(double intensity, double n, double c) {
  require_state(n, c);
  if (!(intensity >= 0.0)) {
    throw DomainError(fmt::format("displacement intensity must be >= 0 (got {})", intensity));
  }
  const double d = (n - c) * (n + c);
  return (1.0 + 2.0 * std::exp(-n * intensity / d) - std::exp(-2.0 * (n + c) * intensity / d)) /
         (4.0 * d);
}

BellEvaluation evaluate_bell(double intensity, double n, double c) {
  const double value = bell_function(intensity, n, c);
  return {intensity, value, value > kLocalBound};
}

double optimal_displacement(double n, double c) {
  require_nonnegative_correlation(n, c);
  const double d = (n - c) * (n + c);
  return d / (n + 2.0 * c) * std::log1p(c / n);
}

double bell_max(double n, double c) {
  require_nonnegative_correlation(n, c);
  const double d = (n - c) * (n + c);
  const double log_r = std::log1p(c / n);
  const double middle = std::exp(-n / (n + 2.0 * c) * log_r);
  const double last = std::exp(-2.0 * (n + c) / (n + 2.0 * c) * log_r);
  return (1.0 + 2.0 * middle - last) / (4.0 * d);
}

BellEvaluation maximize_bell(double n, double c) {
  const double value = bell_max(n, c);
  return {optimal_displacement(n, c), value, value > kLocalBound};
}

double bell_max_from_purity(double mu_s, double correlation, Tolerance tol) {
  require_correlation(correlation);
  if (!(mu_s > 0.0 && mu_s <= 1.0)) {
    throw DomainError(fmt::format("single-mode purity must lie in (0, 1] (got {})", mu_s));
  }
  const double headroom = (1.0 - correlation) * (1.0 + correlation);
  if (mu_s * mu_s > headroom * (1.0 + tol.relative)) {
    throw DomainError(fmt::format("unphysical point: mu_s^2 = {} exceeds 1 - C^2 = {}",
                                  mu_s * mu_s, headroom));
  }
  return mu_s * mu_s / headroom * purity_bracket(correlation);
}

RegionBoundaries region_boundaries(double correlation) {
  require_correlation(correlation);
  const double headroom = (1.0 - correlation) * (1.0 + correlation);
  return {1.0 - correlation, std::sqrt(2.0 * headroom / purity_bracket(correlation)),
          std::sqrt(headroom)};
}

std::string_view to_string(Region r) {
  switch (r) {
    case Region::I: return "I";
    case Region::II: return "II";
    case Region::III: return "III";
    case Region::unphysical: return "unphysical";
  }
  return "unknown";
}

RegionVerdict classify_region(double mu_s, double correlation, Tolerance tol) {
  if (!(mu_s > 0.0)) {
    throw DomainError(fmt::format("single-mode purity must be positive (got {})", mu_s));
  }
  RegionVerdict v{mu_s, correlation, Region::unphysical, region_boundaries(correlation)};
  const double headroom = (1.0 - correlation) * (1.0 + correlation);
  if (mu_s * mu_s > headroom * (1.0 + tol.relative)) {
    v.region = Region::unphysical;
  } else if (mu_s <= v.boundaries.separable) {
    v.region = Region::I;
  } else if (mu_s <= v.boundaries.bell) {
    v.region = Region::II;
  } else {
    v.region = Region::III;
  }
  return v;
}

std::vector<RegionGridPoint> region_grid(int resolution, Tolerance tol) {
  if (resolution < 2) {
    throw DomainError(fmt::format("grid resolution must be >= 2 (got {})", resolution));
  }
  std::vector<RegionGridPoint> grid;
  grid.reserve(static_cast<std::size_t>(resolution) * static_cast<std::size_t>(resolution));
  for (int i = 0; i < resolution; ++i) {
    const double mu_s = static_cast<double>(i + 1) / resolution;
    for (int j = 0; j < resolution; ++j) {
      const double correlation = static_cast<double>(j) / resolution;
      RegionGridPoint point{classify_region(mu_s, correlation, tol),
                            std::numeric_limits<double>::quiet_NaN()};
      if (point.verdict.region != Region::unphysical) {
        point.bell_max = bell_max_from_purity(mu_s, correlation, tol);
      }
      grid.push_back(point);
    }
  }
  return grid;
}

}  // namespace cvbell
