#include "cvbell/channel.hpp"

#include <cmath>

#include <fmt/format.h>

#include "cvbell/criteria.hpp"
#include "cvbell/error.hpp"
#include "cvbell/optimize.hpp"

namespace cvbell {
namespace {

constexpr double kDescentStep = 0.01;
constexpr int kMonotonicityPoints = 50;
constexpr int kDuanGridPoints = 100;
constexpr double kThresholdTolerance = 1e-9;

void require_pure_ancestor(const StandardForm& sf, Tolerance tol) {
  if (!is_pure_symmetric(sf, tol)) {
    throw DomainError(fmt::format("ancestor must be a pure symmetric state (got n={}, c1={}, c2={})",
                                  sf.n, sf.c1, sf.c2));
  }
}

double evolved_bell_max(const StandardForm& ancestor, double t, Tolerance tol) {
  const StandardForm sf = apply_loss(ancestor, t, tol);
  return bell_max(sf.n, sf.c1);
}

}  // namespace

bool is_pure_symmetric(const StandardForm& sf, Tolerance tol) {
  if (!sf.is_symmetric(tol) || sf.c1 < 0.0) return false;
  const CovarianceMatrix cm = CovarianceMatrix::from_standard_form(sf);
  if (!is_physical(cm, tol).physical) return false;
  return std::abs(purity(cm, tol) - 1.0) <= tol.relative;
}

StandardForm apply_loss(const StandardForm& sf, double transmittivity, Tolerance tol) {
  if (!(transmittivity >= 0.0 && transmittivity <= 1.0)) {
    throw DomainError(fmt::format("transmittivity must lie in [0, 1] (got {})", transmittivity));
  }
  if (!sf.is_symmetric(tol)) {
    throw UnsupportedShape("loss channel is defined on the symmetric family only");
  }
  const double n = (1.0 - transmittivity) / 2.0 + transmittivity * sf.n;
  const double c = transmittivity * sf.c1;
  return StandardForm{n, n, c, -c};
}

std::vector<ChannelSweepRow> sweep(const StandardForm& ancestor,
                                   std::span<const double> transmittivities, Tolerance tol) {
  require_pure_ancestor(ancestor, tol);
  std::vector<ChannelSweepRow> rows;
  rows.reserve(transmittivities.size());
  for (const double t : transmittivities) {
    if (!(t > 0.0 && t <= 1.0)) {
      throw DomainError(fmt::format("sweep transmittivities must lie in (0, 1] (got {})", t));
    }
    const StandardForm sf = apply_loss(ancestor, t, tol);
    ChannelSweepRow row{};
    row.transmittivity = t;
    row.n = sf.n;
    row.c = sf.c1;
    row.mu_s = single_mode_purity(sf, tol);
    row.correlation = correlation_coefficient(sf, tol);
    row.phs_witness = phs_check(sf).witness;
    row.duan_witness = duan_check(sf).witness;
    row.reid_witness = reid_check(sf, InferenceDirection::a_infers_b).witness;
    row.bell_max = bell_max(sf.n, sf.c1);
    row.region = classify_region(row.mu_s, row.correlation, tol).region;
    rows.push_back(row);
  }
  return rows;
}

std::optional<double> bell_threshold(const StandardForm& ancestor, Tolerance tol) {
  require_pure_ancestor(ancestor, tol);
  auto excess = [&](double t) { return evolved_bell_max(ancestor, t, tol) - kLocalBound; };
  if (!(excess(1.0) > 0.0)) return std::nullopt;

  double lower = 1.0;
  for (int k = 1; k < static_cast<int>(1.0 / kDescentStep); ++k) {
    const double t = 1.0 - k * kDescentStep;
    if (excess(t) < 0.0) {
      lower = t;
      break;
    }
  }
  if (lower == 1.0) {
    throw PreconditionViolation("Bell value stays above 2 down to T = 0.01; no bracket found");
  }

  double previous = excess(lower);
  for (int k = 1; k < kMonotonicityPoints; ++k) {
    const double t = lower + (1.0 - lower) * k / (kMonotonicityPoints - 1);
    const double current = excess(t);
    if (current < previous) {
      throw PreconditionViolation(fmt::format(
          "Bell value is not monotone in T on [{}, 1]; single crossing not guaranteed", lower));
    }
    previous = current;
  }
  return optimize::bisect(excess, lower, 1.0, kThresholdTolerance);
}

std::optional<double> duan_threshold(const StandardForm& ancestor, Tolerance tol) {
  require_pure_ancestor(ancestor, tol);
  auto witness = [&](double t) { return duan_check(apply_loss(ancestor, t, tol)).witness; };
  const bool entangled_at_one = witness(1.0) < 0.0;
  double previous_t = 1.0;
  for (int k = kDuanGridPoints - 1; k >= 1; --k) {
    const double t = static_cast<double>(k) / kDuanGridPoints;
    if ((witness(t) < 0.0) != entangled_at_one) {
      return optimize::bisect(witness, t, previous_t, kThresholdTolerance);
    }
    previous_t = t;
  }
  return std::nullopt;
}

}  // namespace cvbell
