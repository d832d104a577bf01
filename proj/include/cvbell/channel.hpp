#pragma once

// Loss modeled as a beam splitter of transmittivity T mixing each arm of a
// symmetric state with vacuum: n_T = (1 - T)/2 + T n, c_T = T c.

#include <optional>
#include <span>
#include <vector>

#include "cvbell/bell.hpp"
#include "cvbell/gaussian_state.hpp"

namespace cvbell {

struct ChannelSweepRow {
  double transmittivity;
  double n;
  double c;
  double mu_s;
  double correlation;
  double phs_witness;
  double duan_witness;
  double reid_witness;
  double bell_max;
  Region region;
};

// Requires a symmetric form and T in [0, 1].
[[nodiscard]] StandardForm apply_loss(const StandardForm& sf, double transmittivity,
                                      Tolerance tol = {});

// One row per grid value (kept in the given order). Requires a pure symmetric
// ancestor and every T in (0, 1].
[[nodiscard]] std::vector<ChannelSweepRow> sweep(const StandardForm& ancestor,
                                                 std::span<const double> transmittivities,
                                                 Tolerance tol = {});

// Transmittivity below which the maximal Bell value of the evolved state
// drops to 2, or nullopt when the ancestor never violates. The bracket
// [T_lo, 1] is found by stepping down from 1 in steps of 0.01 and is checked
// monotone on 50 points before bisecting to 1e-9.
[[nodiscard]] std::optional<double> bell_threshold(const StandardForm& ancestor,
                                                   Tolerance tol = {});

// Transmittivity at which the Duan verdict of the evolved state changes,
// located on a 100-point grid and refined by bisection; nullopt when the
// verdict is the same for all T in (0, 1], which is always the case since
// the witness scales linearly in T.
[[nodiscard]] std::optional<double> duan_threshold(const StandardForm& ancestor,
                                                   Tolerance tol = {});

// True when the symmetric state has unit purity within tolerance.
[[nodiscard]] bool is_pure_symmetric(const StandardForm& sf, Tolerance tol = {});

}  // namespace cvbell
