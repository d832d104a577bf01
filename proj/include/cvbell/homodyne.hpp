#pragma once

// Synthetic single-homodyne acquisition and covariance reconstruction.
//
// Each measurement setting reads one rotated quadrature
// X_theta = cos(theta) X + sin(theta) Y of mode a, of mode b, or of the
// balanced combinations (X_{a,theta} +- X_{b,theta_b}) / sqrt2. Its variance
// is a linear functional of the ten independent covariance entries, so any
// set of settings whose functionals span those entries determines the
// matrix by least squares.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cvbell/criteria.hpp"
#include "cvbell/gaussian_state.hpp"

namespace cvbell {

enum class ModeSelector { a, b, plus, minus };

struct MeasurementSetting {
  ModeSelector selector = ModeSelector::a;
  double phase = 0.0;
  // Extra phase of the mode-b quadrature in the plus/minus combinations.
  double phase_b_offset = 0.0;

  // "a", "b", "plus", "minus", with "/q" appended when mode b is read a
  // quarter period ahead.
  [[nodiscard]] std::string label() const;
  // Unit vector v with Var = v^T sigma v.
  [[nodiscard]] Eigen::Vector4d direction() const;
};

// Phases {0, pi/4, pi/2} on a, b, plus and minus, plus one plus/minus pair
// with mode b a quarter period ahead of mode a. The last pair is what
// separates <X_a Y_b> from <Y_a X_b>.
[[nodiscard]] std::vector<MeasurementSetting> default_settings();

[[nodiscard]] double setting_variance(const CovarianceMatrix& cm, const MeasurementSetting& s);

struct QuadratureDataset {
  std::vector<MeasurementSetting> settings;
  std::vector<std::vector<double>> samples;  // one array per setting
  std::size_t sample_count = 0;
  std::uint64_t seed = 0;
};

// Deterministic in (seed, settings, N); setting k draws from its own stream
// derived from (seed, k). Throws DomainError for unphysical input or N < 2.
[[nodiscard]] QuadratureDataset sample_quadratures(const CovarianceMatrix& cm,
                                                   std::span<const MeasurementSetting> settings,
                                                   std::size_t samples_per_setting,
                                                   std::uint64_t seed, Tolerance tol = {});

// CSV with header setting,theta,sample.
void write_dataset_csv(std::ostream& out, const QuadratureDataset& ds);

struct CovarianceEstimate {
  Eigen::Matrix4d entries;
  Eigen::Matrix4d standard_errors;
  bool physical = false;

  [[nodiscard]] CovarianceMatrix matrix() const { return CovarianceMatrix(entries); }
};

// Least-squares reconstruction from per-setting variances. Standard errors
// propagate var(Var_k) = 2 Var_k^2 / N_k through the solve. Throws
// Underdetermined when the settings do not span all ten entries.
[[nodiscard]] CovarianceEstimate estimate_from_variances(
    std::span<const MeasurementSetting> settings, std::span<const double> variances,
    std::span<const std::size_t> counts, Tolerance tol = {});

// Zero-mean variance estimator sum(x^2) / N per setting, then
// estimate_from_variances. The estimate is never projected onto the physical
// cone; `physical` reports whether it lies there.
[[nodiscard]] CovarianceEstimate estimate_cm(const QuadratureDataset& ds, Tolerance tol = {});

struct StateAssessment {
  std::optional<StandardForm> standard_form;  // empty when the reduction fails
  bool physical = false;
  std::optional<Classification> criteria;
  double bell_max = 0.0;   // numeric maximum of the four-point combination
  double bell_intensity = 0.0;
};

struct EndToEndReport {
  std::size_t sample_count = 0;
  std::uint64_t seed = 0;
  StateAssessment truth;
  StateAssessment estimate;
  CovarianceEstimate covariance;
  double bell_max_std_error = 0.0;  // bootstrap standard deviation
  int bootstrap_replicates = 0;
  bool verdicts_agree = false;
};

// Bell value and criteria of a covariance matrix after reduction to standard
// form. Bell value is NaN when the reduced matrix is not positive definite.
[[nodiscard]] StateAssessment assess(const CovarianceMatrix& cm, Tolerance tol = {});

inline constexpr int kDefaultBootstrapReplicates = 20;

// Sample, reconstruct, and assess; error bar on the Bell value from
// nonparametric bootstrap over each setting's samples.
[[nodiscard]] EndToEndReport end_to_end(const StandardForm& truth, std::size_t samples_per_setting,
                                        std::uint64_t seed,
                                        int bootstrap_replicates = kDefaultBootstrapReplicates,
                                        Tolerance tol = {});

}  // namespace cvbell
