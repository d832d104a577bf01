#include "cvbell/homodyne.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "cvbell/bell.hpp"
#include "cvbell/error.hpp"
#include "cvbell/wigner.hpp"

namespace cvbell {
namespace {

constexpr int kUnknowns = 10;
constexpr std::uint64_t kBootstrapStream = 0x9e3779b97f4a7c15ULL;

// Upper-triangle index pairs in the order of the least-squares unknowns.
constexpr std::array<std::array<int, 2>, kUnknowns> kEntries{{
    {0, 0}, {0, 1}, {0, 2}, {0, 3}, {1, 1}, {1, 2}, {1, 3}, {2, 2}, {2, 3}, {3, 3}}};

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ index));
}

Eigen::Matrix<double, 1, kUnknowns> design_row(const MeasurementSetting& s) {
  const Eigen::Vector4d v = s.direction();
  Eigen::Matrix<double, 1, kUnknowns> row;
  for (int k = 0; k < kUnknowns; ++k) {
    const auto [i, j] = kEntries[k];
    row(k) = (i == j ? 1.0 : 2.0) * v(i) * v(j);
  }
  return row;
}

double mean_square(std::span<const double> xs) {
  double sum = 0.0;
  for (const double x : xs) sum += x * x;
  return sum / static_cast<double>(xs.size());
}

std::vector<std::size_t> counts_of(const QuadratureDataset& ds) {
  std::vector<std::size_t> counts;
  counts.reserve(ds.samples.size());
  for (const auto& s : ds.samples) counts.push_back(s.size());
  return counts;
}

bool same_verdicts(const StateAssessment& a, const StateAssessment& b) {
  if (!a.criteria || !b.criteria) return false;
  for (std::size_t k = 0; k < a.criteria->reports.size(); ++k) {
    if (a.criteria->reports[k].verdict != b.criteria->reports[k].verdict) return false;
  }
  return (a.bell_max > kLocalBound) == (b.bell_max > kLocalBound);
}

}  // namespace

std::string MeasurementSetting::label() const {
  std::string name;
  switch (selector) {
    case ModeSelector::a: name = "a"; break;
    case ModeSelector::b: name = "b"; break;
    case ModeSelector::plus: name = "plus"; break;
    case ModeSelector::minus: name = "minus"; break;
  }
  if ((selector == ModeSelector::plus || selector == ModeSelector::minus) &&
      phase_b_offset != 0.0) {
    name += "/q";
  }
  return name;
}

Eigen::Vector4d MeasurementSetting::direction() const {
  const double ca = std::cos(phase);
  const double sa = std::sin(phase);
  const double cb = std::cos(phase + phase_b_offset);
  const double sb = std::sin(phase + phase_b_offset);
  switch (selector) {
    case ModeSelector::a: return {ca, sa, 0.0, 0.0};
    case ModeSelector::b: return {0.0, 0.0, ca, sa};
    case ModeSelector::plus: return Eigen::Vector4d(ca, sa, cb, sb) / std::numbers::sqrt2;
    case ModeSelector::minus: return Eigen::Vector4d(ca, sa, -cb, -sb) / std::numbers::sqrt2;
  }
  return Eigen::Vector4d::Zero();
}

std::vector<MeasurementSetting> default_settings() {
  std::vector<MeasurementSetting> out;
  for (const ModeSelector sel :
       {ModeSelector::a, ModeSelector::b, ModeSelector::plus, ModeSelector::minus}) {
    for (const double phase : {0.0, std::numbers::pi / 4.0, std::numbers::pi / 2.0}) {
      out.push_back({sel, phase, 0.0});
    }
  }
  out.push_back({ModeSelector::plus, 0.0, std::numbers::pi / 2.0});
  out.push_back({ModeSelector::minus, 0.0, std::numbers::pi / 2.0});
  return out;
}

double setting_variance(const CovarianceMatrix& cm, const MeasurementSetting& s) {
  const Eigen::Vector4d v = s.direction();
  return v.dot(cm.entries() * v);
}

QuadratureDataset sample_quadratures(const CovarianceMatrix& cm,
                                     std::span<const MeasurementSetting> settings,
                                     std::size_t samples_per_setting, std::uint64_t seed,
                                     Tolerance tol) {
  if (!is_physical(cm, tol).physical) {
    throw DomainError("cannot sample quadratures of an unphysical state");
  }
  if (samples_per_setting < 2) {
    throw DomainError(fmt::format("need at least 2 samples per setting (got {})", samples_per_setting));
  }
  QuadratureDataset ds;
  ds.settings.assign(settings.begin(), settings.end());
  ds.sample_count = samples_per_setting;
  ds.seed = seed;
  ds.samples.resize(settings.size());
  for (std::size_t k = 0; k < settings.size(); ++k) {
    auto engine = substream(seed, k);
    std::normal_distribution<double> normal(0.0, std::sqrt(setting_variance(cm, settings[k])));
    auto& samples = ds.samples[k];
    samples.resize(samples_per_setting);
    for (double& x : samples) x = normal(engine);
  }
  return ds;
}

void write_dataset_csv(std::ostream& out, const QuadratureDataset& ds) {
  out << "setting,theta,sample\n";
  for (std::size_t k = 0; k < ds.settings.size(); ++k) {
    const std::string label = ds.settings[k].label();
    const double theta = ds.settings[k].phase;
    for (const double x : ds.samples[k]) {
      fmt::print(out, "{},{:.12g},{:.12g}\n", label, theta, x);
    }
  }
}

CovarianceEstimate estimate_from_variances(std::span<const MeasurementSetting> settings,
                                           std::span<const double> variances,
                                           std::span<const std::size_t> counts, Tolerance tol) {
  if (variances.size() != settings.size() || counts.size() != settings.size()) {
    throw std::invalid_argument("settings, variances and counts must have equal length");
  }
  const auto rows = static_cast<Eigen::Index>(settings.size());
  Eigen::MatrixXd design(rows, kUnknowns);
  Eigen::VectorXd observed(rows);
  Eigen::VectorXd noise(rows);
  for (Eigen::Index k = 0; k < rows; ++k) {
    const auto idx = static_cast<std::size_t>(k);
    design.row(k) = design_row(settings[idx]);
    observed(k) = variances[idx];
    noise(k) = counts[idx] > 0 ? 2.0 * variances[idx] * variances[idx] /
                                     static_cast<double>(counts[idx])
                               : 0.0;
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  qr.setThreshold(1e-10);
  if (qr.rank() < kUnknowns) {
    throw Underdetermined(fmt::format(
        "measurement settings determine only {} of the {} covariance entries", qr.rank(),
        kUnknowns));
  }
  const Eigen::VectorXd solution = qr.solve(observed);
  const Eigen::MatrixXd normal_inverse = (design.transpose() * design).inverse();
  const Eigen::MatrixXd pseudo_inverse = normal_inverse * design.transpose();
  const Eigen::MatrixXd covariance =
      pseudo_inverse * noise.asDiagonal() * pseudo_inverse.transpose();

  CovarianceEstimate est;
  for (int k = 0; k < kUnknowns; ++k) {
    const auto [i, j] = kEntries[k];
    est.entries(i, j) = est.entries(j, i) = solution(k);
    est.standard_errors(i, j) = est.standard_errors(j, i) = std::sqrt(covariance(k, k));
  }
  est.physical = is_physical(CovarianceMatrix(est.entries), tol).physical;
  return est;
}

CovarianceEstimate estimate_cm(const QuadratureDataset& ds, Tolerance tol) {
  std::vector<double> variances;
  variances.reserve(ds.samples.size());
  for (const auto& s : ds.samples) variances.push_back(mean_square(s));
  const auto counts = counts_of(ds);
  return estimate_from_variances(ds.settings, variances, counts, tol);
}

StateAssessment assess(const CovarianceMatrix& cm, Tolerance tol) {
  StateAssessment out;
  out.physical = is_physical(cm, tol).physical;
  try {
    out.standard_form = standard_form(cm, tol);
  } catch (const InconsistentInvariants&) {
    out.bell_max = out.bell_intensity = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  out.criteria = classify(*out.standard_form);
  try {
    const NumericBellMax max =
        bell_max_numeric(CovarianceMatrix::from_standard_form(*out.standard_form));
    out.bell_max = max.value;
    out.bell_intensity = max.intensity;
  } catch (const SingularState&) {
    out.bell_max = out.bell_intensity = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

EndToEndReport end_to_end(const StandardForm& truth, std::size_t samples_per_setting,
                          std::uint64_t seed, int bootstrap_replicates, Tolerance tol) {
  const CovarianceMatrix true_cm = CovarianceMatrix::from_standard_form(truth);
  if (!is_physical(true_cm, tol).physical) {
    throw DomainError("end-to-end simulation requires a physical state");
  }
  const auto settings = default_settings();
  const QuadratureDataset ds = sample_quadratures(true_cm, settings, samples_per_setting, seed, tol);

  EndToEndReport report;
  report.sample_count = samples_per_setting;
  report.seed = seed;
  report.truth = assess(true_cm, tol);
  report.covariance = estimate_cm(ds, tol);
  report.estimate = assess(report.covariance.matrix(), tol);
  report.bootstrap_replicates = bootstrap_replicates;
  report.verdicts_agree = same_verdicts(report.truth, report.estimate);

  const auto counts = counts_of(ds);
  std::vector<double> replicate_values;
  std::vector<double> variances(settings.size());
  for (int r = 0; r < bootstrap_replicates; ++r) {
    for (std::size_t k = 0; k < settings.size(); ++k) {
      auto engine = substream(seed ^ kBootstrapStream,
                              static_cast<std::uint64_t>(r) * settings.size() + k);
      const auto& samples = ds.samples[k];
      std::uniform_int_distribution<std::size_t> pick(0, samples.size() - 1);
      double sum = 0.0;
      for (std::size_t i = 0; i < samples.size(); ++i) {
        const double x = samples[pick(engine)];
        sum += x * x;
      }
      variances[k] = sum / static_cast<double>(samples.size());
    }
    const CovarianceEstimate replicate = estimate_from_variances(settings, variances, counts, tol);
    const double value = assess(replicate.matrix(), tol).bell_max;
    if (std::isfinite(value)) replicate_values.push_back(value);
  }
  if (replicate_values.size() >= 2) {
    double mean = 0.0;
    for (const double v : replicate_values) mean += v;
    mean /= static_cast<double>(replicate_values.size());
    double ss = 0.0;
    for (const double v : replicate_values) ss += (v - mean) * (v - mean);
    report.bell_max_std_error = std::sqrt(ss / static_cast<double>(replicate_values.size() - 1));
  } else {
    report.bell_max_std_error = std::numeric_limits<double>::quiet_NaN();
  }
  return report;
}

}  // namespace cvbell
