#include "cvbell/wigner.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "cvbell/error.hpp"
#include "cvbell/optimize.hpp"

namespace cvbell {
namespace {

constexpr double kMinDeterminant = 1e-300;
constexpr double kMinReciprocalCondition = 1e-14;
constexpr double kSearchTolerance = 1e-12;

// The four CHSH terms as (sign, unit displacement in quadrature space).
struct BellTerm {
  double sign;
  Eigen::Vector4d direction;
};

std::array<BellTerm, 4> bell_terms() {
  const PhasePoint a{{1.0, 0.0}, {0.0, 0.0}};
  const PhasePoint b{{0.0, 0.0}, {-1.0, 0.0}};
  const PhasePoint ab{{1.0, 0.0}, {-1.0, 0.0}};
  return {BellTerm{+1.0, Eigen::Vector4d::Zero()}, BellTerm{+1.0, a.quadratures()},
          BellTerm{+1.0, b.quadratures()}, BellTerm{-1.0, ab.quadratures()}};
}

}  // namespace

Eigen::Vector4d PhasePoint::quadratures() const {
  return std::numbers::sqrt2 *
         Eigen::Vector4d(alpha_a.real(), alpha_a.imag(), alpha_b.real(), alpha_b.imag());
}

DisplacedParity::DisplacedParity(const CovarianceMatrix& cm) {
  const Eigen::LLT<Eigen::Matrix4d> llt(cm.entries());
  if (llt.info() != Eigen::Success) {
    throw SingularState("covariance matrix is not positive definite");
  }
  const double det = cm.determinant();
  if (!(det >= kMinDeterminant) || llt.rcond() < kMinReciprocalCondition) {
    throw SingularState(fmt::format("covariance matrix is singular (det = {})", det));
  }
  inverse_ = llt.solve(Eigen::Matrix4d::Identity());
  inverse_ = (inverse_ + inverse_.transpose()) / 2.0;
  origin_ = 1.0 / (4.0 * std::sqrt(det));
}

double DisplacedParity::operator()(const PhasePoint& p) const {
  const Eigen::Vector4d k = p.quadratures();
  return origin_ * std::exp(-0.5 * k.dot(inverse_ * k));
}

double DisplacedParity::decay_rate(const Eigen::Vector4d& unit_quadratures) const {
  return 0.5 * unit_quadratures.dot(inverse_ * unit_quadratures);
}

double parity_expectation(const CovarianceMatrix& cm, const PhasePoint& p) {
  return DisplacedParity(cm)(p);
}

double bell_combination(const CovarianceMatrix& cm, double intensity) {
  if (!(intensity >= 0.0)) {
    throw DomainError(fmt::format("displacement intensity must be >= 0 (got {})", intensity));
  }
  const DisplacedParity parity(cm);
  const double amp = std::sqrt(intensity);
  return parity({0.0, 0.0}) + parity({amp, 0.0}) + parity({0.0, -amp}) - parity({amp, -amp});
}

NumericBellMax bell_max_numeric(const CovarianceMatrix& cm) {
  const DisplacedParity parity(cm);
  std::array<double, 4> weight{};
  std::array<double, 4> rate{};
  const auto terms = bell_terms();
  for (std::size_t k = 0; k < terms.size(); ++k) {
    weight[k] = terms[k].sign * parity.at_origin();
    rate[k] = parity.decay_rate(terms[k].direction);
  }

  // f(x1) - f(x2) summed term by term as w e^{-r x2} expm1(r (x2 - x1)),
  // which stays accurate when the two values agree to many digits.
  auto less = [&](double x1, double x2) {
    double diff = 0.0;
    for (std::size_t k = 0; k < weight.size(); ++k) {
      diff += weight[k] * std::exp(-rate[k] * x2) * std::expm1(rate[k] * (x2 - x1));
    }
    return diff < 0.0;
  };

  const double x_block_det = cm(0, 0) * cm(2, 2) - cm(0, 2) * cm(0, 2);
  const double upper = 10.0 * std::sqrt(x_block_det);
  const double argmax = optimize::golden_section_argmax(less, 0.0, upper, kSearchTolerance);
  return {argmax, bell_combination(cm, argmax)};
}

}  // namespace cvbell
