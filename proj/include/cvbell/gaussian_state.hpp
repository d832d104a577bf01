#pragma once

// Two-mode Gaussian covariance matrices.
//
// Quadrature ordering is (X_a, Y_a, X_b, Y_b) with [X, Y] = i, so the vacuum
// has variance 1/2 in every quadrature and a pure two-mode state has
// det(sigma) = 1/16.

#include <Eigen/Dense>

namespace cvbell {

inline constexpr double kVacuumVariance = 0.5;
inline constexpr double kPureDeterminant = 1.0 / 16.0;

// Relative tolerance for "saturated" comparisons (purity == 1, d_minus == 1/2).
struct Tolerance {
  double relative = 1e-9;
};

// Parameters of the standard form
//
//   | n  0  c1 0  |
//   | 0  n  0  c2 |
//   | c1 0  m  0  |
//   | 0  c2 0  m  |
struct StandardForm {
  double n = kVacuumVariance;
  double m = kVacuumVariance;
  double c1 = 0.0;
  double c2 = 0.0;

  // n == m and c1 == -c2 within the relative tolerance.
  [[nodiscard]] bool is_symmetric(Tolerance tol = {}) const;

  friend bool operator==(const StandardForm&, const StandardForm&) = default;
};

class CovarianceMatrix {
 public:
  using Matrix = Eigen::Matrix4d;
  using Block = Eigen::Matrix2d;

  // Throws MalformedMatrix unless every entry is finite and the matrix is
  // exactly symmetric as stored.
  explicit CovarianceMatrix(const Matrix& entries);

  static CovarianceMatrix vacuum();
  static CovarianceMatrix from_standard_form(const StandardForm& sf);

  [[nodiscard]] const Matrix& entries() const { return entries_; }
  [[nodiscard]] double operator()(int row, int col) const { return entries_(row, col); }

  [[nodiscard]] Block alpha() const { return entries_.topLeftCorner<2, 2>(); }
  [[nodiscard]] Block beta() const { return entries_.bottomRightCorner<2, 2>(); }
  [[nodiscard]] Block gamma() const { return entries_.topRightCorner<2, 2>(); }

  [[nodiscard]] double determinant() const { return entries_.determinant(); }

 private:
  Matrix entries_;
};

struct SymplecticInvariants {
  double i1 = 0.0;  // det alpha
  double i2 = 0.0;  // det beta
  double i3 = 0.0;  // det gamma
  double i4 = 0.0;  // det sigma
  double delta = 0.0;  // i1 + i2 + 2 i3
  // Symplectic eigenvalues. For sigma > 0 they come from an eigensolver;
  // otherwise from the invariants, NaN when delta^2 < 4 i4.
  double d_minus = 0.0;
  double d_plus = 0.0;
};

struct PhysicalityReport {
  bool physical = false;
  bool positive_definite = false;
  double d_minus = 0.0;
  // i1 + i2 + 2 i3 <= 4 i4 + 1/4. This squared form of the uncertainty
  // relation admits false positives; `physical` follows d_minus.
  double uncertainty_lhs = 0.0;
  double uncertainty_rhs = 0.0;
  bool uncertainty_inequality_holds = false;
};

[[nodiscard]] SymplecticInvariants symplectic_invariants(const CovarianceMatrix& cm);

// Physical iff sigma > 0 and d_minus >= 1/2.
[[nodiscard]] PhysicalityReport is_physical(const CovarianceMatrix& cm, Tolerance tol = {});

// 1 / (4 sqrt(det sigma)); throws DomainError for unphysical input. Values
// within tolerance of 1 are reported as exactly 1.
[[nodiscard]] double purity(const CovarianceMatrix& cm, Tolerance tol = {});

// Standard-form parameters with c1 >= 0 and |c1| >= |c2|. The sign of c2 is
// the sign of det gamma. Throws InconsistentInvariants when alpha or beta is
// not positive definite.
[[nodiscard]] StandardForm standard_form(const CovarianceMatrix& cm, Tolerance tol = {});

// (n, n, c, -c) with c = sqrt(n^2 - 1/4).
[[nodiscard]] StandardForm pure_symmetric_state(double n);

// 1 / (2n) and c1 / n on the symmetric family; UnsupportedShape otherwise.
[[nodiscard]] double single_mode_purity(const StandardForm& sf, Tolerance tol = {});
[[nodiscard]] double correlation_coefficient(const StandardForm& sf, Tolerance tol = {});

}  // namespace cvbell
