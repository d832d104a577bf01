#include <cmath>
#include <random>

#include <doctest.h>

#include "cvbell/error.hpp"
#include "cvbell/gaussian_state.hpp"
#include "support.hpp"

using namespace cvbell;
using cvbell::testing::congruence;
using cvbell::testing::local;
using cvbell::testing::rotation;

namespace {

const double kSqrt3Half = std::sqrt(3.0) / 2.0;

CovarianceMatrix cm_of(double n, double m, double c1, double c2) {
  return CovarianceMatrix::from_standard_form({n, m, c1, c2});
}

}  // namespace

TEST_SUITE("gaussian_state") {
  TEST_CASE("construction rejects non-symmetric and non-finite matrices") {
    Eigen::Matrix4d m = CovarianceMatrix::vacuum().entries();
    m(0, 2) = 0.1;
    CHECK_THROWS_AS(CovarianceMatrix{m}, MalformedMatrix);
    m(2, 0) = 0.1;
    CHECK_NOTHROW(CovarianceMatrix{m});
    m(1, 1) = std::nan("");
    CHECK_THROWS_AS(CovarianceMatrix{m}, MalformedMatrix);
  }

  TEST_CASE("blocks follow the quadrature ordering") {
    const auto cm = cm_of(1.0, 2.0, 0.3, -0.2);
    CHECK(cm.alpha() == Eigen::Matrix2d::Identity());
    CHECK(cm.beta() == 2.0 * Eigen::Matrix2d::Identity());
    CHECK(cm.gamma()(0, 0) == 0.3);
    CHECK(cm.gamma()(1, 1) == -0.2);
    CHECK(cm.gamma()(0, 1) == 0.0);
  }

  TEST_CASE("symplectic invariants of standard forms") {
    SUBCASE("vacuum") {
      const auto inv = symplectic_invariants(CovarianceMatrix::vacuum());
      CHECK(inv.i1 == doctest::Approx(0.25).epsilon(1e-15));
      CHECK(inv.i2 == doctest::Approx(0.25).epsilon(1e-15));
      CHECK(inv.i3 == 0.0);
      CHECK(inv.i4 == doctest::Approx(1.0 / 16.0).epsilon(1e-15));
    }
    SUBCASE("pure n = 1") {
      const auto inv = symplectic_invariants(cm_of(1, 1, kSqrt3Half, -kSqrt3Half));
      CHECK(inv.i1 == doctest::Approx(1.0).epsilon(1e-14));
      CHECK(inv.i2 == doctest::Approx(1.0).epsilon(1e-14));
      CHECK(inv.i3 == doctest::Approx(-0.75).epsilon(1e-14));
      CHECK(inv.i4 == doctest::Approx(1.0 / 16.0).epsilon(1e-12));
    }
    SUBCASE("mixed n = m = 1, c = 0.6") {
      const auto inv = symplectic_invariants(cm_of(1, 1, 0.6, -0.6));
      CHECK(inv.i3 == doctest::Approx(-0.36).epsilon(1e-14));
      CHECK(inv.i4 == doctest::Approx(0.4096).epsilon(1e-14));
      CHECK(inv.d_minus <= inv.d_plus);
    }
    SUBCASE("general standard form matches the closed expressions") {
      const double n = 1.3, m = 0.9, c1 = 0.5, c2 = -0.2;
      const auto inv = symplectic_invariants(cm_of(n, m, c1, c2));
      CHECK(inv.i1 == doctest::Approx(n * n));
      CHECK(inv.i2 == doctest::Approx(m * m));
      CHECK(inv.i3 == doctest::Approx(c1 * c2));
      CHECK(inv.i4 == doctest::Approx((n * m - c1 * c1) * (n * m - c2 * c2)));
      CHECK(inv.delta == doctest::Approx(inv.i1 + inv.i2 + 2 * inv.i3));
    }
  }

  TEST_CASE("physicality") {
    SUBCASE("vacuum saturates the uncertainty relation") {
      const auto p = is_physical(CovarianceMatrix::vacuum());
      CHECK(p.physical);
      CHECK(p.uncertainty_lhs == doctest::Approx(0.5));
      CHECK(p.uncertainty_rhs == doctest::Approx(0.5));
      CHECK(p.d_minus == doctest::Approx(0.5));
    }
    SUBCASE("squared uncertainty form admits a false positive") {
      const auto p = is_physical(cm_of(0.5, 0.5, 0.3, -0.3));
      CHECK_FALSE(p.physical);
      CHECK(p.positive_definite);
      CHECK(p.d_minus == doctest::Approx(0.4).epsilon(1e-12));
      CHECK(p.uncertainty_lhs == doctest::Approx(0.32));
      CHECK(p.uncertainty_rhs == doctest::Approx(0.3524));
      CHECK(p.uncertainty_inequality_holds);
    }
    SUBCASE("pure entangled state sits on the boundary") {
      const auto p = is_physical(cm_of(1, 1, kSqrt3Half, -kSqrt3Half));
      CHECK(p.physical);
      CHECK(p.d_minus == doctest::Approx(0.5).epsilon(1e-12));
    }
    SUBCASE("indefinite matrix") {
      const auto p = is_physical(cm_of(0.5, 0.5, 0.8, -0.8));
      CHECK_FALSE(p.positive_definite);
      CHECK_FALSE(p.physical);
    }
  }

  TEST_CASE("purity") {
    CHECK(purity(CovarianceMatrix::vacuum()) == 1.0);
    CHECK(purity(cm_of(1, 1, 0, 0)) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(purity(cm_of(1, 1, kSqrt3Half, -kSqrt3Half)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS((void)purity(cm_of(0.5, 0.5, 0.3, -0.3)), DomainError);
  }

  TEST_CASE("pure symmetric state") {
    CHECK(pure_symmetric_state(0.5) == StandardForm{0.5, 0.5, 0.0, -0.0});
    const auto one = pure_symmetric_state(1.0);
    CHECK(one.c1 == doctest::Approx(0.866025403784).epsilon(1e-12));
    CHECK(one.c2 == -one.c1);
    const auto two = pure_symmetric_state(2.0);
    CHECK(two.c1 == doctest::Approx(1.936491673104).epsilon(1e-12));
    const auto cm = CovarianceMatrix::from_standard_form(two);
    CHECK(std::abs(cm.determinant() - 1.0 / 16.0) <= 1e-12);
    CHECK(purity(cm) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS((void)pure_symmetric_state(0.49), DomainError);
  }

  TEST_CASE("standard form extraction") {
    SUBCASE("fixed point") {
      const StandardForm sf{1.2, 0.8, 0.4, -0.3};
      const auto out = standard_form(CovarianceMatrix::from_standard_form(sf));
      CHECK(out.n == doctest::Approx(sf.n).epsilon(1e-14));
      CHECK(out.m == doctest::Approx(sf.m).epsilon(1e-14));
      CHECK(out.c1 == doctest::Approx(sf.c1).epsilon(1e-14));
      CHECK(out.c2 == doctest::Approx(sf.c2).epsilon(1e-14));
    }
    SUBCASE("vacuum") {
      const auto out = standard_form(CovarianceMatrix::vacuum());
      CHECK(out.n == doctest::Approx(0.5));
      CHECK(out.c1 == 0.0);
      CHECK(out.c2 == 0.0);
    }
    SUBCASE("locally rotated pure state") {
      const auto pure = cm_of(1, 1, kSqrt3Half, -kSqrt3Half);
      for (const auto [ta, tb] : {std::pair{0.3, 1.1}, std::pair{2.0, -0.7}, std::pair{3.0, 3.0}}) {
        const auto rotated = congruence(local(rotation(ta), rotation(tb)), pure);
        CHECK(rotated.entries()(0, 3) != doctest::Approx(0.0));
        const auto sf = standard_form(rotated);
        CHECK(sf.n == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(sf.m == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(sf.c1 == doctest::Approx(kSqrt3Half).epsilon(1e-12));
        CHECK(sf.c2 == doctest::Approx(-kSqrt3Half).epsilon(1e-12));
      }
    }
    SUBCASE("sign convention puts the larger magnitude first") {
      const auto sf = standard_form(cm_of(1.0, 1.0, 0.2, 0.5));
      CHECK(sf.c1 == doctest::Approx(0.5));
      CHECK(sf.c2 == doctest::Approx(0.2));
      const auto flipped = standard_form(cm_of(1.0, 1.0, -0.6, 0.6));
      CHECK(flipped.c1 == doctest::Approx(0.6));
      CHECK(flipped.c2 == doctest::Approx(-0.6));
    }
    SUBCASE("non positive-definite local block") {
      CHECK_THROWS_AS((void)standard_form(cm_of(-1.0, 1.0, 0.0, 0.0)), InconsistentInvariants);
    }
  }

  TEST_CASE("single-mode purity and correlation coefficient") {
    const StandardForm vac{0.5, 0.5, 0.0, 0.0};
    CHECK(single_mode_purity(vac) == 1.0);
    CHECK(correlation_coefficient(vac) == 0.0);
    const auto pure = pure_symmetric_state(1.0);
    const double mu = single_mode_purity(pure);
    const double corr = correlation_coefficient(pure);
    CHECK(mu == 0.5);
    CHECK(corr == doctest::Approx(kSqrt3Half));
    CHECK(corr * corr + mu * mu == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(correlation_coefficient({1, 1, 0.6, -0.6}) == doctest::Approx(0.6));
    CHECK_THROWS_AS((void)single_mode_purity({1.0, 1.2, 0.5, -0.5}), UnsupportedShape);
    CHECK_THROWS_AS((void)correlation_coefficient({1.0, 1.0, 0.5, -0.3}), UnsupportedShape);
  }

  TEST_CASE("property: standard form round-trips") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 500; ++trial) {
      StandardForm sf;
      if (trial % 2 == 0) {
        sf = cvbell::testing::random_symmetric(rng);
      } else {
        sf.n = cvbell::testing::uniform(rng, 0.5, 4.0);
        sf.m = cvbell::testing::uniform(rng, 0.5, 4.0);
        const double limit = 0.999 * std::sqrt(sf.n * sf.m);
        sf.c1 = cvbell::testing::uniform(rng, 0.0, limit);
        sf.c2 = cvbell::testing::uniform(rng, -sf.c1, sf.c1);
      }
      const auto out = standard_form(CovarianceMatrix::from_standard_form(sf));
      CHECK(std::abs(out.n - sf.n) <= 1e-12);
      CHECK(std::abs(out.m - sf.m) <= 1e-12);
      CHECK(std::abs(out.c1 - sf.c1) <= 1e-12);
      CHECK(std::abs(out.c2 - sf.c2) <= 1e-12);
    }
  }

  TEST_CASE("property: standard form preserves the invariants of general states") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 200; ++trial) {
      const auto cm = cvbell::testing::random_physical(rng);
      const auto inv = symplectic_invariants(cm);
      const auto sf = standard_form(cm);
      const auto back = symplectic_invariants(CovarianceMatrix::from_standard_form(sf));
      const double scale = std::max(1.0, inv.i1 * inv.i2);
      CHECK(std::abs(back.i1 - inv.i1) <= 1e-10 * scale);
      CHECK(std::abs(back.i2 - inv.i2) <= 1e-10 * scale);
      CHECK(std::abs(back.i3 - inv.i3) <= 1e-10 * scale);
      CHECK(std::abs(back.i4 - inv.i4) <= 1e-10 * scale * scale);
      CHECK(sf.c1 >= 0.0);
      CHECK(sf.c1 >= std::abs(sf.c2));
    }
  }

  TEST_CASE("property: invariants are unchanged by local rotations") {
    std::mt19937_64 rng(13);
    double worst = 0.0;
    for (int s = 0; s < 20; ++s) {
      const auto cm = cvbell::testing::random_physical(rng);
      const auto ref = symplectic_invariants(cm);
      for (int r = 0; r < 100; ++r) {
        const auto rotated = congruence(
            local(rotation(cvbell::testing::uniform(rng, 0, 6.3)),
                  rotation(cvbell::testing::uniform(rng, 0, 6.3))),
            cm);
        const auto inv = symplectic_invariants(rotated);
        worst = std::max({worst, std::abs(inv.i1 - ref.i1), std::abs(inv.i2 - ref.i2),
                          std::abs(inv.i3 - ref.i3), std::abs(inv.i4 - ref.i4)});
      }
    }
    CHECK(worst <= 1e-10);
  }

  TEST_CASE("property: unit purity iff det sigma = 1/16") {
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 300; ++trial) {
      StandardForm sf = cvbell::testing::random_symmetric(rng);
      if (trial % 3 == 0) sf = pure_symmetric_state(sf.n);
      const auto cm = CovarianceMatrix::from_standard_form(sf);
      const bool unit = purity(cm) == 1.0;
      const bool pure_det = std::abs(cm.determinant() - 1.0 / 16.0) <= 1e-12;
      CHECK(unit == pure_det);
      if (trial % 3 == 0) CHECK(unit);
    }
  }

  TEST_CASE("property: symmetric physical states obey c <= sqrt(n^2 - 1/4)") {
    std::mt19937_64 rng(15);
    int physical = 0;
    for (int trial = 0; trial < 2000; ++trial) {
      const double n = cvbell::testing::uniform(rng, 0.4, 3.0);
      const double c = cvbell::testing::uniform(rng, 0.0, n);
      const auto cm = cm_of(n, n, c, -c);
      if (!is_physical(cm).physical) continue;
      ++physical;
      CHECK(c <= std::sqrt(n * n - 0.25) + 1e-12);
    }
    CHECK(physical > 200);
  }

  TEST_CASE("property: physicality agrees with the eigenvalues of sigma + i Omega / 2") {
    std::mt19937_64 rng(16);
    int agree = 0, physical = 0, compared = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      Eigen::Matrix4d m;
      switch (trial % 3) {
        case 0: m = cvbell::testing::random_physical(rng).entries(); break;
        case 1:
          m = cvbell::testing::uniform(rng, 0.5, 1.05) *
              cvbell::testing::random_physical(rng).entries();
          break;
        default: {
          Eigen::Matrix4d a;
          for (int i = 0; i < 16; ++i) a(i) = cvbell::testing::uniform(rng, -1.0, 1.0);
          m = a * a.transpose() + cvbell::testing::uniform(rng, -0.3, 0.6) * Eigen::Matrix4d::Identity();
        }
      }
      const Eigen::Matrix4d sym = cvbell::testing::symmetrized(m);
      const double lambda = cvbell::testing::uncertainty_min_eigenvalue(sym);
      if (std::abs(lambda) < 1e-9) continue;
      ++compared;
      const bool brute = lambda >= 0.0;
      const bool verdict = is_physical(CovarianceMatrix(sym)).physical;
      agree += brute == verdict;
      physical += brute;
    }
    CHECK(agree == compared);
    CHECK(compared > 950);
    CHECK(physical > 100);
    CHECK(compared - physical > 100);
  }
}
