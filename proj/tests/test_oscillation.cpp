#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "nuqrt/oscillation.hpp"

namespace nuqrt {
namespace {

constexpr std::array<Flavor, 3> kFlavors{Flavor::e, Flavor::mu, Flavor::tau};

TEST(DefaultParams, BestFitValues) {
  const auto p = default_params();
  EXPECT_DOUBLE_EQ(p.theta12, 33.48);
  EXPECT_DOUBLE_EQ(p.theta23, 42.3);
  EXPECT_DOUBLE_EQ(p.theta13, 8.50);
  EXPECT_DOUBLE_EQ(p.delta_cp, 0.0);
  EXPECT_DOUBLE_EQ(p.alpha1, 0.0);
  EXPECT_DOUBLE_EQ(p.alpha2, 0.0);
  EXPECT_DOUBLE_EQ(p.dm21_sq, 7.50e-5);
  EXPECT_DOUBLE_EQ(p.dm31_sq, 2.457e-3);
  EXPECT_DOUBLE_EQ(p.dm32_sq, 2.382e-3);
  EXPECT_NEAR(p.dm31_sq - p.dm21_sq, p.dm32_sq, 1e-15);
  EXPECT_NO_THROW(validate(p));
}

TEST(Validate, NamesTheOffendingField) {
  auto p = default_params();
  p.dm32_sq = 2.5e-3;
  try {
    validate(p);
    FAIL() << "expected InvalidParameter";
  } catch (const InvalidParameter& e) {
    EXPECT_EQ(e.field(), "dm32_sq");
  }
  p = default_params();
  p.theta13 = 91.0;
  EXPECT_THROW(validate(p), InvalidParameter);
  p = default_params();
  p.delta_cp = 360.0;
  EXPECT_THROW(validate(p), InvalidParameter);
}

TEST(BaselinePoint, MevConvertsToGev) {
  EXPECT_DOUBLE_EQ(BaselinePoint::km_per_mev(10.8).in_km_per_gev(), 10800.0);
  EXPECT_DOUBLE_EQ(BaselinePoint::km_per_gev(264.9).in_km_per_gev(), 264.9);
}

TEST(Pmns, Unitary) {
  const auto u = pmns_matrix(default_params());
  EXPECT_LT((u.adjoint() * u).max_abs_diff(ComplexMatrix::identity(3)), 1e-12);
}

TEST(Pmns, Ue3IsSinTheta13) {
  const auto u = pmns_matrix(default_params());
  EXPECT_NEAR(u(0, 2).real(), std::sin(8.5 * std::numbers::pi / 180.0), 1e-15);
  EXPECT_NEAR(u(0, 2).real(), 0.147809, 1e-6);
  EXPECT_NEAR(u(0, 2).imag(), 0.0, 1e-15);
}

TEST(Pmns, ReducesToSolarRotation) {
  auto p = default_params();
  p.theta13 = 0.0;
  p.theta23 = 0.0;
  const double t = p.theta12 * std::numbers::pi / 180.0;
  const ComplexMatrix expected{
      {std::cos(t), std::sin(t), 0.0}, {-std::sin(t), std::cos(t), 0.0}, {0.0, 0.0, 1.0}};
  EXPECT_LT(pmns_matrix(p).max_abs_diff(expected), 1e-15);
}

TEST(Amplitudes, ZeroBaselineIsInitialFlavor) {
  const auto p = default_params();
  for (Flavor f : kFlavors) {
    const auto a = amplitudes(f, BaselinePoint::km_per_gev(0.0), p);
    for (Flavor g : kFlavors) EXPECT_LT(std::abs(a[g] - Complex(f == g ? 1.0 : 0.0)), 1e-15);
  }
}

TEST(Amplitudes, Normalized) {
  const auto a = amplitudes(Flavor::e, BaselinePoint::km_per_gev(500.0), default_params());
  EXPECT_NEAR(a.norm(), 1.0, 1e-10);
}

TEST(Amplitudes, RejectNegativeBaseline) {
  EXPECT_THROW(amplitudes(Flavor::e, BaselinePoint::km_per_gev(-1.0), default_params()),
               InvalidParameter);
}

TEST(Probabilities, ZeroBaseline) {
  const auto p = probabilities(Flavor::e, BaselinePoint::km_per_mev(0.0), default_params());
  EXPECT_DOUBLE_EQ(p[0], 1.0);
  EXPECT_NEAR(p[1], 0.0, 1e-30);
  EXPECT_NEAR(p[2], 0.0, 1e-30);
}

TEST(Probabilities, UnitSumAndRange) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> loe(0.0, 40000.0);
  for (int t = 0; t < 200; ++t)
    for (Flavor f : kFlavors) {
      const auto p = probabilities(f, BaselinePoint::km_per_gev(loe(rng)), default_params());
      EXPECT_NEAR(p[0] + p[1] + p[2], 1.0, 1e-10);
      for (double x : p) {
        EXPECT_GE(x, 0.0);
        EXPECT_LE(x, 1.0 + 1e-12);
      }
    }
}

TEST(ProbabilityDirect, ZeroBaseline) {
  EXPECT_DOUBLE_EQ(
      probability_direct(Flavor::e, Flavor::e, BaselinePoint::km_per_gev(0.0), default_params()),
      1.0);
}

TEST(ProbabilityDirect, AgreesWithAmplitudePath) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> loe(0.0, 40000.0);
  const auto params = default_params();
  for (int t = 0; t < 100; ++t) {
    const auto point = BaselinePoint::km_per_gev(loe(rng));
    for (Flavor from : kFlavors) {
      const auto p = probabilities(from, point, params);
      double sum = 0.0;
      for (Flavor to : kFlavors) {
        const double direct = probability_direct(from, to, point, params);
        EXPECT_NEAR(direct, p[index(to)], 1e-9);
        sum += direct;
      }
      EXPECT_NEAR(sum, 1.0, 1e-9);
    }
  }
}

TEST(ProbabilityDirect, AgreesWithAmplitudesUnderCpViolation) {
  auto params = default_params();
  params.delta_cp = 195.0;
  std::mt19937_64 rng(18);
  std::uniform_real_distribution<double> loe(0.0, 5000.0);
  for (int t = 0; t < 100; ++t) {
    const auto point = BaselinePoint::km_per_gev(loe(rng));
    for (Flavor from : kFlavors) {
      const auto p = probabilities(from, point, params);
      for (Flavor to : kFlavors)
        EXPECT_NEAR(probability_direct(from, to, point, params), p[index(to)], 1e-9);
    }
  }
}

TEST(Probabilities, NoSplittingsMeansNoOscillation) {
  auto params = default_params();
  params.dm21_sq = params.dm31_sq = params.dm32_sq = 0.0;
  for (double loe : {0.0, 10.0, 1e3, 1e5})
    for (Flavor f : kFlavors) {
      const auto p = probabilities(f, BaselinePoint::km_per_gev(loe), params);
      for (Flavor g : kFlavors) EXPECT_NEAR(p[index(g)], f == g ? 1.0 : 0.0, 1e-12);
    }
}

TEST(Probabilities, MajoranaPhasesCancel) {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> angle(0.0, 360.0), loe(0.0, 40000.0);
  const auto base = default_params();
  for (int t = 0; t < 100; ++t) {
    auto p = base;
    p.alpha1 = angle(rng);
    p.alpha2 = angle(rng);
    const auto point = BaselinePoint::km_per_gev(loe(rng));
    for (Flavor f : kFlavors) {
      const auto a = probabilities(f, point, base);
      const auto b = probabilities(f, point, p);
      for (int k = 0; k < 3; ++k) EXPECT_NEAR(a[k], b[k], 1e-12);
    }
  }
}

TEST(ProbabilityDirect, ImaginaryPartVanishesWithoutCpPhase) {
  // With delta_cp = 0 the matrix is real, so the sin(2x) sum contributes
  // nothing: the direct formula equals its Re-only part.
  const auto u = pmns_matrix(default_params());
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b)
      for (std::size_t j = 1; j < 3; ++j)
        for (std::size_t r = 0; r < j; ++r) {
          const Complex quartic = std::conj(u(a, j)) * u(b, j) * u(a, r) * std::conj(u(b, r));
          EXPECT_NEAR(quartic.imag(), 0.0, 1e-12);
        }
}

TEST(Probabilities, PaperEnvelopeElectronSurvival) {
  double lowest = 1.0;
  for (int k = 0; k <= 4000; ++k) {
    const auto p = probabilities(Flavor::e, BaselinePoint::km_per_mev(k * 0.01), default_params());
    lowest = std::min(lowest, p[0]);
  }
  EXPECT_GT(lowest, 0.1);
}

}  // namespace
}  // namespace nuqrt
