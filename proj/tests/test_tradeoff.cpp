#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "nuqrt/tradeoff.hpp"
#include "support/oracles.hpp"

namespace nuqrt {
namespace {

const OscillationParams kParams = default_params();

DensityMatrix state_from(Complex e, Complex mu, Complex tau) {
  return tripartite_state(FlavorAmplitudes{Flavor::e, e, mu, tau, BaselinePoint{}});
}

TEST(ChshTradeoff, InitialElectronSaturatesHorodeckiBound) {
  const auto rho = tripartite_state(amplitudes(Flavor::e, BaselinePoint{}, kParams));
  const auto t = chsh_tradeoff(rho);
  for (int k = 0; k < 3; ++k) {
    EXPECT_NEAR(t.horodecki[k], 4.0, 1e-12);
    EXPECT_NEAR(t.paper[k], 2.0, 1e-12);
  }
  EXPECT_NEAR(t.horodecki_sum, 12.0, 1e-9);
  EXPECT_NEAR(t.paper_sum, 6.0, 1e-12);
  EXPECT_TRUE(t.bound_ok);
}

TEST(ChshTradeoff, MuonSweepWithinBound) {
  for (int k = 0; k < 500; ++k) {
    const double loe = 10.0 * std::pow(100.0, k / 499.0);
    const auto t = chsh_tradeoff(
        tripartite_state(amplitudes(Flavor::mu, BaselinePoint::km_per_gev(loe), kParams)));
    EXPECT_LE(t.horodecki_sum, 12.0 + 1e-9);
    EXPECT_LE(t.paper_sum, 12.0 + 1e-9);
    EXPECT_TRUE(t.bound_ok);
  }
}

TEST(Identity, InitialStateBothFlavors) {
  for (Flavor f : {Flavor::e, Flavor::mu}) {
    const auto id = coherence_concurrence_identity(tripartite_state(amplitudes(f, BaselinePoint{}, kParams)));
    EXPECT_NEAR(id.d_squared, 1.0, 1e-12);
    EXPECT_NEAR(id.two_thirds_ci_squared, 0.0, 1e-12);
    EXPECT_NEAR(id.residual, 0.0, 1e-12);
  }
}

TEST(Identity, ElectronNearTenPointEight) {
  const auto id = coherence_concurrence_identity(
      tripartite_state(amplitudes(Flavor::e, BaselinePoint::km_per_mev(10.8), kParams)));
  EXPECT_NEAR(id.d_squared, 0.11, 0.02);
  EXPECT_NEAR(id.two_thirds_ci_squared, 0.89, 0.02);
  EXPECT_NEAR(id.residual, 0.0, 1e-9);
}

TEST(Identity, HoldsAlongLogGrids) {
  for (Flavor f : {Flavor::e, Flavor::mu}) {
    for (int k = 0; k < 200; ++k) {
      const double loe = 10.0 * std::pow(4000.0, k / 199.0);
      const auto id = coherence_concurrence_identity(
          tripartite_state(amplitudes(f, BaselinePoint::km_per_gev(loe), kParams)));
      EXPECT_NEAR(id.residual, 0.0, 1e-9) << to_string(f) << " " << loe;
    }
  }
}

TEST(Identity, RejectsMixedStates) {
  std::mt19937_64 rng(21);
  const DensityMatrix mixed(oracle::random_density(rng, 8));
  EXPECT_THROW(coherence_concurrence_identity(mixed), std::domain_error);
}

TEST(Identity, HoldsForRandomPureThreeQubitStates) {
  std::mt19937_64 rng(22);
  std::normal_distribution<double> g;
  for (int t = 0; t < 30; ++t) {
    std::vector<Complex> psi(8);
    double n = 0;
    for (auto& z : psi) {
      z = Complex(g(rng), g(rng));
      n += std::norm(z);
    }
    ComplexMatrix rho(8, 8);
    for (std::size_t r = 0; r < 8; ++r)
      for (std::size_t c = 0; c < 8; ++c) rho(r, c) = psi[r] * std::conj(psi[c]) / n;
    const auto id = coherence_concurrence_identity(DensityMatrix(rho));
    EXPECT_NEAR(id.residual, 0.0, 1e-9) << id.d_squared << " " << id.two_thirds_ci_squared;
  }
}

TEST(CoherenceAdditivity, ZeroAtOrigin) {
  const auto c = coherence_additivity(tripartite_state(amplitudes(Flavor::e, BaselinePoint{}, kParams)));
  EXPECT_NEAR(c.q, 0.0, 1e-12);
  EXPECT_NEAR(c.abc, 0.0, 1e-12);
}

TEST(CoherenceAdditivity, ZeroOnTwoFlavorBoundary) {
  // P_B = 0 or P_C = 0: the two-flavor limit saturates the inequality.
  for (double pa : {0.1, 0.37, 0.5, 0.9}) {
    const double rest = std::sqrt(1 - pa);
    EXPECT_NEAR(coherence_additivity(state_from(std::sqrt(pa), 0.0, rest)).q, 0.0, 1e-9);
    EXPECT_NEAR(coherence_additivity(state_from(std::sqrt(pa), rest, 0.0)).q, 0.0, 1e-9);
  }
}

TEST(CoherenceAdditivity, MatchesClosedFormAndIsNonPositive) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> loe(0.0, 40.0);
  for (int t = 0; t < 200; ++t) {
    const auto amps = amplitudes(Flavor::e, BaselinePoint::km_per_mev(loe(rng)), kParams);
    const auto p = probabilities(amps);
    const auto c = coherence_additivity(tripartite_state(amps));
    EXPECT_NEAR(c.q, oracle::q_closed({p[0], p[1], p[2]}), 1e-9);
    EXPECT_LE(c.q, 1e-9);
  }
}

TEST(CoherenceAdditivity, NonPositiveOnRandomSimplexPoints) {
  std::mt19937_64 rng(24);
  std::gamma_distribution<double> g(0.5);
  std::uniform_real_distribution<double> ph(0.0, 6.283185307179586);
  for (int t = 0; t < 300; ++t) {
    double w[3] = {g(rng), g(rng), g(rng)};
    const double s = w[0] + w[1] + w[2];
    const auto c = coherence_additivity(state_from(std::polar(std::sqrt(w[0] / s), ph(rng)),
                                                   std::polar(std::sqrt(w[1] / s), ph(rng)),
                                                   std::polar(std::sqrt(w[2] / s), ph(rng))));
    EXPECT_LE(c.q, 1e-9);
  }
}

TEST(EvaluatePoint, ElectronOrigin) {
  const auto r = evaluate_point(Flavor::e, BaselinePoint{}, kParams);
  EXPECT_NEAR(r.d_squared, 1.0, 1e-12);
  EXPECT_NEAR(r.two_thirds_ci_squared, 0.0, 1e-12);
  EXPECT_TRUE(r.bounds_ok.all());
  EXPECT_DOUBLE_EQ(r.probabilities[0], 1.0);
}

TEST(EvaluatePoint, MuonNearMinimumOfD) {
  const auto r = evaluate_point(Flavor::mu, BaselinePoint::km_per_gev(264.9), kParams);
  EXPECT_NEAR(r.d_squared, 0.3, 0.02);
  EXPECT_TRUE(r.bounds_ok.all());
}

TEST(EvaluatePoint, InvariantsAtRandomPoints) {
  std::mt19937_64 rng(25);
  std::uniform_real_distribution<double> loe(0.0, 40000.0);
  for (int t = 0; t < 50; ++t) {
    for (Flavor f : {Flavor::e, Flavor::mu}) {
      const auto r = evaluate_point(f, BaselinePoint::km_per_gev(loe(rng)), kParams);
      EXPECT_LT(std::abs(r.identity_residual), 1e-9);
      EXPECT_LE(r.chsh.horodecki_sum, 12.0 + 1e-9);
      EXPECT_LE(r.chsh.paper_sum, 12.0 + 1e-9);
      EXPECT_LE(r.coherence_q, 1e-9);
    }
  }
}

TEST(EvaluatePoint, DAndConcurrenceMoveOppositely) {
  TradeoffReport prev = evaluate_point(Flavor::mu, BaselinePoint::km_per_gev(10.0), kParams);
  for (int k = 1; k < 1000; ++k) {
    const auto cur =
        evaluate_point(Flavor::mu, BaselinePoint::km_per_gev(10.0 * std::pow(100.0, k / 999.0)), kParams);
    const double dd = cur.d_squared - prev.d_squared;
    const double dc = cur.two_thirds_ci_squared - prev.two_thirds_ci_squared;
    if (std::abs(dd) > 1e-12 && std::abs(dc) > 1e-12) {
      EXPECT_EQ(std::signbit(dd), !std::signbit(dc));
    }
    prev = cur;
  }
}

TEST(EvaluatePoint, QSaturatesWhenAProbabilityVanishes) {
  // theta13 = theta23 = 0 decouples the tau mode: P_tau = 0 along the sweep.
  auto params = kParams;
  params.theta13 = 0.0;
  params.theta23 = 0.0;
  for (double loe : {1.0, 5.0, 10.8, 20.0}) {
    const auto r = evaluate_point(Flavor::e, BaselinePoint::km_per_mev(loe), params);
    ASSERT_LT(r.probabilities[2], 1e-9);
    EXPECT_NEAR(r.coherence_q, 0.0, 1e-9);
  }
}

}  // namespace
}  // namespace nuqrt
