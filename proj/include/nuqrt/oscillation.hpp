#pragma once

// Three-flavor vacuum oscillations: PMNS matrix, flavor amplitudes and
// transition probabilities as functions of L/E.

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>

#include "linalg.hpp"

namespace nuqrt {

enum class Flavor { e = 0, mu = 1, tau = 2 };

inline std::string_view to_string(Flavor f) {
  switch (f) {
    case Flavor::e: return "e";
    case Flavor::mu: return "mu";
    case Flavor::tau: return "tau";
  }
  return "?";
}

inline std::size_t index(Flavor f) { return static_cast<std::size_t>(f); }

/// Thrown when a parameter violates its domain; `field()` names it.
class InvalidParameter : public std::invalid_argument {
 public:
  InvalidParameter(std::string field, const std::string& what)
      : std::invalid_argument(field + ": " + what), field_(std::move(field)), reason_(what) {}
  const std::string& field() const noexcept { return field_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::string field_;
  std::string reason_;
};

/// Mixing angles and phases in degrees, splittings in eV^2.
struct OscillationParams {
  double theta12 = 0.0;
  double theta23 = 0.0;
  double theta13 = 0.0;
  double delta_cp = 0.0;
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double dm21_sq = 0.0;
  double dm31_sq = 0.0;
  double dm32_sq = 0.0;

  friend bool operator==(const OscillationParams&, const OscillationParams&) = default;
};

inline constexpr double kSplittingConsistencyTol = 1e-6;  // eV^2

/// Normal-ordering best fit with delta_cp = 0.
inline OscillationParams default_params() {
  OscillationParams p;
  p.theta12 = 33.48;
  p.theta23 = 42.3;
  p.theta13 = 8.50;
  p.delta_cp = 0.0;
  p.alpha1 = 0.0;
  p.alpha2 = 0.0;
  p.dm21_sq = 7.50e-5;
  p.dm31_sq = 2.457e-3;
  p.dm32_sq = 2.382e-3;
  return p;
}

inline void validate(const OscillationParams& p) {
  auto finite = [](const char* name, double v) {
    if (!std::isfinite(v)) throw InvalidParameter(name, "must be finite");
  };
  auto angle = [&](const char* name, double v) {
    finite(name, v);
    if (v < 0.0 || v > 90.0)
      throw InvalidParameter(name, "mixing angle " + std::to_string(v) + " outside [0, 90] degrees");
  };
  angle("theta12", p.theta12);
  angle("theta23", p.theta23);
  angle("theta13", p.theta13);
  finite("delta_cp", p.delta_cp);
  if (p.delta_cp < 0.0 || p.delta_cp >= 360.0)
    throw InvalidParameter("delta_cp", std::to_string(p.delta_cp) + " outside [0, 360) degrees");
  finite("alpha1", p.alpha1);
  finite("alpha2", p.alpha2);
  finite("dm21_sq", p.dm21_sq);
  finite("dm31_sq", p.dm31_sq);
  finite("dm32_sq", p.dm32_sq);
  const double mismatch = std::abs(p.dm32_sq - (p.dm31_sq - p.dm21_sq));
  if (mismatch > kSplittingConsistencyTol) {
    throw InvalidParameter("dm32_sq", "inconsistent with dm31_sq - dm21_sq (off by " +
                                          std::to_string(mismatch) + " eV^2)");
  }
}

enum class LoeUnits { km_per_GeV, km_per_MeV };

inline std::string_view to_string(LoeUnits u) {
  return u == LoeUnits::km_per_GeV ? "km_per_GeV" : "km_per_MeV";
}

/// Baseline over energy. Internally everything runs in km/GeV.
struct BaselinePoint {
  double loe = 0.0;
  LoeUnits units = LoeUnits::km_per_GeV;

  static BaselinePoint km_per_gev(double v) { return {v, LoeUnits::km_per_GeV}; }
  static BaselinePoint km_per_mev(double v) { return {v, LoeUnits::km_per_MeV}; }

  double in_km_per_gev() const { return units == LoeUnits::km_per_MeV ? loe * 1000.0 : loe; }
};

struct FlavorAmplitudes {
  Flavor initial_flavor = Flavor::e;
  Complex a_e;
  Complex a_mu;
  Complex a_tau;
  BaselinePoint loe;

  Complex operator[](Flavor f) const {
    switch (f) {
      case Flavor::e: return a_e;
      case Flavor::mu: return a_mu;
      case Flavor::tau: return a_tau;
    }
    return {};
  }
  double norm() const { return std::norm(a_e) + std::norm(a_mu) + std::norm(a_tau); }
};

/// (P_e, P_mu, P_tau): probability of each flavor mode.
using FlavorProbabilities = std::array<double, 3>;

/// 1.27 in sin^2(1.27 dm^2[eV^2] L[km]/E[GeV]); the amplitude phase is twice this.
inline constexpr double kOscillationConstant = 1.27;

namespace detail {

inline double radians(double degrees) { return degrees * std::numbers::pi / 180.0; }

inline void require_baseline(const BaselinePoint& point) {
  if (!(point.loe >= 0.0) || !std::isfinite(point.loe))
    throw InvalidParameter("loe", "must be finite and >= 0, got " + std::to_string(point.loe));
}

// m_j^2 relative to m_1^2.
inline std::array<double, 3> mass_ladder(const OscillationParams& p) {
  return {0.0, p.dm21_sq, p.dm31_sq};
}

}  // namespace detail

/// U = R23 * U13(delta) * R12 * diag(e^{i a1/2}, e^{i a2/2}, 1).
inline ComplexMatrix pmns_matrix(const OscillationParams& params) {
  using detail::radians;
  const double c12 = std::cos(radians(params.theta12)), s12 = std::sin(radians(params.theta12));
  const double c23 = std::cos(radians(params.theta23)), s23 = std::sin(radians(params.theta23));
  const double c13 = std::cos(radians(params.theta13)), s13 = std::sin(radians(params.theta13));
  const Complex cp = std::polar(1.0, radians(params.delta_cp));

  const ComplexMatrix atmospheric{{1.0, 0.0, 0.0}, {0.0, c23, s23}, {0.0, -s23, c23}};
  const ComplexMatrix reactor{{c13, 0.0, s13 * std::conj(cp)}, {0.0, 1.0, 0.0}, {-s13 * cp, 0.0, c13}};
  const ComplexMatrix solar{{c12, s12, 0.0}, {-s12, c12, 0.0}, {0.0, 0.0, 1.0}};
  const ComplexMatrix majorana = ComplexMatrix::diagonal(
      {std::polar(1.0, radians(params.alpha1) / 2.0), std::polar(1.0, radians(params.alpha2) / 2.0), 1.0});
  return atmospheric * reactor * solar * majorana;
}

/// a_beta = sum_j conj(U_alpha j) exp(-i 2.54 dm_j1^2 L/E) U_beta j.
inline FlavorAmplitudes amplitudes(Flavor flavor, const BaselinePoint& point,
                                   const OscillationParams& params) {
  detail::require_baseline(point);
  const ComplexMatrix u = pmns_matrix(params);
  const auto m2 = detail::mass_ladder(params);
  const double x = point.in_km_per_gev();
  const std::size_t a = index(flavor);

  std::array<Complex, 3> amp{};
  for (std::size_t j = 0; j < 3; ++j) {
    const Complex phase = std::polar(1.0, -2.0 * kOscillationConstant * m2[j] * x);
    const Complex src = std::conj(u(a, j)) * phase;
    for (std::size_t b = 0; b < 3; ++b) amp[b] += src * u(b, j);
  }
  return FlavorAmplitudes{flavor, amp[0], amp[1], amp[2], point};
}

inline FlavorProbabilities probabilities(const FlavorAmplitudes& amps) {
  return {std::norm(amps.a_e), std::norm(amps.a_mu), std::norm(amps.a_tau)};
}

inline FlavorProbabilities probabilities(Flavor flavor, const BaselinePoint& point,
                                         const OscillationParams& params) {
  return probabilities(amplitudes(flavor, point, params));
}

/// P(from -> to) from the expanded delta - 4 sum Re sin^2 + 2 sum Im sin
/// formula. Does not go through the amplitudes.
inline double probability_direct(Flavor from, Flavor to, const BaselinePoint& point,
                                 const OscillationParams& params) {
  detail::require_baseline(point);
  const ComplexMatrix u = pmns_matrix(params);
  const auto m2 = detail::mass_ladder(params);
  const double x = point.in_km_per_gev();
  const std::size_t a = index(from), b = index(to);

  double p = (a == b) ? 1.0 : 0.0;
  for (std::size_t j = 1; j < 3; ++j) {
    for (std::size_t r = 0; r < j; ++r) {
      const Complex quartic = std::conj(u(a, j)) * u(b, j) * u(a, r) * std::conj(u(b, r));
      const double arg = kOscillationConstant * (m2[j] - m2[r]) * x;
      const double s = std::sin(arg);
      p += -4.0 * quartic.real() * s * s + 2.0 * quartic.imag() * std::sin(2.0 * arg);
    }
  }
  return p;
}

}  // namespace nuqrt
