#pragma once

// Trade-off relations evaluated on the tripartite flavor state:
//  - CHSH monogamy: sum over pairs of <CHSH>^2 <= 12
//  - D^2 + (2/3) C_I^2 = 1 for pure three-qubit states
//  - coherence super-additivity: C(AC) + C(AB) - C(ABC) <= 0

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "measures.hpp"

namespace nuqrt {

inline constexpr double kBoundTol = 1e-9;
inline constexpr double kChshSquaredBound = 12.0;
inline constexpr double kPurityTol = 1e-8;

struct ChshTradeoff {
  std::array<double, 3> paper{};       // chsh_sq_paper per pair (AB, AC, BC)
  std::array<double, 3> horodecki{};   // chsh_max^2 per pair
  double paper_sum = 0.0;
  double horodecki_sum = 0.0;
  bool bound_ok = false;
};

struct CoherenceConcurrenceIdentity {
  double d_squared = 0.0;
  double two_thirds_ci_squared = 0.0;
  double residual = 0.0;
};

struct CoherenceAdditivity {
  double ab = 0.0;
  double ac = 0.0;
  double abc = 0.0;
  double q = 0.0;  // ab + ac - abc
};

namespace detail {

/// Mode occupation probabilities (P_A, P_B, P_C) read off the diagonal.
inline FlavorProbabilities mode_probabilities(const DensityMatrix& rho_abc) {
  return {rho_abc.matrix()(excitation_index(Flavor::e), excitation_index(Flavor::e)).real(),
          rho_abc.matrix()(excitation_index(Flavor::mu), excitation_index(Flavor::mu)).real(),
          rho_abc.matrix()(excitation_index(Flavor::tau), excitation_index(Flavor::tau)).real()};
}

}  // namespace detail

inline ChshTradeoff chsh_tradeoff(const DensityMatrix& rho_abc) {
  detail::require_dim(rho_abc, 8, "chsh_tradeoff");
  const FlavorProbabilities probs = detail::mode_probabilities(rho_abc);
  ChshTradeoff out;
  for (std::size_t k = 0; k < kAllPairs.size(); ++k) {
    const double c = chsh_max(pair_state(rho_abc, kAllPairs[k]));
    out.horodecki[k] = c * c;
    out.paper[k] = chsh_sq_paper(probs, kAllPairs[k]);
    out.horodecki_sum += out.horodecki[k];
    out.paper_sum += out.paper[k];
  }
  out.bound_ok = out.horodecki_sum <= kChshSquaredBound + kBoundTol &&
                 out.paper_sum <= kChshSquaredBound + kBoundTol;
  return out;
}

inline CoherenceConcurrenceIdentity coherence_concurrence_identity(const DensityMatrix& rho_abc) {
  detail::require_dim(rho_abc, 8, "coherence_concurrence_identity");
  const double purity = rho_abc.purity();
  if (purity < 1.0 - kPurityTol) {
    throw std::domain_error("coherence_concurrence_identity: state is not pure (Tr rho^2 = " +
                            std::to_string(purity) + ")");
  }
  const double d = composite_first_order_coherence(rho_abc);
  const double ci = composite_intrinsic_concurrence(rho_abc);
  CoherenceConcurrenceIdentity out;
  out.d_squared = d * d;
  out.two_thirds_ci_squared = 2.0 * ci * ci / 3.0;
  out.residual = out.d_squared + out.two_thirds_ci_squared - 1.0;
  return out;
}

inline CoherenceAdditivity coherence_additivity(const DensityMatrix& rho_abc) {
  detail::require_dim(rho_abc, 8, "coherence_additivity");
  CoherenceAdditivity out;
  out.ab = relative_entropy_of_coherence(pair_state(rho_abc, Pair::AB));
  out.ac = relative_entropy_of_coherence(pair_state(rho_abc, Pair::AC));
  out.abc = relative_entropy_of_coherence(rho_abc);
  out.q = out.ac + out.ab - out.abc;
  return out;
}

/// Which of the three relations held at a point.
struct BoundFlags {
  bool chsh = false;
  bool identity = false;
  bool coherence = false;

  bool all() const { return chsh && identity && coherence; }
};

struct TradeoffReport {
  BaselinePoint loe;
  Flavor flavor = Flavor::e;
  FlavorProbabilities probabilities{};
  ChshTradeoff chsh;
  double d_squared = 0.0;
  double two_thirds_ci_squared = 0.0;
  double identity_residual = 0.0;
  CoherenceAdditivity coherence;
  double coherence_q = 0.0;
  BoundFlags bounds_ok;
};

inline TradeoffReport evaluate_point(Flavor flavor, const BaselinePoint& point,
                                     const OscillationParams& params) {
  const FlavorAmplitudes amps = amplitudes(flavor, point, params);
  const DensityMatrix rho = tripartite_state(amps);

  TradeoffReport r;
  r.loe = point;
  r.flavor = flavor;
  r.probabilities = probabilities(amps);
  r.chsh = chsh_tradeoff(rho);

  const auto id = coherence_concurrence_identity(rho);
  r.d_squared = id.d_squared;
  r.two_thirds_ci_squared = id.two_thirds_ci_squared;
  r.identity_residual = id.residual;

  r.coherence = coherence_additivity(rho);
  r.coherence_q = r.coherence.q;

  r.bounds_ok.chsh = r.chsh.bound_ok;
  r.bounds_ok.identity = std::abs(r.identity_residual) <= kBoundTol;
  r.bounds_ok.coherence = r.coherence_q <= kBoundTol;
  return r;
}

}  // namespace nuqrt
