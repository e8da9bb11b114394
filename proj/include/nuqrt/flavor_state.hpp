#pragma once

// Occupation-number encoding of a single neutrino as a three-qubit state.
// Qubit A is the electron mode, B the muon mode, C the tau mode:
//   |nu_e> = |100>, |nu_mu> = |010>, |nu_tau> = |001>.

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

#include "linalg.hpp"
#include "oscillation.hpp"

namespace nuqrt {

enum class Pair { AB, AC, BC };
enum class Qubit { A, B, C };

inline constexpr std::array<Pair, 3> kAllPairs{Pair::AB, Pair::AC, Pair::BC};
inline constexpr std::array<Qubit, 3> kAllQubits{Qubit::A, Qubit::B, Qubit::C};

inline std::string_view to_string(Pair p) {
  switch (p) {
    case Pair::AB: return "AB";
    case Pair::AC: return "AC";
    case Pair::BC: return "BC";
  }
  return "?";
}

inline std::string_view to_string(Qubit q) {
  switch (q) {
    case Qubit::A: return "A";
    case Qubit::B: return "B";
    case Qubit::C: return "C";
  }
  return "?";
}

/// Flavor whose occupation mode the qubit carries.
inline Flavor mode_flavor(Qubit q) { return static_cast<Flavor>(static_cast<int>(q)); }

/// The two qubits of a pair, and the one left out.
struct PairModes {
  Qubit first;
  Qubit second;
  Qubit complement;
};

inline PairModes modes(Pair p) {
  switch (p) {
    case Pair::AB: return {Qubit::A, Qubit::B, Qubit::C};
    case Pair::AC: return {Qubit::A, Qubit::C, Qubit::B};
    case Pair::BC: return {Qubit::B, Qubit::C, Qubit::A};
  }
  throw std::invalid_argument("unknown pair");
}

inline constexpr double kAmplitudeNormTol = 1e-8;

/// Basis index (0-based) of the single-excitation state for each flavor.
inline std::size_t excitation_index(Flavor f) {
  switch (f) {
    case Flavor::e: return 4;    // |100>
    case Flavor::mu: return 2;   // |010>
    case Flavor::tau: return 1;  // |001>
  }
  return 0;
}

/// rho = |psi><psi| with |psi> = a_e|100> + a_mu|010> + a_tau|001>.
inline DensityMatrix tripartite_state(const FlavorAmplitudes& amps) {
  const double n = amps.norm();
  if (std::abs(n - 1.0) > kAmplitudeNormTol) {
    throw std::invalid_argument("tripartite_state: amplitudes not normalized (norm " +
                                std::to_string(n) + ")");
  }
  std::vector<Complex> psi(8);
  for (Flavor f : {Flavor::e, Flavor::mu, Flavor::tau}) psi[excitation_index(f)] = amps[f];

  ComplexMatrix rho(8, 8);
  for (std::size_t r = 0; r < 8; ++r)
    for (std::size_t c = 0; c < 8; ++c) rho(r, c) = psi[r] * std::conj(psi[c]);
  return DensityMatrix(std::move(rho), "ABC");
}

inline DensityMatrix pair_state(const DensityMatrix& rho_abc, Pair pair) {
  if (rho_abc.qubits() != 3) throw std::invalid_argument("pair_state: expected a three-qubit state");
  return partial_trace(rho_abc, to_string(pair));
}

inline DensityMatrix single_state(const DensityMatrix& rho_abc, Qubit which) {
  if (rho_abc.qubits() != 3)
    throw std::invalid_argument("single_state: expected a three-qubit state");
  return partial_trace(rho_abc, to_string(which));
}

}  // namespace nuqrt
