#pragma once

// Quantum-resource measures on the flavor states: Pauli correlation matrix,
// maximal CHSH value, first-order coherence, concurrence, intrinsic
// concurrence and relative entropy of coherence.

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "flavor_state.hpp"
#include "linalg.hpp"

namespace nuqrt {

/// Window inside which slightly negative radicands / eigenvalues are treated
/// as round-off and clamped to zero. Anything below raises.
inline constexpr double kClampWindow = 1e-12;
inline constexpr double kSimplexTol = 1e-8;

namespace detail {

inline double clamp_nonnegative(double v, const char* what) {
  if (v >= 0.0) return v;
  if (v >= -kClampWindow) return 0.0;
  throw std::domain_error(std::string(what) + ": negative value " + std::to_string(v) +
                          " beyond round-off (invalid state)");
}

inline void require_dim(const DensityMatrix& rho, std::size_t dim, const char* who) {
  if (rho.dim() != dim) {
    throw std::invalid_argument(std::string(who) + ": expected a " + std::to_string(dim) + "x" +
                                std::to_string(dim) + " state, got dimension " +
                                std::to_string(rho.dim()));
  }
}

inline constexpr std::array<Axis, 3> kPauliAxes{Axis::x, Axis::y, Axis::z};

}  // namespace detail

/// m_ij = Tr(rho sigma_i (x) sigma_j), i, j over x, y, z.
struct CorrelationMatrix {
  std::array<std::array<double, 3>, 3> m{};

  double operator()(std::size_t i, std::size_t j) const { return m[i][j]; }

  /// M^T M.
  std::array<std::array<double, 3>, 3> gram() const {
    std::array<std::array<double, 3>, 3> g{};
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t k = 0; k < 3; ++k) g[i][j] += m[k][i] * m[k][j];
    return g;
  }

  /// Eigenvalues of M^T M, descending.
  std::array<double, 3> gram_spectrum() const {
    const auto g = gram();
    ComplexMatrix gm(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) gm(i, j) = 0.5 * (g[i][j] + g[j][i]);
    const auto ev = hermitian_eigenvalues(gm);
    return {ev[0], ev[1], ev[2]};
  }
};

inline CorrelationMatrix correlation_matrix(const DensityMatrix& rho_pair) {
  detail::require_dim(rho_pair, 4, "correlation_matrix");
  CorrelationMatrix out;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      const ComplexMatrix op = kron(pauli(detail::kPauliAxes[i]), pauli(detail::kPauliAxes[j]));
      out.m[i][j] = (rho_pair.matrix() * op).trace().real();
    }
  return out;
}

/// Horodecki maximal Bell-CHSH expectation 2 sqrt(tau1 + tau2), in [0, 2 sqrt 2].
inline double chsh_max(const DensityMatrix& rho_pair) {
  const auto tau = correlation_matrix(rho_pair).gram_spectrum();
  return 2.0 * std::sqrt(detail::clamp_nonnegative(tau[0] + tau[1], "chsh_max"));
}

/// Closed-form squared CHSH value in the figure convention,
/// 2{4 P_x P_y + max[4 P_x P_y, (2 P_z - 1)^2]}, where x, y are the pair's
/// modes and z the remaining one. Equals chsh_max^2 / 2.
inline double chsh_sq_paper(const FlavorProbabilities& probs, Pair pair) {
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= -kSimplexTol)) throw std::invalid_argument("chsh_sq_paper: negative probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > kSimplexTol)
    throw std::invalid_argument("chsh_sq_paper: probabilities sum to " + std::to_string(sum));

  const auto md = modes(pair);
  const double px = probs[index(mode_flavor(md.first))];
  const double py = probs[index(mode_flavor(md.second))];
  const double pz = probs[index(mode_flavor(md.complement))];
  const double entangled = 4.0 * px * py;
  const double polarized = (2.0 * pz - 1.0) * (2.0 * pz - 1.0);
  return 2.0 * (entangled + std::max(entangled, polarized));
}

/// sqrt(2 Tr(rho^2) - 1) for a single qubit.
inline double first_order_coherence(const DensityMatrix& rho_single) {
  detail::require_dim(rho_single, 2, "first_order_coherence");
  return std::sqrt(
      detail::clamp_nonnegative(2.0 * rho_single.purity() - 1.0, "first_order_coherence"));
}

inline double composite_first_order_coherence(const DensityMatrix& rho_abc) {
  detail::require_dim(rho_abc, 8, "composite_first_order_coherence");
  double sum = 0.0;
  for (Qubit q : kAllQubits) {
    const double d = first_order_coherence(single_state(rho_abc, q));
    sum += d * d;
  }
  return std::sqrt(sum / 3.0);
}

/// (sigma_y (x) sigma_y) rho* (sigma_y (x) sigma_y).
inline ComplexMatrix spin_flip(const DensityMatrix& rho_pair) {
  detail::require_dim(rho_pair, 4, "spin_flip");
  const ComplexMatrix yy = kron(pauli(Axis::y), pauli(Axis::y));
  return yy * rho_pair.matrix().conjugate() * yy;
}

/// Eigenvalues of rho below this are numerical rank deficiency and dropped
/// before the spin-flip roots are formed.
inline constexpr double kRankTol = 1e-14;

/// Square roots of the eigenvalues of rho * rho~, descending. With
/// rho = sum_i v_i v_i^dagger, these are the singular values of
/// tau_ij = v_i^T (Y x Y) v_j, read off the Hermitian dilation
/// [[0, tau], [tau^dagger, 0]] whose spectrum is +-sigma.
inline std::array<double, 4> spin_flip_roots(const DensityMatrix& rho_pair) {
  detail::require_dim(rho_pair, 4, "spin_flip_roots");
  const Eigensystem es = hermitian_eigensystem(rho_pair.matrix());
  const ComplexMatrix yy = kron(pauli(Axis::y), pauli(Axis::y));

  ComplexMatrix x(4, 4);
  for (std::size_t k = 0; k < 4; ++k) {
    const double mu = es.values[k] < kRankTol ? 0.0 : es.values[k];
    for (std::size_t r = 0; r < 4; ++r) x(r, k) = es.vectors(r, k) * std::sqrt(mu);
  }
  const ComplexMatrix tau = x.conjugate().adjoint() * yy * x;

  ComplexMatrix dilation(8, 8);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) {
      dilation(r, c + 4) = tau(r, c);
      dilation(c + 4, r) = std::conj(tau(r, c));
    }
  const auto ev = detail::jacobi(dilation).values;

  std::array<double, 4> out{};
  for (std::size_t k = 0; k < 4; ++k) out[k] = std::max(0.0, ev[k]);
  return out;
}

/// Eigenvalues of rho * rho~, descending.
inline std::array<double, 4> spin_flip_spectrum(const DensityMatrix& rho_pair) {
  auto l = spin_flip_roots(rho_pair);
  for (double& v : l) v *= v;
  return l;
}

/// Wootters concurrence max{0, l1 - l2 - l3 - l4}, l the spin-flip roots.
inline double concurrence(const DensityMatrix& rho_pair) {
  const auto l = spin_flip_roots(rho_pair);
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

/// sqrt(Tr(rho rho~)).
inline double intrinsic_concurrence(const DensityMatrix& rho_pair) {
  const Complex t = (rho_pair.matrix() * spin_flip(rho_pair)).trace();
  return std::sqrt(detail::clamp_nonnegative(t.real(), "intrinsic_concurrence"));
}

inline double composite_intrinsic_concurrence(const DensityMatrix& rho_abc) {
  detail::require_dim(rho_abc, 8, "composite_intrinsic_concurrence");
  double sum = 0.0;
  for (Pair p : kAllPairs) {
    const double c = intrinsic_concurrence(pair_state(rho_abc, p));
    sum += c * c;
  }
  return std::sqrt(sum);
}

/// S(diag rho) - S(rho) in the occupation-number basis, in bits.
inline double relative_entropy_of_coherence(const DensityMatrix& rho) {
  std::vector<double> diag(rho.dim());
  for (std::size_t i = 0; i < rho.dim(); ++i) diag[i] = rho.matrix()(i, i).real();
  const double c = shannon_entropy(diag) - von_neumann_entropy(rho);
  return detail::clamp_nonnegative(c, "relative_entropy_of_coherence");
}

}  // namespace nuqrt
