// Finds where (2/3) C_I^2 peaks along the default electron sweep and prints
// the state of every measure there.

#include <algorithm>
#include <iostream>

#include "nuqrt/nuqrt.hpp"

int main() {
  const nuqrt::SweepConfig config = nuqrt::default_config(nuqrt::Flavor::e);
  const auto rows = nuqrt::run_sweep(config);
  const auto peak = std::max_element(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return a.two_thirds_ci_squared < b.two_thirds_ci_squared;
  });

  std::cout << "L/E = " << peak->loe.loe << " km/MeV\n"
            << "P_e, P_mu, P_tau = " << peak->probabilities[0] << ", " << peak->probabilities[1]
            << ", " << peak->probabilities[2] << '\n'
            << "D^2 = " << peak->d_squared << ", (2/3) C_I^2 = " << peak->two_thirds_ci_squared
            << '\n'
            << "sum <CHSH>^2 (Horodecki) = " << peak->chsh.horodecki_sum << '\n'
            << "Q = " << peak->coherence_q << '\n';
}
