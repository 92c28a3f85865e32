#pragma once

// Mode entanglement of the oscillating state. In the occupation ("mode")
// picture the time-evolved flavor state is a W-like superposition of one-hot
// basis states weighted by U~_{alpha beta}(t); linear entropies of its
// reductions reduce to closed forms in the transition probabilities.

#include <cmath>
#include <vector>

#include "nuwalk/neutrino.hpp"
#include "nuwalk/types.hpp"

namespace nuwalk {

// S = d/(d-1) (1 - Tr rho^2).
inline double linear_entropy(const Mat& rho) {
  const double d = static_cast<double>(rho.rows());
  if (rho.rows() != rho.cols() || rho.rows() < 2)
    throw DimensionMismatch("density matrix of dim >= 2 required");
  return d / (d - 1.0) * (1.0 - (rho * rho).trace().real());
}

// U~_{alpha beta}(t) = sum_j U_{alpha j} U*_{beta j} e^{-i E_j t}.
inline Vec mode_amplitudes(int alpha, double t, const FlavorScenario& sc,
                           EnergyModel model = EnergyModel::WalkDispersion) {
  const Mat u = mixing_matrix(sc);
  const auto e = sector_energies(sc, model);
  Vec amps = Vec::Zero(sc.flavors);
  for (int b = 0; b < sc.flavors; ++b)
    for (int j = 0; j < sc.flavors; ++j)
      amps(b) += u(alpha, j) * std::conj(u(b, j)) * std::polar(1.0, -e[j] * t);
  return amps;
}

// Flavor beta occupies the one-hot basis state with bit (flavors-1-beta) set,
// e.g. three flavors: e -> |100>, mu -> |010>, tau -> |001>.
inline int one_hot_index(int beta, int flavors) {
  return 1 << (flavors - 1 - beta);
}

inline Vec occupation_state(const Vec& amps) {
  const int n = static_cast<int>(amps.size());
  Vec psi = Vec::Zero(1 << n);
  for (int b = 0; b < n; ++b) psi(one_hot_index(b, n)) = amps(b);
  return psi;
}

// Reduced 2x2 density matrix of one mode of a pure occupation-space state.
inline Mat single_mode_density(const Vec& psi, int mode, int flavors) {
  const int bit = flavors - 1 - mode;
  const int dim = 1 << flavors;
  if (psi.size() != dim) throw DimensionMismatch("occupation state has wrong dimension");
  Mat rho = Mat::Zero(2, 2);
  for (int m = 0; m < dim; ++m) {
    const int i = (m >> bit) & 1;
    for (int j = 0; j < 2; ++j) {
      const int mj = (m & ~(1 << bit)) | (j << bit);
      rho(i, j) += psi(m) * std::conj(psi(mj));
    }
  }
  return rho;
}

inline double pair_entropy_product(double p1, double p2) { return 4.0 * p1 * p2; }

inline double partial_entropy_from_prob(double p_traced) {
  return 4.0 * p_traced * (1.0 - p_traced);
}

inline double average_entropy_from_probs(double pe, double pmu, double ptau) {
  return 8.0 / 3.0 * (pe * pmu + pe * ptau + pmu * ptau);
}

// Two-flavor linear entropy of either single-mode reduction: 4 P1 P2.
inline double two_flavor_entropy(int alpha, double t, const FlavorScenario& sc,
                                 EnergyModel model = EnergyModel::WalkDispersion) {
  const Vec amps = mode_amplitudes(alpha, t, sc, model);
  return pair_entropy_product(std::norm(amps(0)), std::norm(amps(1)));
}

// Linear entropy of the bipartition (pair | traced flavor gamma): 4 P_g (1 - P_g).
inline double partial_entropy(int alpha, int gamma, double t, const FlavorScenario& sc,
                              EnergyModel model = EnergyModel::WalkDispersion) {
  const Vec amps = mode_amplitudes(alpha, t, sc, model);
  return partial_entropy_from_prob(std::norm(amps(gamma)));
}

// Average over the three single-flavor bipartitions.
inline double average_entropy(int alpha, double t, const FlavorScenario& sc,
                              EnergyModel model = EnergyModel::WalkDispersion) {
  const Vec amps = mode_amplitudes(alpha, t, sc, model);
  return average_entropy_from_probs(std::norm(amps(0)), std::norm(amps(1)),
                                    std::norm(amps(2)));
}

}  // namespace nuwalk
