#pragma once

// Flavor oscillations as reduced coin dynamics: each mass eigenstate evolves
// in its own walk sector with rotation angle theta_f at a shared momentum
// k_tilde, mixed by a 2x2 rotation or the 3x3 PMNS matrix U = U3 U2 U1 U0.

#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "nuwalk/kraus.hpp"
#include "nuwalk/types.hpp"
#include "nuwalk/walk.hpp"

namespace nuwalk {

struct MixingSpec {
  double phi12 = 0.0;
  double phi13 = 0.0;
  double phi23 = 0.0;
  double delta_cp = 0.0;
  double alpha1 = 0.0;
  double alpha2 = 0.0;
};

inline Mat two_flavor_mixing(double phi) {
  Mat u(2, 2);
  u << std::cos(phi), std::sin(phi), -std::sin(phi), std::cos(phi);
  return u;
}

// Factors in application order U0 (Majorana phases), U1 (12 rotation),
// U2 (13 rotation with the CP phase), U3 (23 rotation).
inline Mat pmns_factor(int which, const MixingSpec& m) {
  Mat u = Mat::Identity(3, 3);
  switch (which) {
    case 0:
      u(0, 0) = std::polar(1.0, m.alpha1 / 2.0);
      u(1, 1) = std::polar(1.0, m.alpha2 / 2.0);
      break;
    case 1: {
      const double c = std::cos(m.phi12), s = std::sin(m.phi12);
      u(0, 0) = c; u(0, 1) = s;
      u(1, 0) = -s; u(1, 1) = c;
      break;
    }
    case 2: {
      const double c = std::cos(m.phi13), s = std::sin(m.phi13);
      u(0, 0) = c; u(0, 2) = s * std::polar(1.0, -m.delta_cp);
      u(2, 0) = -s * std::polar(1.0, m.delta_cp); u(2, 2) = c;
      break;
    }
    case 3: {
      const double c = std::cos(m.phi23), s = std::sin(m.phi23);
      u(1, 1) = c; u(1, 2) = s;
      u(2, 1) = -s; u(2, 2) = c;
      break;
    }
    default:
      throw DimensionMismatch("factor index must be 0..3");
  }
  return u;
}

inline Mat pmns_matrix(const MixingSpec& m) {
  return pmns_factor(3, m) * pmns_factor(2, m) * pmns_factor(1, m) * pmns_factor(0, m);
}

enum class EnergyModel { WalkDispersion, UltraRelativistic };

inline double model_energy(EnergyModel model, double theta, double k_tilde) {
  if (model == EnergyModel::WalkDispersion) return dispersion_energy(theta, k_tilde);
  return k_tilde + theta * theta / (2.0 * k_tilde);
}

enum class StartKind { Momentum, Localized, Amplitudes };

struct FlavorScenario {
  int flavors = 2;
  std::vector<double> thetas;
  double k_tilde = 0.0;
  LatticeSpec lattice;
  double phi = 0.0;        // two-flavor mixing angle
  MixingSpec mixing;       // three-flavor angles
  int initial_flavor = 0;
  int steps = 0;
  StartKind start = StartKind::Momentum;
  std::map<long, cplx> start_amplitudes;
  bool entropy = false;
  EnergyModel model = EnergyModel::WalkDispersion;
};

inline const std::vector<std::string>& flavor_labels(int flavors) {
  static const std::vector<std::string> two = {"mu", "tau"};
  static const std::vector<std::string> three = {"e", "mu", "tau"};
  if (flavors == 2) return two;
  if (flavors == 3) return three;
  throw DimensionMismatch("flavors must be 2 or 3");
}

inline Mat mixing_matrix(const FlavorScenario& sc) {
  if (sc.flavors == 2) return two_flavor_mixing(sc.phi);
  if (sc.flavors == 3) return pmns_matrix(sc.mixing);
  throw DimensionMismatch("flavors must be 2 or 3");
}

inline MomentumSpec scenario_momentum(const FlavorScenario& sc) {
  return snap_momentum(sc.k_tilde, sc.lattice);
}

// Momentum starts use the snapped lattice momentum; localized starts take
// k_tilde as given (an open lattice has no discrete momentum grid).
inline double effective_k_tilde(const FlavorScenario& sc) {
  if (sc.start == StartKind::Localized && sc.lattice.boundary == Boundary::Open)
    return sc.k_tilde;
  return scenario_momentum(sc).k_tilde;
}

inline std::vector<Mat2> sector_coins(const FlavorScenario& sc) {
  std::vector<Mat2> coins;
  coins.reserve(sc.thetas.size());
  for (double th : sc.thetas) coins.push_back(dirac_coin(th));
  return coins;
}

// Unit vector in the 2n coin space with (f, g) of sector f in block f.
inline Vec mass_state_coin(int sector, const FlavorScenario& sc) {
  if (sector < 0 || sector >= sc.flavors) throw DimensionMismatch("sector out of range");
  Vec v = Vec::Zero(2 * sc.flavors);
  v.segment<2>(2 * sector) = mass_eigenvector(sc.thetas[sector], effective_k_tilde(sc));
  return v;
}

inline Vec flavor_state_coin(int alpha, const FlavorScenario& sc) {
  if (alpha < 0 || alpha >= sc.flavors) throw DimensionMismatch("flavor out of range");
  const Mat u = mixing_matrix(sc);
  Vec v = Vec::Zero(2 * sc.flavors);
  for (int i = 0; i < sc.flavors; ++i) v += u(alpha, i) * mass_state_coin(i, sc);
  return v;
}

inline Mat flavor_density(int alpha, const FlavorScenario& sc) {
  const Vec v = flavor_state_coin(alpha, sc);
  return v * v.adjoint();
}

inline Mat flavor_projector(int beta, const FlavorScenario& sc) {
  return flavor_density(beta, sc);
}

inline std::vector<double> sector_energies(const FlavorScenario& sc, EnergyModel model) {
  const double kt = effective_k_tilde(sc);
  std::vector<double> e;
  e.reserve(sc.thetas.size());
  for (double th : sc.thetas) e.push_back(model_energy(model, th, kt));
  return e;
}

// |sum_j U_{alpha j} U*_{beta j} e^{-i E_j t}|^2; t may be fractional.
inline double analytic_transition(int alpha, int beta, double t, const FlavorScenario& sc,
                                  EnergyModel model = EnergyModel::WalkDispersion) {
  const Mat u = mixing_matrix(sc);
  const auto e = sector_energies(sc, model);
  cplx amp = 0.0;
  for (int j = 0; j < sc.flavors; ++j)
    amp += u(alpha, j) * std::conj(u(beta, j)) * std::polar(1.0, -e[j] * t);
  return std::norm(amp);
}

struct TransitionSeries {
  int flavors = 0;
  std::vector<std::vector<double>> probs;  // [t][beta]
  std::vector<double> purity;
  std::vector<double> prob_sum;
  std::vector<double> completeness;

  double max_completeness() const {
    double m = 0.0;
    for (double r : completeness) m = std::max(m, r);
    return m;
  }
};

inline ExtendedKrausFamily initial_extended_family(const FlavorScenario& sc) {
  const int dim = 2 * sc.flavors;
  ExtendedKrausFamily fam;
  fam.step = 0;
  fam.sectors = sc.flavors;
  fam.lattice = sc.lattice;
  switch (sc.start) {
    case StartKind::Momentum: {
      const MomentumSpec m = scenario_momentum(sc);
      const double norm = 1.0 / std::sqrt(static_cast<double>(sc.lattice.sites()));
      for (long x = -sc.lattice.half_size; x <= sc.lattice.half_size; ++x)
        fam.ops[x] = norm * std::polar(1.0, -m.k * static_cast<double>(x)) *
                     Mat::Identity(dim, dim);
      break;
    }
    case StartKind::Localized:
      fam.ops[0] = Mat::Identity(dim, dim);
      break;
    case StartKind::Amplitudes: {
      double n2 = 0.0;
      for (const auto& [x, c] : sc.start_amplitudes) n2 += std::norm(c);
      if (std::abs(n2 - 1.0) > 1e-10)
        throw UnnormalizedInput("initial position amplitudes must have unit norm");
      for (const auto& [x, c] : sc.start_amplitudes) {
        if (std::abs(x) > sc.lattice.half_size)
          throw OutOfSupport("amplitude site outside lattice");
        fam.ops[x] = c * Mat::Identity(dim, dim);
      }
      break;
    }
  }
  return fam;
}

// The block family dressed with the initial position state is advanced
// incrementally (stepping commutes with extension); each row applies the
// channel to the initial flavor density and projects on the flavor states.
// The coin overload exists so callers can probe the engine with perturbed
// coins; the default uses the scenario's sector coins.
inline TransitionSeries walk_transition_series(const FlavorScenario& sc,
                                               const std::vector<Mat2>& coins) {
  if (static_cast<int>(sc.thetas.size()) != sc.flavors)
    throw DimensionMismatch("one theta per flavor required");
  if (sc.start == StartKind::Localized && sc.lattice.boundary == Boundary::Open &&
      sc.lattice.half_size < static_cast<long>(sc.steps) * sc.lattice.spacing)
    throw OutOfSupport("open lattice too small for the requested number of steps");
  const Mat rho0 = flavor_density(sc.initial_flavor, sc);
  std::vector<Vec> detect;
  detect.reserve(sc.flavors);
  for (int b = 0; b < sc.flavors; ++b) detect.push_back(flavor_state_coin(b, sc));

  TransitionSeries out;
  out.flavors = sc.flavors;
  out.probs.reserve(sc.steps + 1);
  ExtendedKrausFamily fam = initial_extended_family(sc);
  for (int t = 0; t <= sc.steps; ++t) {
    const Mat rho = apply_channel(fam, rho0);
    std::vector<double> row(sc.flavors);
    double sum = 0.0;
    for (int b = 0; b < sc.flavors; ++b) {
      row[b] = std::max(0.0, (detect[b].adjoint() * rho * detect[b])(0, 0).real());
      sum += row[b];
    }
    out.probs.push_back(std::move(row));
    out.prob_sum.push_back(sum);
    out.purity.push_back((rho * rho).trace().real());
    out.completeness.push_back(completeness_residual(fam));
    if (t < sc.steps) fam = step_extended(fam, coins);
  }
  return out;
}

inline TransitionSeries walk_transition_series(const FlavorScenario& sc) {
  return walk_transition_series(sc, sector_coins(sc));
}

// Unextended block family of the scenario's sectors at step t.
inline ExtendedKrausFamily scenario_block_kraus(const FlavorScenario& sc, int t) {
  std::vector<KrausFamily> fams;
  fams.reserve(sc.flavors);
  for (int f = 0; f < sc.flavors; ++f)
    fams.push_back(kraus_at(t, dirac_coin(sc.thetas[f]), sc.lattice.spacing, sc.thetas[f]));
  return block_kraus(fams);
}

// Phase advanced per km of baseline by dm^2 [eV^2] at energy E [GeV]:
// kOscPhasePerKm * dm2 / E  (the familiar 1.27 dm2 L / E with L in km).
inline constexpr double kOscPhasePerKm = 1.2669327;

struct PhysicsMap {
  std::vector<double> thetas;
  double delta_theta2_per_ev2 = 0.0;  // sigma: dtheta^2_{j1} = sigma * dm^2_{j1}
  std::vector<std::string> warnings;
};

// Map mass-squared splittings to sector angles: theta_j = sqrt(theta1^2 +
// sigma dm^2_{j1}) with sigma chosen so the per-step phase dtheta^2/(4 k~)
// times steps_per_km equals the physical phase per km. Small-angle validity
// is warned above 0.3 and enforced inside (0, pi/2).
inline PhysicsMap physics_to_walk(const std::vector<double>& delta_m2_from_1,
                                  double energy_gev, double k_tilde, double theta1,
                                  double steps_per_km) {
  if (energy_gev <= 0.0 || k_tilde <= 0.0 || steps_per_km <= 0.0)
    throw ConfigError("energy, k_tilde and steps_per_km must be positive");
  PhysicsMap out;
  out.delta_theta2_per_ev2 =
      4.0 * k_tilde * kOscPhasePerKm / (energy_gev * steps_per_km);
  out.thetas.push_back(theta1);
  for (double dm2 : delta_m2_from_1) {
    const double t2 = theta1 * theta1 + out.delta_theta2_per_ev2 * dm2;
    if (t2 < 0.0) throw InfeasibleAngles("negative theta^2 from the requested splitting");
    const double th = std::sqrt(t2);
    if (th <= 0.0 || th >= std::numbers::pi / 2.0)
      throw InfeasibleAngles("sector angle outside (0, pi/2)");
    if (th > 0.3)
      out.warnings.push_back("theta = " + std::to_string(th) +
                             " exceeds 0.3; small-angle mapping is inaccurate");
    out.thetas.push_back(th);
  }
  return out;
}

}  // namespace nuwalk
