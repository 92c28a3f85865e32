#pragma once

// Subcommand implementations behind the command-line driver. Exit codes:
// 0 success, 1 failed validation checks, 2 config errors, 3 numerical errors.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "nuwalk/config.hpp"
#include "nuwalk/embedding.hpp"
#include "nuwalk/io.hpp"
#include "nuwalk/types.hpp"

namespace nuwalk {

inline double cptp_tolerance() {
  if (const char* env = std::getenv("OSC_TOL_CPTP")) {
    try {
      return std::stod(env);
    } catch (const std::exception&) {
      throw ConfigError("OSC_TOL_CPTP is not a number");
    }
  }
  return 1e-12;
}

inline int first_crossing(const std::vector<std::vector<double>>& probs, int beta) {
  for (size_t t = 0; t < probs.size(); ++t) {
    if (probs[t][beta] == 0.5) return static_cast<int>(t);
    if (t > 0 && (probs[t - 1][beta] - 0.5) * (probs[t][beta] - 0.5) < 0.0)
      return static_cast<int>(t);
  }
  return -1;
}

inline int cmd_simulate(const std::string& config_path, std::ostream& os = std::cout) {
  ScenarioConfig cfg = load_scenario(config_path);
  if (cfg.output.empty()) throw ConfigError("simulate requires an 'output' path");
  const FlavorScenario& sc = cfg.scenario;
  const TransitionSeries series = walk_transition_series(sc);

  const double residual = series.max_completeness();
  if (residual > 1e-8)
    throw NumericalError("Kraus completeness residual " + format_sig(residual, 3) +
                         " exceeds 1e-8");
  double worst_sum = 0.0;
  for (double s : series.prob_sum) worst_sum = std::max(worst_sum, std::abs(s - 1.0));
  if (sc.start == StartKind::Momentum && worst_sum > 1e-9)
    throw NumericalError("momentum-start row sums deviate from 1 by " +
                         format_sig(worst_sum, 3));

  atomic_write(cfg.output, series_csv(series, sc));

  const auto& labels = flavor_labels(sc.flavors);
  os << "output=" << cfg.output << "\n";
  os << "steps=" << sc.steps << "\n";
  os << "k_tilde_requested=" << format_sig(sc.k_tilde, 12) << "\n";
  if (sc.start == StartKind::Momentum) {
    const MomentumSpec m = scenario_momentum(sc);
    os << "k_tilde_snapped=" << format_sig(m.k_tilde, 12) << "\n";
    os << "momentum_index=" << m.index << "\n";
    os << "snap_distance=" << format_sig(m.snap_distance, 12) << "\n";
  }
  for (int b = 0; b < sc.flavors; ++b) {
    double lo = 1.0, hi = 0.0;
    for (const auto& row : series.probs) {
      lo = std::min(lo, row[b]);
      hi = std::max(hi, row[b]);
    }
    const std::string col = "P_" + labels[sc.initial_flavor] + labels[b];
    os << "max_" << col << "=" << format_sig(hi, 12) << "\n";
    os << "min_" << col << "=" << format_sig(lo, 12) << "\n";
    const int cross = first_crossing(series.probs, b);
    os << "first_crossing_" << col << "=";
    if (cross < 0)
      os << "none\n";
    else
      os << cross << "\n";
  }
  os << "completeness_residual_max=" << format_sig(residual, 12) << "\n";
  if (sc.start != StartKind::Momentum)
    os << "probability_leakage_max=" << format_sig(worst_sum, 12) << "\n";
  return 0;
}

struct ValidationCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

inline int cmd_validate(const std::string& config_path, bool inject_nonunitary,
                        std::ostream& os = std::cout) {
  ScenarioConfig cfg = load_scenario(config_path);
  const FlavorScenario& sc = cfg.scenario;
  const double tol_cptp = cptp_tolerance();
  std::vector<Mat2> coins = sector_coins(sc);
  if (inject_nonunitary) coins[0](0, 0) += 1e-3;
  std::vector<ValidationCheck> checks;

  {
    double worst = 0.0;
    for (const auto& c : coins) worst = std::max(worst, unitarity_residual(c));
    checks.push_back({"coin_unitarity", worst < kTolExact,
                      "max residual " + format_sig(worst, 3)});
  }
  {
    // Recurrence vs direct state-vector evolution of the coin basis states.
    const int t_probe = std::min(sc.steps, 8);
    double worst = 0.0;
    const LatticeSpec probe{static_cast<long>(t_probe) * sc.lattice.spacing + 1,
                            sc.lattice.spacing, Boundary::Open};
    for (size_t f = 0; f < coins.size(); ++f) {
      const KrausFamily fam = kraus_at(t_probe, coins[f], sc.lattice.spacing);
      std::vector<WalkState> basis;
      for (int j = 0; j < 2; ++j) {
        Vec2 chi = Vec2::Zero();
        chi(j) = 1.0;
        basis.push_back(evolve(localized_state(chi, probe), coins[f], t_probe));
      }
      for (const auto& [x, k] : fam.ops)
        for (int j = 0; j < 2; ++j) {
          Vec2 col = Vec2::Zero();
          if (auto it = basis[j].psi.find(x); it != basis[j].psi.end()) col = it->second;
          worst = std::max(worst, (k.col(j) - col).cwiseAbs().maxCoeff());
        }
    }
    checks.push_back({"kraus_vs_state_vector", worst < kTolExact,
                      "t=" + std::to_string(t_probe) + " max err " + format_sig(worst, 3)});
  }
  {
    const int t_probe = std::min(sc.steps, 60);
    std::vector<KrausFamily> fams;
    for (size_t f = 0; f < coins.size(); ++f)
      fams.push_back(kraus_at(t_probe, coins[f], sc.lattice.spacing));
    const double r = completeness_residual(block_kraus(fams));
    checks.push_back({"kraus_completeness", r < tol_cptp,
                      "t=" + std::to_string(t_probe) + " residual " + format_sig(r, 3) +
                          " tol " + format_sig(tol_cptp, 3)});
  }
  {
    const double kt = effective_k_tilde(sc);
    double worst = 0.0;
    for (double th : sc.thetas) {
      const Vec2 v = mass_eigenvector(th, kt);
      const Mat2 wk = momentum_step_operator(dirac_coin(th), kt);
      const cplx lambda = std::polar(1.0, -dispersion_energy(th, kt));
      worst = std::max(worst, (wk * v - lambda * v).cwiseAbs().maxCoeff());
    }
    checks.push_back({"dispersion_eigenvector", worst < kTolEigen,
                      "max residual " + format_sig(worst, 3)});
  }
  if (sc.start == StartKind::Momentum) {
    FlavorScenario probe = sc;
    probe.steps = std::min(sc.steps, 150);
    const TransitionSeries series = walk_transition_series(probe, coins);
    double worst = 0.0;
    for (int t = 0; t <= probe.steps; ++t)
      for (int b = 0; b < sc.flavors; ++b)
        worst = std::max(worst, std::abs(series.probs[t][b] -
                                         analytic_transition(sc.initial_flavor, b, t, sc,
                                                             EnergyModel::WalkDispersion)));
    checks.push_back({"walk_vs_analytic", worst < 1e-8,
                      "t<=" + std::to_string(probe.steps) + " max dev " + format_sig(worst, 3)});
  } else {
    checks.push_back({"walk_vs_analytic", true, "skipped: non-momentum start"});
  }
  if (sc.flavors == 3) {
    const double r = max_abs(restrict_to_flavor(embedded_product(sc.mixing)) -
                             pmns_matrix(sc.mixing));
    checks.push_back({"embedding_restriction", r < kTolExact,
                      "max deviation " + format_sig(r, 3)});
  }

  bool all = true;
  for (const auto& c : checks) {
    os << (c.pass ? "[ok]   " : "[FAIL] ") << c.name << ": " << c.detail << "\n";
    all = all && c.pass;
  }
  os << (all ? "validation passed" : "validation FAILED") << "\n";
  return all ? 0 : 1;
}

inline int cmd_kraus(const std::string& config_path, int t, std::ostream& os = std::cout) {
  if (t < 0) throw ConfigError("step must be >= 0");
  ScenarioConfig cfg = load_scenario(config_path);
  os << dump_family(scenario_block_kraus(cfg.scenario, t));
  return 0;
}

inline int cmd_embed(const std::string& config_path, std::ostream& os = std::cout) {
  ScenarioConfig cfg = load_scenario(config_path);
  if (cfg.scenario.flavors != 3)
    throw ConfigError("embed requires a three-flavor scenario");
  const MixingSpec& m = cfg.scenario.mixing;
  for (int which = 0; which <= 3; ++which)
    os << dump_labeled_matrix("factor U" + std::to_string(which), embed_factor(which, m))
       << "\n";
  os << dump_labeled_matrix("product", embedded_product(m));
  return 0;
}

}  // namespace nuwalk
