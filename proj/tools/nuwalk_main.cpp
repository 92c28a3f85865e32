// Command-line driver for the neutrino walk engine.

#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "nuwalk/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Quantum-walk neutrino oscillation engine"};
  app.require_subcommand(1);

  std::string sim_config;
  auto* sim = app.add_subcommand("simulate", "Run a scenario and write a CSV series");
  sim->add_option("config", sim_config, "Scenario config file")->required();

  std::string val_config;
  bool inject = false;
  auto* val = app.add_subcommand("validate", "Run internal consistency checks");
  val->add_option("config", val_config, "Scenario config file")->required();
  val->add_flag("--inject-nonunitary", inject)->group("");

  std::string kraus_config;
  int kraus_t = 0;
  auto* kr = app.add_subcommand("kraus", "Dump the Kraus family at a given step");
  kr->add_option("config", kraus_config, "Scenario config file")->required();
  kr->add_option("--t", kraus_t, "Time step")->required();

  std::string embed_config;
  auto* emb = app.add_subcommand("embed", "Dump the qubit embedding of the mixing matrix");
  emb->add_option("config", embed_config, "Scenario config file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) return nuwalk::cmd_simulate(sim_config);
    if (val->parsed()) return nuwalk::cmd_validate(val_config, inject);
    if (kr->parsed()) return nuwalk::cmd_kraus(kraus_config, kraus_t);
    if (emb->parsed()) return nuwalk::cmd_embed(embed_config);
  } catch (const nuwalk::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const nuwalk::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
