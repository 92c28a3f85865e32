#pragma once

// Plain key = value scenario files, one pair per line, # comments.

#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "nuwalk/neutrino.hpp"
#include "nuwalk/types.hpp"

namespace nuwalk {

inline std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline double parse_double(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': not a number: '" + v + "'");
  }
}

inline long parse_long(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    long n = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return n;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': not an integer: '" + v + "'");
  }
}

inline std::vector<double> parse_double_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw ConfigError("key '" + key + "': empty list entry");
    out.push_back(parse_double(key, item));
  }
  if (out.empty()) throw ConfigError("key '" + key + "': empty list");
  return out;
}

inline std::map<std::string, std::string> read_key_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError(path + ":" + std::to_string(lineno) + ": empty key or value");
    if (!kv.emplace(key, value).second)
      throw ConfigError(path + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
  }
  return kv;
}

inline std::map<long, cplx> read_amplitude_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open amplitudes file: " + path);
  std::map<long, cplx> amps;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    line = trim(line);
    if (line.empty()) continue;
    std::stringstream ss(line);
    long x;
    double re, im;
    if (!(ss >> x >> re >> im))
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected 'x re im'");
    if (!amps.emplace(x, cplx(re, im)).second)
      throw ConfigError(path + ":" + std::to_string(lineno) + ": duplicate site");
  }
  if (amps.empty()) throw ConfigError(path + ": no amplitudes");
  return amps;
}

inline int parse_flavor(const std::string& v, int flavors) {
  const auto& labels = flavor_labels(flavors);
  for (int i = 0; i < flavors; ++i)
    if (v == labels[i]) return i;
  try {
    size_t pos = 0;
    int n = std::stoi(v, &pos);
    if (pos == v.size() && n >= 1 && n <= flavors) return n - 1;
  } catch (const std::exception&) {
  }
  throw ConfigError("initial_flavor '" + v + "' is not a flavor label or 1.." +
                    std::to_string(flavors));
}

struct ScenarioConfig {
  FlavorScenario scenario;
  std::string output;
};

inline ScenarioConfig load_scenario(const std::string& path) {
  static const std::set<std::string> known = {
      "flavors", "theta", "k_tilde", "lattice_N", "spacing", "phi", "phi12",
      "phi13", "phi23", "delta", "alpha1", "alpha2", "initial_flavor",
      "steps", "initial_position", "output", "energy_model", "entropy"};
  auto kv = read_key_values(path);
  for (const auto& [k, v] : kv)
    if (!known.count(k)) throw ConfigError("unknown key '" + k + "'");

  auto need = [&](const std::string& k) -> const std::string& {
    auto it = kv.find(k);
    if (it == kv.end()) throw ConfigError("missing required key '" + k + "'");
    return it->second;
  };
  auto opt = [&](const std::string& k, const std::string& fallback) -> std::string {
    auto it = kv.find(k);
    return it == kv.end() ? fallback : it->second;
  };

  ScenarioConfig cfg;
  FlavorScenario& sc = cfg.scenario;
  const long flavors = parse_long("flavors", need("flavors"));
  if (flavors != 2 && flavors != 3) throw ConfigError("flavors must be 2 or 3");
  sc.flavors = static_cast<int>(flavors);
  sc.thetas = parse_double_list("theta", need("theta"));
  if (static_cast<int>(sc.thetas.size()) != sc.flavors)
    throw ConfigError("theta must list one angle per flavor");
  sc.k_tilde = parse_double("k_tilde", need("k_tilde"));
  sc.steps = static_cast<int>(parse_long("steps", need("steps")));
  if (sc.steps < 0) throw ConfigError("steps must be >= 0");
  sc.initial_flavor = parse_flavor(need("initial_flavor"), sc.flavors);

  if (sc.flavors == 2) {
    sc.phi = parse_double("phi", need("phi"));
  } else {
    sc.mixing.phi12 = parse_double("phi12", need("phi12"));
    sc.mixing.phi13 = parse_double("phi13", need("phi13"));
    sc.mixing.phi23 = parse_double("phi23", need("phi23"));
    sc.mixing.delta_cp = parse_double("delta", opt("delta", "0"));
    sc.mixing.alpha1 = parse_double("alpha1", opt("alpha1", "0"));
    sc.mixing.alpha2 = parse_double("alpha2", opt("alpha2", "0"));
  }

  sc.lattice.spacing = parse_long("spacing", opt("spacing", "1"));
  if (sc.lattice.spacing < 1) throw ConfigError("spacing must be >= 1");

  const std::string start = opt("initial_position", "momentum");
  if (start == "momentum") {
    sc.start = StartKind::Momentum;
    sc.lattice.boundary = Boundary::Periodic;
    sc.lattice.half_size = parse_long("lattice_N", need("lattice_N"));
  } else if (start == "localized") {
    sc.start = StartKind::Localized;
    sc.lattice.boundary = Boundary::Open;
    const long auto_n = static_cast<long>(sc.steps) * sc.lattice.spacing + 1;
    sc.lattice.half_size = parse_long("lattice_N", opt("lattice_N", std::to_string(auto_n)));
    if (sc.lattice.half_size < static_cast<long>(sc.steps) * sc.lattice.spacing)
      throw ConfigError("lattice_N must be >= steps * spacing for localized starts");
  } else {
    sc.start = StartKind::Amplitudes;
    sc.lattice.boundary = Boundary::Periodic;
    sc.lattice.half_size = parse_long("lattice_N", need("lattice_N"));
    std::filesystem::path p(start);
    if (p.is_relative()) p = std::filesystem::path(path).parent_path() / p;
    sc.start_amplitudes = read_amplitude_file(p.string());
  }
  if (sc.lattice.half_size < 1) throw ConfigError("lattice_N must be >= 1");

  const std::string model = opt("energy_model", "walk");
  if (model == "walk") {
    sc.model = EnergyModel::WalkDispersion;
  } else if (model == "ultra") {
    sc.model = EnergyModel::UltraRelativistic;
  } else {
    throw ConfigError("energy_model must be walk or ultra");
  }

  const std::string entropy = opt("entropy", "off");
  if (entropy != "on" && entropy != "off") throw ConfigError("entropy must be on or off");
  sc.entropy = entropy == "on";

  cfg.output = opt("output", "");
  return cfg;
}

}  // namespace nuwalk
