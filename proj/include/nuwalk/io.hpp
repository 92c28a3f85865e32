#pragma once

// Text output formats: the per-step CSV (12 significant digits, atomic
// replace) and the Kraus/operator dump (re,im pairs, 17 significant digits,
// completeness footer).

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "nuwalk/entanglement.hpp"
#include "nuwalk/kraus.hpp"
#include "nuwalk/neutrino.hpp"
#include "nuwalk/types.hpp"

namespace nuwalk {

inline std::string format_sig(double v, int digits) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

// Written fully into a temporary file in the target directory, then renamed.
inline void atomic_write(const std::string& path, const std::string& content) {
  std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw NumericalError("cannot open output file: " + tmp.string());
    out << content;
    if (!out) throw NumericalError("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

inline std::vector<std::string> entropy_column_names(int flavors) {
  const auto& l = flavor_labels(flavors);
  if (flavors == 2) return {"S"};
  return {"S_" + l[1] + l[2] + "_" + l[0], "S_" + l[2] + l[0] + "_" + l[1],
          "S_" + l[0] + l[1] + "_" + l[2], "S_avg"};
}

inline std::vector<double> entropy_row(const std::vector<double>& probs) {
  if (probs.size() == 2) return {pair_entropy_product(probs[0], probs[1])};
  return {partial_entropy_from_prob(probs[0]), partial_entropy_from_prob(probs[1]),
          partial_entropy_from_prob(probs[2]),
          average_entropy_from_probs(probs[0], probs[1], probs[2])};
}

inline std::string series_csv(const TransitionSeries& series, const FlavorScenario& sc) {
  const auto& labels = flavor_labels(sc.flavors);
  std::ostringstream out;
  out << "step";
  for (int b = 0; b < sc.flavors; ++b)
    out << ",P_" << labels[sc.initial_flavor] << labels[b];
  if (sc.entropy)
    for (const auto& name : entropy_column_names(sc.flavors)) out << "," << name;
  out << "\n";
  for (size_t t = 0; t < series.probs.size(); ++t) {
    out << t;
    for (double p : series.probs[t]) out << "," << format_sig(p, 12);
    if (sc.entropy)
      for (double s : entropy_row(series.probs[t])) out << "," << format_sig(s, 12);
    out << "\n";
  }
  return out.str();
}

inline void dump_matrix_block(std::ostringstream& out, const Mat& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) out << ' ';
      out << format_sig(m(r, c).real(), 17) << ',' << format_sig(m(r, c).imag(), 17);
    }
    out << "\n";
  }
}

inline std::string dump_family(const ExtendedKrausFamily& fam) {
  std::ostringstream out;
  out << "step " << fam.step << "\nsectors " << fam.sectors << "\ndim "
      << 2 * fam.sectors << "\noperators " << fam.ops.size() << "\n";
  for (const auto& [x, k] : fam.ops) {
    out << "\nposition " << x << "\n";
    dump_matrix_block(out, k);
  }
  out << "\ncompleteness_residual " << format_sig(completeness_residual(fam), 17) << "\n";
  return out.str();
}

inline std::string dump_labeled_matrix(const std::string& label, const Mat& m) {
  std::ostringstream out;
  out << label << " dim " << m.rows() << "\n";
  dump_matrix_block(out, m);
  return out.str();
}

}  // namespace nuwalk
