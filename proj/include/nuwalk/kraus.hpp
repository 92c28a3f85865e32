#pragma once

// Kraus operators of the reduced coin dynamics, generated by the temporal
// recurrence K_x(t+1) = C_up K_{x+a}(t) + C_dn K_{x-a}(t) from K_x(0) =
// delta_{x,0} I. Translation invariance makes K_{x x'} = K_{x-x'}, so a family
// is stored by relative position. Position-dressed ("extended") families fold
// positions onto a periodic lattice and carry one diagonal block per coin
// sector.

#include <cmath>
#include <limits>
#include <map>
#include <vector>

#include "nuwalk/types.hpp"
#include "nuwalk/walk.hpp"

namespace nuwalk {

struct KrausFamily {
  int step = 0;
  long spacing = 1;
  double sector_angle = std::numeric_limits<double>::quiet_NaN();
  std::map<long, Mat2> ops;
};

inline KrausFamily initial_kraus(long spacing = 1,
                                 double sector_angle = std::numeric_limits<double>::quiet_NaN()) {
  KrausFamily f;
  f.spacing = spacing;
  f.sector_angle = sector_angle;
  f.ops[0] = Mat2::Identity();
  return f;
}

inline Mat2 coin_up_half(const Mat2& coin) {
  Mat2 m = Mat2::Zero();
  m.row(0) = coin.row(0);
  return m;
}

inline Mat2 coin_down_half(const Mat2& coin) {
  Mat2 m = Mat2::Zero();
  m.row(1) = coin.row(1);
  return m;
}

inline KrausFamily kraus_step(const KrausFamily& f, const Mat2& coin) {
  const Mat2 up = coin_up_half(coin), dn = coin_down_half(coin);
  KrausFamily out;
  out.step = f.step + 1;
  out.spacing = f.spacing;
  out.sector_angle = f.sector_angle;
  for (const auto& [x, k] : f.ops) {
    out.ops.try_emplace(x - f.spacing, Mat2::Zero()).first->second += up * k;
    out.ops.try_emplace(x + f.spacing, Mat2::Zero()).first->second += dn * k;
  }
  for (auto it = out.ops.begin(); it != out.ops.end();)
    it = (max_abs(it->second) < kPruneThreshold) ? out.ops.erase(it) : std::next(it);
  return out;
}

inline KrausFamily kraus_step(const KrausFamily& f, const Mat2& coin, long spacing) {
  if (spacing != f.spacing) throw StepMismatch("spacing does not match the family");
  return kraus_step(f, coin);
}

inline KrausFamily kraus_at(int t, const Mat2& coin, long spacing = 1,
                            double sector_angle = std::numeric_limits<double>::quiet_NaN()) {
  KrausFamily f = initial_kraus(spacing, sector_angle);
  for (int i = 0; i < t; ++i) f = kraus_step(f, coin);
  return f;
}

// Block-diagonal family over lattice positions; dim = 2 * sectors.
struct ExtendedKrausFamily {
  int step = 0;
  int sectors = 1;
  LatticeSpec lattice;
  std::map<long, Mat> ops;
};

// Dress a family with initial position amplitudes c:
// K~_x(t) = sum_{x'} c_{x'} K_{x-x'}(t), x-x' folded on periodic lattices.
inline ExtendedKrausFamily extend_kraus(const KrausFamily& f,
                                        const std::map<long, cplx>& amplitudes,
                                        const LatticeSpec& lat) {
  double n2 = 0.0;
  for (const auto& [x, c] : amplitudes) n2 += std::norm(c);
  if (std::abs(n2 - 1.0) > 1e-10)
    throw UnnormalizedInput("initial position amplitudes must have unit norm");
  const bool periodic = lat.boundary == Boundary::Periodic;
  ExtendedKrausFamily out;
  out.step = f.step;
  out.sectors = 1;
  out.lattice = lat;
  for (const auto& [xp, c] : amplitudes) {
    if (std::abs(xp) > lat.half_size) throw OutOfSupport("amplitude site outside lattice");
    for (const auto& [y, k] : f.ops) {
      long x = xp + y;
      if (periodic) {
        x = fold_site(x, lat.sites());
      } else if (std::abs(x) > lat.half_size) {
        throw OutOfSupport("extended support leaves the open lattice");
      }
      auto it = out.ops.try_emplace(x, Mat::Zero(2, 2)).first;
      it->second += c * k;
    }
  }
  return out;
}

inline ExtendedKrausFamily as_extended(const KrausFamily& f) {
  ExtendedKrausFamily out;
  out.step = f.step;
  out.sectors = 1;
  long reach = 0;
  for (const auto& [x, k] : f.ops) reach = std::max(reach, std::abs(x));
  out.lattice = LatticeSpec{reach, f.spacing, Boundary::Open};
  for (const auto& [x, k] : f.ops) out.ops[x] = k;
  return out;
}

// Direct sum across sectors at each position; missing positions contribute a
// zero block.
inline ExtendedKrausFamily block_kraus(const std::vector<ExtendedKrausFamily>& sectors) {
  if (sectors.empty()) throw DimensionMismatch("no sector families");
  int dim = 0;
  for (const auto& s : sectors) {
    if (s.step != sectors.front().step)
      throw StepMismatch("sector families are at different steps");
    dim += 2 * s.sectors;
  }
  ExtendedKrausFamily out;
  out.step = sectors.front().step;
  out.sectors = dim / 2;
  out.lattice = sectors.front().lattice;
  for (const auto& s : sectors)
    for (const auto& [x, k] : s.ops)
      out.ops.try_emplace(x, Mat::Zero(dim, dim));
  for (auto& [x, k] : out.ops) {
    int off = 0;
    for (const auto& s : sectors) {
      const int d = 2 * s.sectors;
      auto it = s.ops.find(x);
      if (it != s.ops.end()) k.block(off, off, d, d) = it->second;
      off += d;
    }
  }
  return out;
}

inline ExtendedKrausFamily block_kraus(const std::vector<KrausFamily>& sectors) {
  std::vector<ExtendedKrausFamily> ext;
  ext.reserve(sectors.size());
  for (const auto& s : sectors) ext.push_back(as_extended(s));
  return block_kraus(ext);
}

// Advance a position-dressed family one step; the same recurrence, folded on
// periodic lattices. Extension and stepping commute, so a series can be
// advanced incrementally instead of re-extending every t.
inline ExtendedKrausFamily step_extended(const ExtendedKrausFamily& f,
                                         const std::vector<Mat2>& sector_coins) {
  if (static_cast<int>(sector_coins.size()) != f.sectors)
    throw DimensionMismatch("one coin per sector required");
  const int dim = 2 * f.sectors;
  Mat up = Mat::Zero(dim, dim), dn = Mat::Zero(dim, dim);
  for (int s = 0; s < f.sectors; ++s) {
    up.block(2 * s, 2 * s, 2, 2) = coin_up_half(sector_coins[s]);
    dn.block(2 * s, 2 * s, 2, 2) = coin_down_half(sector_coins[s]);
  }
  const long a = f.lattice.spacing;
  const long n = f.lattice.half_size;
  const bool periodic = f.lattice.boundary == Boundary::Periodic;
  ExtendedKrausFamily out;
  out.step = f.step + 1;
  out.sectors = f.sectors;
  out.lattice = f.lattice;
  for (const auto& [x, k] : f.ops) {
    long xu = x - a, xd = x + a;
    if (periodic) {
      xu = fold_site(xu, f.lattice.sites());
      xd = fold_site(xd, f.lattice.sites());
    } else if (std::abs(xu) > n || std::abs(xd) > n) {
      if (max_abs(k) > kPruneThreshold)
        throw OutOfSupport("family support leaves the open lattice");
      continue;
    }
    auto iu = out.ops.try_emplace(xu, Mat::Zero(dim, dim)).first;
    iu->second += up * k;
    auto id = out.ops.try_emplace(xd, Mat::Zero(dim, dim)).first;
    id->second += dn * k;
  }
  for (auto it = out.ops.begin(); it != out.ops.end();)
    it = (max_abs(it->second) < kPruneThreshold) ? out.ops.erase(it) : std::next(it);
  return out;
}

inline Mat apply_channel(const ExtendedKrausFamily& f, const Mat& rho) {
  const int dim = 2 * f.sectors;
  if (rho.rows() != dim || rho.cols() != dim)
    throw DimensionMismatch("density matrix dimension does not match the family");
  Mat out = Mat::Zero(dim, dim);
  for (const auto& [x, k] : f.ops) out += k * rho * k.adjoint();
  return out;
}

// max |sum_x K_x^dag K_x - I|.
inline double completeness_residual(const ExtendedKrausFamily& f) {
  const int dim = 2 * f.sectors;
  Mat acc = Mat::Zero(dim, dim);
  for (const auto& [x, k] : f.ops) acc += k.adjoint() * k;
  return max_abs(acc - Mat::Identity(dim, dim));
}

inline double completeness_residual(const KrausFamily& f) {
  Mat2 acc = Mat2::Zero();
  for (const auto& [x, k] : f.ops) acc += k.adjoint() * k;
  return max_abs(acc - Mat2::Identity());
}

}  // namespace nuwalk
