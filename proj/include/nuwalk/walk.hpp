#pragma once

// Discrete-time quantum walk on a 1-D lattice with a two-component coin.
// One step is W = S (C x I): coin first, then the conditional shift that
// moves the spin-up component by -a and the spin-down component by +a.

#include <cmath>
#include <map>
#include <numbers>

#include "nuwalk/types.hpp"

namespace nuwalk {

struct CoinParams {
  double xi = 0.0;
  double theta = 0.0;
  double phi = 0.0;
  double delta = 0.0;
};

// C(xi, theta, phi, delta) = e^{i xi} e^{-i theta sx} e^{-i phi sy} e^{-i delta sz}
inline Mat2 general_coin(const CoinParams& p) {
  const double ct = std::cos(p.theta), st = std::sin(p.theta);
  const double cp = std::cos(p.phi), sp = std::sin(p.phi);
  const cplx em = std::polar(1.0, -p.delta), ep = std::polar(1.0, p.delta);
  const cplx phase = std::polar(1.0, p.xi);
  Mat2 c;
  c << em * cplx(ct * cp, -st * sp), -ep * cplx(ct * sp, st * cp),
       em * cplx(ct * sp, -st * cp),  ep * cplx(ct * cp, st * sp);
  return phase * c;
}

// Real rotation coin [[cos, sin], [-sin, cos]]; the massless limit is theta=0.
inline Mat2 dirac_coin(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  Mat2 b;
  b << c, s, -s, c;
  return b;
}

enum class Boundary { Periodic, Open };

// Sites are the integers -half_size..half_size; the walker hops by `spacing`.
struct LatticeSpec {
  long half_size = 0;
  long spacing = 1;
  Boundary boundary = Boundary::Periodic;

  long sites() const { return 2 * half_size + 1; }
};

inline long fold_site(long x, long sites) {
  long m = x % sites;
  long half = sites / 2;
  if (m > half) m -= sites;
  if (m < -half) m += sites;
  return m;
}

// k = 2 pi index / (2N+1); k_tilde = k * spacing is the phase advanced per hop.
struct MomentumSpec {
  long index = 0;
  double k = 0.0;
  double k_tilde = 0.0;
  double snap_distance = 0.0;
};

inline MomentumSpec make_momentum(long index, const LatticeSpec& lat) {
  if (lat.boundary != Boundary::Periodic)
    throw InvalidMomentum("momentum eigenstates require a periodic lattice");
  if (index < -lat.half_size || index > lat.half_size)
    throw InvalidMomentum("momentum index outside -N..N");
  MomentumSpec m;
  m.index = index;
  m.k = 2.0 * std::numbers::pi * static_cast<double>(index) / static_cast<double>(lat.sites());
  m.k_tilde = m.k * static_cast<double>(lat.spacing);
  return m;
}

// Nearest allowed lattice momentum to the requested k_tilde; the distance is
// reported so callers can surface the snap.
inline MomentumSpec snap_momentum(double k_tilde_requested, const LatticeSpec& lat) {
  const double step = 2.0 * std::numbers::pi * static_cast<double>(lat.spacing) /
                      static_cast<double>(lat.sites());
  long index = std::lround(k_tilde_requested / step);
  if (index > lat.half_size) index = lat.half_size;
  if (index < -lat.half_size) index = -lat.half_size;
  MomentumSpec m = make_momentum(index, lat);
  m.snap_distance = std::abs(m.k_tilde - k_tilde_requested);
  return m;
}

// Sparse coin x position state for one coin sector.
struct WalkState {
  LatticeSpec lattice;
  std::map<long, Vec2> psi;

  double norm2() const {
    double n = 0.0;
    for (const auto& [x, v] : psi) n += v.squaredNorm();
    return n;
  }
};

inline WalkState localized_state(const Vec2& chi, const LatticeSpec& lat, long x0 = 0) {
  if (std::abs(x0) > lat.half_size) throw OutOfSupport("initial site outside lattice");
  WalkState s{lat, {}};
  s.psi[x0] = chi;
  return s;
}

// |k> in the position basis: amplitudes e^{-i k x} / sqrt(2N+1) on every site.
inline WalkState momentum_state(const Vec2& chi, const MomentumSpec& m, const LatticeSpec& lat) {
  if (lat.boundary != Boundary::Periodic)
    throw InvalidMomentum("momentum eigenstates require a periodic lattice");
  const double expect = 2.0 * std::numbers::pi * static_cast<double>(m.index) /
                        static_cast<double>(lat.sites());
  if (std::abs(m.k - expect) > 1e-12)
    throw InvalidMomentum("k is not an allowed momentum 2 pi n / (2N+1) of this lattice");
  WalkState s{lat, {}};
  const double norm = 1.0 / std::sqrt(static_cast<double>(lat.sites()));
  for (long x = -lat.half_size; x <= lat.half_size; ++x)
    s.psi[x] = norm * std::polar(1.0, -m.k * static_cast<double>(x)) * chi;
  return s;
}

// One step W = S (C x I). On an open lattice any amplitude that would leave
// -N..N raises OutOfSupport; a periodic lattice wraps.
inline WalkState walk_step(const WalkState& in, const Mat2& coin) {
  WalkState out{in.lattice, {}};
  const long a = in.lattice.spacing;
  const long n = in.lattice.half_size;
  const long sites = in.lattice.sites();
  const bool periodic = in.lattice.boundary == Boundary::Periodic;
  for (const auto& [x, v] : in.psi) {
    const Vec2 w = coin * v;
    long up = x - a, down = x + a;
    if (periodic) {
      up = fold_site(up, sites);
      down = fold_site(down, sites);
    } else {
      if ((up < -n && std::abs(w(0)) > kPruneThreshold) ||
          (down > n && std::abs(w(1)) > kPruneThreshold))
        throw OutOfSupport("amplitude crossed the open boundary; enlarge half_size");
    }
    if (up >= -n && up <= n) {
      auto& t = out.psi.try_emplace(up, Vec2::Zero()).first->second;
      t(0) += w(0);
    }
    if (down >= -n && down <= n) {
      auto& t = out.psi.try_emplace(down, Vec2::Zero()).first->second;
      t(1) += w(1);
    }
  }
  return out;
}

inline WalkState evolve(WalkState s, const Mat2& coin, int steps) {
  for (int t = 0; t < steps; ++t) s = walk_step(s, coin);
  return s;
}

// Partial trace over position: rho_c = sum_x psi_x psi_x^dag.
inline Mat2 reduce_to_coin(const WalkState& s) {
  Mat2 rho = Mat2::Zero();
  for (const auto& [x, v] : s.psi) rho += v * v.adjoint();
  return rho;
}

// Momentum-space step operator for one sector: the spin-up row picks up
// e^{-i k_tilde} (it is translated by -a) and the spin-down row e^{+i k_tilde}.
inline Mat2 momentum_step_operator(const Mat2& coin, double k_tilde) {
  Mat2 w = coin;
  w.row(0) *= std::polar(1.0, -k_tilde);
  w.row(1) *= std::polar(1.0, k_tilde);
  return w;
}

// E(theta, k_tilde) = arccos(cos theta * cos k_tilde), principal branch [0, pi].
inline double dispersion_energy(double theta, double k_tilde) {
  double arg = std::cos(theta) * std::cos(k_tilde);
  if (arg > 1.0) arg = 1.0;
  if (arg < -1.0) arg = -1.0;
  return std::acos(arg);
}

// Positive-energy eigenvector (f, g) of momentum_step_operator(dirac_coin(theta), k),
// eigenvalue e^{-iE}. The massless forward mode (vanishing normalizer) returns
// (1, 0) by convention.
inline Vec2 mass_eigenvector(double theta, double k_tilde) {
  const double s = std::sin(theta), c = std::cos(theta);
  const double sk = std::sin(k_tilde), ck = std::cos(k_tilde);
  const double sin_e = std::sqrt(std::max(0.0, 1.0 - c * c * ck * ck));
  const double d = c * sk - sin_e;
  const double n2 = s * s + d * d;
  Vec2 v;
  if (n2 < 1e-28) {
    v << 1.0, 0.0;
    return v;
  }
  const double n = std::sqrt(n2);
  v << s * std::polar(1.0, -k_tilde) / n, cplx(0.0, d / n);
  return v;
}

}  // namespace nuwalk
