#pragma once

// Three-qubit circuit embedding of the mixing matrix. Flavor states live on
// the one-hot subspace |100>, |010>, |001> (e, mu, tau -> computational
// indices 4, 2, 1 in b2 b1 b0 order); each 3x3 factor is lifted to an 8x8
// unitary acting as the identity on the complement.

#include <array>

#include "nuwalk/neutrino.hpp"
#include "nuwalk/types.hpp"

namespace nuwalk {

inline constexpr std::array<int, 3> kOneHot = {4, 2, 1};  // e, mu, tau

inline Mat embed_one_hot(const Mat& u3) {
  if (u3.rows() != 3 || u3.cols() != 3) throw DimensionMismatch("3x3 factor required");
  Mat u8 = Mat::Identity(8, 8);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) u8(kOneHot[r], kOneHot[c]) = u3(r, c);
  return u8;
}

inline Mat embed_factor(int which, const MixingSpec& m) {
  return embed_one_hot(pmns_factor(which, m));
}

inline Mat embedded_product(const MixingSpec& m) {
  return embed_factor(3, m) * embed_factor(2, m) * embed_factor(1, m) * embed_factor(0, m);
}

inline Mat restrict_to_flavor(const Mat& u8) {
  if (u8.rows() != 8 || u8.cols() != 8) throw DimensionMismatch("8x8 operator required");
  Mat u3(3, 3);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) u3(r, c) = u8(kOneHot[r], kOneHot[c]);
  return u3;
}

// The 12-rotation factor read as a two-qubit gate on (b2, b1) controlled on
// b0 = 0: |i j 0> -> (R |i j>) |0>, |i j 1> -> |i j 1| with
// R = [[1,0,0,0],[0,c12,-s12,0],[0,s12,c12,0],[0,0,0,1]]. Returns true when
// the controlled construction reproduces the embedded factor.
inline bool controlled_reading_check(const MixingSpec& m, double tol = kTolExact) {
  const double c = std::cos(m.phi12), s = std::sin(m.phi12);
  Mat r = Mat::Identity(4, 4);
  r(1, 1) = c; r(1, 2) = -s;
  r(2, 1) = s; r(2, 2) = c;
  Mat ctrl = Mat::Zero(8, 8);
  for (int i = 0; i < 8; ++i) {
    if (i & 1) {
      ctrl(i, i) = 1.0;
      continue;
    }
    const int p = i >> 1;  // (b2, b1) as a 2-bit index
    for (int q = 0; q < 4; ++q) ctrl(2 * q, i) += r(q, p);
  }
  return max_abs(ctrl - embed_factor(1, m)) < tol;
}

}  // namespace nuwalk
