#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "nuwalk/embedding.hpp"

using namespace nuwalk;

namespace {

MixingSpec random_mixing(std::mt19937& gen) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  return MixingSpec{angle(gen), angle(gen), angle(gen), angle(gen), angle(gen), angle(gen)};
}

const MixingSpec kThreeFlavor{0.59437, 0.16087, 0.69835, 0.0, 0.0, 0.0};

}  // namespace

TEST_CASE("embedded factors are unitary and act only on the one-hot subspace") {
  std::mt19937 gen(51);
  const MixingSpec m = random_mixing(gen);
  for (int which = 0; which <= 3; ++which) {
    const Mat e = embed_factor(which, m);
    REQUIRE(e.rows() == 8);
    REQUIRE(unitarity_residual(e) < 1e-13);
    for (int i = 0; i < 8; ++i) {
      const bool hot_i = i == 1 || i == 2 || i == 4;
      for (int j = 0; j < 8; ++j) {
        const bool hot_j = j == 1 || j == 2 || j == 4;
        if (!hot_i || !hot_j)
          REQUIRE(std::abs(e(i, j) - (i == j ? 1.0 : 0.0)) < 1e-15);
      }
    }
  }
}

TEST_CASE("the embedded 12 rotation sits at the expected entries") {
  const Mat e = embed_factor(1, kThreeFlavor);
  const double c12 = std::cos(0.59437), s12 = std::sin(0.59437);
  REQUIRE(std::abs(e(4, 4) - c12) < 1e-14);
  REQUIRE(std::abs(e(4, 2) - s12) < 1e-14);
  REQUIRE(std::abs(e(2, 4) + s12) < 1e-14);
  REQUIRE(std::abs(e(2, 2) - c12) < 1e-14);
  REQUIRE(std::abs(e(1, 1) - 1.0) < 1e-15);
}

TEST_CASE("the embedded 13 rotation carries the CP phase") {
  MixingSpec m = kThreeFlavor;
  m.delta_cp = 1.1;
  const Mat e = embed_factor(2, m);
  const double c13 = std::cos(m.phi13), s13 = std::sin(m.phi13);
  REQUIRE(std::abs(e(4, 4) - c13) < 1e-14);
  REQUIRE(std::abs(e(1, 1) - c13) < 1e-14);
  REQUIRE(std::abs(e(4, 1) - s13 * std::polar(1.0, -1.1)) < 1e-14);
  REQUIRE(std::abs(e(1, 4) + s13 * std::polar(1.0, 1.1)) < 1e-14);
  REQUIRE(std::abs(e(2, 2) - 1.0) < 1e-15);
}

TEST_CASE("restricting the embedded product recovers the mixing matrix") {
  std::mt19937 gen(52);
  for (int rep = 0; rep < 20; ++rep) {
    const MixingSpec m = random_mixing(gen);
    REQUIRE(max_abs(restrict_to_flavor(embedded_product(m)) - pmns_matrix(m)) < 1e-13);
    for (int which = 0; which <= 3; ++which)
      REQUIRE(max_abs(restrict_to_flavor(embed_factor(which, m)) - pmns_factor(which, m)) <
              1e-14);
  }
}

TEST_CASE("embedding commutes with taking the matrix product") {
  std::mt19937 gen(53);
  const MixingSpec m = random_mixing(gen);
  REQUIRE(max_abs(embedded_product(m) - embed_one_hot(pmns_matrix(m))) < 1e-13);
}

TEST_CASE("a controlled rotation reading reproduces the embedded 12 factor") {
  std::mt19937 gen(54);
  REQUIRE(controlled_reading_check(kThreeFlavor));
  for (int rep = 0; rep < 10; ++rep) REQUIRE(controlled_reading_check(random_mixing(gen)));
}

TEST_CASE("embedding a non-unitary block is caught by the unitarity helper") {
  Mat u3 = pmns_matrix(kThreeFlavor);
  u3(0, 0) += 0.01;
  REQUIRE(unitarity_residual(embed_one_hot(u3)) > 1e-3);
}
