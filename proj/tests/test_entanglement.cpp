#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "nuwalk/entanglement.hpp"

using namespace nuwalk;

namespace {

FlavorScenario three_flavor_ring() {
  FlavorScenario sc;
  sc.flavors = 3;
  sc.thetas = {0.001, 0.01963, 0.12797};
  sc.k_tilde = 0.1;
  sc.lattice = LatticeSpec{31, 1, Boundary::Periodic};
  sc.mixing = MixingSpec{0.59437, 0.16087, 0.69835, 0.0, 0.0, 0.0};
  sc.initial_flavor = 0;
  sc.steps = 400;
  return sc;
}

FlavorScenario two_flavor_ring() {
  FlavorScenario sc;
  sc.flavors = 2;
  sc.thetas = {0.001, 0.0986};
  sc.k_tilde = 0.05;
  sc.lattice = LatticeSpec{62, 1, Boundary::Periodic};
  sc.phi = 0.698;
  sc.initial_flavor = 0;
  sc.steps = 300;
  return sc;
}

Vec random_state(int dim, std::mt19937& gen) {
  std::normal_distribution<double> dist;
  Vec v(dim);
  for (int i = 0; i < dim; ++i) v(i) = cplx(dist(gen), dist(gen));
  v.normalize();
  return v;
}

// Independent partial trace: sum over the other modes' bit patterns.
Mat mode_reduction_reference(const Vec& psi, int mode, int flavors) {
  const int bit = flavors - 1 - mode;
  Mat rho = Mat::Zero(2, 2);
  for (int rest = 0; rest < (1 << (flavors - 1)); ++rest) {
    // splice `rest` around the traced bit to rebuild full indices
    const int low = rest & ((1 << bit) - 1);
    const int high = (rest >> bit) << (bit + 1);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        rho(i, j) += psi(high | (i << bit) | low) * std::conj(psi(high | (j << bit) | low));
  }
  return rho;
}

}  // namespace

TEST_CASE("linear entropy is zero for pure and one for maximally mixed states") {
  Mat pure = Mat::Zero(3, 3);
  pure(1, 1) = 1.0;
  REQUIRE(std::abs(linear_entropy(pure)) < 1e-15);
  for (int d : {2, 3, 4, 8})
    REQUIRE(std::abs(linear_entropy(Mat::Identity(d, d) / static_cast<double>(d)) - 1.0) <
            1e-14);
  REQUIRE_THROWS_AS(linear_entropy(Mat::Identity(1, 1)), DimensionMismatch);
  REQUIRE_THROWS_AS(linear_entropy(Mat::Zero(2, 3)), DimensionMismatch);
}

TEST_CASE("mode amplitudes are unitary rows of the evolved mixing matrix") {
  const FlavorScenario sc = three_flavor_ring();
  for (double t : {0.0, 7.0, 153.2}) {
    const Vec amps = mode_amplitudes(0, t, sc);
    REQUIRE(std::abs(amps.squaredNorm() - 1.0) < 1e-13);
  }
  const Vec at0 = mode_amplitudes(1, 0.0, sc);
  REQUIRE(std::abs(at0(1) - 1.0) < 1e-13);
  REQUIRE(std::abs(at0(0)) < 1e-13);
  REQUIRE(std::abs(at0(2)) < 1e-13);
}

TEST_CASE("occupation states put one excitation in the flavor's slot") {
  REQUIRE(one_hot_index(0, 3) == 4);
  REQUIRE(one_hot_index(1, 3) == 2);
  REQUIRE(one_hot_index(2, 3) == 1);
  Vec amps(3);
  amps << cplx(0.2, 0.1), cplx(-0.5, 0.3), cplx(0.7, 0.2);
  amps.normalize();
  const Vec psi = occupation_state(amps);
  REQUIRE(psi.size() == 8);
  for (int m = 0; m < 8; ++m) {
    const bool one_hot = m == 1 || m == 2 || m == 4;
    if (!one_hot) REQUIRE(std::abs(psi(m)) < 1e-15);
  }
  REQUIRE(std::abs(psi(4) - amps(0)) < 1e-15);
  REQUIRE(std::abs(psi(2) - amps(1)) < 1e-15);
  REQUIRE(std::abs(psi(1) - amps(2)) < 1e-15);
}

TEST_CASE("single-mode reduction agrees with a reference partial trace") {
  std::mt19937 gen(41);
  for (int flavors : {2, 3}) {
    for (int rep = 0; rep < 5; ++rep) {
      const Vec psi = random_state(1 << flavors, gen);
      for (int mode = 0; mode < flavors; ++mode) {
        const Mat rho = single_mode_density(psi, mode, flavors);
        REQUIRE(max_abs(rho - mode_reduction_reference(psi, mode, flavors)) < 1e-13);
        REQUIRE(std::abs(rho.trace().real() - 1.0) < 1e-13);
      }
    }
  }
  REQUIRE_THROWS_AS(single_mode_density(Vec::Zero(5), 0, 3), DimensionMismatch);
}

TEST_CASE("closed-form entropies match the explicit reductions") {
  const FlavorScenario sc = three_flavor_ring();
  for (double t : {3.0, 41.0, 260.0}) {
    const Vec amps = mode_amplitudes(0, t, sc);
    const Vec psi = occupation_state(amps);
    for (int mode = 0; mode < 3; ++mode) {
      const double direct = linear_entropy(single_mode_density(psi, mode, 3));
      REQUIRE(std::abs(direct - partial_entropy(0, mode, t, sc)) < 1e-10);
    }
  }

  const FlavorScenario sc2 = two_flavor_ring();
  for (double t : {5.0, 26.0, 52.0}) {
    const Vec amps = mode_amplitudes(0, t, sc2);
    const Vec psi = occupation_state(amps);
    const double direct = linear_entropy(single_mode_density(psi, 0, 2));
    REQUIRE(std::abs(direct - two_flavor_entropy(0, t, sc2)) < 1e-10);
    REQUIRE(std::abs(direct - linear_entropy(single_mode_density(psi, 1, 2))) < 1e-12);
  }
}

TEST_CASE("the average entropy is the mean of the three partial entropies") {
  const FlavorScenario sc = three_flavor_ring();
  for (double t : {2.0, 77.0, 431.0}) {
    const double mean = (partial_entropy(0, 0, t, sc) + partial_entropy(0, 1, t, sc) +
                         partial_entropy(0, 2, t, sc)) /
                        3.0;
    REQUIRE(std::abs(average_entropy(0, t, sc) - mean) < 1e-12);
  }
}

TEST_CASE("two-flavor entropy at the first transition maximum") {
  const FlavorScenario sc = two_flavor_ring();
  REQUIRE(std::abs(two_flavor_entropy(0, 52.0, sc) - 0.117323902627) < 1e-9);
}

TEST_CASE("the entropy peaks at one when the populations cross") {
  // Bisect the continuous-time crossing P = 1/2 between steps 26 and 28.
  const FlavorScenario sc = two_flavor_ring();
  auto pops = [&](double t) { return analytic_transition(0, 0, t, sc) - 0.5; };
  double lo = 26.0, hi = 28.0;
  REQUIRE(pops(lo) > 0.0);
  REQUIRE(pops(hi) < 0.0);
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    (pops(mid) > 0.0 ? lo : hi) = mid;
  }
  REQUIRE(std::abs(two_flavor_entropy(0, 0.5 * (lo + hi), sc) - 1.0) < 1e-6);
}

TEST_CASE("entropy formulas agree on shared two-population inputs") {
  REQUIRE(std::abs(pair_entropy_product(0.3, 0.7) - partial_entropy_from_prob(0.3)) < 1e-15);
  REQUIRE(std::abs(average_entropy_from_probs(0.2, 0.3, 0.5) -
                   (partial_entropy_from_prob(0.2) + partial_entropy_from_prob(0.3) +
                    partial_entropy_from_prob(0.5)) /
                       3.0) < 1e-15);
}
