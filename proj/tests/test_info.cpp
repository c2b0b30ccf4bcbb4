#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "smbc/info.hpp"
#include "smbc/rng.hpp"

using namespace smbc;

TEST_CASE("entropy basics") {
  CHECK(entropy(Pmf::uniform(2)).bits == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(entropy(Pmf::point_mass(4, 2)).bits == 0.0);
  // frozen from the direct-summation oracle
  const Pmf skew({0.25, 0.75});
  CHECK(std::abs(entropy(skew).bits - 0.8112781244591328) < 1e-12);
  CHECK(std::abs(entropy(skew).bits - oracle::entropy_bits(skew.probs)) <
        1e-15);
}

TEST_CASE("entropy rejects invalid pmfs") {
  CHECK_THROWS_AS(Pmf({0.5, -0.1, 0.6}), ValidationError);
  CHECK_THROWS_AS(Pmf({0.5, 0.499}), ValidationError);
  CHECK_NOTHROW(Pmf({0.5, 0.5 + 5e-10}));  // inside the 1e-9 band
}

TEST_CASE("info value unit conversion") {
  const InfoValue one_bit{1.0};
  CHECK(one_bit.in(Unit::Bits) == 1.0);
  CHECK(one_bit.in(Unit::Nats) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
}

TEST_CASE("mutual information basics") {
  // product of marginals
  NdTable indep({2, 2}, {0.25, 0.25, 0.25, 0.25});
  CHECK(mutual_information(indep).bits == 0.0);
  // identity coupling of a uniform binary pair
  NdTable coupled({2, 2}, {0.5, 0.0, 0.0, 0.5});
  CHECK(mutual_information(coupled).bits == doctest::Approx(1.0).epsilon(1e-15));
  // BSC(0.11) with uniform input, frozen from the entropy-difference oracle
  const double p = 0.11;
  NdTable bsc({2, 2},
              {0.5 * (1 - p), 0.5 * p, 0.5 * p, 0.5 * (1 - p)});
  CHECK(std::abs(mutual_information(bsc).bits - 0.5000840418354720) < 1e-12);
  CHECK(std::abs(mutual_information(bsc).bits - oracle::mi_definition_bits(bsc)) <
        1e-13);
}

TEST_CASE("conditional mutual information basics") {
  // three independent fair bits
  NdTable indep({2, 2, 2}, std::vector<double>(8, 0.125));
  CHECK(conditional_mi(indep).bits == 0.0);

  // constant C reduces to the unconditional value
  Xoshiro256ss rng(41);
  auto base = dirichlet_uniform(rng, 4);
  NdTable two({2, 2}, base);
  NdTable three({2, 2, 1}, base);
  CHECK(std::abs(conditional_mi(three).bits - mutual_information(two).bits) <
        1e-12);

  // A = B xor C with independent uniform B,C: table over (A,B,C)
  NdTable xorj({2, 2, 2});
  for (std::size_t b = 0; b < 2; ++b)
    for (std::size_t c = 0; c < 2; ++c) xorj.at({b ^ c, b, c}) = 0.25;
  CHECK(conditional_mi(xorj).bits == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(conditional_mi(xorj).bits -
                 oracle::cmi_enumeration_bits(xorj)) < 1e-13);
}

TEST_CASE("definition-based and entropy-difference MI agree") {
  Xoshiro256ss rng(2024);
  double worst = 0.0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t na = 2 + rng.below(3), nb = 2 + rng.below(3);
    NdTable joint({na, nb}, dirichlet_uniform(rng, na * nb));
    worst = std::max(worst, std::abs(mutual_information(joint).bits -
                                     oracle::mi_definition_bits(joint)));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("chain rule on random joints") {
  Xoshiro256ss rng(7);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t na = 2 + rng.below(2), nb = 2 + rng.below(2),
                      nc = 2 + rng.below(2);
    NdTable joint({na, nb, nc}, dirichlet_uniform(rng, na * nb * nc));
    // I(A;B,C) = I(A;C) + I(A;B|C)
    const double lhs = joint_mi_bits(joint, {0}, {1, 2});
    const double rhs =
        joint_mi_bits(joint, {0}, {2}) + joint_cmi_bits(joint, {0}, {1}, {2});
    worst = std::max(worst, std::abs(lhs - rhs));
    CHECK(joint_mi_bits(joint, {0}, {1}) >= 0.0);
    CHECK(joint_cmi_bits(joint, {0}, {1}, {2}) >= 0.0);
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("mi rejects garbage") {
  CHECK_THROWS_AS(mutual_information(NdTable({2, 2}, {0.7, 0.4, 0.0, 0.0})),
                  ValidationError);
  CHECK_THROWS_AS(conditional_mi(NdTable({2, 2}, {0.5, 0.0, 0.0, 0.5})),
                  ValidationError);
  CHECK_THROWS_AS(mutual_information(NdTable({2, 2, 2})), ValidationError);
}

TEST_CASE("ndtable marginal matches the independent map") {
  Xoshiro256ss rng(99);
  NdTable joint({2, 3, 2, 2}, dirichlet_uniform(rng, 24));
  const auto m = joint.marginal({1, 3});
  const auto ref = oracle::marginal_map(joint, {1, 3});
  for (std::size_t b = 0; b < 3; ++b)
    for (std::size_t d = 0; d < 2; ++d) {
      CHECK(std::abs(m.at({b, d}) - ref.at({b, d})) < 1e-15);
    }
}
