#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "smbc/bounds.hpp"

using namespace smbc;

namespace {

// Bound right-hand sides recomputed term by term through the oracle
// marginalization path.
struct OracleTerms {
  double iwy1, iwy2, iws, iwuy1, iwus, iwvy2, iwvs;
  double iuy1_w, ius_w, ivy2_w, ivs_w, iuv_ws, l1, l2;
};

OracleTerms oracle_terms(const NdTable& j) {
  using namespace ax;
  OracleTerms t{};
  t.iwy1 = oracle::joint_mi_bits(j, {W}, {Y1});
  t.iwy2 = oracle::joint_mi_bits(j, {W}, {Y2});
  t.iws = oracle::joint_mi_bits(j, {W}, {S});
  t.iwuy1 = oracle::joint_mi_bits(j, {W, U}, {Y1});
  t.iwus = oracle::joint_mi_bits(j, {W, U}, {S});
  t.iwvy2 = oracle::joint_mi_bits(j, {W, V}, {Y2});
  t.iwvs = oracle::joint_mi_bits(j, {W, V}, {S});
  t.iuy1_w = oracle::joint_cmi_bits(j, {U}, {Y1}, {W});
  t.ius_w = oracle::joint_cmi_bits(j, {U}, {S}, {W});
  t.ivy2_w = oracle::joint_cmi_bits(j, {V}, {Y2}, {W});
  t.ivs_w = oracle::joint_cmi_bits(j, {V}, {S}, {W});
  t.iuv_ws = oracle::joint_cmi_bits(j, {U}, {V}, {W, S});
  t.l1 = oracle::joint_mi_bits(j, {S}, {W, U, Y1});
  t.l2 = oracle::joint_mi_bits(j, {S}, {W, V, Y2});
  return t;
}

}  // namespace

TEST_CASE("inner bounds, no state involvement") {
  // state-independent clean channel, W=U=V=X uniform
  auto ch = oracle::identity_channel();
  const auto joint = assemble_joint(ch, oracle::uniform_copy_cond(ch));
  const auto b = inner_bounds(joint);
  CHECK(b.r0 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(b.l1 == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(b.l2 == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("inner bounds, empty auxiliaries") {
  auto ch = oracle::xor_channel();
  AuxConditional cond;
  cond.card_s = 2;
  cond.card_x = 2;
  cond.table = {0.3, 0.7, 0.8, 0.2};
  const auto joint = assemble_joint(ch, cond);
  const auto b = inner_bounds(joint);
  CHECK(b.r0 == 0.0);
  CHECK(b.r01 == 0.0);
  CHECK(b.r02 == 0.0);
  CHECK(b.rsum == 0.0);
  // leakage guarantees collapse to I(S;Y_k)
  const double m1 = oracle::joint_mi_bits(joint.full_joint, {ax::S}, {ax::Y1});
  const double m2 = oracle::joint_mi_bits(joint.full_joint, {ax::S}, {ax::Y2});
  CHECK(std::abs(b.l1 - m1) < 1e-12);
  CHECK(std::abs(b.l2 - m2) < 1e-12);
}

TEST_CASE("inner bounds match the term-by-term oracle") {
  auto ch = oracle::xor_channel();
  Xoshiro256ss rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    const auto joint = assemble_joint(ch, oracle::random_cond(rng, ch, 2, 2, 2));
    const auto b = inner_bounds(joint);
    const auto t = oracle_terms(joint.full_joint);
    auto clamp = [](double v) { return v > 0.0 ? v : 0.0; };
    CHECK(std::abs(b.r0 - clamp(std::min(t.iwy1, t.iwy2) - t.iws)) < 1e-9);
    CHECK(std::abs(b.r01 - clamp(t.iwuy1 - t.iwus)) < 1e-9);
    CHECK(std::abs(b.r02 - clamp(t.iwvy2 - t.iwvs)) < 1e-9);
    CHECK(std::abs(b.rsum -
                   clamp((t.iwuy1 - t.iwus) + (t.iwvy2 - t.iwvs) -
                         std::min(t.iwy1, t.iwy2) - t.iws - t.iuv_ws)) < 1e-9);
    CHECK(std::abs(b.l1 - t.l1) < 1e-9);
    CHECK(std::abs(b.l2 - t.l2) < 1e-9);
  }
}

TEST_CASE("outer bounds, state-independent joint") {
  auto ch = oracle::identity_channel();
  const auto joint = assemble_joint(ch, oracle::uniform_copy_cond(ch));
  const auto b = outer_bounds(joint);
  CHECK(b.m1 == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(b.m2 == doctest::Approx(0.0).epsilon(1e-12));
  // W = X over a clean channel: the common bound is H(X) = 1 bit
  CHECK(b.r0 == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("outer bounds match the conditional-MI oracle") {
  Xoshiro256ss rng(12);
  auto ch = oracle::random_channel(rng);
  for (int trial = 0; trial < 25; ++trial) {
    const auto joint = assemble_joint(ch, oracle::random_cond(rng, ch, 2, 2, 2));
    const auto b = outer_bounds(joint);
    const auto& j = joint.full_joint;
    using namespace ax;
    const double common =
        std::min(oracle::joint_cmi_bits(j, {W}, {Y1}, {S}),
                 oracle::joint_cmi_bits(j, {W}, {Y2}, {S}));
    CHECK(std::abs(b.r0 - common) < 1e-9);
    CHECK(std::abs(b.r01 -
                   (common + oracle::joint_cmi_bits(j, {U}, {Y1}, {W, S}))) <
          1e-9);
    CHECK(std::abs(b.r02 -
                   (common + oracle::joint_cmi_bits(j, {V}, {Y2}, {W, S}))) <
          1e-9);
    CHECK(std::abs(b.rsum1 -
                   (common + oracle::joint_cmi_bits(j, {U}, {Y1}, {W, S}) +
                    oracle::joint_cmi_bits(j, {X}, {Y2}, {W, U, S}))) < 1e-9);
    CHECK(std::abs(b.rsum2 -
                   (common + oracle::joint_cmi_bits(j, {X}, {Y1}, {W, V, S}) +
                    oracle::joint_cmi_bits(j, {V}, {Y2}, {W, S}))) < 1e-9);
    CHECK(std::abs(b.m1 - oracle::joint_mi_bits(j, {S}, {Y1})) < 1e-9);
    CHECK(std::abs(b.m2 - oracle::joint_mi_bits(j, {S}, {Y2})) < 1e-9);
    // structural sanity: the pairwise bounds extend the common one, and
    // the leakage floors stay below H(S)
    CHECK(b.r0 <= b.r01 + 1e-12);
    CHECK(b.r0 <= b.r02 + 1e-12);
    const double hs = joint_entropy_bits(j, {S});
    CHECK(b.m1 >= 0.0);
    CHECK(b.m2 >= 0.0);
    CHECK(b.m1 <= hs + 1e-9);
    CHECK(b.m2 <= hs + 1e-9);
  }
}

TEST_CASE("binning budget") {
  Xoshiro256ss rng(13);
  auto ch = oracle::xor_channel();

  SUBCASE("no covering needed when the auxiliaries ignore the state") {
    const auto joint = assemble_joint(ch, oracle::uniform_copy_cond(ch));
    const auto bb = binning_budget(joint);
    CHECK(bb.rt0 == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(bb.rt1s == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(bb.rt2 == doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("no cross-binning for conditionally independent U,V") {
    const auto joint =
        assemble_joint(ch, oracle::structured_cond(rng, ch, 2, 2, 2));
    CHECK(binning_budget(joint).rt12 == doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("matches the oracle on a seeded joint") {
    const auto joint = assemble_joint(ch, oracle::random_cond(rng, ch, 2, 2, 2));
    const auto bb = binning_budget(joint);
    const auto& j = joint.full_joint;
    using namespace ax;
    CHECK(std::abs(bb.rt0 - oracle::joint_mi_bits(j, {W}, {S})) < 1e-12);
    CHECK(std::abs(bb.rt2 - oracle::joint_cmi_bits(j, {V}, {S}, {W})) < 1e-12);
    CHECK(std::abs(bb.rt1s - oracle::joint_cmi_bits(j, {U}, {S}, {W})) < 1e-12);
    CHECK(std::abs(bb.rt12 - oracle::joint_cmi_bits(j, {U}, {V}, {S, W})) <
          1e-12);
  }
}

TEST_CASE("binning region, empty auxiliaries give the zero region") {
  auto ch = oracle::xor_channel();
  AuxConditional cond;
  cond.card_s = 2;
  cond.card_x = 2;
  cond.table = {0.5, 0.5, 0.5, 0.5};
  const auto b = binning_region(assemble_joint(ch, cond));
  CHECK(b.r0 == 0.0);
  CHECK(b.r1 == 0.0);
  CHECK(b.r2 == 0.0);
  CHECK(b.rsum == 0.0);
}

TEST_CASE("binning region facets via the oracle formulas") {
  auto ch = oracle::xor_channel();
  Xoshiro256ss rng(14);
  for (int trial = 0; trial < 25; ++trial) {
    const auto joint = assemble_joint(ch, oracle::random_cond(rng, ch, 2, 2, 2));
    const auto b = binning_region(joint);
    const auto t = oracle_terms(joint.full_joint);
    auto clamp = [](double v) { return v > 0.0 ? v : 0.0; };
    // R1 facet: I(U;Y1|W) - I(U;S|W) - I(U;V|W,S)
    CHECK(std::abs(b.r1 - clamp(t.iuy1_w - t.ius_w - t.iuv_ws)) < 1e-9);
    CHECK(std::abs(b.r2 - clamp(t.ivy2_w - t.ivs_w)) < 1e-9);
    CHECK(std::abs(b.r01 - clamp(t.iwuy1 - t.iwus - t.iuv_ws)) < 1e-9);
    CHECK(std::abs(b.r02 - clamp(t.iwvy2 - t.iwvs)) < 1e-9);
    CHECK(std::abs(b.r0 - clamp(std::min(t.iwy1, t.iwy2) - t.iws)) < 1e-9);
  }
}

TEST_CASE("binning region vs direct forms") {
  Xoshiro256ss rng(15);
  auto ch = oracle::random_channel(rng);

  SUBCASE("general joints: r0/r02 coincide, r01 differs by I(U;V|W,S)") {
    for (int trial = 0; trial < 40; ++trial) {
      const auto joint =
          assemble_joint(ch, oracle::random_cond(rng, ch, 2, 2, 2));
      const auto fme = binning_region(joint);
      const auto direct = inner_bounds(joint);
      const auto t = oracle_terms(joint.full_joint);
      CHECK(std::abs(fme.r0 - direct.r0) < 1e-12);
      CHECK(std::abs(fme.r02 - direct.r02) < 1e-12);
      const double raw_direct_r01 = t.iwuy1 - t.iwus;
      const double raw_fme_r01 = raw_direct_r01 - t.iuv_ws;
      CHECK(std::abs(fme.r01 - std::max(0.0, raw_fme_r01)) < 1e-9);
      CHECK(direct.r01 >= fme.r01 - 1e-12);
    }
  }
  SUBCASE("conditionally independent joints: all per-rate facets coincide") {
    for (int trial = 0; trial < 40; ++trial) {
      const auto joint =
          assemble_joint(ch, oracle::structured_cond(rng, ch, 2, 2, 2));
      const auto fme = binning_region(joint);
      const auto direct = inner_bounds(joint);
      CHECK(std::abs(fme.r0 - direct.r0) < 1e-9);
      CHECK(std::abs(fme.r01 - direct.r01) < 1e-9);
      CHECK(std::abs(fme.r02 - direct.r02) < 1e-9);
    }
  }
}

TEST_CASE("eliminated sum bound equals the brute-force polytope maximum") {
  Xoshiro256ss rng(16);
  auto ch = oracle::random_channel(rng);
  for (int trial = 0; trial < 40; ++trial) {
    const auto joint = assemble_joint(ch, oracle::random_cond(rng, ch, 2, 2, 2));
    const auto b = binning_region(joint);
    RegionBounds rb{b.r0, b.r1, b.r2, b.r01, b.r02};
    // scan every candidate corner r0 from the constraint intersections
    double best = 0.0;
    for (double r0 : {0.0, rb.f0, rb.a01 - rb.a1, rb.a02 - rb.a2, rb.a01,
                      rb.a02}) {
      r0 = std::clamp(r0, 0.0, rb.tight_r0());
      best = std::max(best, rb.sum_at(r0));
    }
    CHECK(b.rsum_eliminated == doctest::Approx(best).epsilon(1e-12));
    CHECK(std::abs(b.rsum - b.rsum_eliminated) < 1e-12);  // for binning_region
  }
}

TEST_CASE("tightened bounds are monotone and dominate no facet") {
  Xoshiro256ss rng(17);
  auto ch = oracle::random_channel(rng);
  for (int trial = 0; trial < 60; ++trial) {
    const auto joint = assemble_joint(ch, oracle::random_cond(rng, ch, 2, 2, 2));
    for (const auto& b : {inner_bounds(joint), binning_region(joint)}) {
      CHECK(b.tight_r0 <= b.tight_r01 + 1e-9);
      CHECK(b.tight_r0 <= b.tight_r02 + 1e-9);
      CHECK(b.tight_r01 <= b.tight_rsum + 1e-9);
      CHECK(b.tight_r02 <= b.tight_rsum + 1e-9);
      CHECK(b.tight_r0 >= 0.0);
      CHECK(b.l1 >= 0.0);
      CHECK(b.l2 >= 0.0);
      const double hs = joint_entropy_bits(joint.full_joint, {ax::S});
      CHECK(b.l1 <= hs + 1e-9);
      CHECK(b.l2 <= hs + 1e-9);
    }
  }
}

TEST_CASE("inner region sits inside the outer region") {
  Xoshiro256ss rng(18);
  for (int c = 0; c < 8; ++c) {
    auto ch = oracle::random_channel(rng);
    for (int trial = 0; trial < 12; ++trial) {
      const auto joint =
          assemble_joint(ch, oracle::random_cond(rng, ch, 2, 2, 2));
      const auto in = binning_region(joint);
      const auto out = outer_bounds(joint);
      CHECK(in.tight_r0 <= out.r0 + 1e-9);
      CHECK(in.tight_r01 <= out.r01 + 1e-9);
      CHECK(in.tight_r02 <= out.r02 + 1e-9);
      CHECK(in.tight_rsum <= std::min(out.rsum1, out.rsum2) + 1e-9);
      // leakage sandwich: I(S;Y_k) <= l_k
      CHECK(out.m1 <= in.l1 + 1e-9);
      CHECK(out.m2 <= in.l2 + 1e-9);
    }
  }
}
