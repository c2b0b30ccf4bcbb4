#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "smbc/channel.hpp"

// Inner-bound, outer-bound and binning-budget evaluators for a fixed
// auxiliary joint. Two routes to the inner region are kept side by side:
//
//  * inner_bounds()   evaluates the per-rate right-hand sides in their
//    direct single-letter form;
//  * binning_region() eliminates the four auxiliary binning rates from the
//    covering/packing constraint system (Fourier-Motzkin) and reports the
//    resulting facets. This is the implementation-authoritative region.
//
// The two agree on the R0 and R0+R2 facets identically and on R0+R1 up to
// I(U;V|W,S); their sum bounds differ structurally (min vs max pattern), so
// both sums are always reported and never silently reconciled.

namespace smbc {

// Facet right-hand sides and implied maxima of an inner region, in bits.
// l1/l2 are leakage guarantees: the scheme leaks at most l_k bits/use of
// state to receiver k, so every threshold e_k >= l_k is met.
struct InnerBoundValues {
  double r0 = 0, r01 = 0, r02 = 0, rsum = 0;  // facets, clamped at 0
  double r1 = 0, r2 = 0;              // per-message facets (eliminated system)
  double rsum_eliminated = 0;           // sum bound implied by the FME region
  double l1 = 0, l2 = 0;
  // Componentwise maxima of (r0, r0+r1, r0+r2, r0+r1+r2) over the FME
  // region; monotone by construction (tight_r0 <= tight_r01 <= tight_rsum).
  double tight_r0 = 0, tight_r01 = 0, tight_r02 = 0, tight_rsum = 0;
};

// Right-hand sides of the S-conditioned outer bounds plus the leakage
// lower bounds m_k = I(S;Y_k).
struct OuterBoundValues {
  double r0 = 0, r01 = 0, r02 = 0;
  double rsum1 = 0, rsum2 = 0;  // the two sum-rate routes
  double m1 = 0, m2 = 0;
};

// Minimal feasible auxiliary binning rates (delta terms taken to 0).
struct BinningBudget {
  double rt0 = 0;   // covering W against S
  double rt2 = 0;   // covering V against S given W
  double rt1s = 0;  // covering U against S given W
  double rt12 = 0;  // cross-binning U against V given (W,S)
};

namespace detail {

// Every mutual-information term the bound formulas use, computed once.
struct BoundTerms {
  double iwy1, iwy2, iws;
  double iwuy1, iwus, iwvy2, iwvs;
  double iuy1_w, ius_w, ivy2_w, ivs_w;
  double iuv_ws;
  double l1, l2, m1, m2;
  double iwy1_s, iwy2_s, iuy1_ws, ivy2_ws, ixy2_wus, ixy1_wvs;
};

inline BoundTerms bound_terms(const NdTable& j) {
  using namespace ax;
  BoundTerms t{};
  t.iwy1 = joint_mi_bits(j, {W}, {Y1});
  t.iwy2 = joint_mi_bits(j, {W}, {Y2});
  t.iws = joint_mi_bits(j, {W}, {S});
  t.iwuy1 = joint_mi_bits(j, {W, U}, {Y1});
  t.iwus = joint_mi_bits(j, {W, U}, {S});
  t.iwvy2 = joint_mi_bits(j, {W, V}, {Y2});
  t.iwvs = joint_mi_bits(j, {W, V}, {S});
  t.iuy1_w = joint_cmi_bits(j, {U}, {Y1}, {W});
  t.ius_w = joint_cmi_bits(j, {U}, {S}, {W});
  t.ivy2_w = joint_cmi_bits(j, {V}, {Y2}, {W});
  t.ivs_w = joint_cmi_bits(j, {V}, {S}, {W});
  t.iuv_ws = joint_cmi_bits(j, {U}, {V}, {W, S});
  t.l1 = joint_mi_bits(j, {S}, {W, U, Y1});
  t.l2 = joint_mi_bits(j, {S}, {W, V, Y2});
  t.m1 = joint_mi_bits(j, {S}, {Y1});
  t.m2 = joint_mi_bits(j, {S}, {Y2});
  t.iwy1_s = joint_cmi_bits(j, {W}, {Y1}, {S});
  t.iwy2_s = joint_cmi_bits(j, {W}, {Y2}, {S});
  t.iuy1_ws = joint_cmi_bits(j, {U}, {Y1}, {W, S});
  t.ivy2_ws = joint_cmi_bits(j, {V}, {Y2}, {W, S});
  t.ixy2_wus = joint_cmi_bits(j, {X}, {Y2}, {W, U, S});
  t.ixy1_wvs = joint_cmi_bits(j, {X}, {Y1}, {W, V, S});
  return t;
}

inline double clamp0(double v) { return v > 0.0 ? v : 0.0; }

}  // namespace detail

// The rate polytope left after eliminating the binning rates:
//   { r >= 0, r0 <= f0, r1 <= a1, r2 <= a2, r0+r1 <= a01, r0+r2 <= a02 },
// all facets clamped at 0.
struct RegionBounds {
  double f0 = 0, a1 = 0, a2 = 0, a01 = 0, a02 = 0;

  double tight_r0() const { return std::min({f0, a01, a02}); }
  double tight_r01() const { return std::min(a01, f0 + a1); }
  double tight_r02() const { return std::min(a02, f0 + a2); }

  double sum_at(double r0) const {
    return r0 + std::min(a1, a01 - r0) + std::min(a2, a02 - r0);
  }
  // Max of r0+r1+r2 over the polytope; the objective is piecewise linear in
  // r0 so a breakpoint scan is exact.
  double tight_rsum() const {
    const double top = tight_r0();
    double best = 0.0;
    for (double r0 : {0.0, a01 - a1, a02 - a2, top}) {
      r0 = std::clamp(r0, 0.0, top);
      best = std::max(best, sum_at(r0));
    }
    return best;
  }

  // Pareto-maximal corner points (r0, r1max(r0), r2max(r0)).
  std::vector<std::array<double, 3>> pareto_vertices() const {
    const double top = tight_r0();
    std::vector<double> r0s{0.0, std::clamp(a01 - a1, 0.0, top),
                            std::clamp(a02 - a2, 0.0, top), top};
    std::sort(r0s.begin(), r0s.end());
    r0s.erase(std::unique(r0s.begin(), r0s.end()), r0s.end());
    std::vector<std::array<double, 3>> out;
    out.reserve(r0s.size());
    for (double r0 : r0s) {
      out.push_back({r0, std::max(0.0, std::min(a1, a01 - r0)),
                     std::max(0.0, std::min(a2, a02 - r0))});
    }
    return out;
  }
};

namespace detail {

inline RegionBounds fme_region(const BoundTerms& t) {
  RegionBounds rb;
  rb.f0 = clamp0(std::min(t.iwy1, t.iwy2) - t.iws);
  rb.a1 = clamp0(t.iuy1_w - t.ius_w - t.iuv_ws);
  rb.a2 = clamp0(t.ivy2_w - t.ivs_w);
  rb.a01 = clamp0(t.iwuy1 - t.iwus - t.iuv_ws);
  rb.a02 = clamp0(t.iwvy2 - t.iwvs);
  return rb;
}

inline void fill_common(InnerBoundValues& b, const BoundTerms& t,
                        const RegionBounds& rb) {
  b.r1 = rb.a1;
  b.r2 = rb.a2;
  b.rsum_eliminated = rb.tight_rsum();
  b.l1 = t.l1;
  b.l2 = t.l2;
  b.tight_r0 = rb.tight_r0();
  b.tight_r01 = rb.tight_r01();
  b.tight_r02 = rb.tight_r02();
  b.tight_rsum = rb.tight_rsum();
}

}  // namespace detail

// Per-rate right-hand sides in their direct single-letter form, clamped at 0.
// rsum is the direct sum form; rsum_eliminated carries the FME sum for
// cross-checking (the two differ by a min-vs-max pattern in I(W;Y_k)).
inline InnerBoundValues inner_bounds(const AuxiliaryJoint& joint) {
  const auto t = detail::bound_terms(joint.full_joint);
  const auto rb = detail::fme_region(t);
  InnerBoundValues b;
  b.r0 = detail::clamp0(std::min(t.iwy1, t.iwy2) - t.iws);
  b.r01 = detail::clamp0(t.iwuy1 - t.iwus);
  b.r02 = detail::clamp0(t.iwvy2 - t.iwvs);
  b.rsum = detail::clamp0((t.iwuy1 - t.iwus) + (t.iwvy2 - t.iwvs) -
                          std::min(t.iwy1, t.iwy2) - t.iws - t.iuv_ws);
  detail::fill_common(b, t, rb);
  return b;
}

// Facets of the region obtained by Fourier-Motzkin elimination of the
// binning rates from the covering/packing system. r01 differs from the
// direct R0+R1 form by -I(U;V|W,S); r0 and r02 coincide with the direct
// forms identically.
inline InnerBoundValues binning_region(const AuxiliaryJoint& joint) {
  const auto t = detail::bound_terms(joint.full_joint);
  const auto rb = detail::fme_region(t);
  InnerBoundValues b;
  b.r0 = rb.f0;
  b.r01 = rb.a01;
  b.r02 = rb.a02;
  b.rsum = rb.tight_rsum();
  detail::fill_common(b, t, rb);
  return b;
}

// S-conditioned outer-bound right-hand sides plus m_k = I(S;Y_k).
inline OuterBoundValues outer_bounds(const AuxiliaryJoint& joint) {
  const auto t = detail::bound_terms(joint.full_joint);
  OuterBoundValues b;
  const double common = std::min(t.iwy1_s, t.iwy2_s);
  b.r0 = common;
  b.r01 = common + t.iuy1_ws;
  b.r02 = common + t.ivy2_ws;
  b.rsum1 = common + t.iuy1_ws + t.ixy2_wus;
  b.rsum2 = common + t.ixy1_wvs + t.ivy2_ws;
  b.m1 = t.m1;
  b.m2 = t.m2;
  return b;
}

// Minimal feasible binning budget for the joint (delta terms -> 0).
inline BinningBudget binning_budget(const AuxiliaryJoint& joint) {
  using namespace ax;
  const auto& j = joint.full_joint;
  BinningBudget bb;
  bb.rt0 = joint_mi_bits(j, {W}, {S});
  bb.rt2 = joint_cmi_bits(j, {V}, {S}, {W});
  bb.rt1s = joint_cmi_bits(j, {U}, {S}, {W});
  bb.rt12 = joint_cmi_bits(j, {U}, {V}, {W, S});
  return bb;
}

}  // namespace smbc
