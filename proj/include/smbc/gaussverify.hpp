#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "smbc/errors.hpp"
#include "smbc/gaussian.hpp"
#include "smbc/info.hpp"
#include "smbc/rng.hpp"

// Independent verification of the Gaussian closed forms: the achieving
// auxiliaries are linear in six independent Gaussian primitives, so every
// mutual information is exact via log-determinants of the assembled
// covariance. This module is the numerical oracle for gaussian.hpp.

namespace smbc {

// Variable indices inside the covariance model.
namespace gv {
inline constexpr std::size_t X1p = 0;  // X'1
inline constexpr std::size_t X2p = 1;  // X'2
inline constexpr std::size_t S1 = 2;
inline constexpr std::size_t S2 = 3;
inline constexpr std::size_t Z1 = 4;
inline constexpr std::size_t Z2 = 5;
inline constexpr std::size_t X = 6;
inline constexpr std::size_t U = 7;
inline constexpr std::size_t V = 8;
inline constexpr std::size_t Y1 = 9;
inline constexpr std::size_t Y2 = 10;
inline constexpr std::size_t kVarCount = 11;
}  // namespace gv

// Joint covariance of (X'1,X'2,S1,S2,Z1,Z2,X,U,V,Y1,Y2): the primitives are
// independent with the given variances and the derived variables are the
// rows of lin_maps applied to them.
struct CovarianceModel {
  std::array<double, 6> primitive_var{};
  // rows: X,U,V,Y1,Y2 as coefficients over the six primitives
  std::array<std::array<double, 6>, 5> lin_maps{};
  std::vector<double> full_cov;  // row-major kVarCount x kVarCount

  double cov(std::size_t i, std::size_t j) const {
    return full_cov[i * gv::kVarCount + j];
  }
};

struct GaussMiQuery {
  std::vector<std::size_t> set_a, set_b, set_c;
};

namespace detail {

// Greedy pivoted selection of a maximal subset of `idx` whose covariance
// block is well-conditioned positive definite; coordinates that are (near)
// linear combinations of already-selected ones are dropped. Exact for the
// structural singularities this model produces (zero variances, boundary
// gamma/rho).
inline std::vector<std::size_t> independent_subset(
    const CovarianceModel& cm, const std::vector<std::size_t>& idx,
    double rel_tol = 1e-11) {
  const std::size_t n = idx.size();
  std::vector<double> resid(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) resid[i * n + j] = cm.cov(idx[i], idx[j]);
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, resid[i * n + i]);
  const double tol = std::max(rel_tol * scale, 1e-300);
  std::vector<std::size_t> picked;
  std::vector<bool> used(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t best = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (used[i]) continue;
      if (best == n || resid[i * n + i] > resid[best * n + best]) best = i;
    }
    if (best == n || resid[best * n + best] <= tol) break;
    const double piv = std::sqrt(resid[best * n + best]);
    std::vector<double> row(n);
    for (std::size_t j = 0; j < n; ++j) row[j] = resid[best * n + j] / piv;
    // deflate the residual covariance
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) resid[i * n + j] -= row[i] * row[j];
    used[best] = true;
    picked.push_back(best);
  }
  std::vector<std::size_t> out;
  out.reserve(picked.size());
  std::sort(picked.begin(), picked.end());
  for (std::size_t i : picked) out.push_back(idx[i]);
  return out;
}

// Conditional covariance Sigma_{A|D} via a Cholesky solve on Sigma_D.
// D must be pre-reduced to an independent subset; if roundoff still breaks
// positive definiteness the block is retried once with 1e-12 diagonal
// jitter before giving up.
inline std::vector<double> conditional_cov(const CovarianceModel& cm,
                                           const std::vector<std::size_t>& a,
                                           const std::vector<std::size_t>& d) {
  const std::size_t na = a.size(), nd = d.size();
  std::vector<double> ld(nd * nd, 0.0);
  for (double jitter : {0.0, 1e-12}) {
    bool ok = true;
    std::fill(ld.begin(), ld.end(), 0.0);
    for (std::size_t i = 0; i < nd && ok; ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        double sum = cm.cov(d[i], d[j]) + (i == j ? jitter : 0.0);
        for (std::size_t k = 0; k < j; ++k)
          sum -= ld[i * nd + k] * ld[j * nd + k];
        if (i == j) {
          if (sum <= 0.0) {
            ok = false;
            break;
          }
          ld[i * nd + i] = std::sqrt(sum);
        } else {
          ld[i * nd + j] = sum / ld[j * nd + j];
        }
      }
    }
    if (ok) break;
    if (jitter != 0.0) {
      throw ValidationError(
          "conditioning covariance block is indefinite beyond jitter repair");
    }
  }
  // M = L^-1 Sigma_{D,A}; conditional = Sigma_A - M^T M
  std::vector<double> m(nd * na);
  for (std::size_t c = 0; c < na; ++c) {
    for (std::size_t i = 0; i < nd; ++i) {
      double sum = cm.cov(d[i], a[c]);
      for (std::size_t k = 0; k < i; ++k) sum -= ld[i * nd + k] * m[k * na + c];
      m[i * na + c] = sum / ld[i * nd + i];
    }
  }
  std::vector<double> cond(na * na);
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < na; ++j) {
      double sum = cm.cov(a[i], a[j]);
      for (std::size_t k = 0; k < nd; ++k) sum -= m[k * na + i] * m[k * na + j];
      cond[i * na + j] = sum;
    }
  }
  return cond;
}

// Pivoted Cholesky of a PSD matrix: fills `picked` with the coordinates of
// a maximal well-conditioned principal submatrix and returns its log2
// determinant (= product of pivots). Near-zero pivots are deterministic
// directions; pivots below -tol mean the block is indefinite. `scale_hint`
// must carry the unconditioned variance scale: conditional covariances are
// residuals that can sit arbitrarily close to zero, and rank decisions are
// relative to the original problem, not to the residual itself.
inline double pivoted_logdet2(std::vector<double> mat, std::size_t n,
                              std::vector<std::size_t>& picked,
                              double scale_hint = 0.0,
                              double rel_tol = 1e-11) {
  double scale = scale_hint;
  for (std::size_t i = 0; i < n; ++i)
    scale = std::max(scale, std::abs(mat[i * n + i]));
  const double tol = std::max(rel_tol * std::max(scale, 1e-12), 1e-300);
  std::vector<bool> used(n, false);
  double logdet = 0.0;
  picked.clear();
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t best = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (used[i]) continue;
      if (best == n || mat[i * n + i] > mat[best * n + best]) best = i;
    }
    if (best == n) break;
    const double piv = mat[best * n + best];
    if (piv <= tol) {
      if (piv < -tol) {
        throw ValidationError("covariance block indefinite beyond tolerance");
      }
      break;
    }
    logdet += std::log2(piv);
    picked.push_back(best);
    const double root = std::sqrt(piv);
    std::vector<double> row(n);
    for (std::size_t j = 0; j < n; ++j) row[j] = mat[best * n + j] / root;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) mat[i * n + j] -= row[i] * row[j];
    used[best] = true;
  }
  std::sort(picked.begin(), picked.end());
  return logdet;
}

}  // namespace detail

// Assembles the covariance of all eleven variables from the primitive
// variances and the linear maps of the auxiliary choice.
inline CovarianceModel build_covariance(const GaussianParams& gp,
                                        const GaussianCoefficients& co) {
  gp.validate();
  bool swapped = false;
  const GaussianParams g = detail::canonical(gp, swapped);
  const double pp = g.p_prime();
  if (pp < -1e-12) {
    throw ValidationError("build_covariance: negative residual power");
  }
  CovarianceModel cm;
  cm.primitive_var = {g.gamma * pp, (1.0 - g.gamma) * pp, g.q1, g.q2, g.n1,
                      g.n2};
  cm.lin_maps[0] = {1, 1, co.beta1, co.beta2, 0, 0};                       // X
  cm.lin_maps[1] = {1, co.alpha10, co.alpha11, co.alpha12, 0, 0};         // U
  cm.lin_maps[2] = {0, 1, co.alpha21, co.alpha22, 0, 0};                  // V
  for (std::size_t k = 0; k < 6; ++k) {
    cm.lin_maps[3][k] = cm.lin_maps[0][k];  // Y1 = X + S1 + Z1
    cm.lin_maps[4][k] = cm.lin_maps[0][k];  // Y2 = X + S2 + Z2
  }
  cm.lin_maps[3][gv::S1] += 1.0;
  cm.lin_maps[3][gv::Z1] += 1.0;
  cm.lin_maps[4][gv::S2] += 1.0;
  cm.lin_maps[4][gv::Z2] += 1.0;

  // rows of the full 11x6 map: identity on primitives, then lin_maps
  std::array<std::array<double, 6>, gv::kVarCount> map{};
  for (std::size_t i = 0; i < 6; ++i) map[i][i] = 1.0;
  for (std::size_t r = 0; r < 5; ++r) map[6 + r] = cm.lin_maps[r];

  cm.full_cov.assign(gv::kVarCount * gv::kVarCount, 0.0);
  for (std::size_t i = 0; i < gv::kVarCount; ++i) {
    for (std::size_t j = i; j < gv::kVarCount; ++j) {
      double sum = 0.0;
      for (std::size_t k = 0; k < 6; ++k) {
        sum += map[i][k] * cm.primitive_var[k] * map[j][k];
      }
      cm.full_cov[i * gv::kVarCount + j] = sum;
      cm.full_cov[j * gv::kVarCount + i] = sum;
    }
  }
  return cm;
}

// I(A;B|C) in bits via log-determinants of conditional covariance blocks:
// I = 1/2 [ log2 det Sigma_{A|C} - log2 det Sigma_{A|B,C} ], with
// zero-variance and linearly dependent coordinates removed first.
// Throws when some coordinate of A is deterministic given (B,C) but not
// given C alone (the mutual information diverges).
inline InfoValue gaussian_mi(const CovarianceModel& cm, const GaussMiQuery& q) {
  std::vector<bool> seen(gv::kVarCount, false);
  for (const auto* s : {&q.set_a, &q.set_b, &q.set_c}) {
    for (std::size_t i : *s) {
      if (i >= gv::kVarCount) {
        throw ValidationError("gaussian_mi: variable index out of range");
      }
      if (seen[i]) {
        throw ValidationError("gaussian_mi: query sets must be disjoint");
      }
      seen[i] = true;
    }
  }
  const auto c_red = detail::independent_subset(cm, q.set_c);
  std::vector<std::size_t> bc = c_red;
  bc.insert(bc.end(), q.set_b.begin(), q.set_b.end());
  const auto bc_red = detail::independent_subset(cm, bc);

  // Reduce A against C first: coordinates deterministic given C carry no
  // information. The surviving subset A' is then used on BOTH sides of the
  // determinant difference.
  double scale_a = 0.0;
  for (std::size_t i : q.set_a) scale_a = std::max(scale_a, cm.cov(i, i));
  const auto cond_c = detail::conditional_cov(cm, q.set_a, c_red);
  std::vector<std::size_t> kept;
  const double ld_c =
      detail::pivoted_logdet2(cond_c, q.set_a.size(), kept, scale_a);
  if (kept.empty()) return InfoValue{0.0};
  std::vector<std::size_t> a_red;
  a_red.reserve(kept.size());
  for (std::size_t i : kept) a_red.push_back(q.set_a[i]);

  const auto cond_bc = detail::conditional_cov(cm, a_red, bc_red);
  std::vector<std::size_t> kept_bc;
  const double ld_bc =
      detail::pivoted_logdet2(cond_bc, a_red.size(), kept_bc, scale_a);
  if (kept_bc.size() < a_red.size()) {
    throw ValidationError(
        "gaussian_mi diverges: a queried variable is deterministic given "
        "the conditioning set");
  }
  return InfoValue{detail::clamp_mi(0.5 * (ld_c - ld_bc))};
}

// Differential entropy h(A) = 1/2 log2((2 pi e)^k det Sigma_A) in bits,
// over the independent coordinates of A.
inline double differential_entropy_bits(const CovarianceModel& cm,
                                        const std::vector<std::size_t>& a) {
  const auto red = detail::independent_subset(cm, a);
  std::vector<double> block(red.size() * red.size());
  for (std::size_t i = 0; i < red.size(); ++i)
    for (std::size_t j = 0; j < red.size(); ++j)
      block[i * red.size() + j] = cm.cov(red[i], red[j]);
  std::vector<std::size_t> kept;
  const double ld = detail::pivoted_logdet2(block, red.size(), kept);
  return 0.5 * (ld + static_cast<double>(kept.size()) *
                         std::log2(2.0 * 3.14159265358979323846 *
                                   2.71828182845904523536));
}

// Residual report of the closed-form identities at one parameter point.
// All quantities are in the canonical user order (user 1 = lower noise).
struct GaussianVerifyReport {
  GaussianQuadruple closed;          // closed-form r1,r2,e1,e2
  double mi_r1 = 0, mi_r2 = 0;       // I(U;Y1)-I(U;V,S), I(V;Y2)-I(V;S)
  double mi_e1 = 0, mi_e2 = 0;       // I(S1,S2;Y_k)
  double mask1 = 0, mask2 = 0;       // I(S1,S2;U|Y1), I(S1,S2;V|Y2)
  // cross-state leakage I(S2;Y1|S1), I(S1;Y2|S2): reported, not asserted.
  // The pair identity mi_e_k = e_k holds even though these are nonzero
  // whenever the other user's correlation is (they equal
  // 1/2 log2((P'+rho_j^2 P+N_k)/(P'+N_k))).
  double cross1 = 0, cross2 = 0;
  double var_x = 0, power = 0;       // power check
  bool swapped = false;

  double max_residual() const {
    return std::max({std::abs(mi_r1 - closed.r1), std::abs(mi_r2 - closed.r2),
                     std::abs(mi_e1 - closed.e1), std::abs(mi_e2 - closed.e2),
                     mask1, mask2});
  }
  bool pass(double tol = 1e-9) const { return max_residual() <= tol; }
};

inline GaussianVerifyReport verify_gaussian_point(const GaussianParams& gp) {
  gp.validate();
  bool swapped = false;
  const GaussianParams g = detail::canonical(gp, swapped);
  const auto co = gaussian_coefficients(g);
  const auto cm = build_covariance(g, co);
  using namespace gv;
  GaussianVerifyReport rep;
  rep.swapped = swapped;
  rep.closed = detail::rate_region_canonical(g);
  rep.mi_r1 = gaussian_mi(cm, {{U}, {Y1}, {}}).bits -
              gaussian_mi(cm, {{U}, {V, S1, S2}, {}}).bits;
  rep.mi_r2 = gaussian_mi(cm, {{V}, {Y2}, {}}).bits -
              gaussian_mi(cm, {{V}, {S1, S2}, {}}).bits;
  rep.mi_e1 = gaussian_mi(cm, {{S1, S2}, {Y1}, {}}).bits;
  rep.mi_e2 = gaussian_mi(cm, {{S1, S2}, {Y2}, {}}).bits;
  rep.mask1 = gaussian_mi(cm, {{S1, S2}, {U}, {Y1}}).bits;
  rep.mask2 = gaussian_mi(cm, {{S1, S2}, {V}, {Y2}}).bits;
  rep.cross1 = gaussian_mi(cm, {{S2}, {Y1}, {S1}}).bits;
  rep.cross2 = gaussian_mi(cm, {{S1}, {Y2}, {S2}}).bits;
  rep.var_x = cm.cov(X, X);
  rep.power = g.p;
  return rep;
}

// Seeded parameter sample over the verification ranges: P in [0.1,10],
// N1 < N2 in [0.1,5], Q in [0,5], gamma in [0,1], rho in the unit disk.
inline GaussianParams random_gaussian_params(Xoshiro256ss& rng) {
  GaussianParams gp;
  gp.p = rng.uniform(0.1, 10.0);
  const double na = rng.uniform(0.1, 5.0);
  const double nb = rng.uniform(0.1, 5.0);
  gp.n1 = std::min(na, nb);
  gp.n2 = std::max(na, nb);
  if (gp.n1 == gp.n2) gp.n2 = gp.n1 + 0.1;
  gp.q1 = rng.uniform(0.0, 5.0);
  gp.q2 = rng.uniform(0.0, 5.0);
  gp.gamma = rng.uniform(0.0, 1.0);
  for (;;) {
    const double r1 = rng.uniform(-1.0, 1.0);
    const double r2 = rng.uniform(-1.0, 1.0);
    if (r1 * r1 + r2 * r2 <= 1.0) {
      gp.rho1 = r1;
      gp.rho2 = r2;
      break;
    }
  }
  return gp;
}

}  // namespace smbc
