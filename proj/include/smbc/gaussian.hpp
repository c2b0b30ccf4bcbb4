#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "smbc/errors.hpp"
#include "smbc/frontier.hpp"

// Closed-form rate-leakage region of the scalar Gaussian state-dependent
// broadcast channel Y_k = X + S_k + Z_k with private messages, plus the
// auxiliary-coefficient choice that achieves it and a grid sweep over the
// free parameters (gamma, rho1, rho2).
//
// Conventions: gamma is the power share of the lower-noise user. When the
// caller supplies n1 >= n2 the two users are relabeled internally and the
// outputs swapped back, so the formulas below always see n2 >= n1.

namespace smbc {

struct GaussianParams {
  double p = 1.0;          // input power P > 0
  double n1 = 1.0, n2 = 2.0;  // noise variances > 0
  double q1 = 0.0, q2 = 0.0;  // state variances >= 0
  double gamma = 1.0;         // power split in [0,1]
  double rho1 = 0.0, rho2 = 0.0;  // input-state correlations, rho1^2+rho2^2 <= 1

  double p_prime() const {
    return std::max(0.0, (1.0 - rho1 * rho1 - rho2 * rho2) * p);
  }

  void validate() const {
    if (!(p > 0.0)) throw ValidationError("gaussian: P must be > 0");
    if (!(n1 > 0.0) || !(n2 > 0.0)) {
      throw ValidationError("gaussian: noise variances must be > 0");
    }
    if (!(q1 >= 0.0) || !(q2 >= 0.0)) {
      throw ValidationError("gaussian: state variances must be >= 0");
    }
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
      throw ValidationError("gaussian: gamma must lie in [0,1]");
    }
    if (rho1 * rho1 + rho2 * rho2 > 1.0 + 1e-12) {
      throw ValidationError("gaussian: rho1^2 + rho2^2 must be <= 1");
    }
    if (q1 == 0.0 && rho1 != 0.0) {
      throw ValidationError("gaussian: rho1 != 0 with Q1 = 0 is undefined");
    }
    if (q2 == 0.0 && rho2 != 0.0) {
      throw ValidationError("gaussian: rho2 != 0 with Q2 = 0 is undefined");
    }
  }
};

// (R1,R2,E1,E2) in bits/use.
struct GaussianQuadruple {
  double r1 = 0, r2 = 0;
  double e1 = 0, e2 = 0;
};

// Auxiliary coefficients of the achievability scheme:
//   X = X'1 + X'2 + b1 S1 + b2 S2
//   U = X'1 + a10 X'2 + a11 S1 + a12 S2
//   V = X'2 + a21 S1 + a22 S2
struct GaussianCoefficients {
  double beta1 = 0, beta2 = 0;
  double alpha10 = 0, alpha11 = 0, alpha12 = 0;
  double alpha21 = 0, alpha22 = 0;
};

namespace detail {

// Users relabeled so the internal formulas see n2 >= n1.
inline GaussianParams canonical(const GaussianParams& gp, bool& swapped) {
  swapped = gp.n1 > gp.n2;
  if (!swapped) return gp;
  GaussianParams c = gp;
  std::swap(c.n1, c.n2);
  std::swap(c.q1, c.q2);
  std::swap(c.rho1, c.rho2);
  return c;
}

inline GaussianQuadruple rate_region_canonical(const GaussianParams& g) {
  const double pp = g.p_prime();
  GaussianQuadruple q;
  q.r1 = 0.5 * std::log2(1.0 + g.gamma * pp / g.n1);
  q.r2 = 0.5 * std::log2(1.0 + (1.0 - g.gamma) * pp / (g.gamma * pp + g.n2));
  q.e1 = 0.5 * std::log2((g.p + 2.0 * g.rho1 * std::sqrt(g.p * g.q1) + g.q1 +
                          g.n1) /
                         (pp + g.n1));
  q.e2 = 0.5 * std::log2((g.p + 2.0 * g.rho2 * std::sqrt(g.p * g.q2) + g.q2 +
                          g.n2) /
                         (pp + g.n2));
  return q;
}

}  // namespace detail

// The closed-form quadruple at one (gamma, rho1, rho2).
inline GaussianQuadruple gaussian_rate_region(const GaussianParams& gp) {
  gp.validate();
  bool swapped = false;
  const GaussianParams g = detail::canonical(gp, swapped);
  GaussianQuadruple q = detail::rate_region_canonical(g);
  if (swapped) {
    std::swap(q.r1, q.r2);
    std::swap(q.e1, q.e2);
  }
  return q;
}

// Coefficients of the achieving auxiliaries, in the canonical user order
// (n2 >= n1). beta_k = 0 when Q_k = 0 by the continuity convention.
inline GaussianCoefficients gaussian_coefficients(const GaussianParams& gp) {
  gp.validate();
  bool swapped = false;
  const GaussianParams g = detail::canonical(gp, swapped);
  const double pp = g.p_prime();
  GaussianCoefficients c;
  c.beta1 = g.q1 > 0.0 ? g.rho1 * std::sqrt(g.p / g.q1) : 0.0;
  c.beta2 = g.q2 > 0.0 ? g.rho2 * std::sqrt(g.p / g.q2) : 0.0;
  const double d1 = g.gamma * pp + g.n1;
  const double d2 = pp + g.n2;
  c.alpha10 = g.gamma * pp / d1;
  c.alpha11 = (1.0 + c.beta1) * g.gamma * pp / d1;
  c.alpha12 = c.beta2 * g.gamma * pp / d1;
  c.alpha21 = c.beta1 * (1.0 - g.gamma) * pp / d2;
  c.alpha22 = (1.0 + c.beta2) * (1.0 - g.gamma) * pp / d2;
  return c;
}

// One evaluated sweep grid point.
struct GaussianSweepPoint {
  double gamma = 0, rho1 = 0, rho2 = 0;
  GaussianQuadruple q;
};

inline bool dominates(const GaussianQuadruple& a, const GaussianQuadruple& b) {
  if (a.r1 < b.r1 || a.r2 < b.r2 || a.e1 > b.e1 || a.e2 > b.e2) return false;
  return a.r1 > b.r1 || a.r2 > b.r2 || a.e1 < b.e1 || a.e2 < b.e2;
}

inline bool lex_less(const GaussianQuadruple& a, const GaussianQuadruple& b) {
  if (a.r1 != b.r1) return a.r1 < b.r1;
  if (a.r2 != b.r2) return a.r2 < b.r2;
  if (a.e1 != b.e1) return a.e1 < b.e1;
  return a.e2 < b.e2;
}

// Sweeps gamma over [0,1] and (rho1,rho2) over a square grid on [-1,1]^2
// restricted to the closed unit disk; returns the non-dominated quadruples
// in deterministic (lexicographic) order. A resolution of 1 degenerates
// that axis to its center (gamma=0.5, rho=0).
inline std::vector<GaussianSweepPoint> sweep_region(const GaussianParams& base,
                                                    std::size_t gamma_steps,
                                                    std::size_t rho_steps) {
  if (gamma_steps < 1 || rho_steps < 1) {
    throw ValidationError("sweep: grid resolutions must be >= 1");
  }
  std::vector<GaussianSweepPoint> grid;
  for (std::size_t gi = 0; gi < gamma_steps; ++gi) {
    const double gamma =
        gamma_steps == 1 ? 0.5
                         : static_cast<double>(gi) /
                               static_cast<double>(gamma_steps - 1);
    for (std::size_t i = 0; i < rho_steps; ++i) {
      const double rho1 =
          (base.q1 > 0.0 && rho_steps > 1)
              ? -1.0 + 2.0 * static_cast<double>(i) /
                           static_cast<double>(rho_steps - 1)
              : 0.0;
      for (std::size_t j = 0; j < rho_steps; ++j) {
        const double rho2 =
            (base.q2 > 0.0 && rho_steps > 1)
                ? -1.0 + 2.0 * static_cast<double>(j) /
                             static_cast<double>(rho_steps - 1)
                : 0.0;
        if (rho1 * rho1 + rho2 * rho2 > 1.0) continue;
        GaussianParams gp = base;
        gp.gamma = gamma;
        gp.rho1 = rho1;
        gp.rho2 = rho2;
        grid.push_back({gamma, rho1, rho2, gaussian_rate_region(gp)});
        if (base.q2 == 0.0) break;
      }
      if (base.q1 == 0.0) break;
    }
  }
  const auto keep = pareto_filter_indices(
      grid,
      [](const auto& a, const auto& b) { return dominates(a.q, b.q); },
      [](const auto& a, const auto& b) {
        if (a.q.r1 != b.q.r1 || a.q.r2 != b.q.r2 || a.q.e1 != b.q.e1 ||
            a.q.e2 != b.q.e2) {
          return lex_less(a.q, b.q);
        }
        if (a.gamma != b.gamma) return a.gamma < b.gamma;
        if (a.rho1 != b.rho1) return a.rho1 < b.rho1;
        return a.rho2 < b.rho2;
      });
  std::vector<GaussianSweepPoint> out;
  out.reserve(keep.size());
  for (std::size_t idx : keep) {
    // identical quadruples from different parameters collapse to the
    // lexicographically first witness
    if (!out.empty() && !lex_less(out.back().q, grid[idx].q) &&
        !lex_less(grid[idx].q, out.back().q)) {
      continue;
    }
    out.push_back(grid[idx]);
  }
  return out;
}

}  // namespace smbc
