#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "smbc/bounds.hpp"
#include "smbc/channel.hpp"
#include "smbc/frontier.hpp"
#include "smbc/rng.hpp"

// Numerical search over auxiliary conditionals P(w,u,v,x|s) for the inner
// region, and simplex-grid enumeration of the zero-rate leakage region.
//
// The search runs seeded Dirichlet(1) restarts followed by greedy
// coordinate refinement with a halving step schedule. Restarts are laid out
// over every cardinality sub-triple (a,b,c) <= (|W|,|U|,|V|) with a fixed
// per-triple sample count and per-restart seeds derived from
// (seed, triple, index). A run at larger cardinalities therefore evaluates
// a strict superset of the candidates of a smaller run, which makes the
// found frontier monotone in the cardinalities by construction.

namespace smbc {

struct SearchConfig {
  std::uint64_t seed = 0;
  std::size_t samples = 6;             // Dirichlet restarts per sub-triple
  std::size_t refine_iterations = 500; // cap on accepted local moves
  double step_init = 0.1;
  double step_min = 1e-4;
};

namespace detail {

// Fused evaluation for the search objective: the needed information terms
// only involve (S,W,U,V,Y1) and (S,W,U,V,Y2), so two five-axis marginals
// are accumulated directly and the seven-variable joint is never built.
struct SearchTerms {
  RegionBounds region;
  double l1 = 0, l2 = 0;
};

inline SearchTerms search_terms(const ChannelSpec& ch,
                                const AuxConditional& cond) {
  const std::size_t cw = cond.card_w, cu = cond.card_u, cv = cond.card_v;
  NdTable m1({ch.card_s, cw, cu, cv, ch.card_y1});
  NdTable m2({ch.card_s, cw, cu, cv, ch.card_y2});
  for (std::size_t s = 0; s < ch.card_s; ++s) {
    const double ps = ch.state_pmf.probs[s];
    for (std::size_t w = 0; w < cw; ++w)
      for (std::size_t u = 0; u < cu; ++u)
        for (std::size_t v = 0; v < cv; ++v) {
          double* row1 = &m1.data()[(((s * cw + w) * cu + u) * cv + v) *
                                    ch.card_y1];
          double* row2 = &m2.data()[(((s * cw + w) * cu + u) * cv + v) *
                                    ch.card_y2];
          for (std::size_t x = 0; x < ch.card_x; ++x) {
            const double base = ps * cond.at(s, w, u, v, x);
            if (base == 0.0) continue;
            const double* k =
                &ch.kernel[(x * ch.card_s + s) * ch.card_y1 * ch.card_y2];
            for (std::size_t y1 = 0; y1 < ch.card_y1; ++y1) {
              double py1 = 0.0;
              for (std::size_t y2 = 0; y2 < ch.card_y2; ++y2) {
                const double p = k[y1 * ch.card_y2 + y2];
                py1 += p;
                row2[y2] += base * p;
              }
              row1[y1] += base * py1;
            }
          }
        }
  }
  // axes of m1/m2: 0=S,1=W,2=U,3=V,4=Y(k)
  auto h1 = [&](std::vector<std::size_t> axes) {
    return joint_entropy_bits(m1, std::move(axes));
  };
  auto h2 = [&](std::vector<std::size_t> axes) {
    return joint_entropy_bits(m2, std::move(axes));
  };
  const double hw = h1({1}), hs = h1({0}), hws = h1({0, 1});
  const double hwu = h1({1, 2}), hwv = h1({1, 3});
  const double iwy1 = hw + h1({4}) - h1({1, 4});
  const double iwy2 = hw + h2({4}) - h2({1, 4});
  const double iws = hw + hs - hws;
  const double iwuy1 = hwu + h1({4}) - h1({1, 2, 4});
  const double iwus = hwu + hs - h1({0, 1, 2});
  const double iwvy2 = hwv + h2({4}) - h2({1, 3, 4});
  const double iwvs = hwv + hs - h1({0, 1, 3});
  const double iuy1_w = hwu + h1({1, 4}) - hw - h1({1, 2, 4});
  const double ius_w = hwu + hws - hw - h1({0, 1, 2});
  const double ivy2_w = hwv + h2({1, 4}) - hw - h2({1, 3, 4});
  const double ivs_w = hwv + hws - hw - h1({0, 1, 3});
  const double iuv_ws =
      h1({0, 1, 2}) + h1({0, 1, 3}) - hws - h1({0, 1, 2, 3});
  SearchTerms st;
  st.region.f0 = clamp0(std::min(iwy1, iwy2) - iws);
  st.region.a1 = clamp0(iuy1_w - ius_w - iuv_ws);
  st.region.a2 = clamp0(ivy2_w - ivs_w);
  st.region.a01 = clamp0(iwuy1 - iwus - iuv_ws);
  st.region.a02 = clamp0(iwvy2 - iwvs);
  st.l1 = clamp_mi(hs + h1({1, 2, 4}) - h1({0, 1, 2, 4}));
  st.l2 = clamp_mi(hs + h2({1, 3, 4}) - h2({0, 1, 3, 4}));
  return st;
}

inline double cond_expected_cost(const ChannelSpec& ch,
                                 const AuxConditional& cond) {
  double total = 0.0;
  for (std::size_t s = 0; s < ch.card_s; ++s) {
    const double ps = ch.state_pmf.probs[s];
    for (std::size_t w = 0; w < cond.card_w; ++w)
      for (std::size_t u = 0; u < cond.card_u; ++u)
        for (std::size_t v = 0; v < cond.card_v; ++v)
          for (std::size_t x = 0; x < ch.card_x; ++x) {
            total += ps * cond.at(s, w, u, v, x) * ch.cost[x];
          }
  }
  return total;
}

struct SearchObjective {
  double w_r0 = 1, w_r1 = 0, w_r2 = 0;
  double w_e1 = 0, w_e2 = 0;

  double value(const SearchTerms& st) const {
    double best = 0.0;
    for (const auto& v : st.region.pareto_vertices()) {
      best = std::max(best, w_r0 * v[0] + w_r1 * v[1] + w_r2 * v[2]);
    }
    return best - w_e1 * st.l1 - w_e2 * st.l2;
  }
};

// Replace one cell of a per-state slice and rescale the rest of the slice.
inline void set_slice_entry(AuxConditional& cond, std::size_t s,
                            std::size_t cell, double value) {
  const std::size_t n = cond.slice_size();
  double* slice = &cond.table[s * n];
  const double old = slice[cell];
  const double rest = 1.0 - old;
  if (rest > 1e-12) {
    const double scale = (1.0 - value) / rest;
    for (std::size_t i = 0; i < n; ++i) slice[i] *= scale;
  } else {
    const double share = n > 1 ? (1.0 - value) / double(n - 1) : 0.0;
    for (std::size_t i = 0; i < n; ++i) slice[i] = share;
  }
  slice[cell] = value;
  // exact renormalization so drift never accumulates across moves
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) total += slice[i];
  if (total > 0.0 && total != 1.0) {
    for (std::size_t i = 0; i < n; ++i) slice[i] /= total;
  }
}

// Greedy coordinate refinement with step halving and snap-to-extreme
// candidates (the snaps let the search land exactly on deterministic
// tables, which carry most optima of these bounds).
inline void refine(const ChannelSpec& ch, AuxConditional& cond,
                   const SearchObjective& obj, const SearchConfig& cfg) {
  double best = obj.value(search_terms(ch, cond));
  std::size_t accepted = 0;
  for (double step = cfg.step_init; step >= cfg.step_min; step *= 0.5) {
    bool improved = true;
    while (improved && accepted < cfg.refine_iterations) {
      improved = false;
      for (std::size_t s = 0; s < ch.card_s; ++s) {
        for (std::size_t cell = 0; cell < cond.slice_size(); ++cell) {
          const double old = cond.table[s * cond.slice_size() + cell];
          const double candidates[4] = {
              std::min(1.0, old + step), std::max(0.0, old - step), 0.0, 1.0};
          for (double cand : candidates) {
            if (cand == old) continue;
            AuxConditional trial = cond;
            set_slice_entry(trial, s, cell, cand);
            if (cond_expected_cost(ch, trial) > ch.cost_budget + 1e-12) {
              continue;
            }
            const double val = obj.value(search_terms(ch, trial));
            if (val > best + 1e-12) {
              cond = std::move(trial);
              best = val;
              improved = true;
              ++accepted;
              break;
            }
          }
          if (accepted >= cfg.refine_iterations) break;
        }
        if (accepted >= cfg.refine_iterations) break;
      }
    }
  }
}

inline std::vector<std::array<std::size_t, 3>> sub_triples(
    std::array<std::size_t, 3> cards) {
  std::vector<std::array<std::size_t, 3>> out;
  for (std::size_t a = 1; a <= cards[0]; ++a)
    for (std::size_t b = 1; b <= cards[1]; ++b)
      for (std::size_t c = 1; c <= cards[2]; ++c) out.push_back({a, b, c});
  std::sort(out.begin(), out.end(), [](const auto& l, const auto& r) {
    const std::size_t pl = l[0] * l[1] * l[2], pr = r[0] * r[1] * r[2];
    if (pl != pr) return pl < pr;
    return l < r;
  });
  return out;
}

}  // namespace detail

// Leakage pair (I(S;Y1), I(S;Y2)) for a plain input strategy p(x|s),
// i.e. the zero-rate operating point of that strategy.
inline std::pair<double, double> zero_rate_point(
    const ChannelSpec& ch, const std::vector<double>& x_given_s) {
  AuxConditional cond;
  cond.card_s = ch.card_s;
  cond.card_x = ch.card_x;
  cond.table = x_given_s;
  cond.validate();
  const auto st = detail::search_terms(ch, cond);
  return {st.l1, st.l2};  // with W=U=V trivial these are I(S;Y_k)
}

// Seeded random-restart search for the inner-region frontier at fixed
// auxiliary cardinalities. Deterministic for a fixed seed and config.
inline RegionFrontier search_inner_region(const ChannelSpec& ch,
                                          std::array<std::size_t, 3> cards,
                                          const SearchConfig& cfg = {}) {
  ch.validate();
  if (cards[0] == 0 || cards[1] == 0 || cards[2] == 0) {
    throw ValidationError("search: auxiliary cardinalities must be >= 1");
  }
  double min_cost = ch.cost[0];
  for (double c : ch.cost) min_cost = std::min(min_cost, c);
  if (min_cost > ch.cost_budget + 1e-12) {
    throw InfeasibilityError(
        "no input distribution satisfies the cost budget (min cost " +
        std::to_string(min_cost) + " > budget " +
        std::to_string(ch.cost_budget) + ")");
  }

  std::vector<RateQuintuple> candidates;
  std::vector<AuxConditional> conds;
  auto emit = [&](const AuxConditional& cond) {
    const auto joint = assemble_joint(ch, cond);
    if (expected_cost(ch, joint) > ch.cost_budget + 1e-12) return;
    const auto b = binning_region(joint);
    RegionBounds rb{b.r0, b.r1, b.r2, b.r01, b.r02};
    for (const auto& v : rb.pareto_vertices()) {
      candidates.push_back({v[0], v[1], v[2], b.l1, b.l2});
      conds.push_back(cond);
    }
  };

  for (const auto& triple : detail::sub_triples(cards)) {
    const std::uint64_t triple_seed = hash_combine(
        hash_combine(hash_combine(cfg.seed, triple[0]), triple[1]), triple[2]);
    for (std::size_t j = 0; j < cfg.samples; ++j) {
      Xoshiro256ss rng(hash_combine(triple_seed, j));
      detail::SearchObjective obj;
      auto wr = dirichlet_uniform(rng, 3);
      obj.w_r0 = wr[0];
      obj.w_r1 = wr[1];
      obj.w_r2 = wr[2];
      obj.w_e1 = 0.75 * rng.exponential();
      obj.w_e2 = 0.75 * rng.exponential();

      AuxConditional cond;
      cond.card_s = ch.card_s;
      cond.card_x = ch.card_x;
      cond.card_w = triple[0];
      cond.card_u = triple[1];
      cond.card_v = triple[2];
      cond.table.resize(ch.card_s * cond.slice_size());
      bool feasible = false;
      for (int attempt = 0; attempt < 64 && !feasible; ++attempt) {
        for (std::size_t s = 0; s < ch.card_s; ++s) {
          const auto slice = dirichlet_uniform(rng, cond.slice_size());
          std::copy(slice.begin(), slice.end(),
                    cond.table.begin() + s * cond.slice_size());
        }
        feasible =
            detail::cond_expected_cost(ch, cond) <= ch.cost_budget + 1e-12;
      }
      if (!feasible) continue;
      emit(cond);
      detail::refine(ch, cond, obj, cfg);
      emit(cond);
    }
  }

  std::vector<std::size_t> keep = pareto_filter_indices(
      candidates, [](const auto& a, const auto& b) { return dominates(a, b); },
      [](const auto& a, const auto& b) { return lex_less(a, b); });
  RegionFrontier frontier;
  for (std::size_t idx : keep) {
    frontier.points.push_back(candidates[idx]);
    frontier.provenance.push_back(conds[idx]);
  }
  return frontier;
}

// Zero-rate leakage region: enumerate p(x|s) on a simplex grid, keep the
// lower-left Pareto frontier of (I(S;Y1), I(S;Y2)) and its convex hull.
// The region is the up-set of the hull under time sharing.
inline RegionFrontier zero_rate_region(const ChannelSpec& ch,
                                       std::size_t grid) {
  ch.validate();
  if (grid < 2) {
    throw ValidationError("zero-rate grid resolution must be >= 2");
  }
  // All grid pmfs over X: compositions of `grid` into card_x parts.
  std::vector<std::vector<double>> simplex;
  std::vector<std::size_t> counts(ch.card_x, 0);
  const auto rec = [&](auto&& self, std::size_t pos, std::size_t left) -> void {
    if (pos + 1 == ch.card_x) {
      counts[pos] = left;
      std::vector<double> p(ch.card_x);
      for (std::size_t i = 0; i < ch.card_x; ++i) {
        p[i] = static_cast<double>(counts[i]) / static_cast<double>(grid);
      }
      simplex.push_back(std::move(p));
      return;
    }
    for (std::size_t k = 0; k <= left; ++k) {
      counts[pos] = k;
      self(self, pos + 1, left - k);
    }
  };
  rec(rec, 0, grid);

  std::vector<RateQuintuple> candidates;
  std::vector<AuxConditional> conds;
  std::vector<std::size_t> pick(ch.card_s, 0);
  bool more = true;
  while (more) {
    AuxConditional cond;
    cond.card_s = ch.card_s;
    cond.card_x = ch.card_x;
    cond.table.resize(ch.card_s * ch.card_x);
    for (std::size_t s = 0; s < ch.card_s; ++s) {
      const auto& p = simplex[pick[s]];
      std::copy(p.begin(), p.end(), cond.table.begin() + s * ch.card_x);
    }
    if (detail::cond_expected_cost(ch, cond) <= ch.cost_budget + 1e-12) {
      const auto st = detail::search_terms(ch, cond);
      candidates.push_back({0, 0, 0, st.l1, st.l2});
      conds.push_back(std::move(cond));
    }
    more = false;
    for (std::size_t a = ch.card_s; a-- > 0;) {
      if (++pick[a] < simplex.size()) {
        more = true;
        break;
      }
      pick[a] = 0;
    }
  }

  std::vector<std::size_t> keep = pareto_filter_indices(
      candidates, [](const auto& a, const auto& b) { return dominates(a, b); },
      [](const auto& a, const auto& b) { return lex_less(a, b); });
  RegionFrontier frontier;
  for (std::size_t idx : keep) {
    frontier.points.push_back(candidates[idx]);
    frontier.provenance.push_back(conds[idx]);
  }
  // Lower-left convex chain over (e1,e2); after Pareto filtering the points
  // are sorted with e1 ascending and e2 descending.
  std::vector<std::size_t>& hull = frontier.hull;
  for (std::size_t i = 0; i < frontier.points.size(); ++i) {
    while (hull.size() >= 2) {
      const auto& o = frontier.points[hull[hull.size() - 2]];
      const auto& a = frontier.points[hull.back()];
      const auto& b = frontier.points[i];
      const double cross = (a.e1 - o.e1) * (b.e2 - o.e2) -
                           (a.e2 - o.e2) * (b.e1 - o.e1);
      if (cross <= 0.0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(i);
  }
  return frontier;
}

}  // namespace smbc
