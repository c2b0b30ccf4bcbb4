#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "smbc/errors.hpp"
#include "smbc/info.hpp"

// State-dependent broadcast channel model and the seven-variable joint
// P(s,w,u,v,x,y1,y2) = P_S(s) P(w,u,v,x|s) P(y1,y2|x,s) that every bound
// evaluator works on.

namespace smbc {

// Axis order of the assembled joint (row-major storage).
namespace ax {
inline constexpr std::size_t S = 0;
inline constexpr std::size_t W = 1;
inline constexpr std::size_t U = 2;
inline constexpr std::size_t V = 3;
inline constexpr std::size_t X = 4;
inline constexpr std::size_t Y1 = 5;
inline constexpr std::size_t Y2 = 6;
}  // namespace ax

// Finite-alphabet state-dependent broadcast channel: state pmf, transition
// kernel P(y1,y2|x,s) and an input cost with budget Gamma.
struct ChannelSpec {
  std::size_t card_s = 0, card_x = 0, card_y1 = 0, card_y2 = 0;
  Pmf state_pmf;
  // kernel[(x*card_s + s)*card_y1*card_y2 + y1*card_y2 + y2]
  std::vector<double> kernel;
  std::vector<double> cost;    // phi(x) >= 0
  double cost_budget = 0.0;    // Gamma

  double kernel_at(std::size_t x, std::size_t s, std::size_t y1,
                   std::size_t y2) const {
    return kernel[((x * card_s + s) * card_y1 + y1) * card_y2 + y2];
  }

  void validate() const {
    if (card_s == 0 || card_x == 0 || card_y1 == 0 || card_y2 == 0) {
      throw ValidationError("channel: all cardinalities must be positive");
    }
    if (state_pmf.alphabet_size() != card_s) {
      throw ValidationError("channel: state_pmf length != card_s");
    }
    detail::check_probs(state_pmf.probs, kPmfTol, "state_pmf");
    if (kernel.size() != card_x * card_s * card_y1 * card_y2) {
      throw ValidationError("channel: kernel size mismatch");
    }
    for (std::size_t x = 0; x < card_x; ++x) {
      for (std::size_t s = 0; s < card_s; ++s) {
        std::vector<double> row(card_y1 * card_y2);
        for (std::size_t i = 0; i < row.size(); ++i) {
          row[i] = kernel[(x * card_s + s) * row.size() + i];
        }
        detail::check_probs(row, kPmfTol,
                            "kernel row (x=" + std::to_string(x) +
                                ",s=" + std::to_string(s) + ")");
      }
    }
    if (cost.size() != card_x) {
      throw ValidationError("channel: cost table length != card_x");
    }
    for (std::size_t x = 0; x < card_x; ++x) {
      if (!(cost[x] >= 0.0)) {
        throw ValidationError("channel: negative cost at x=" +
                              std::to_string(x));
      }
    }
    if (!(cost_budget >= 0.0)) {
      throw ValidationError("channel: cost budget must be >= 0");
    }
  }
};

// Conditional law P(w,u,v,x | s): one pmf over W x U x V x X per state.
// table[(((s*card_w + w)*card_u + u)*card_v + v)*card_x + x]
struct AuxConditional {
  std::size_t card_w = 1, card_u = 1, card_v = 1;
  std::size_t card_s = 0, card_x = 0;
  std::vector<double> table;

  double at(std::size_t s, std::size_t w, std::size_t u, std::size_t v,
            std::size_t x) const {
    return table[(((s * card_w + w) * card_u + u) * card_v + v) * card_x + x];
  }
  double& at(std::size_t s, std::size_t w, std::size_t u, std::size_t v,
             std::size_t x) {
    return table[(((s * card_w + w) * card_u + u) * card_v + v) * card_x + x];
  }

  std::size_t slice_size() const { return card_w * card_u * card_v * card_x; }

  void validate(double tol = kPmfTol) const {
    if (card_w == 0 || card_u == 0 || card_v == 0 || card_s == 0 ||
        card_x == 0) {
      throw ValidationError("aux conditional: zero cardinality");
    }
    if (table.size() != card_s * slice_size()) {
      throw ValidationError("aux conditional: table size mismatch");
    }
    for (std::size_t s = 0; s < card_s; ++s) {
      std::vector<double> slice(table.begin() + s * slice_size(),
                                table.begin() + (s + 1) * slice_size());
      detail::check_probs(slice, tol,
                          "conditional slice s=" + std::to_string(s));
    }
  }
};

// The assembled joint over (S,W,U,V,X,Y1,Y2) plus the pieces it came from.
struct AuxiliaryJoint {
  std::size_t card_w = 1, card_u = 1, card_v = 1;
  AuxConditional cond;
  NdTable full_joint;  // axes in ax:: order
};

// Builds P_S(s) * cond(w,u,v,x|s) * kernel(y1,y2|x,s).
inline AuxiliaryJoint assemble_joint(const ChannelSpec& ch,
                                     const AuxConditional& cond) {
  ch.validate();
  if (cond.card_s != ch.card_s || cond.card_x != ch.card_x) {
    throw ValidationError("aux conditional dimensions do not match channel");
  }
  cond.validate();

  AuxiliaryJoint joint;
  joint.card_w = cond.card_w;
  joint.card_u = cond.card_u;
  joint.card_v = cond.card_v;
  joint.cond = cond;
  joint.full_joint = NdTable({ch.card_s, cond.card_w, cond.card_u, cond.card_v,
                              ch.card_x, ch.card_y1, ch.card_y2});
  auto& data = joint.full_joint.data();
  std::size_t flat = 0;
  for (std::size_t s = 0; s < ch.card_s; ++s)
    for (std::size_t w = 0; w < cond.card_w; ++w)
      for (std::size_t u = 0; u < cond.card_u; ++u)
        for (std::size_t v = 0; v < cond.card_v; ++v)
          for (std::size_t x = 0; x < ch.card_x; ++x) {
            const double base = ch.state_pmf.probs[s] * cond.at(s, w, u, v, x);
            for (std::size_t y1 = 0; y1 < ch.card_y1; ++y1)
              for (std::size_t y2 = 0; y2 < ch.card_y2; ++y2) {
                data[flat++] = base * ch.kernel_at(x, s, y1, y2);
              }
          }
  joint.full_joint.validate_as_pmf(kPmfTol, "assembled joint");
  const NdTable s_marg = joint.full_joint.marginal({ax::S});
  for (std::size_t s = 0; s < ch.card_s; ++s) {
    if (std::abs(s_marg.data()[s] - ch.state_pmf.probs[s]) > kAssemblyTol) {
      throw ValidationError("assembled joint: state marginal drifted at s=" +
                            std::to_string(s));
    }
  }
  return joint;
}

// E[phi(X)] under the joint's X marginal; the caller compares against Gamma.
inline double expected_cost(const ChannelSpec& ch, const AuxiliaryJoint& joint) {
  const NdTable px = joint.full_joint.marginal({ax::X});
  if (px.size() != ch.cost.size()) {
    throw ValidationError("expected_cost: joint does not match channel");
  }
  double total = 0.0;
  for (std::size_t x = 0; x < ch.card_x; ++x) {
    total += px.data()[x] * ch.cost[x];
  }
  return total;
}

// Entropy / MI over groups of joint axes. These are the primitives every
// bound formula is phrased in.
inline double joint_entropy_bits(const NdTable& joint,
                                 std::vector<std::size_t> axes) {
  return detail::raw_entropy(joint.marginal(std::move(axes)).data());
}

inline double joint_mi_bits(const NdTable& joint, std::vector<std::size_t> a,
                            std::vector<std::size_t> b) {
  std::vector<std::size_t> both = a;
  both.insert(both.end(), b.begin(), b.end());
  return detail::clamp_mi(joint_entropy_bits(joint, a) +
                          joint_entropy_bits(joint, b) -
                          joint_entropy_bits(joint, both));
}

inline double joint_cmi_bits(const NdTable& joint, std::vector<std::size_t> a,
                             std::vector<std::size_t> b,
                             std::vector<std::size_t> c) {
  std::vector<std::size_t> ac = a, bc = b, abc = a;
  ac.insert(ac.end(), c.begin(), c.end());
  bc.insert(bc.end(), c.begin(), c.end());
  abc.insert(abc.end(), b.begin(), b.end());
  abc.insert(abc.end(), c.begin(), c.end());
  return detail::clamp_mi(
      joint_entropy_bits(joint, ac) + joint_entropy_bits(joint, bc) -
      joint_entropy_bits(joint, c) - joint_entropy_bits(joint, abc));
}

}  // namespace smbc
