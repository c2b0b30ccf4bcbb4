#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "smbc/errors.hpp"

// Exact finite-alphabet probability engine: pmfs, dense multi-way tables and
// the entropy / mutual-information measures every bound in this library is
// built from. All quantities are computed in bits (base-2 logs); InfoValue
// can express them in nats on demand.

namespace smbc {

// Input pmfs must normalize to this tolerance; internally assembled tables
// are held to kAssemblyTol. The gap separates user error from numeric drift.
inline constexpr double kPmfTol = 1e-9;
inline constexpr double kAssemblyTol = 1e-12;
// Mutual informations more negative than this indicate a bug, not roundoff.
inline constexpr double kMiClampTol = 1e-9;

enum class Unit { Bits, Nats };

inline double log2e() { return 1.4426950408889634074; }

// A scalar information quantity, stored in bits.
struct InfoValue {
  double bits = 0.0;

  double in(Unit unit) const {
    return unit == Unit::Bits ? bits : bits / log2e();
  }
};

inline const char* unit_name(Unit unit) {
  return unit == Unit::Bits ? "bits" : "nats";
}

namespace detail {

inline double xlog2x(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

inline void check_probs(const std::vector<double>& probs, double tol,
                        const std::string& what) {
  double total = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (!(probs[i] >= 0.0)) {
      throw ValidationError(what + ": negative entry at index " +
                            std::to_string(i) + " (" +
                            std::to_string(probs[i]) + ")");
    }
    total += probs[i];
  }
  if (std::abs(total - 1.0) > tol) {
    throw ValidationError(what + ": entries sum to " + std::to_string(total) +
                          ", expected 1 within " + std::to_string(tol));
  }
}

// Negative-within-roundoff mutual informations are clamped to 0; anything
// more negative is a hard error.
inline double clamp_mi(double value) {
  if (value >= 0.0) return value;
  if (value >= -kMiClampTol) return 0.0;
  throw ValidationError("mutual information evaluated to " +
                        std::to_string(value) +
                        ", below the -1e-9 roundoff band");
}

}  // namespace detail

// Probability mass function over a finite alphabet.
struct Pmf {
  std::vector<double> probs;

  Pmf() = default;
  explicit Pmf(std::vector<double> p, double tol = kPmfTol)
      : probs(std::move(p)) {
    detail::check_probs(probs, tol, "pmf");
  }

  std::size_t alphabet_size() const { return probs.size(); }

  static Pmf uniform(std::size_t n) {
    return Pmf(std::vector<double>(n, 1.0 / static_cast<double>(n)));
  }
  static Pmf point_mass(std::size_t n, std::size_t at) {
    std::vector<double> p(n, 0.0);
    p.at(at) = 1.0;
    return Pmf(std::move(p));
  }
};

// Dense table over a product alphabet, row-major in the declared axis order.
class NdTable {
 public:
  NdTable() = default;
  NdTable(std::vector<std::size_t> dims, double fill = 0.0)
      : dims_(std::move(dims)) {
    std::size_t total = 1;
    for (std::size_t d : dims_) {
      if (d == 0) throw ValidationError("table axis of size zero");
      total *= d;
    }
    data_.assign(total, fill);
  }
  NdTable(std::vector<std::size_t> dims, std::vector<double> data)
      : dims_(std::move(dims)), data_(std::move(data)) {
    std::size_t total = 1;
    for (std::size_t d : dims_) total *= d;
    if (total != data_.size()) {
      throw ValidationError("table data size does not match its dimensions");
    }
  }

  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t rank() const { return dims_.size(); }
  std::size_t size() const { return data_.size(); }
  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  double& at(const std::vector<std::size_t>& idx) { return data_[offset(idx)]; }
  double at(const std::vector<std::size_t>& idx) const {
    return data_[offset(idx)];
  }

  double sum() const { return std::accumulate(data_.begin(), data_.end(), 0.0); }

  // Marginal over the given axes, kept in ascending axis order.
  NdTable marginal(std::vector<std::size_t> axes) const {
    std::sort(axes.begin(), axes.end());
    std::vector<std::size_t> out_dims;
    out_dims.reserve(axes.size());
    for (std::size_t a : axes) {
      if (a >= rank()) throw ValidationError("marginal axis out of range");
      out_dims.push_back(dims_[a]);
    }
    NdTable out(out_dims.empty() ? std::vector<std::size_t>{1} : out_dims);
    std::vector<std::size_t> idx(rank(), 0);
    for (std::size_t flat = 0; flat < data_.size(); ++flat) {
      std::size_t off = 0;
      for (std::size_t k = 0; k < axes.size(); ++k) {
        off = off * dims_[axes[k]] + idx[axes[k]];
      }
      out.data_[off] += data_[flat];
      for (std::size_t a = rank(); a-- > 0;) {
        if (++idx[a] < dims_[a]) break;
        idx[a] = 0;
      }
    }
    return out;
  }

  void validate_as_pmf(double tol, const std::string& what) const {
    detail::check_probs(data_, tol, what);
  }

 private:
  std::size_t offset(const std::vector<std::size_t>& idx) const {
    if (idx.size() != rank()) throw ValidationError("index rank mismatch");
    std::size_t off = 0;
    for (std::size_t a = 0; a < rank(); ++a) {
      if (idx[a] >= dims_[a]) throw ValidationError("index out of range");
      off = off * dims_[a] + idx[a];
    }
    return off;
  }

  std::vector<std::size_t> dims_;
  std::vector<double> data_;
};

// H(p) = -sum p log2 p, with 0 log 0 = 0.
inline InfoValue entropy(const Pmf& p) {
  detail::check_probs(p.probs, kPmfTol, "pmf");
  double h = 0.0;
  for (double v : p.probs) h -= detail::xlog2x(v);
  return InfoValue{std::max(h, 0.0)};
}

namespace detail {

inline double raw_entropy(const std::vector<double>& probs) {
  double h = 0.0;
  for (double v : probs) h -= xlog2x(v);
  return h;
}

}  // namespace detail

// I(A;B) from a joint table over A x B, via H(A)+H(B)-H(A,B).
inline InfoValue mutual_information(const NdTable& joint) {
  if (joint.rank() != 2) {
    throw ValidationError("mutual_information expects a 2-D joint table");
  }
  joint.validate_as_pmf(kPmfTol, "joint pmf");
  const double ha = detail::raw_entropy(joint.marginal({0}).data());
  const double hb = detail::raw_entropy(joint.marginal({1}).data());
  const double hab = detail::raw_entropy(joint.data());
  return InfoValue{detail::clamp_mi(ha + hb - hab)};
}

// I(A;B|C) = sum_c P(c) I(A;B|C=c) from a joint table over A x B x C.
inline InfoValue conditional_mi(const NdTable& joint) {
  if (joint.rank() != 3) {
    throw ValidationError("conditional_mi expects a 3-D joint table");
  }
  joint.validate_as_pmf(kPmfTol, "joint pmf");
  const std::size_t na = joint.dims()[0];
  const std::size_t nb = joint.dims()[1];
  const std::size_t nc = joint.dims()[2];
  double total = 0.0;
  for (std::size_t c = 0; c < nc; ++c) {
    double pc = 0.0;
    for (std::size_t a = 0; a < na; ++a)
      for (std::size_t b = 0; b < nb; ++b) pc += joint.at({a, b, c});
    if (pc <= 0.0) continue;
    double ha = 0.0, hb = 0.0, hab = 0.0;
    std::vector<double> pa(na, 0.0), pb(nb, 0.0);
    for (std::size_t a = 0; a < na; ++a)
      for (std::size_t b = 0; b < nb; ++b) {
        const double v = joint.at({a, b, c}) / pc;
        pa[a] += v;
        pb[b] += v;
        hab -= detail::xlog2x(v);
      }
    for (double v : pa) ha -= detail::xlog2x(v);
    for (double v : pb) hb -= detail::xlog2x(v);
    total += pc * (ha + hb - hab);
  }
  return InfoValue{detail::clamp_mi(total)};
}

}  // namespace smbc
