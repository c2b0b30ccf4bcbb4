#pragma once

#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "smbc/channel.hpp"
#include "smbc/errors.hpp"
#include "smbc/frontier.hpp"
#include "smbc/gaussian.hpp"
#include "smbc/gaussverify.hpp"

// Channel / auxiliary-conditional file parsing and deterministic CSV
// emission. Channel specs are JSON documents; the schema is documented in
// the README and mirrored by the samples under data/.

namespace smbc {

// 12 significant digits, locale-independent.
inline std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return std::string(buf);
}

inline std::string read_stream_or_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failure on " + path);
  return ss.str();
}

namespace detail {

inline nlohmann::json parse_json(const std::string& text,
                                 const std::string& origin) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // e.byte is the offset of the failure; keep it in the message
    throw ValidationError(origin + ": " + e.what());
  }
}

template <typename T>
T get_field(const nlohmann::json& j, const char* key,
            const std::string& origin) {
  if (!j.contains(key)) {
    throw ValidationError(origin + ": missing field '" + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(origin + ": field '" + key + "': " + e.what());
  }
}

}  // namespace detail

// Channel schema:
// {
//   "card_s": 2, "card_x": 2, "card_y1": 2, "card_y2": 2,
//   "state_pmf": [0.5, 0.5],
//   "kernel": [ {"x":0, "s":0, "pmf":[p(y1=0,y2=0), p(0,1), p(1,0), p(1,1)]},
//               ... one row per (x,s) pair ... ],
//   "cost": [0, 0], "cost_budget": 1.0
// }
// The kernel pmf of row (x,s) lists P(y1,y2|x,s) with y2 varying fastest.
inline ChannelSpec parse_channel_json(const std::string& text,
                                      const std::string& origin) {
  const auto j = detail::parse_json(text, origin);
  ChannelSpec ch;
  ch.card_s = detail::get_field<std::size_t>(j, "card_s", origin);
  ch.card_x = detail::get_field<std::size_t>(j, "card_x", origin);
  ch.card_y1 = detail::get_field<std::size_t>(j, "card_y1", origin);
  ch.card_y2 = detail::get_field<std::size_t>(j, "card_y2", origin);
  ch.state_pmf.probs =
      detail::get_field<std::vector<double>>(j, "state_pmf", origin);
  ch.cost = detail::get_field<std::vector<double>>(j, "cost", origin);
  ch.cost_budget = detail::get_field<double>(j, "cost_budget", origin);
  if (ch.card_s == 0 || ch.card_x == 0 || ch.card_y1 == 0 || ch.card_y2 == 0) {
    throw ValidationError(origin + ": cardinalities must be positive");
  }
  const auto rows = detail::get_field<nlohmann::json>(j, "kernel", origin);
  if (!rows.is_array() || rows.size() != ch.card_x * ch.card_s) {
    throw ValidationError(origin + ": kernel must list exactly card_x*card_s rows");
  }
  ch.kernel.assign(ch.card_x * ch.card_s * ch.card_y1 * ch.card_y2, -1.0);
  for (const auto& row : rows) {
    const auto x = detail::get_field<std::size_t>(row, "x", origin);
    const auto s = detail::get_field<std::size_t>(row, "s", origin);
    const auto pmf = detail::get_field<std::vector<double>>(row, "pmf", origin);
    if (x >= ch.card_x || s >= ch.card_s) {
      throw ValidationError(origin + ": kernel row (x=" + std::to_string(x) +
                            ",s=" + std::to_string(s) + ") out of range");
    }
    if (pmf.size() != ch.card_y1 * ch.card_y2) {
      throw ValidationError(origin + ": kernel row (x=" + std::to_string(x) +
                            ",s=" + std::to_string(s) + ") has wrong length");
    }
    const std::size_t base = (x * ch.card_s + s) * pmf.size();
    if (ch.kernel[base] >= 0.0) {
      throw ValidationError(origin + ": duplicate kernel row (x=" +
                            std::to_string(x) + ",s=" + std::to_string(s) + ")");
    }
    std::copy(pmf.begin(), pmf.end(), ch.kernel.begin() + base);
  }
  for (double v : ch.kernel) {
    if (v < 0.0) {
      throw ValidationError(origin + ": kernel is missing a row");
    }
  }
  ch.validate();
  return ch;
}

inline ChannelSpec parse_channel_file(const std::string& path) {
  return parse_channel_json(read_stream_or_file(path),
                            path == "-" ? "<stdin>" : path);
}

inline std::string emit_channel_json(const ChannelSpec& ch) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t x = 0; x < ch.card_x; ++x) {
    for (std::size_t s = 0; s < ch.card_s; ++s) {
      const std::size_t n = ch.card_y1 * ch.card_y2;
      rows.push_back(
          {{"x", x},
           {"s", s},
           {"pmf", std::vector<double>(ch.kernel.begin() + (x * ch.card_s + s) * n,
                                       ch.kernel.begin() +
                                           (x * ch.card_s + s + 1) * n)}});
    }
  }
  nlohmann::json j{{"card_s", ch.card_s},     {"card_x", ch.card_x},
                   {"card_y1", ch.card_y1},   {"card_y2", ch.card_y2},
                   {"state_pmf", ch.state_pmf.probs},
                   {"kernel", rows},          {"cost", ch.cost},
                   {"cost_budget", ch.cost_budget}};
  return j.dump(2) + "\n";
}

// Auxiliary conditional schema:
// { "card_w":2, "card_u":2, "card_v":2, "card_s":2, "card_x":2,
//   "cond": [ {"s":0, "table":[ ... w,u,v,x row-major, x fastest ... ]},
//             ... one entry per state ... ] }
inline AuxConditional parse_aux_json(const std::string& text,
                                     const std::string& origin) {
  const auto j = detail::parse_json(text, origin);
  AuxConditional cond;
  cond.card_w = detail::get_field<std::size_t>(j, "card_w", origin);
  cond.card_u = detail::get_field<std::size_t>(j, "card_u", origin);
  cond.card_v = detail::get_field<std::size_t>(j, "card_v", origin);
  cond.card_s = detail::get_field<std::size_t>(j, "card_s", origin);
  cond.card_x = detail::get_field<std::size_t>(j, "card_x", origin);
  const auto rows = detail::get_field<nlohmann::json>(j, "cond", origin);
  if (!rows.is_array() || rows.size() != cond.card_s) {
    throw ValidationError(origin + ": cond must list exactly card_s slices");
  }
  cond.table.assign(cond.card_s * cond.slice_size(), -1.0);
  for (const auto& row : rows) {
    const auto s = detail::get_field<std::size_t>(row, "s", origin);
    const auto table =
        detail::get_field<std::vector<double>>(row, "table", origin);
    if (s >= cond.card_s) {
      throw ValidationError(origin + ": cond slice s=" + std::to_string(s) +
                            " out of range");
    }
    if (table.size() != cond.slice_size()) {
      throw ValidationError(origin + ": cond slice s=" + std::to_string(s) +
                            " has wrong length");
    }
    if (cond.table[s * cond.slice_size()] >= 0.0) {
      throw ValidationError(origin + ": duplicate cond slice s=" +
                            std::to_string(s));
    }
    std::copy(table.begin(), table.end(),
              cond.table.begin() + s * cond.slice_size());
  }
  for (double v : cond.table) {
    if (v < 0.0) throw ValidationError(origin + ": cond is missing a slice");
  }
  cond.validate();
  return cond;
}

inline AuxConditional parse_aux_file(const std::string& path) {
  return parse_aux_json(read_stream_or_file(path),
                        path == "-" ? "<stdin>" : path);
}

inline constexpr const char* kFrontierHeader = "r0,r1,r2,e1,e2,provenance_id";

namespace detail {

inline std::string frontier_row(const RateQuintuple& p) {
  return fmt12(p.r0) + ',' + fmt12(p.r1) + ',' + fmt12(p.r2) + ',' +
         fmt12(p.e1) + ',' + fmt12(p.e2);
}

// Emission order: lexicographic in (r0,r1,r2,e1,e2), one row per distinct
// value tuple at the output precision (points separated by less than 12
// significant digits are indistinguishable to a consumer, and keeping both
// would break the parse/re-filter round trip). provenance_id is the output
// row index.
inline std::vector<std::size_t> frontier_order(const RegionFrontier& f) {
  std::vector<std::size_t> order(f.points.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return lex_less(f.points[a], f.points[b]);
                   });
  std::vector<std::size_t> kept;
  std::set<std::string> seen;
  for (std::size_t idx : order) {
    if (seen.insert(frontier_row(f.points[idx])).second) {
      kept.push_back(idx);
    }
  }
  return kept;
}

}  // namespace detail

inline void emit_frontier_csv(const RegionFrontier& frontier,
                              std::ostream& out) {
  out << kFrontierHeader << "\n";
  const auto order = detail::frontier_order(frontier);
  for (std::size_t row = 0; row < order.size(); ++row) {
    out << detail::frontier_row(frontier.points[order[row]]) << ',' << row
        << "\n";
  }
}

inline void emit_frontier_csv(const RegionFrontier& frontier,
                              const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  emit_frontier_csv(frontier, out);
  if (!out) throw IoError("write failure on " + path);
}

// Reads back a frontier CSV (provenance tables are not part of the CSV).
inline RegionFrontier parse_frontier_csv(std::istream& in,
                                         const std::string& origin) {
  RegionFrontier frontier;
  std::string line;
  if (!std::getline(in, line) || line != kFrontierHeader) {
    throw ValidationError(origin + ": bad or missing frontier CSV header");
  }
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ss(line);
    RateQuintuple q;
    char sep = 0;
    std::string tail;
    if (!(ss >> q.r0 >> sep >> q.r1 >> sep >> q.r2 >> sep >> q.e1 >> sep >>
          q.e2 >> sep >> tail)) {
      throw ValidationError(origin + ": malformed CSV row at line " +
                            std::to_string(lineno));
    }
    frontier.points.push_back(q);
  }
  return frontier;
}

inline RegionFrontier parse_frontier_file(const std::string& path) {
  if (path == "-") return parse_frontier_csv(std::cin, "<stdin>");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return parse_frontier_csv(in, path);
}

// Provenance side file: one entry per frontier row, in the same order as
// the CSV so provenance_id lines up.
inline void emit_provenance_json(const RegionFrontier& frontier,
                                 std::ostream& out) {
  const auto order = detail::frontier_order(frontier);
  nlohmann::json arr = nlohmann::json::array();
  for (std::size_t i = 0; i < frontier.provenance.size(); ++i) {
    const auto& c = frontier.provenance[order[i]];
    nlohmann::json slices = nlohmann::json::array();
    for (std::size_t s = 0; s < c.card_s; ++s) {
      slices.push_back(
          {{"s", s},
           {"table", std::vector<double>(
                         c.table.begin() + s * c.slice_size(),
                         c.table.begin() + (s + 1) * c.slice_size())}});
    }
    arr.push_back({{"provenance_id", i},
                   {"card_w", c.card_w},
                   {"card_u", c.card_u},
                   {"card_v", c.card_v},
                   {"card_s", c.card_s},
                   {"card_x", c.card_x},
                   {"cond", slices}});
  }
  out << arr.dump(2) << "\n";
}

inline constexpr const char* kSweepHeader = "gamma,rho1,rho2,r1,r2,e1,e2";

inline void emit_sweep_csv(const std::vector<GaussianSweepPoint>& pts,
                           std::ostream& out) {
  out << kSweepHeader << "\n";
  for (const auto& p : pts) {
    out << fmt12(p.gamma) << ',' << fmt12(p.rho1) << ',' << fmt12(p.rho2)
        << ',' << fmt12(p.q.r1) << ',' << fmt12(p.q.r2) << ','
        << fmt12(p.q.e1) << ',' << fmt12(p.q.e2) << "\n";
  }
}

// gnuplot-friendly: whitespace columns, '#' comment header.
inline void emit_sweep_plot(const std::vector<GaussianSweepPoint>& pts,
                            std::ostream& out) {
  out << "# gamma rho1 rho2 r1 r2 e1 e2\n";
  for (const auto& p : pts) {
    out << fmt12(p.gamma) << ' ' << fmt12(p.rho1) << ' ' << fmt12(p.rho2)
        << ' ' << fmt12(p.q.r1) << ' ' << fmt12(p.q.r2) << ' '
        << fmt12(p.q.e1) << ' ' << fmt12(p.q.e2) << "\n";
  }
}

inline constexpr const char* kVerifyHeader =
    "sample,p,n1,n2,q1,q2,gamma,rho1,rho2,res_r1,res_r2,res_e1,res_e2,"
    "mask1,mask2,status";

inline void emit_verify_csv_row(std::ostream& out, std::size_t sample,
                                const GaussianParams& gp,
                                const GaussianVerifyReport& rep, double tol) {
  out << sample << ',' << fmt12(gp.p) << ',' << fmt12(gp.n1) << ','
      << fmt12(gp.n2) << ',' << fmt12(gp.q1) << ',' << fmt12(gp.q2) << ','
      << fmt12(gp.gamma) << ',' << fmt12(gp.rho1) << ',' << fmt12(gp.rho2)
      << ',' << fmt12(std::abs(rep.mi_r1 - rep.closed.r1)) << ','
      << fmt12(std::abs(rep.mi_r2 - rep.closed.r2)) << ','
      << fmt12(std::abs(rep.mi_e1 - rep.closed.e1)) << ','
      << fmt12(std::abs(rep.mi_e2 - rep.closed.e2)) << ','
      << fmt12(rep.mask1) << ',' << fmt12(rep.mask2) << ','
      << (rep.pass(tol) ? "PASS" : "FAIL") << "\n";
}

}  // namespace smbc
