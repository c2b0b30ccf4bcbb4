// smbc: rate-leakage regions of state-dependent broadcast channels.
//
// Subcommands: inner, outer, binning, search, zero-rate, check, gaussian,
// verify-gaussian. Exit codes: 0 success, 2 validation error,
// 3 infeasibility, 4 I/O error (verify-gaussian returns 1 when a residual
// check fails).

#include <array>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "smbc/bounds.hpp"
#include "smbc/channel.hpp"
#include "smbc/frontier.hpp"
#include "smbc/gaussian.hpp"
#include "smbc/gaussverify.hpp"
#include "smbc/io.hpp"
#include "smbc/rng.hpp"
#include "smbc/search.hpp"

namespace {

struct GlobalOpts {
  std::uint64_t seed = 0;
  smbc::Unit unit = smbc::Unit::Bits;
};

smbc::Unit parse_unit(const std::string& s) {
  if (s == "bits") return smbc::Unit::Bits;
  if (s == "nats") return smbc::Unit::Nats;
  throw smbc::ValidationError("unit must be 'bits' or 'nats'");
}

void apply_env(GlobalOpts& g) {
  if (const char* s = std::getenv("SMBC_SEED")) {
    g.seed = std::strtoull(s, nullptr, 10);
  }
  if (const char* u = std::getenv("SMBC_UNIT")) {
    g.unit = parse_unit(u);
  }
}

std::string show(double bits_value, const GlobalOpts& g) {
  return smbc::fmt12(smbc::InfoValue{bits_value}.in(g.unit)) + " " +
         smbc::unit_name(g.unit);
}

smbc::AuxConditional random_conditional(const smbc::ChannelSpec& ch,
                                        std::array<std::size_t, 3> cards,
                                        std::uint64_t seed) {
  smbc::Xoshiro256ss rng(seed);
  smbc::AuxConditional cond;
  cond.card_s = ch.card_s;
  cond.card_x = ch.card_x;
  cond.card_w = cards[0];
  cond.card_u = cards[1];
  cond.card_v = cards[2];
  cond.table.resize(ch.card_s * cond.slice_size());
  for (std::size_t s = 0; s < ch.card_s; ++s) {
    const auto slice = smbc::dirichlet_uniform(rng, cond.slice_size());
    std::copy(slice.begin(), slice.end(),
              cond.table.begin() + s * cond.slice_size());
  }
  return cond;
}

struct EvalArgs {
  std::string channel_path;
  std::string aux_path;
  bool random_aux = false;
  std::vector<std::size_t> cards{2, 2, 2};
};

smbc::AuxiliaryJoint load_joint(const EvalArgs& a, const GlobalOpts& g,
                                smbc::ChannelSpec& ch_out) {
  ch_out = smbc::parse_channel_file(a.channel_path);
  smbc::AuxConditional cond;
  if (a.random_aux) {
    if (a.cards.size() != 3) {
      throw smbc::ValidationError("--cards expects three values w,u,v");
    }
    cond = random_conditional(ch_out, {a.cards[0], a.cards[1], a.cards[2]},
                              g.seed);
  } else if (!a.aux_path.empty()) {
    cond = smbc::parse_aux_file(a.aux_path);
  } else {
    throw smbc::ValidationError("provide --aux FILE or --random-aux");
  }
  return smbc::assemble_joint(ch_out, cond);
}

void add_eval_opts(CLI::App* cmd, EvalArgs& a) {
  cmd->add_option("--channel", a.channel_path, "channel spec JSON ('-' = stdin)")
      ->required();
  cmd->add_option("--aux", a.aux_path, "auxiliary conditional JSON");
  cmd->add_flag("--random-aux", a.random_aux,
                "draw a seeded Dirichlet auxiliary conditional instead");
  cmd->add_option("--cards", a.cards,
                  "auxiliary cardinalities |W| |U| |V| for --random-aux")
      ->expected(3);
}

int run(int argc, char** argv) {
  GlobalOpts g;
  apply_env(g);

  CLI::App app{"rate-leakage regions of state-dependent broadcast channels"};
  app.require_subcommand(1);
  app.fallthrough();  // --seed/--unit may follow the subcommand
  std::string unit_str;
  app.add_option("--seed", g.seed, "RNG seed (env SMBC_SEED)");
  app.add_option("--unit", unit_str, "bits|nats for printed values (env SMBC_UNIT)");

  EvalArgs inner_args, outer_args, binning_args;
  auto* cmd_inner =
      app.add_subcommand("inner", "inner-bound right-hand sides for a joint");
  add_eval_opts(cmd_inner, inner_args);
  auto* cmd_outer =
      app.add_subcommand("outer", "outer-bound right-hand sides for a joint");
  add_eval_opts(cmd_outer, outer_args);
  auto* cmd_binning = app.add_subcommand(
      "binning", "binning budget and eliminated rate region for a joint");
  add_eval_opts(cmd_binning, binning_args);

  struct {
    std::string channel_path, out_path = "-", provenance_path;
    std::vector<std::size_t> cards{0, 0, 0};
    std::size_t samples = 6, iters = 500;
  } search_args;
  auto* cmd_search = app.add_subcommand(
      "search", "random-restart search for the inner-region frontier");
  cmd_search->add_option("--channel", search_args.channel_path, "channel spec JSON")
      ->required();
  cmd_search->add_option("--cards", search_args.cards,
                         "auxiliary cardinalities |W| |U| |V| (default |X||S| each)")
      ->expected(3);
  cmd_search->add_option("--samples", search_args.samples,
                         "Dirichlet restarts per cardinality sub-triple");
  cmd_search->add_option("--iters", search_args.iters,
                         "cap on accepted refinement moves per restart");
  cmd_search->add_option("-o,--out", search_args.out_path,
                         "frontier CSV path ('-' = stdout)");
  cmd_search->add_option("--provenance", search_args.provenance_path,
                         "also write per-point auxiliary conditionals (JSON)");

  struct {
    std::string channel_path, out_path = "-";
    std::size_t grid = 32;
  } zr_args;
  auto* cmd_zr = app.add_subcommand(
      "zero-rate", "zero-rate leakage region on a simplex grid");
  cmd_zr->add_option("--channel", zr_args.channel_path, "channel spec JSON")
      ->required();
  cmd_zr->add_option("--grid", zr_args.grid, "simplex grid resolution (>= 2)");
  cmd_zr->add_option("-o,--out", zr_args.out_path, "frontier CSV path");

  struct {
    std::string frontier_path;
    std::vector<double> point;
  } check_args;
  auto* cmd_check = app.add_subcommand(
      "check", "test a quintuple against a frontier CSV (with time sharing)");
  cmd_check->add_option("--frontier", check_args.frontier_path, "frontier CSV")
      ->required();
  cmd_check
      ->add_option("--point", check_args.point, "r0 r1 r2 e1 e2")
      ->expected(5)
      ->required();

  struct {
    double p = 1, n1 = 1, n2 = 2, q1 = 1, q2 = 1;
    double gamma = 0.5, rho1 = 0, rho2 = 0;
    std::size_t gamma_steps = 33, rho_steps = 33;
    std::string out_path = "-", plot_path;
  } ga;
  auto* cmd_gauss = app.add_subcommand(
      "gaussian", "closed-form Gaussian region (single point or sweep)");
  cmd_gauss->add_option("--p", ga.p, "input power P");
  cmd_gauss->add_option("--n1", ga.n1, "noise variance, user 1");
  cmd_gauss->add_option("--n2", ga.n2, "noise variance, user 2");
  cmd_gauss->add_option("--q1", ga.q1, "state variance, user 1");
  cmd_gauss->add_option("--q2", ga.q2, "state variance, user 2");
  auto* gauss_gamma_opt = cmd_gauss->add_option(
      "--gamma", ga.gamma, "power split; omit to sweep the grid instead");
  cmd_gauss->add_option("--rho1", ga.rho1, "input-state correlation 1");
  cmd_gauss->add_option("--rho2", ga.rho2, "input-state correlation 2");
  cmd_gauss->add_option("--gamma-steps", ga.gamma_steps, "sweep grid size in gamma");
  cmd_gauss->add_option("--rho-steps", ga.rho_steps, "sweep grid size per rho");
  cmd_gauss->add_option("-o,--out", ga.out_path, "sweep CSV path ('-' = stdout)");
  cmd_gauss->add_option("--plot", ga.plot_path, "also write gnuplot-style columns");

  struct {
    double p = 1, n1 = 1, n2 = 2, q1 = 1, q2 = 1;
    double gamma = 0.5, rho1 = 0, rho2 = 0;
    std::size_t samples = 100;
    double tol = 1e-9;
    std::string csv_path;
  } va;
  auto* cmd_verify = app.add_subcommand(
      "verify-gaussian",
      "check the closed forms against the covariance log-det oracle");
  cmd_verify->add_option("--p", va.p, "input power P");
  cmd_verify->add_option("--n1", va.n1, "noise variance, user 1");
  cmd_verify->add_option("--n2", va.n2, "noise variance, user 2");
  cmd_verify->add_option("--q1", va.q1, "state variance, user 1");
  cmd_verify->add_option("--q2", va.q2, "state variance, user 2");
  auto* verify_gamma_opt = cmd_verify->add_option(
      "--gamma", va.gamma,
      "power split; omit to verify --samples random points");
  cmd_verify->add_option("--rho1", va.rho1, "input-state correlation 1");
  cmd_verify->add_option("--rho2", va.rho2, "input-state correlation 2");
  cmd_verify->add_option("--samples", va.samples, "seeded random sample count");
  cmd_verify->add_option("--tol", va.tol, "PASS threshold on residuals");
  cmd_verify->add_option("--csv", va.csv_path, "residual table output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (!unit_str.empty()) g.unit = parse_unit(unit_str);

  auto open_out = [](const std::string& path) -> std::ofstream {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw smbc::IoError("cannot open " + path + " for writing");
    return out;
  };

  if (cmd_inner->parsed() || cmd_binning->parsed()) {
    const bool direct_form = cmd_inner->parsed();
    EvalArgs& args = direct_form ? inner_args : binning_args;
    smbc::ChannelSpec ch;
    const auto joint = load_joint(args, g, ch);
    const auto b = direct_form ? smbc::inner_bounds(joint)
                                : smbc::binning_region(joint);
    std::cout << "r0_bound: " << show(b.r0, g) << "\n"
              << "r01_bound: " << show(b.r01, g) << "\n"
              << "r02_bound: " << show(b.r02, g) << "\n"
              << "rsum_bound: " << show(b.rsum, g) << "\n"
              << "rsum_eliminated: " << show(b.rsum_eliminated, g) << "\n"
              << "r1_bound: " << show(b.r1, g) << "\n"
              << "r2_bound: " << show(b.r2, g) << "\n"
              << "leak1: " << show(b.l1, g) << "\n"
              << "leak2: " << show(b.l2, g) << "\n"
              << "expected_cost: " << smbc::fmt12(smbc::expected_cost(ch, joint))
              << "\n";
    if (std::abs(b.rsum - b.rsum_eliminated) > 1e-9) {
      std::cout << "note: direct sum form and eliminated-system sum differ by "
                << show(b.rsum - b.rsum_eliminated, g) << "\n";
    }
    if (!direct_form) {
      const auto bb = smbc::binning_budget(joint);
      std::cout << "rt0: " << show(bb.rt0, g) << "\n"
                << "rt2: " << show(bb.rt2, g) << "\n"
                << "rt1s: " << show(bb.rt1s, g) << "\n"
                << "rt12: " << show(bb.rt12, g) << "\n";
    }
    return 0;
  }

  if (cmd_outer->parsed()) {
    smbc::ChannelSpec ch;
    const auto joint = load_joint(outer_args, g, ch);
    const auto b = smbc::outer_bounds(joint);
    std::cout << "r0_bound: " << show(b.r0, g) << "\n"
              << "r01_bound: " << show(b.r01, g) << "\n"
              << "r02_bound: " << show(b.r02, g) << "\n"
              << "rsum_bound_1: " << show(b.rsum1, g) << "\n"
              << "rsum_bound_2: " << show(b.rsum2, g) << "\n"
              << "leak1_floor: " << show(b.m1, g) << "\n"
              << "leak2_floor: " << show(b.m2, g) << "\n";
    return 0;
  }

  if (cmd_search->parsed()) {
    const auto ch = smbc::parse_channel_file(search_args.channel_path);
    std::array<std::size_t, 3> cards{search_args.cards[0],
                                     search_args.cards[1],
                                     search_args.cards[2]};
    if (cards[0] == 0) {
      // default heuristic: |W|=|U|=|V| = |X||S| (no cardinality bound is
      // known; this is a support-lemma-style guess, override with --cards)
      const std::size_t c = ch.card_x * ch.card_s;
      cards = {c, c, c};
    }
    smbc::SearchConfig cfg;
    cfg.seed = g.seed;
    cfg.samples = search_args.samples;
    cfg.refine_iterations = search_args.iters;
    const auto frontier = smbc::search_inner_region(ch, cards, cfg);
    if (search_args.out_path == "-") {
      smbc::emit_frontier_csv(frontier, std::cout);
    } else {
      smbc::emit_frontier_csv(frontier, search_args.out_path);
    }
    if (!search_args.provenance_path.empty()) {
      auto out = open_out(search_args.provenance_path);
      smbc::emit_provenance_json(frontier, out);
    }
    return 0;
  }

  if (cmd_zr->parsed()) {
    const auto ch = smbc::parse_channel_file(zr_args.channel_path);
    const auto frontier = smbc::zero_rate_region(ch, zr_args.grid);
    if (zr_args.out_path == "-") {
      smbc::emit_frontier_csv(frontier, std::cout);
    } else {
      smbc::emit_frontier_csv(frontier, zr_args.out_path);
    }
    return 0;
  }

  if (cmd_check->parsed()) {
    const auto frontier = smbc::parse_frontier_file(check_args.frontier_path);
    const smbc::RateQuintuple q{check_args.point[0], check_args.point[1],
                                check_args.point[2], check_args.point[3],
                                check_args.point[4]};
    const auto verdict = smbc::check_point(frontier, q);
    std::cout << (verdict == smbc::Verdict::Inside ? "INSIDE"
                                                   : "OUTSIDE-OF-FOUND")
              << "\n";
    return 0;
  }

  if (cmd_gauss->parsed()) {
    smbc::GaussianParams gp;
    gp.p = ga.p;
    gp.n1 = ga.n1;
    gp.n2 = ga.n2;
    gp.q1 = ga.q1;
    gp.q2 = ga.q2;
    if (gauss_gamma_opt->count() > 0) {
      gp.gamma = ga.gamma;
      gp.rho1 = ga.rho1;
      gp.rho2 = ga.rho2;
      const auto q = smbc::gaussian_rate_region(gp);
      const auto co = smbc::gaussian_coefficients(gp);
      std::cout << "r1: " << show(q.r1, g) << "\n"
                << "r2: " << show(q.r2, g) << "\n"
                << "e1: " << show(q.e1, g) << "\n"
                << "e2: " << show(q.e2, g) << "\n"
                << "beta1: " << smbc::fmt12(co.beta1) << "\n"
                << "beta2: " << smbc::fmt12(co.beta2) << "\n"
                << "alpha10: " << smbc::fmt12(co.alpha10) << "\n"
                << "alpha11: " << smbc::fmt12(co.alpha11) << "\n"
                << "alpha12: " << smbc::fmt12(co.alpha12) << "\n"
                << "alpha21: " << smbc::fmt12(co.alpha21) << "\n"
                << "alpha22: " << smbc::fmt12(co.alpha22) << "\n";
      return 0;
    }
    const auto pts = smbc::sweep_region(gp, ga.gamma_steps, ga.rho_steps);
    if (ga.out_path == "-") {
      smbc::emit_sweep_csv(pts, std::cout);
    } else {
      auto out = open_out(ga.out_path);
      smbc::emit_sweep_csv(pts, out);
    }
    if (!ga.plot_path.empty()) {
      auto out = open_out(ga.plot_path);
      smbc::emit_sweep_plot(pts, out);
    }
    return 0;
  }

  if (cmd_verify->parsed()) {
    std::vector<std::pair<smbc::GaussianParams, smbc::GaussianVerifyReport>>
        rows;
    if (verify_gamma_opt->count() > 0) {
      smbc::GaussianParams gp;
      gp.p = va.p;
      gp.n1 = va.n1;
      gp.n2 = va.n2;
      gp.q1 = va.q1;
      gp.q2 = va.q2;
      gp.gamma = va.gamma;
      gp.rho1 = va.rho1;
      gp.rho2 = va.rho2;
      rows.emplace_back(gp, smbc::verify_gaussian_point(gp));
    } else {
      smbc::Xoshiro256ss rng(g.seed);
      for (std::size_t i = 0; i < va.samples; ++i) {
        const auto gp = smbc::random_gaussian_params(rng);
        rows.emplace_back(gp, smbc::verify_gaussian_point(gp));
      }
    }
    bool all_pass = true;
    double worst = 0.0;
    for (const auto& [gp, rep] : rows) {
      all_pass = all_pass && rep.pass(va.tol);
      worst = std::max(worst, rep.max_residual());
    }
    if (!va.csv_path.empty()) {
      auto out = open_out(va.csv_path);
      out << smbc::kVerifyHeader << "\n";
      for (std::size_t i = 0; i < rows.size(); ++i) {
        smbc::emit_verify_csv_row(out, i, rows[i].first, rows[i].second,
                                  va.tol);
      }
    }
    std::cout << "points: " << rows.size() << "\n"
              << "max_residual: " << smbc::fmt12(worst) << "\n"
              << (all_pass ? "PASS" : "FAIL") << "\n";
    return all_pass ? 0 : 1;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const smbc::InfeasibilityError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 3;
  } catch (const smbc::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 4;
  } catch (const smbc::ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
