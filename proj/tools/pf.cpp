// pf — exact computations in free Poisson algebras and their symplectic
// representations: evaluation, brackets, identity testing, formal series
// solutions, free-subalgebra witnesses, and plane automorphism decomposition.

#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pf/automorphisms.hpp"
#include "pf/errors.hpp"
#include "pf/expr.hpp"
#include "pf/freiheitssatz.hpp"
#include "pf/report.hpp"
#include "pf/series_solver.hpp"
#include "pf/symplectic.hpp"

namespace {

using pf::Json;

constexpr std::uint64_t kDefaultSeed = 12345;

// PF_BUDGET is a percentage (1..10000) scaling every search budget; 100 is
// the default. Anything unparsable is a contract violation (exit 2).
unsigned budget_percent() {
  const char* env = std::getenv("PF_BUDGET");
  if (!env) return 100;
  std::string s(env);
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw pf::DomainError("PF_BUDGET must be a positive integer percentage");
  unsigned long v = 0;
  for (char c : s) {
    v = v * 10 + static_cast<unsigned long>(c - '0');
    if (v > 10000) break;
  }
  if (v == 0 || v > 10000)
    throw pf::DomainError("PF_BUDGET must be between 1 and 10000");
  return static_cast<unsigned>(v);
}

template <typename T>
T scaled(T base, unsigned pct) {
  unsigned long long v =
      static_cast<unsigned long long>(base) * pct / 100ULL;
  return v == 0 ? T(1) : static_cast<T>(v);
}

pf::FreiheitssatzBudget scaled_freiheit_budget() {
  unsigned pct = budget_percent();
  pf::FreiheitssatzBudget b;
  b.embed_tries_per_rank = scaled(b.embed_tries_per_rank, pct);
  b.seed_tries = scaled(b.seed_tries, pct);
  b.series.max_coefficients = scaled(b.series.max_coefficients, pct);
  b.series.max_monomials = scaled(b.series.max_monomials, pct);
  return b;
}

// Whole-input builtins for well-known elements.
std::optional<pf::PoissonElement> builtin_element(const std::string& text,
                                                  unsigned& gens) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
  if (t == "St4") {
    gens = 4;
    return pf::standard_customary(1);
  }
  if (t == "St6") {
    gens = 6;
    return pf::standard_customary(2);
  }
  if (t == "St8") {
    gens = 8;
    return pf::standard_customary(3);
  }
  return std::nullopt;
}

pf::PoissonElement parse_poisson(const std::string& text, unsigned& gens) {
  if (auto b = builtin_element(text, gens)) return *b;
  return pf::to_poisson(pf::parse_expression(text), gens);
}

struct Output {
  bool json = false;
  std::string command;
  Json report;
  std::string text;

  explicit Output(std::string cmd) : command(std::move(cmd)) {}
  void line(const std::string& s) { text += s + "\n"; }
  int finish(int code) {
    if (json) {
      Json j = pf::make_report(command, code);
      for (auto& [k, v] : report.items()) j[k] = v;
      std::cout << pf::dump_report(j);
    } else {
      std::cout << text;
    }
    return code;
  }
};

std::vector<pf::Rational> parse_rational_list(const std::string& text) {
  std::vector<pf::Rational> out;
  for (const std::string& part : pf::split_names(text))
    out.push_back(pf::Rational::from_string(part));
  return out;
}

std::vector<pf::MultiIndex> parse_alpha_list(
    const std::vector<std::string>& parts) {
  std::vector<pf::MultiIndex> out;
  for (const std::string& p : parts) out.push_back(pf::MultiIndex::parse(p));
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{
      "pf: exact free Poisson algebra computations.\n"
      "Exit codes: 0 success, 1 negative mathematical outcome, 2 contract,\n"
      "syntax, or budget errors. PF_BUDGET=<percent> scales search budgets."};
  app.require_subcommand(1);
  bool json = false;
  std::uint64_t seed = kDefaultSeed;
  app.add_flag("--json", json, "emit a JSON report on stdout");
  app.add_option("--seed", seed,
                 "seed for randomized searches (byte-reproducible)");

  // ---- eval ----
  auto* eval = app.add_subcommand(
      "eval", "parse an expression and print its canonical form");
  std::string eval_target = "poisson";
  unsigned eval_gens = 2, eval_rank = 1;
  std::string eval_expr;
  eval->add_option("--target", eval_target, "poisson | symplectic | plane")
      ->check(CLI::IsMember({"poisson", "symplectic", "plane"}));
  eval->add_option("--gens", eval_gens, "generator count (poisson)");
  eval->add_option("--rank", eval_rank, "symplectic rank");
  eval->add_option("expr", eval_expr, "the expression")->required();

  // ---- bracket ----
  auto* bracket = app.add_subcommand(
      "bracket", "Poisson or symplectic bracket of two expressions");
  std::string br_target = "poisson";
  unsigned br_gens = 2, br_rank = 1;
  std::string br_a, br_b;
  bracket->add_option("--target", br_target, "poisson | symplectic")
      ->check(CLI::IsMember({"poisson", "symplectic"}));
  bracket->add_option("--gens", br_gens, "generator count (poisson)");
  bracket->add_option("--rank", br_rank, "symplectic rank");
  bracket->add_option("a", br_a, "left operand")->required();
  bracket->add_option("b", br_b, "right operand")->required();

  // ---- identity ----
  auto* identity = app.add_subcommand(
      "identity",
      "test whether an element vanishes under all substitutions into the "
      "rank-n symplectic Poisson algebra (customary elements are decided "
      "exactly; otherwise randomized)");
  unsigned id_gens = 4, id_rank = 1, id_trials = 200, id_degree = 3;
  std::string id_expr;
  identity->add_option("--gens", id_gens, "generator count");
  identity->add_option("--rank", id_rank, "symplectic rank to test against");
  identity->add_option("--trials", id_trials, "random trials (non-customary)");
  identity->add_option("--degree", id_degree,
                       "degree bound for random substitutions");
  identity->add_option("expr", id_expr, "the element (St4/St6/St8 allowed)")
      ->required();

  // ---- series ----
  auto* series = app.add_subcommand(
      "series",
      "solve f(x, jets of T) = 0 for a truncated power series T around a "
      "point with prescribed initial jets");
  std::string se_vars = "x", se_point = "0";
  std::vector<std::string> se_alphas;
  std::string se_values;
  unsigned se_order = 6;
  std::string se_expr;
  series->add_option("--vars", se_vars, "coordinate names, comma separated");
  series->add_option("--alpha", se_alphas,
                     "prescribed jet index \"(i,j,...)\" (repeatable, "
                     "strictly increasing)")
      ->required();
  series->add_option("--point", se_point, "base point, comma separated");
  series->add_option("--values", se_values,
                     "prescribed jet values, comma separated")
      ->required();
  series->add_option("--order", se_order, "truncation order");
  series->add_option("expr", se_expr, "the defining polynomial f")->required();

  // ---- freiheit ----
  auto* freiheit = app.add_subcommand(
      "freiheit",
      "construct a series witness that g stays outside the subalgebra "
      "constraint imposed by f = 0 (two-generator freeness pipeline)");
  unsigned fr_gens = 2, fr_order = 6;
  std::string fr_f, fr_g;
  freiheit->add_option("--gens", fr_gens, "generator count (>= 2)");
  freiheit->add_option("--order", fr_order, "series truncation order");
  freiheit->add_option("f", fr_f, "the relation element f")->required();
  freiheit->add_option("g", fr_g, "the probe element g")->required();

  // ---- jung ----
  auto* jung = app.add_subcommand(
      "jung",
      "decompose a polynomial plane automorphism into elementary moves");
  std::string ju_f, ju_g;
  jung->add_option("F", ju_f, "image of x")->required();
  jung->add_option("G", ju_g, "image of y")->required();

  // ---- commtest ----
  auto* commtest = app.add_subcommand(
      "commtest",
      "given F, G in the free Poisson algebra on x, y with {F,G} a nonzero "
      "scalar multiple of {x,y}, decompose the commutative projection and "
      "report the defect of the induced endomorphism");
  std::string ct_f, ct_g;
  commtest->add_option("F", ct_f, "image of x")->required();
  commtest->add_option("G", ct_g, "image of y")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help/version exit 0; usage errors exit 2
  }

  if (eval->parsed()) {
    Output out("eval");
    out.json = json;
    if (eval_target == "poisson") {
      unsigned gens = eval_gens;
      pf::PoissonElement v = parse_poisson(eval_expr, gens);
      out.report["result"] = Json{{"value", pf::poisson_to_json(v)}};
      out.line(v.to_string());
    } else if (eval_target == "symplectic") {
      pf::RationalPolynomial v =
          pf::to_symplectic(pf::parse_expression(eval_expr), eval_rank);
      out.report["result"] = Json{{"value", pf::polynomial_to_json(v)}};
      out.line(v.to_string());
    } else {
      pf::RationalPolynomial v =
          pf::to_plane_polynomial(pf::parse_expression(eval_expr));
      out.report["result"] = Json{{"value", pf::polynomial_to_json(v)}};
      out.line(v.to_string());
    }
    return out.finish(0);
  }

  if (bracket->parsed()) {
    Output out("bracket");
    out.json = json;
    if (br_target == "poisson") {
      unsigned ga = br_gens, gb = br_gens;
      pf::PoissonElement a = parse_poisson(br_a, ga);
      pf::PoissonElement b = parse_poisson(br_b, gb);
      if (ga != gb)
        throw pf::ArityMismatch("operands use different generator counts");
      pf::PoissonElement v = pf::poisson_bracket(a, b);
      out.report["result"] = Json{{"value", pf::poisson_to_json(v)}};
      out.line(v.to_string());
    } else {
      pf::RationalPolynomial a =
          pf::to_symplectic(pf::parse_expression(br_a), br_rank);
      pf::RationalPolynomial b =
          pf::to_symplectic(pf::parse_expression(br_b), br_rank);
      pf::RationalPolynomial v = pf::ps_bracket(a, b);
      out.report["result"] = Json{{"value", pf::polynomial_to_json(v)}};
      out.line(v.to_string());
    }
    return out.finish(0);
  }

  if (identity->parsed()) {
    Output out("identity");
    out.json = json;
    unsigned gens = id_gens;
    pf::PoissonElement q = parse_poisson(id_expr, gens);
    auto names = pf::default_generator_names(gens);
    unsigned pct = budget_percent();
    if (pf::is_customary(q)) {
      pf::CustomaryDecision d = pf::customary_identity_exact(q, id_rank);
      Json r;
      r["method"] = "customary-exact";
      r["rank"] = id_rank;
      r["decision"] = pf::customary_to_json(d, names);
      out.report["result"] = r;
      if (d.identity) {
        out.line("identity: exact (customary) on rank " +
                 std::to_string(id_rank));
        return out.finish(0);
      }
      out.line("non-identity: witness found on rank " +
               std::to_string(id_rank));
      if (d.witness) out.line("value: " + d.witness->image.to_string());
      return out.finish(1);
    }
    unsigned trials = scaled(id_trials, pct);
    pf::IdentityVerdict v =
        pf::is_identity_randomized(q, id_rank, id_degree, trials, seed);
    Json r;
    r["method"] = "randomized";
    r["rank"] = id_rank;
    r["decision"] = pf::verdict_to_json(v, names);
    out.report["result"] = r;
    if (v.non_identity) {
      out.line("non-identity: witness found on rank " +
               std::to_string(id_rank));
      if (v.witness) out.line("value: " + v.witness->image.to_string());
      return out.finish(1);
    }
    out.line("probable identity: no witness in " +
             std::to_string(v.trials_run) + " trials on rank " +
             std::to_string(id_rank));
    return out.finish(0);
  }

  if (series->parsed()) {
    Output out("series");
    out.json = json;
    std::vector<std::string> vars = pf::split_names(se_vars);
    std::vector<pf::MultiIndex> alphas = parse_alpha_list(se_alphas);
    std::vector<pf::Rational> point = parse_rational_list(se_point);
    std::vector<pf::Rational> values = parse_rational_list(se_values);
    pf::RationalPolynomial f =
        pf::to_jet_polynomial(pf::parse_expression(se_expr), vars);
    pf::SeriesProblem prob =
        pf::SeriesProblem::create(vars, alphas, point, values, f);
    pf::SeriesBudget sb;
    unsigned pct = budget_percent();
    sb.max_coefficients = scaled(sb.max_coefficients, pct);
    sb.max_monomials = scaled(sb.max_monomials, pct);
    pf::SeriesSession session(prob, sb);
    pf::RationalPolynomial trunc = session.truncate(se_order);
    bool residual = session.residual_check(se_order);
    Json r;
    r["order"] = se_order;
    r["truncation"] = pf::polynomial_to_json(trunc);
    r["residual_ok"] = residual;
    out.report["result"] = r;
    out.line("T = " + trunc.to_string() +
             "  (in coordinates shifted by the base point)");
    out.line(std::string("residual: ") + (residual ? "ok" : "FAILED"));
    if (!residual) throw pf::Error("series: residual check failed");
    return out.finish(0);
  }

  if (freiheit->parsed()) {
    Output out("freiheit");
    out.json = json;
    if (fr_gens < 2)
      throw pf::HypothesisViolation("freiheit: need at least two generators");
    unsigned gf = fr_gens, gg = fr_gens;
    pf::PoissonElement f = parse_poisson(fr_f, gf);
    pf::PoissonElement g = parse_poisson(fr_g, gg);
    if (gf != gg)
      throw pf::ArityMismatch("operands use different generator counts");
    pf::FreiheitssatzBudget budget = scaled_freiheit_budget();
    try {
      pf::FreiheitssatzWitness w =
          pf::construct_witness(f, g, fr_order, budget, seed);
      bool ok = pf::verify_witness(f, g, w);
      Json r;
      r["witness"] = pf::witness_to_json(w, gf);
      r["verified"] = ok;
      out.report["result"] = r;
      out.line("rank: " + std::to_string(w.rank));
      for (std::size_t i = 0; i < w.phi.size(); ++i)
        out.line("z" + std::to_string(i + 1) + " -> " + w.phi[i].to_string());
      out.line("pde: " + w.pde.h.to_string() + " = 0");
      out.line("series (shifted): " + w.series.to_string());
      out.line("image of g: " + w.theta_g.to_string());
      out.line(std::string("verification: ") + (ok ? "ok" : "FAILED"));
      if (!ok) throw pf::Error("freiheit: independent verification failed");
      return out.finish(0);
    } catch (const pf::NoRationalSeed& e) {
      // A genuine negative mathematical outcome: the drilled search space
      // holds no rational seed. Budget and stage errors propagate as 2.
      Json r;
      r["error"] = e.what();
      out.report["result"] = r;
      out.line(std::string("failed: ") + e.what());
      return out.finish(1);
    }
  }

  if (jung->parsed()) {
    Output out("jung");
    out.json = json;
    pf::PolyEndo e{pf::to_plane_polynomial(pf::parse_expression(ju_f)),
                   pf::to_plane_polynomial(pf::parse_expression(ju_g))};
    pf::JungResult res = pf::jung_decompose(e);
    Json r;
    r["is_automorphism"] = res.is_automorphism;
    r["input"] = pf::endo_to_json(e);
    if (res.is_automorphism) {
      r["moves"] = pf::moves_to_json(res.moves);
      out.report["result"] = r;
      out.line("automorphism: yes (" + std::to_string(res.moves.size()) +
               " elementary moves)");
      for (const pf::ElementaryMove& m : res.moves) out.line("  " + m.to_string());
      return out.finish(0);
    }
    r["reason"] = res.reason;
    r["stalled"] = pf::endo_to_json(res.stalled);
    out.report["result"] = r;
    out.line("automorphism: no (" + res.reason + ")");
    return out.finish(1);
  }

  if (commtest->parsed()) {
    Output out("commtest");
    out.json = json;
    unsigned gf = 2, gg = 2;
    pf::PoissonElement F = parse_poisson(ct_f, gf);
    pf::PoissonElement G = parse_poisson(ct_g, gg);
    pf::PoissonEndo e{F, G};
    pf::BracketScaling sc = pf::bracket_scaling_test(e);
    Json r;
    if (sc.degenerate) {
      r["scaling"] = "degenerate";
      out.report["result"] = r;
      out.line("negative: {F, G} = 0");
      return out.finish(1);
    }
    if (sc.kind == pf::BracketScaling::Kind::NotAMultiple) {
      r["scaling"] = "not-a-multiple";
      r["offending"] = sc.offending.to_string();
      out.report["result"] = r;
      out.line("negative: {F, G} is not a multiple of {x, y}");
      out.line("offending part: " + sc.offending.to_string());
      return out.finish(1);
    }
    if (sc.kind == pf::BracketScaling::Kind::PolynomialMultiple) {
      r["scaling"] = "polynomial-multiple";
      r["factor"] = sc.t.to_string();
      out.report["result"] = r;
      out.line("negative: {F, G} = (" + sc.t.to_string() +
               ") * {x, y} with a non-constant factor");
      return out.finish(1);
    }
    try {
      pf::Theorem4Report rep = pf::theorem4_bridge(e);
      r["scaling"] = "scalar";
      r["bridge"] = pf::theorem4_to_json(rep);
      out.report["result"] = r;
      out.line("{F, G} = " + rep.alpha.to_string() + " * {x, y}");
      out.line("projected Jacobian: " + rep.jacobian_psi.to_string());
      out.line("moves: " + std::to_string(rep.jung.moves.size()));
      for (const pf::ElementaryMove& m : rep.jung.moves)
        out.line("  " + m.to_string());
      out.line("s = " + rep.s.to_string());
      out.line("t = " + rep.t.to_string());
      out.line(std::string("defect vanishes: ") +
               (rep.s_t_zero ? "yes" : "no"));
      return out.finish(0);
    } catch (const pf::Error& err) {
      r["scaling"] = "scalar";
      r["error"] = err.what();
      out.report["result"] = r;
      out.line(std::string("negative: ") + err.what());
      return out.finish(1);
    }
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const pf::SyntaxError& e) {
    std::cerr << "syntax error: " << e.what() << "\n";
    return 2;
  } catch (const pf::BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 2;
  } catch (const pf::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
