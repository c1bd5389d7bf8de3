#include "pf/report.hpp"

namespace pf {

namespace {

Json exponents_json(const Exponents& e) {
  Json a = Json::array();
  for (unsigned k : e) a.push_back(k);
  return a;
}

Json rational_json(const Rational& r) { return r.to_string(); }

}  // namespace

Json polynomial_to_json(const RationalPolynomial& p) {
  Json out;
  out["string"] = p.to_string();
  Json vars = Json::array();
  const auto& ctx = *p.context();
  for (std::size_t i = 0; i < ctx.var_count(); ++i)
    vars.push_back(ctx.var_name(i));
  out["variables"] = vars;
  Json terms = Json::array();
  // Leading-first, matching the printed order.
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    Json t;
    t["coefficient"] = rational_json(it->second);
    t["exponents"] = exponents_json(it->first);
    terms.push_back(t);
  }
  out["terms"] = terms;
  return out;
}

Json poisson_to_json(const PoissonElement& a) {
  Json out;
  auto names = default_generator_names(a.generators());
  out["generators"] = names;
  out["string"] = a.to_string();
  Json terms = Json::array();
  for (auto it = a.terms().rbegin(); it != a.terms().rend(); ++it) {
    Json t;
    t["coefficient"] = rational_json(it->second);
    Json fs = Json::array();
    for (const auto& [w, mult] : it->first.factors()) {
      Json f;
      f["word"] = word_to_bracket_string(w, names);
      f["multiplicity"] = mult;
      fs.push_back(f);
    }
    t["factors"] = fs;
    terms.push_back(t);
  }
  out["terms"] = terms;
  return out;
}

Json assignment_to_json(const GeneratorAssignment& phi,
                        const std::vector<std::string>& gen_names) {
  Json out;
  out["rank"] = phi.rank;
  Json images = Json::array();
  for (std::size_t i = 0; i < phi.images.size(); ++i) {
    Json im;
    im["generator"] = i < gen_names.size() ? gen_names[i]
                                           : "z" + std::to_string(i + 1);
    im["image"] = phi.images[i].to_string();
    images.push_back(im);
  }
  out["images"] = images;
  return out;
}

Json verdict_to_json(const IdentityVerdict& v,
                     const std::vector<std::string>& gen_names) {
  Json out;
  out["non_identity"] = v.non_identity;
  out["trials_run"] = v.trials_run;
  out["degree_bound"] = v.degree_bound;
  out["rank"] = v.rank;
  if (v.witness) {
    Json w;
    w["assignment"] = assignment_to_json(v.witness->assignment, gen_names);
    w["value"] = v.witness->image.to_string();
    out["witness"] = w;
  } else {
    out["witness"] = nullptr;
  }
  return out;
}

Json customary_to_json(const CustomaryDecision& d,
                       const std::vector<std::string>& gen_names) {
  Json out;
  out["identity"] = d.identity;
  if (d.witness) {
    Json w;
    w["assignment"] = assignment_to_json(d.witness->assignment, gen_names);
    w["value"] = d.witness->image.to_string();
    out["witness"] = w;
  } else {
    out["witness"] = nullptr;
  }
  return out;
}

Json witness_to_json(const FreiheitssatzWitness& w, unsigned gens) {
  Json out;
  out["rank"] = w.rank;
  auto names = default_generator_names(gens);
  Json images = Json::array();
  for (std::size_t i = 0; i < w.phi.size(); ++i) {
    Json im;
    im["generator"] = names[i];
    im["image"] = w.phi[i].to_string();
    images.push_back(im);
  }
  out["images"] = images;

  Json pde;
  pde["equation"] = w.pde.h.to_string();
  Json alphas = Json::array();
  for (const MultiIndex& a : w.pde.alphas) alphas.push_back(a.to_string());
  pde["jet_orders"] = alphas;
  out["pde"] = pde;

  Json seed;
  Json coords = Json::array();
  for (const Rational& c : w.seed.coords) coords.push_back(rational_json(c));
  seed["coordinates"] = coords;
  Json jvals = Json::array();
  for (const Rational& c : w.seed.jet_values)
    jvals.push_back(rational_json(c));
  seed["jet_values"] = jvals;
  out["seed"] = seed;

  out["order"] = w.order;
  out["certified_order"] = w.certified_order;
  out["series"] = polynomial_to_json(w.series);
  out["image_of_g"] = w.theta_g.to_string();
  out["residual_ok"] = w.residual_ok;
  return out;
}

Json moves_to_json(const std::vector<ElementaryMove>& moves) {
  Json arr = Json::array();
  for (const ElementaryMove& m : moves) {
    Json j;
    if (m.is_affine()) {
      const AffineMove& a = m.affine();
      j["type"] = "affine";
      j["matrix"] = Json::array({rational_json(a.a), rational_json(a.b),
                                 rational_json(a.c), rational_json(a.d)});
      j["translation"] =
          Json::array({rational_json(a.e), rational_json(a.f)});
    } else {
      const TriangularMove& t = m.triangular();
      j["type"] = "triangular";
      j["variable"] = t.var == 0 ? "x" : "y";
      j["shift"] = t.p.to_string();
    }
    j["string"] = m.to_string();
    arr.push_back(j);
  }
  return arr;
}

Json endo_to_json(const PolyEndo& e) {
  Json j;
  j["F"] = e.F.to_string();
  j["G"] = e.G.to_string();
  return j;
}

Json theorem4_to_json(const Theorem4Report& rep) {
  Json j;
  j["alpha"] = rational_json(rep.alpha);
  j["jacobian"] = rational_json(rep.jacobian_psi);
  j["moves"] = moves_to_json(rep.jung.moves);
  j["s"] = rep.s.to_string();
  j["t"] = rep.t.to_string();
  j["s_t_zero"] = rep.s_t_zero;
  return j;
}

Json make_report(const std::string& command, int exit_code) {
  Json j;
  j["tool"] = "pf";
  j["version"] = "1.0.0";
  j["command"] = command;
  j["exit_code"] = exit_code;
  return j;
}

std::string dump_report(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace pf
