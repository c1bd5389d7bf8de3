#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "pf/automorphisms.hpp"
#include "pf/freepoisson.hpp"
#include "pf/freiheitssatz.hpp"
#include "pf/polyring.hpp"
#include "pf/series_solver.hpp"
#include "pf/symplectic.hpp"

namespace pf {

using Json = nlohmann::ordered_json;

// Canonical JSON forms. Polynomials and Poisson elements are serialized both
// as a re-parseable canonical string and as an explicit term list, so reports
// are machine-checkable without the printer.
Json polynomial_to_json(const RationalPolynomial& p);
Json poisson_to_json(const PoissonElement& a);
Json assignment_to_json(const GeneratorAssignment& phi,
                        const std::vector<std::string>& gen_names);
Json verdict_to_json(const IdentityVerdict& v,
                     const std::vector<std::string>& gen_names);
Json customary_to_json(const CustomaryDecision& d,
                       const std::vector<std::string>& gen_names);
Json witness_to_json(const FreiheitssatzWitness& w, unsigned gens);
Json moves_to_json(const std::vector<ElementaryMove>& moves);
Json endo_to_json(const PolyEndo& e);
Json theorem4_to_json(const Theorem4Report& rep);

// Envelope every CLI report is wrapped in.
Json make_report(const std::string& command, int exit_code);

std::string dump_report(const Json& j);

}  // namespace pf
