#pragma once

#include <json.hpp>
#include <string>

#include "weylforge/charcalc.hpp"
#include "weylforge/modeng.hpp"
#include "weylforge/theorems.hpp"

namespace weylforge::jsonio {

using json = nlohmann::json;

// generalized Cartan matrices: {"cartan_matrix": [[...]], "type": "finite"}
rootsys::GeneralizedCartanMatrix gcm_from_json(const json& j);
json table_to_json(const rootsys::RootSystemTable& table);
std::string table_to_csv(const rootsys::RootSystemTable& table);

// ideals: {"points": [{"coords": [...], "exp": n}]} or
// {"generators": ["t^2-t"], "truncation_degree": D, "nvars": n}
commalg::CofiniteIdeal ideal_from_json(const json& j);
json ideal_to_json(const commalg::CofiniteIdeal& I);

// polynomials as coefficient maps: [{"exp": [...], "coeff": "p/q"}]
json poly_to_json(const Poly& p);
Poly poly_from_json(const json& j, int nvars);

// weights and psi: {"lambda": [...], "psi": [{"point": [...], "weight": [...]}],
// "ideal": {...}}
hwdata::Weight weight_from_json(const json& j);
hwdata::Psi psi_from_json(const json& j);
json psi_to_json(const hwdata::Psi& psi);

// K_eta tables: eta coordinates, height, coefficient
json character_to_json(const charcalc::FormalCharacter& ch);
std::string character_to_csv(const charcalc::FormalCharacter& ch);

json dims_to_json(const std::map<std::vector<int>, long>& dims);
std::string dims_to_csv(const std::map<std::vector<int>, long>& dims);

json report_to_json(const theorems::VerificationReport& rep, bool include_timing = false);

}  // namespace weylforge::jsonio
