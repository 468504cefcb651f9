#include "weylforge/json_io.hpp"

#include <algorithm>
#include <sstream>

namespace weylforge::jsonio {

namespace {

std::vector<Rat> point_from_json(const json& j) {
  require(j.is_array(), Err::InvalidInput, "point must be an array");
  std::vector<Rat> p;
  for (const auto& x : j) {
    if (x.is_number_integer())
      p.emplace_back(static_cast<long>(x.get<long long>()));
    else if (x.is_string())
      p.push_back(rat_parse(x.get<std::string>()));
    else
      fail(Err::InvalidInput, "point coordinates must be integers or \"p/q\" strings");
  }
  return p;
}

json point_to_json(const std::vector<Rat>& p) {
  json out = json::array();
  for (const auto& x : p) out.push_back(rat_str(x));
  return out;
}

std::string join_coords(const std::vector<int>& c) {
  std::string s;
  for (size_t i = 0; i < c.size(); ++i) s += (i ? ";" : "") + std::to_string(c[i]);
  return s;
}

// emission order: height first, then lex on the coordinates
template <typename V>
std::vector<std::pair<std::vector<int>, V>> height_sorted(
    const std::map<std::vector<int>, V>& m) {
  std::vector<std::pair<std::vector<int>, V>> rows(m.begin(), m.end());
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    int ha = 0, hb = 0;
    for (int x : a.first) ha += x;
    for (int x : b.first) hb += x;
    if (ha != hb) return ha < hb;
    return a.first < b.first;
  });
  return rows;
}

}  // namespace

rootsys::GeneralizedCartanMatrix gcm_from_json(const json& j) {
  require(j.contains("cartan_matrix"), Err::InvalidInput, "missing cartan_matrix");
  const auto& m = j.at("cartan_matrix");
  require(m.is_array() && !m.empty(), Err::InvalidInput, "cartan_matrix must be a matrix");
  std::vector<std::vector<int>> a;
  for (const auto& row : m) {
    require(row.is_array(), Err::InvalidInput, "cartan_matrix must be a matrix");
    a.push_back(row.get<std::vector<int>>());
  }
  std::string type = j.value("type", "finite");
  return rootsys::validate_gcm(a, rootsys::gcm_type_parse(type));
}

json table_to_json(const rootsys::RootSystemTable& table) {
  json roots = json::array();
  for (const auto& r : table.roots)
    roots.push_back({{"coords", r.coords}, {"height", r.height}, {"mult", r.mult}});
  return roots;
}

std::string table_to_csv(const rootsys::RootSystemTable& table) {
  std::ostringstream os;
  os << "coords,height,mult\n";
  for (const auto& r : table.roots)
    os << join_coords(r.coords) << "," << r.height << "," << r.mult << "\n";
  return os.str();
}

commalg::CofiniteIdeal ideal_from_json(const json& j) {
  require(j.is_object(), Err::InvalidInput, "ideal must be an object");
  if (j.contains("points")) {
    std::vector<commalg::PointSupport> supp;
    int nvars = -1;
    for (const auto& e : j.at("points")) {
      commalg::PointSupport s;
      s.point = point_from_json(e.at("coords"));
      s.exp = e.value("exp", 1u);
      if (nvars < 0) nvars = static_cast<int>(s.point.size());
      supp.push_back(std::move(s));
    }
    if (nvars < 0) nvars = j.value("nvars", 1);
    return commalg::CofiniteIdeal::point_supported(nvars, std::move(supp));
  }
  if (j.contains("generators")) {
    int nvars = j.value("nvars", 1);
    std::vector<Poly> gens;
    for (const auto& g : j.at("generators")) {
      if (g.is_string())
        gens.push_back(poly_parse(g.get<std::string>(), nvars));
      else
        gens.push_back(poly_from_json(g, nvars));
    }
    int D = j.value("truncation_degree", 0);
    return commalg::CofiniteIdeal::generated(nvars, std::move(gens), D);
  }
  fail(Err::InvalidInput, "ideal needs \"points\" or \"generators\"");
}

json ideal_to_json(const commalg::CofiniteIdeal& I) {
  json out;
  if (I.presentation() == commalg::CofiniteIdeal::Pres::PointSupported) {
    json pts = json::array();
    for (const auto& s : I.support())
      pts.push_back({{"coords", point_to_json(s.point)}, {"exp", s.exp}});
    out["points"] = pts;
    out["nvars"] = I.nvars();
  } else {
    json gens = json::array();
    for (const auto& g : I.generators()) gens.push_back(poly_to_json(g));
    out["generators"] = gens;
    out["truncation_degree"] = I.truncation_degree();
    out["nvars"] = I.nvars();
  }
  return out;
}

json poly_to_json(const Poly& p) {
  json terms = json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back({{"exp", e}, {"coeff", rat_str(c)}});
  return terms;
}

Poly poly_from_json(const json& j, int nvars) {
  require(j.is_array(), Err::InvalidInput, "polynomial must be a coefficient array");
  Poly p(nvars);
  for (const auto& t : j) {
    Expo e = t.at("exp").get<Expo>();
    require(static_cast<int>(e.size()) == nvars, Err::InvalidInput, "exponent arity mismatch");
    p.add_term(e, rat_parse(t.at("coeff").get<std::string>()));
  }
  return p;
}

hwdata::Weight weight_from_json(const json& j) {
  hwdata::Weight w;
  w.coroot_values = j.get<std::vector<int>>();
  return w;
}

hwdata::Psi psi_from_json(const json& j) {
  hwdata::Psi psi;
  psi.weight = weight_from_json(j.at("lambda"));
  psi.annihilating_ideal = ideal_from_json(j.at("ideal"));
  if (j.contains("psi")) {
    for (const auto& s : j.at("psi"))
      psi.evaluation_data.push_back(
          {point_from_json(s.at("point")), weight_from_json(s.at("weight"))});
  } else {
    // default: the whole weight evaluated at the first support point
    const auto& supp = psi.annihilating_ideal.support();
    require(!supp.empty(), Err::InvalidInput, "psi needs evaluation data for the unit ideal");
    psi.evaluation_data.push_back({supp.front().point, psi.weight});
  }
  return psi;
}

json psi_to_json(const hwdata::Psi& psi) {
  json evals = json::array();
  for (const auto& s : psi.evaluation_data)
    evals.push_back({{"point", point_to_json(s.point)}, {"weight", s.weight.coroot_values}});
  return {{"lambda", psi.weight.coroot_values},
          {"psi", evals},
          {"ideal", ideal_to_json(psi.annihilating_ideal)}};
}

json character_to_json(const charcalc::FormalCharacter& ch) {
  json rows = json::array();
  for (const auto& [eta, c] : height_sorted(ch.coeffs)) {
    int h = 0;
    for (int x : eta) h += x;
    rows.push_back({{"eta", eta}, {"height", h}, {"value", c}});
  }
  return rows;
}

std::string character_to_csv(const charcalc::FormalCharacter& ch) {
  std::ostringstream os;
  os << "eta_coords,height,value\n";
  for (const auto& [eta, c] : height_sorted(ch.coeffs)) {
    int h = 0;
    for (int x : eta) h += x;
    os << join_coords(eta) << "," << h << "," << c << "\n";
  }
  return os.str();
}

json dims_to_json(const std::map<std::vector<int>, long>& dims) {
  json rows = json::array();
  for (const auto& [eta, d] : height_sorted(dims)) {
    int h = 0;
    for (int x : eta) h += x;
    rows.push_back({{"eta", eta}, {"height", h}, {"value", d}});
  }
  return rows;
}

std::string dims_to_csv(const std::map<std::vector<int>, long>& dims) {
  std::ostringstream os;
  os << "eta_coords,height,value\n";
  for (const auto& [eta, d] : height_sorted(dims)) {
    int h = 0;
    for (int x : eta) h += x;
    os << join_coords(eta) << "," << h << "," << d << "\n";
  }
  return os.str();
}

json report_to_json(const theorems::VerificationReport& rep, bool include_timing) {
  json checks = json::array();
  for (const auto& it : rep.items) {
    json c = {{"name", it.name}, {"status", it.pass ? "pass" : "fail"}};
    if (!it.detail.empty()) c[it.pass ? "note" : "discrepancy"] = it.detail;
    json tables = json::array();
    for (const auto& t : it.tables)
      tables.push_back({{"label", t.label}, {"dims", dims_to_json(t.dims)}});
    c["tables"] = tables;
    checks.push_back(c);
  }
  json out = {{"check", rep.check},
              {"instance", rep.instance},
              {"status", rep.pass() ? "pass" : "fail"},
              {"checks", checks}};
  if (include_timing) out["seconds"] = rep.seconds;
  return out;
}

}  // namespace weylforge::jsonio
