// weylforge: batch front end for exact root-system, cofinite-ideal, character
// and module computations, plus the tensor-factorization verification suite.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <random>

#include "weylforge/json_io.hpp"

using namespace weylforge;
using jsonio::json;

namespace {

json load_instance(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), Err::InvalidInput, "cannot open instance file " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    fail(Err::InvalidInput, std::string("instance is not valid JSON: ") + e.what());
  }
  return j;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
  } else {
    std::ofstream out(out_path);
    require(out.good(), Err::InvalidInput, "cannot open output file " + out_path);
    out << text;
    if (!text.empty() && text.back() != '\n') out << "\n";
  }
}

std::string dump(const json& j) { return j.dump(2); }

int run_roots(const json& inst, int H, const std::string& format, const std::string& out) {
  auto gcm = jsonio::gcm_from_json(inst);
  auto table = rootsys::positive_roots(gcm, H);
  emit(format == "csv" ? jsonio::table_to_csv(*table) : dump(jsonio::table_to_json(*table)), out);
  return 0;
}

int run_ideal(const json& inst, const std::string& format, const std::string& out) {
  json payload = inst.contains("ideal") ? inst.at("ideal") : inst;
  auto I = jsonio::ideal_from_json(payload);
  json result;
  result["codim"] = commalg::codim(I);
  if (I.presentation() == commalg::CofiniteIdeal::Pres::PointSupported) {
    json comps = json::array();
    for (const auto& c : commalg::crt_split(I)) comps.push_back(jsonio::ideal_to_json(c));
    result["components"] = comps;
    result["unit"] = I.is_unit();
  }
  require(format != "csv", Err::InvalidInput, "ideal output is JSON only");
  emit(dump(result), out);
  return 0;
}

int run_char(const json& inst, int H, const std::string& format, const std::string& out) {
  auto gcm = jsonio::gcm_from_json(inst);
  auto table = rootsys::positive_roots(gcm, H);
  auto lambda = jsonio::weight_from_json(inst.at("lambda"));
  auto I = jsonio::ideal_from_json(inst.at("ideal"));
  charcalc::FormalCharacter ch;
  if (inst.contains("mu")) {
    auto mu = jsonio::weight_from_json(inst.at("mu"));
    auto J = jsonio::ideal_from_json(inst.at("ideal_j"));
    auto seq = hwdata::k_sequence(lambda, I, mu, J, table);
    ch = charcalc::character_of_M(hwdata::make_formal_psi(lambda + mu, seq.envelope), seq, H);
  } else {
    auto seq = hwdata::standard_sequence(lambda, I, table);
    ch = charcalc::character_of_M(hwdata::make_formal_psi(lambda, I), seq, H);
  }
  emit(format == "csv" ? jsonio::character_to_csv(ch) : dump(jsonio::character_to_json(ch)), out);
  return 0;
}

int run_module(const json& inst, int H_flag, const std::string& format, const std::string& out) {
  auto gcm = jsonio::gcm_from_json(inst);
  auto psi = jsonio::psi_from_json(inst);
  auto I = psi.annihilating_ideal;
  int H = H_flag > 0 ? H_flag : inst.value("H", 4);
  std::string kind = inst.value("kind", "W");
  auto table = rootsys::positive_roots(gcm, 16);
  require(gcm.type == rootsys::GcmType::Finite, Err::UnsupportedType,
          "module construction supports finite type only");

  long maxN = 1;
  for (const auto& r : table->roots)
    maxN = std::max(maxN, hwdata::n_lambda_alpha(psi.weight, r));
  commalg::CofiniteIdeal B_ideal = inst.contains("B")
                                       ? jsonio::ideal_from_json(inst.at("B"))
                                       : commalg::power(I, static_cast<unsigned>(maxN));
  auto B = commalg::quotient_algebra(B_ideal);

  modeng::BuildOptions opts;
  opts.audit = inst.value("audit", 1);
  std::optional<modeng::QuotientModule> state;
  if (kind == "W") {
    state = modeng::build_W(gcm, psi, I, B, H, opts);
  } else if (kind == "M") {
    state = modeng::build_M(gcm, psi, hwdata::standard_sequence(psi.weight, I, table), B, H,
                            opts);
  } else if (kind == "verma") {
    state = modeng::build_M(gcm, psi, std::nullopt, B, H, opts);
  } else {
    fail(Err::InvalidInput, "kind must be W, M or verma");
  }

  auto dims = state->dims(H);
  if (format == "csv") {
    emit(jsonio::dims_to_csv(dims), out);
    return 0;
  }
  json result;
  result["kind"] = kind;
  result["H"] = H;
  result["B"] = jsonio::ideal_to_json(B_ideal);
  result["dims"] = jsonio::dims_to_json(dims);
  result["relation_count"] = state->relation_count();
  result["order"] = state->order_note();
  result["total_dim"] = state->complete() ? json(state->total_dim()) : json(nullptr);
  if (state->audit().ran)
    result["audit"] = {{"pass", state->audit().pass},
                       {"scope", state->audit().scope},
                       {"detail", state->audit().detail}};
  std::vector<std::string> tasks = inst.value("tasks", std::vector<std::string>{});
  if (std::find(tasks.begin(), tasks.end(), "singular") != tasks.end()) {
    json sing = json::array();
    for (const auto& [eta, d] : dims) {
      if (d == 0) continue;
      auto vecs = modeng::singular_vectors(*state, eta);
      if (!vecs.empty()) sing.push_back({{"eta", eta}, {"count", vecs.size()}});
    }
    result["singular"] = sing;
  }
  emit(dump(result), out);
  return 0;
}

int run_verify(const std::string& check, const json& inst, bool timing, const std::string& out) {
  theorems::VerificationReport rep;
  if (check == "T1" || check == "t1") {
    auto gcm = jsonio::gcm_from_json(inst);
    int H = inst.value("H", 4);
    auto table = rootsys::positive_roots(gcm, gcm.type == rootsys::GcmType::Finite ? 16 : H);
    theorems::T1Options o;
    o.H = H;
    o.brute_force = inst.value("brute_force", gcm.type == rootsys::GcmType::Finite);
    o.seed_violation = inst.value("seed_violation", false);
    rep = theorems::check_t1(jsonio::weight_from_json(inst.at("lambda")),
                             jsonio::ideal_from_json(inst.at("ideal_i")),
                             jsonio::weight_from_json(inst.at("mu")),
                             jsonio::ideal_from_json(inst.at("ideal_j")), table, o);
  } else if (check == "tw") {
    theorems::TwOptions o;
    rep = theorems::check_tw(jsonio::weight_from_json(inst.at("lambda")),
                             jsonio::ideal_from_json(inst.at("ideal_i")),
                             jsonio::weight_from_json(inst.at("mu")),
                             jsonio::ideal_from_json(inst.at("ideal_j")), inst.value("H", 4), o);
  } else if (check == "max") {
    auto gcm = jsonio::gcm_from_json(inst);
    std::vector<std::pair<std::vector<Rat>, hwdata::Weight>> points;
    for (const auto& p : inst.at("points")) {
      std::vector<Rat> pt;
      for (const auto& x : p.at("point"))
        pt.push_back(x.is_string() ? rat_parse(x.get<std::string>())
                                   : Rat(static_cast<long>(x.get<long long>())));
      points.push_back({pt, jsonio::weight_from_json(p.at("weight"))});
    }
    rep = theorems::check_max(points, gcm, inst.value("H", 4));
  } else if (check == "l1") {
    rep = theorems::check_l1(inst.value("seed", 1u), inst.value("instances", 20));
  } else if (check == "remark") {
    rep = theorems::check_remark(jsonio::weight_from_json(inst.at("lambda")),
                                 jsonio::ideal_from_json(inst.at("ideal")),
                                 inst.value("H", 4));
  } else {
    fail(Err::InvalidInput, "unknown check '" + check + "'");
  }
  emit(dump(jsonio::report_to_json(rep, timing)), out);
  return rep.pass() ? 0 : 1;
}

int run_proptest(unsigned seed, int trials, const std::string& out) {
  std::mt19937_64 rng(seed);
  std::ostringstream os;
  bool all_ok = true;
  auto report = [&](const std::string& name, bool ok, int n) {
    os << (ok ? "ok   " : "FAIL ") << name << " (" << n << " trials)\n";
    all_ok = all_ok && ok;
  };
  auto rand_point_ideal = [&](long lo, long hi, unsigned emax) {
    long span = hi - lo + 1;
    return commalg::CofiniteIdeal::maximal({Rat(lo + static_cast<long>(rng() % span))},
                                           1 + static_cast<unsigned>(rng() % emax));
  };
  std::vector<rootsys::GeneralizedCartanMatrix> gcms = {
      rootsys::validate_gcm({{2}}, rootsys::GcmType::Finite),
      rootsys::validate_gcm({{2, -1}, {-1, 2}}, rootsys::GcmType::Finite),
      rootsys::validate_gcm({{2, -1}, {-2, 2}}, rootsys::GcmType::Finite)};

  {  // sequence validity
    bool ok = true;
    for (int t = 0; t < trials && ok; ++t) {
      const auto& gcm = gcms[rng() % gcms.size()];
      auto table = rootsys::positive_roots(gcm, 6);
      hwdata::Weight lam, mu;
      lam.coroot_values.resize(gcm.rank);
      mu.coroot_values.resize(gcm.rank);
      for (auto& x : lam.coroot_values) x = static_cast<int>(rng() % 4);
      for (auto& x : mu.coroot_values) x = static_cast<int>(rng() % 3);
      auto I = rand_point_ideal(-3, 0, 2);
      auto J = rand_point_ideal(1, 4, 2);
      ok = hwdata::validate_sequence(hwdata::standard_sequence(lam, I, table)).pass &&
           hwdata::validate_sequence(hwdata::k_sequence(lam, I, mu, J, table)).pass;
    }
    report("sequence validity (standard and K)", ok, trials);
  }
  {  // bezout witnesses and CRT additivity
    bool ok = true;
    for (int t = 0; t < trials && ok; ++t) {
      auto I = rand_point_ideal(-3, 0, 2);
      auto J = rand_point_ideal(1, 4, 2);
      unsigned N = 1 + static_cast<unsigned>(rng() % 4);
      auto [f, g] = commalg::bezout_witness(I, J, N);
      ok = (f + g == Poly::constant(1, 1));
      auto K = commalg::intersect(I, J);
      long sum = 0;
      for (const auto& c : commalg::crt_split(K)) sum += commalg::codim(c);
      ok = ok && sum == commalg::codim(K);
    }
    report("bezout identities and CRT additivity", ok, trials);
  }
  {  // character-level tensor dimensions
    bool ok = true;
    int n = std::max(1, trials / 2);
    for (int t = 0; t < n && ok; ++t) {
      const auto& gcm = gcms[rng() % gcms.size()];
      auto table = rootsys::positive_roots(gcm, 5);
      hwdata::Weight lam, mu;
      lam.coroot_values.resize(gcm.rank);
      mu.coroot_values.resize(gcm.rank);
      for (auto& x : lam.coroot_values) x = static_cast<int>(rng() % 3);
      for (auto& x : mu.coroot_values) x = static_cast<int>(rng() % 3);
      auto I = rand_point_ideal(-3, 0, 2);
      auto J = rand_point_ideal(1, 4, 2);
      ok = charcalc::verify_t1_dimensions(lam, I, mu, J, table, 5).pass;
    }
    report("character-level tensor dimensions", ok, n);
  }
  {  // truncated convolution algebra laws
    bool ok = true;
    auto table = rootsys::positive_roots(gcms[1], 5);
    for (int t = 0; t < trials && ok; ++t) {
      auto a = charcalc::geometric_factor(table, static_cast<int>(rng() % 3),
                                          1 + static_cast<long>(rng() % 3), 5);
      auto b = charcalc::geometric_factor(table, static_cast<int>(rng() % 3),
                                          1 + static_cast<long>(rng() % 3), 5);
      auto c = charcalc::geometric_factor(table, static_cast<int>(rng() % 3),
                                          1 + static_cast<long>(rng() % 3), 5);
      ok = charcalc::multiply(a, b).coeffs == charcalc::multiply(b, a).coeffs &&
           charcalc::multiply(charcalc::multiply(a, b), c).coeffs ==
               charcalc::multiply(a, charcalc::multiply(b, c)).coeffs;
    }
    report("character product laws", ok, trials);
  }
  emit(os.str(), out);
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weylforge: exact modules and characters for map Lie algebras"};
  app.require_subcommand(1);

  std::string instance, out_path, format = "json", check = "tw";
  int height = 0;
  unsigned seed = 1;
  int trials = 50;
  bool timing = false;

  auto add_io = [&](CLI::App* cmd, bool with_height) {
    cmd->add_option("--instance", instance, "instance JSON file")->required();
    cmd->add_option("--format", format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", out_path, "output file (default stdout)");
    if (with_height) cmd->add_option("--height", height, "height bound");
  };

  auto* roots = app.add_subcommand("roots", "positive-root table of a Cartan matrix");
  add_io(roots, true);
  auto* ideal = app.add_subcommand("ideal", "codimension and primary components");
  add_io(ideal, false);
  auto* chr = app.add_subcommand("char", "truncated character table");
  add_io(chr, true);
  auto* mod = app.add_subcommand("module", "construct a module and report dimensions");
  add_io(mod, true);
  auto* verify = app.add_subcommand("verify", "run a named verification check");
  add_io(verify, false);
  verify->add_option("--check", check, "T1|tw|max|l1|remark")
      ->check(CLI::IsMember({"T1", "t1", "tw", "max", "l1", "remark"}));
  verify->add_flag("--timing", timing, "include wall-clock seconds in the report");
  auto* prop = app.add_subcommand("proptest", "randomized property suites");
  prop->add_option("--seed", seed, "RNG seed");
  prop->add_option("--trials", trials, "trials per property");
  prop->add_option("--out", out_path, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (roots->parsed())
      return run_roots(load_instance(instance), height > 0 ? height : 6, format, out_path);
    if (ideal->parsed()) return run_ideal(load_instance(instance), format, out_path);
    if (chr->parsed())
      return run_char(load_instance(instance), height > 0 ? height : 5, format, out_path);
    if (mod->parsed()) return run_module(load_instance(instance), height, format, out_path);
    if (verify->parsed()) return run_verify(check, load_instance(instance), timing, out_path);
    if (prop->parsed()) return run_proptest(seed, trials, out_path);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return e.code() == Err::ResourceCap ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
