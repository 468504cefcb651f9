#include "weylforge/theorems.hpp"

#include <chrono>
#include <random>
#include <sstream>

namespace weylforge::theorems {

using hwdata::IdealSequence;
using hwdata::Psi;
using modeng::ExplicitModule;
using modeng::ModuleVector;
using modeng::PBWMonomial;
using modeng::QuotientModule;

bool VerificationReport::pass() const {
  for (const auto& it : items)
    if (!it.pass) return false;
  return true;
}

std::string VerificationReport::first_discrepancy() const {
  for (const auto& it : items)
    if (!it.pass) return it.name + ": " + it.detail;
  return "";
}

namespace {

class Stopwatch {
public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

private:
  std::chrono::steady_clock::time_point start_;
};

int height_of(const std::vector<int>& eta) {
  int h = 0;
  for (int x : eta) h += x;
  return h;
}

std::string weight_str(const Weight& w) { return w.str(); }

/// psi placing the whole weight at the first support point of the ideal.
Psi eval_psi(const Weight& lambda, const CofiniteIdeal& I) {
  require(!I.support().empty(), Err::InvalidInput, "need a nonunit ideal for psi");
  return hwdata::make_psi(lambda, I.support().front().point, I);
}

long max_standard_exponent(const Weight& lambda, rootsys::TablePtr table) {
  long n = 0;
  for (const auto& r : table->roots) n = std::max(n, hwdata::n_lambda_alpha(lambda, r));
  return n;
}

std::map<std::vector<int>, long> tensor_dims(const std::map<std::vector<int>, long>& a,
                                             const std::map<std::vector<int>, long>& b, int H) {
  std::map<std::vector<int>, long> out;
  for (const auto& [e1, d1] : a)
    for (const auto& [e2, d2] : b) {
      if (height_of(e1) + height_of(e2) > H) continue;
      std::vector<int> e(e1.size());
      for (size_t i = 0; i < e.size(); ++i) e[i] = e1[i] + e2[i];
      out[e] += d1 * d2;
    }
  return out;
}

CheckItem compare_dim_tables(const std::string& name, const std::map<std::vector<int>, long>& lhs,
                             const std::map<std::vector<int>, long>& rhs) {
  CheckItem item{name, true, ""};
  auto scan = [&](const std::map<std::vector<int>, long>& x,
                  const std::map<std::vector<int>, long>& y) {
    for (const auto& [eta, d] : x) {
      long other = 0;
      auto it = y.find(eta);
      if (it != y.end()) other = it->second;
      if (d != other) {
        std::string es;
        for (int v : eta) es += (es.empty() ? "" : ",") + std::to_string(v);
        item.pass = false;
        item.detail = "dimension mismatch at eta=(" + es + ")";
        return false;
      }
    }
    return true;
  };
  if (scan(lhs, rhs)) scan(rhs, lhs);
  return item;
}

}  // namespace

VerificationReport check_t1(const Weight& lambda, const CofiniteIdeal& I, const Weight& mu,
                            const CofiniteIdeal& J, rootsys::TablePtr table,
                            const T1Options& options) {
  Stopwatch clock;
  VerificationReport rep;
  rep.check = "T1";
  rep.instance = "lambda=" + weight_str(lambda) + " I=" + I.str() + " mu=" + weight_str(mu) +
                 " J=" + J.str() + " H=" + std::to_string(options.H) +
                 (options.seed_violation ? " [seeded violation]" : "");
  int H = options.H;

  // (i) formula level
  auto dimrep = charcalc::verify_t1_dimensions(lambda, I, mu, J, table, H);
  rep.items.push_back(
      {"character-level dimensions", dimrep.pass, dimrep.pass ? "" : dimrep.first_discrepancy});

  if (!options.brute_force) {
    rep.seconds = clock.seconds();
    return rep;
  }
  require(table->gcm.type == rootsys::GcmType::Finite, Err::UnsupportedType,
          "brute force requires finite type");
  require(table->gcm.rank <= 2, Err::ResourceCap, "brute force is capped at rank 2");
  require(H <= 6, Err::ResourceCap, "brute force is capped at H = 6");

  // (ii) brute-force module comparison
  auto psi1 = eval_psi(lambda, I);
  auto psi2 = eval_psi(mu, J);
  auto psi = hwdata::psi_add(psi1, psi2);
  auto B1 = commalg::quotient_algebra(
      commalg::power(I, static_cast<unsigned>(std::max(1L, max_standard_exponent(lambda, table)))));
  auto B2 = commalg::quotient_algebra(
      commalg::power(J, static_cast<unsigned>(std::max(1L, max_standard_exponent(mu, table)))));
  auto Bk = commalg::quotient_algebra(commalg::intersect(B1->ideal(), B2->ideal()));
  require(Bk->dim() <= 6, Err::ResourceCap,
          "brute force is capped at coefficient algebras of dimension 6");

  auto seq_k = hwdata::k_sequence(lambda, I, mu, J, table);
  BuildOptions kopts;
  if (options.seed_violation) kopts.drop_first_relation = true;
  QuotientModule Mk = modeng::build_M(table->gcm, psi, seq_k, Bk, H, kopts);

  QuotientModule M1 =
      modeng::build_M(table->gcm, psi1, hwdata::standard_sequence(lambda, I, table), B1, H);
  QuotientModule M2 =
      modeng::build_M(table->gcm, psi2, hwdata::standard_sequence(mu, J, table), B2, H);

  auto lhs = Mk.dims(H);
  auto rhs = tensor_dims(M1.dims(H), M2.dims(H), H);
  CheckItem dim_item = compare_dim_tables("module dimensions vs tensor", lhs, rhs);
  dim_item.tables.push_back({"combined module", lhs});
  dim_item.tables.push_back({"tensor of factors", rhs});
  rep.items.push_back(dim_item);
  rep.tables.push_back({"combined module", lhs});
  rep.tables.push_back({"tensor of factors", rhs});

  // (iii) surjection evidence: X_{-alpha} K_alpha annihilates v1 (x) v2
  ExplicitModule E1 = modeng::explicit_from_quotient(M1);
  ExplicitModule E2 = modeng::explicit_from_quotient(M2);
  ExplicitModule T = modeng::tensor_module(E1, E2, H);
  bool surj = true;
  std::string surj_detail;
  std::vector<int> eta0(table->gcm.rank, 0);
  for (size_t r = 0; r < table->roots.size() && surj; ++r) {
    if (table->roots[r].height > H) continue;
    int cr = T.chev->table()->find(table->roots[r].coords);
    for (int b : T.B->ideal_image_basis(seq_k.entries[r])) {
      auto out = T.apply(T.chev->lower_index(cr) * T.B->dim() + b, eta0, T.highest);
      bool zero = std::all_of(out.begin(), out.end(), [](const Rat& c) { return is_zero(c); });
      if (!zero) {
        surj = false;
        surj_detail = "relation fails at root #" + std::to_string(r);
        break;
      }
    }
  }
  rep.items.push_back({"highest-vector relations on the tensor", surj, surj_detail});
  rep.seconds = clock.seconds();
  return rep;
}

namespace {

/// Per-eta kernel of the surjection M -> W, as coordinate vectors over M's
/// quotient basis. M and W must share psi, B and letter order.
std::map<std::vector<int>, std::vector<std::vector<Rat>>> quotient_kernel(
    const QuotientModule& M, const QuotientModule& W, int H) {
  std::map<std::vector<int>, std::vector<std::vector<Rat>>> out;
  for (const auto& [eta, dm] : M.dims(H)) {
    if (dm == 0) continue;
    auto basis = M.quotient_basis(eta);
    std::vector<SparseVec> rows;  // equations: W-coords of each M-basis monomial
    long wrows = W.dim_at(eta);
    std::vector<std::vector<Rat>> cols;
    for (const auto& m : basis) {
      ModuleVector v;
      v[m] = 1;
      cols.push_back(wrows == 0 ? std::vector<Rat>(0) : W.quotient_coords(v));
    }
    for (long row = 0; row < wrows; ++row) {
      SparseVec eq;
      for (size_t col = 0; col < cols.size(); ++col)
        if (!is_zero(cols[col][row])) eq.emplace_back(static_cast<int>(col), cols[col][row]);
      if (!eq.empty()) rows.push_back(std::move(eq));
    }
    auto ker = kernel_basis(rows, static_cast<int>(basis.size()));
    if (!ker.empty()) out[eta] = std::move(ker);
  }
  return out;
}

}  // namespace

VerificationReport check_tw(const Weight& lambda, const CofiniteIdeal& I, const Weight& mu,
                            const CofiniteIdeal& J, int H, const TwOptions& options) {
  Stopwatch clock;
  VerificationReport rep;
  rep.check = "tw";
  rep.instance = "lambda=" + weight_str(lambda) + " I=" + I.str() + " mu=" + weight_str(mu) +
                 " J=" + J.str() + " H=" + std::to_string(H);
  require(commalg::coprime(I, J), Err::NotCoprime, "tw requires coprime ideals");
  require(H <= 6, Err::ResourceCap, "tw is capped at H = 6");
  for (const auto& s : I.support())
    require(s.exp == 1, Err::InvalidInput, "tw requires radical ideals");
  for (const auto& s : J.support())
    require(s.exp == 1, Err::InvalidInput, "tw requires radical ideals");

  int l = lambda.rank();
  auto gcm = [&] {
    // reconstruct the GCM from rank: callers pass weights over A1 or A2
    require(l == 1 || l == 2, Err::UnsupportedType, "tw runs at sl2 or A2 scale");
    return l == 1 ? rootsys::validate_gcm({{2}}, rootsys::GcmType::Finite)
                  : rootsys::validate_gcm({{2, -1}, {-1, 2}}, rootsys::GcmType::Finite);
  }();
  auto table = rootsys::positive_roots(gcm, 16);

  auto psi1 = eval_psi(lambda, I);
  auto psi2 = eval_psi(mu, J);
  auto psi = hwdata::psi_add(psi1, psi2);

  long n1 = std::max(1L, max_standard_exponent(lambda, table));
  long n2 = std::max(1L, max_standard_exponent(mu, table));
  auto B1 = commalg::quotient_algebra(commalg::power(I, static_cast<unsigned>(n1)));
  auto B2 = commalg::quotient_algebra(commalg::power(J, static_cast<unsigned>(n2)));
  // combined side: per-point jet orders from the factor weights; the
  // integrability audit certifies the quotient is the full Weyl module
  auto Bc = commalg::quotient_algebra(commalg::intersect(B1->ideal(), B2->ideal()));
  auto IJ = commalg::intersect(I, J);

  QuotientModule Wc = modeng::build_W(gcm, psi, IJ, Bc, H);
  QuotientModule W1 = modeng::build_W(gcm, psi1, I, B1, H);
  QuotientModule W2 = modeng::build_W(gcm, psi2, J, B2, H);
  rep.items.push_back({"integrability audit (combined)", Wc.audit().pass,
                       Wc.audit().pass ? Wc.audit().scope : Wc.audit().detail});
  rep.items.push_back({"integrability audit (factors)", W1.audit().pass && W2.audit().pass, ""});

  auto lhs = Wc.dims(H);
  auto rhs = tensor_dims(W1.dims(H), W2.dims(H), H);
  CheckItem dim_item = compare_dim_tables("graded dimensions vs tensor", lhs, rhs);
  dim_item.tables.push_back({"combined Weyl module", lhs});
  dim_item.tables.push_back({"tensor of factors", rhs});
  rep.items.push_back(dim_item);
  rep.tables.push_back({"combined Weyl module", lhs});
  rep.tables.push_back({"tensor of factors", rhs});

  if (options.ladder) {
    // replay the minimal-power ladder inside M1 (x) M2: v1 (x) f_i^k v2 lies
    // in the kernel of M1 (x) M2 -> W1 (x) W2 exactly from k = mu_i + 1 on
    QuotientModule M1 =
        modeng::build_M(gcm, psi1, hwdata::standard_sequence(lambda, I, table), B1, H);
    QuotientModule M2 =
        modeng::build_M(gcm, psi2, hwdata::standard_sequence(mu, J, table), B2, H);
    auto K2 = quotient_kernel(M2, W2, H);
    auto K1 = quotient_kernel(M1, W1, H);
    bool ladder_ok = true;
    std::string ladder_detail;
    for (int i = 0; i < l && ladder_ok; ++i) {
      std::vector<int> sc(l, 0);
      sc[i] = 1;
      int sr = table->find(sc);
      int n0 = mu.coroot_values[i] + 1;
      if (n0 > H) continue;
      // f_i^k v2 in M2 coordinates
      ModuleVector cur;
      cur[PBWMonomial{}] = 1;
      SparseVec one_comb;
      for (const auto& [b, c] : B2->one())
        one_comb.emplace_back(M2.algebra().gen(M2.algebra().chev().lower_index(sr), b), c);
      std::sort(one_comb.begin(), one_comb.end());
      for (int k = 1; k <= n0 && ladder_ok; ++k) {
        cur = M2.engine()->apply_comb(one_comb, cur);
        std::vector<int> eta = sc;
        for (int& x : eta) x *= k;
        std::vector<Rat> w2coords =
            cur.empty() ? std::vector<Rat>(M2.dim_at(eta), Rat(0)) : M2.quotient_coords(cur);
        // membership of v1 (x) (f^k v2) in K1 (x) M2 + M1 (x) K2 at eta:
        // since the first slot is the highest line, only the K2 part at eta
        // plus K1 at eta=0 (empty) matters; build the span over the block
        RowBasis span;
        auto k2 = K2.find(eta);
        if (k2 != K2.end())
          for (const auto& kerv : k2->second) {
            SparseVec sv;
            for (size_t t = 0; t < kerv.size(); ++t)
              if (!is_zero(kerv[t])) sv.emplace_back(static_cast<int>(t), kerv[t]);
            span.add(sv);
          }
        auto k1zero = K1.find(std::vector<int>(l, 0));
        bool v1_in_k1 = k1zero != K1.end() && !k1zero->second.empty();
        SparseVec target;
        for (size_t t = 0; t < w2coords.size(); ++t)
          if (!is_zero(w2coords[t])) target.emplace_back(static_cast<int>(t), w2coords[t]);
        bool inside = v1_in_k1 || span.contains(target);
        bool expect = k >= n0;
        if (inside != expect) {
          ladder_ok = false;
          ladder_detail = "ladder at i=" + std::to_string(i + 1) + ", k=" + std::to_string(k) +
                          (inside ? ": entered the kernel early" : ": missed the kernel");
        }
      }
    }
    rep.items.push_back({"minimal-power ladder", ladder_ok, ladder_detail});
  }
  rep.seconds = clock.seconds();
  return rep;
}

VerificationReport check_max(const std::vector<std::pair<std::vector<Rat>, Weight>>& points,
                             const rootsys::GeneralizedCartanMatrix& gcm, int H) {
  Stopwatch clock;
  VerificationReport rep;
  rep.check = "max";
  {
    std::ostringstream os;
    os << "k=" << points.size() << " lambdas=";
    for (const auto& [p, w] : points) os << w.str();
    os << " H=" << H;
    rep.instance = os.str();
  }
  require(!points.empty() && points.size() <= 3, Err::InvalidInput, "k must be 1..3");
  require(gcm.rank <= 2, Err::ResourceCap, "max is capped at rank 2");
  require(H <= 6, Err::ResourceCap, "max is capped at H = 6");
  auto table = rootsys::positive_roots(gcm, 16);

  // combined psi and ideal
  std::optional<Psi> psi;
  std::optional<CofiniteIdeal> Bc_ideal;
  std::optional<CofiniteIdeal> I;
  std::vector<QuotientModule> factors;
  std::map<std::vector<int>, long> tensor_table;
  for (const auto& [p, lam] : points) {
    auto mp = CofiniteIdeal::maximal(p);
    auto pi = hwdata::make_psi(lam, p, mp);
    psi = psi ? hwdata::psi_add(*psi, pi) : pi;
    I = I ? commalg::intersect(*I, mp) : mp;
    long n = std::max(1L, max_standard_exponent(lam, table));
    auto Bi_ideal = commalg::power(mp, static_cast<unsigned>(n));
    Bc_ideal = Bc_ideal ? commalg::intersect(*Bc_ideal, Bi_ideal) : Bi_ideal;
    auto Bi = commalg::quotient_algebra(Bi_ideal);
    factors.push_back(modeng::build_W(gcm, pi, mp, Bi, H));
    auto& f = factors.back();
    if (!f.audit().pass)
      rep.items.push_back({"factor integrability audit", false, f.audit().detail});
    tensor_table = factors.size() == 1 ? f.dims(H) : tensor_dims(tensor_table, f.dims(H), H);
  }
  auto Bc = commalg::quotient_algebra(*Bc_ideal);
  QuotientModule Wc = modeng::build_W(gcm, *psi, *I, Bc, H);
  rep.items.push_back({"integrability audit (combined)", Wc.audit().pass,
                       Wc.audit().pass ? Wc.audit().scope : Wc.audit().detail});

  auto lhs = Wc.dims(H);
  CheckItem dim_item = compare_dim_tables("graded dimensions vs tensor of factors", lhs,
                                          tensor_table);
  dim_item.tables.push_back({"combined Weyl module", lhs});
  dim_item.tables.push_back({"tensor of single-point Weyl modules", tensor_table});
  rep.items.push_back(dim_item);
  rep.tables.push_back({"combined Weyl module", lhs});
  rep.tables.push_back({"tensor of single-point Weyl modules", tensor_table});

  // evaluation-module cross-check: dims recorded, relation audit asserted
  ExplicitModule E = modeng::evaluation_module(gcm, *psi);
  auto audit = modeng::highest_vector_relations(E, *psi, *I);
  rep.items.push_back({"evaluation-module relation audit", audit.pass,
                       audit.pass ? "" : audit.failures.front()});
  rep.tables.push_back({"evaluation module", E.dims});
  long wtotal = Wc.total_dim(), etotal = E.total_dim();
  CheckItem note{"evaluation-module total dimension (recorded)", true,
                 "W total " + std::to_string(wtotal) + ", evaluation total " +
                     std::to_string(etotal)};
  rep.items.push_back(note);
  rep.seconds = clock.seconds();
  return rep;
}

VerificationReport check_l1(unsigned seed, int instances) {
  Stopwatch clock;
  VerificationReport rep;
  rep.check = "l1";
  rep.instance = "seed=" + std::to_string(seed) + " instances=" + std::to_string(instances);
  std::mt19937_64 rng(seed);
  auto gcm_a1 = rootsys::validate_gcm({{2}}, rootsys::GcmType::Finite);
  auto gcm_a2 = rootsys::validate_gcm({{2, -1}, {-1, 2}}, rootsys::GcmType::Finite);

  // the defining n = 0 case first
  {
    auto table = rootsys::positive_roots(gcm_a1, 8);
    Weight lam{{1}, {}};
    auto I = CofiniteIdeal::maximal({Rat(0)});
    auto psi = eval_psi(lam, I);
    auto B = commalg::quotient_algebra(commalg::power(I, 3));
    auto M = modeng::build_M(gcm_a1, psi, hwdata::standard_sequence(lam, I, table), B, 4);
    bool ok = modeng::verify_nested_annihilation(M, 0, {}, {});
    rep.items.push_back({"defining case n=0", ok, ""});
  }

  int done = 0;
  while (done < instances) {
    bool use_a2 = (rng() % 2) == 0;
    const auto& gcm = use_a2 ? gcm_a2 : gcm_a1;
    auto table = rootsys::positive_roots(gcm, 8);
    Weight lam;
    lam.coroot_values.resize(gcm.rank);
    for (auto& x : lam.coroot_values) x = 1 + static_cast<int>(rng() % 2);
    auto I = CofiniteIdeal::maximal({Rat(static_cast<long>(rng() % 3))});
    int n = static_cast<int>(rng() % 3);
    int beta = static_cast<int>(rng() % table->roots.size());
    std::vector<int> gammas;
    for (int k = 0; k < n; ++k) {
      // any root below beta in the root order
      std::vector<int> below;
      for (size_t r = 0; r < table->roots.size(); ++r)
        if (rootsys::root_leq(table->roots[r], table->roots[beta]))
          below.push_back(static_cast<int>(r));
      gammas.push_back(below[rng() % below.size()]);
    }
    int word_height = table->roots[beta].height;
    for (int g : gammas) word_height += table->roots[g].height;
    int H = word_height;
    if (H > (use_a2 ? 4 : 6)) continue;
    // B must keep the image of I_beta^{n+1} visible
    long nmax = max_standard_exponent(lam, table);
    auto B = commalg::quotient_algebra(
        commalg::power(I, static_cast<unsigned>(nmax * (n + 1) + 1)));
    auto psi = eval_psi(lam, I);
    auto M = modeng::build_M(gcm, psi, hwdata::standard_sequence(lam, I, table), B, H);
    std::vector<SparseVec> coeffs;
    for (int k = 0; k < n; ++k) {
      int b = static_cast<int>(rng() % B->dim());
      coeffs.push_back(SparseVec{{b, Rat(1 + static_cast<long>(rng() % 2))}});
    }
    bool ok = modeng::verify_nested_annihilation(M, beta, gammas, coeffs);
    if (!ok) {
      rep.items.push_back({"instance #" + std::to_string(done + 1), false,
                           "nested annihilation failed"});
      break;
    }
    ++done;
  }
  if (done == instances)
    rep.items.push_back({"generated instances", true, std::to_string(done) + " instances"});
  rep.seconds = clock.seconds();
  return rep;
}

bool check_power_nilpotency(const modeng::QuotientModule& w_state, int i, const SparseVec& f) {
  const auto& cb = w_state.algebra().chev();
  require(i >= 1 && i <= cb.rank(), Err::IndexOutOfRange, "simple root index");
  std::vector<int> sc(cb.rank(), 0);
  sc[i - 1] = 1;
  int sr = cb.table()->find(sc);
  int power = w_state.psi().weight.coroot_values[i - 1] + 1;
  require(power <= w_state.working_height(), Err::WeightOverflow,
          "power relation exceeds the working height");
  SparseVec comb;
  for (const auto& [b, c] : f)
    comb.emplace_back(w_state.algebra().gen(cb.lower_index(sr), b), c);
  std::sort(comb.begin(), comb.end());
  ModuleVector v;
  v[PBWMonomial{}] = 1;
  for (int k = 0; k < power && !v.empty(); ++k) v = w_state.engine()->apply_comb(comb, v);
  return w_state.in_closure(v);
}

VerificationReport check_remark(const Weight& lambda, const CofiniteIdeal& I, int H) {
  Stopwatch clock;
  VerificationReport rep;
  rep.check = "remark";
  rep.instance = "lambda=" + weight_str(lambda) + " I=" + I.str() + " H=" + std::to_string(H);
  int l = lambda.rank();
  auto gcm = l == 1 ? rootsys::validate_gcm({{2}}, rootsys::GcmType::Finite)
                    : rootsys::validate_gcm({{2, -1}, {-1, 2}}, rootsys::GcmType::Finite);
  auto table = rootsys::positive_roots(gcm, 16);
  long n = std::max(1L, max_standard_exponent(lambda, table));
  auto B = commalg::quotient_algebra(commalg::power(I, static_cast<unsigned>(n)));
  auto psi = eval_psi(lambda, I);
  auto W = modeng::build_W(gcm, psi, I, B, H);
  for (int i = 1; i <= l; ++i) {
    // f = 1 (coincides with the defining power relation) and f = each basis
    // element of B
    bool ok = check_power_nilpotency(W, i, B->one());
    rep.items.push_back({"f = 1, i = " + std::to_string(i), ok, ""});
    for (int b = 0; b < B->dim(); ++b) {
      bool okb = check_power_nilpotency(W, i, SparseVec{{b, Rat(1)}});
      rep.items.push_back(
          {"f = basis#" + std::to_string(b) + ", i = " + std::to_string(i), okb, ""});
    }
  }
  rep.seconds = clock.seconds();
  return rep;
}

}  // namespace weylforge::theorems
