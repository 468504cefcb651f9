#include "weylforge/modeng.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>

namespace weylforge::modeng {

MapAlgebra::MapAlgebra(ChevalleyPtr chev, QuotientPtr B) : chev_(std::move(chev)), B_(std::move(B)) {
  require(chev_ != nullptr && B_ != nullptr, Err::InvalidInput, "null algebra component");
}

SparseVec MapAlgebra::bracket_gens(int g1, int g2) const {
  const LieComb& lie = chev_->bracket(gen_lie(g1), gen_lie(g2));
  if (lie.empty()) return {};
  SparseVec bprod = B_->mul_basis(gen_b(g1), gen_b(g2));
  if (bprod.empty()) return {};
  SparseVec out;
  for (const auto& [lk, lc] : lie)
    for (const auto& [bk, bc] : bprod) out.emplace_back(gen(lk, bk), lc * bc);
  std::sort(out.begin(), out.end());
  return out;
}

void mv_axpy(ModuleVector& acc, const Rat& c, const ModuleVector& v) {
  if (is_zero(c)) return;
  for (const auto& [m, x] : v) {
    auto it = acc.find(m);
    if (it == acc.end()) {
      acc.emplace(m, c * x);
    } else {
      it->second += c * x;
      if (is_zero(it->second)) acc.erase(it);
    }
  }
}

StraighteningEngine::StraighteningEngine(MapAlgebra algebra, Psi psi, PBWOrder order)
    : alg_(std::move(algebra)), psi_(std::move(psi)), order_(order) {
  for (const auto& s : psi_.evaluation_data)
    require(alg_.B().ideal().order_at(s.point) >= 1, Err::IncompatibleCoefficients,
            "psi evaluation point " + point_str(s.point) +
                " is not a support point of the coefficient algebra");
  int m = alg_.chev().num_pos(), dB = alg_.dimB();
  const auto& roots = alg_.chev().table()->roots;
  std::vector<int> ids(m * dB);
  for (size_t k = 0; k < ids.size(); ++k) ids[k] = static_cast<int>(k);
  if (order_ == PBWOrder::HeightRevLex) {
    std::stable_sort(ids.begin(), ids.end(), [&](int a, int b) {
      int ra = a / dB, rb = b / dB;
      if (roots[ra].height != roots[rb].height) return roots[ra].height < roots[rb].height;
      if (roots[ra].coords != roots[rb].coords) return roots[ra].coords > roots[rb].coords;
      return a % dB > b % dB;
    });
  }
  rank_.resize(ids.size());
  for (size_t k = 0; k < ids.size(); ++k) rank_[ids[k]] = static_cast<int>(k);
}

Rat StraighteningEngine::psi_cartan(int i, int b) const {
  Rat s(0);
  for (const auto& ev : psi_.evaluation_data)
    s += alg_.B().value_at(b, ev.point) * ev.weight.coroot_values.at(i);
  return s;
}

std::vector<int> StraighteningEngine::eta_of(const PBWMonomial& m) const {
  const auto& roots = alg_.chev().table()->roots;
  std::vector<int> eta(alg_.chev().rank(), 0);
  for (const auto& [L, e] : m) {
    const auto& c = roots[L / alg_.dimB()].coords;
    for (size_t i = 0; i < c.size(); ++i) eta[i] += e * c[i];
  }
  return eta;
}

int StraighteningEngine::height_of(const PBWMonomial& m) const {
  const auto& roots = alg_.chev().table()->roots;
  int h = 0;
  for (const auto& [L, e] : m) h += e * roots[L / alg_.dimB()].height;
  return h;
}

const ModuleVector& StraighteningEngine::apply_gen(int g, const PBWMonomial& m) {
  std::lock_guard<std::mutex> lock(memo_mutex_);
  return apply_gen_locked(g, m);
}

const ModuleVector& StraighteningEngine::apply_gen_locked(int g, const PBWMonomial& m) {
  auto key = std::make_pair(g, m);
  auto hit = memo_.find(key);
  if (hit != memo_.end()) return hit->second;
  require(++depth_ < 60000, Err::Internal, "straightening recursion too deep");

  ModuleVector out;
  const auto& cb = alg_.chev();
  int lie = alg_.gen_lie(g), b = alg_.gen_b(g);
  if (m.empty()) {
    if (cb.is_lowering(lie)) {
      out[PBWMonomial{{letter(cb.root_of(lie), b), 1}}] = 1;
    } else if (cb.is_cartan(lie)) {
      Rat s = psi_cartan(lie - cb.num_pos(), b);
      if (!is_zero(s)) out[PBWMonomial{}] = s;
    }
    // raising annihilates the vacuum
  } else {
    int L0 = m.front().first;
    PBWMonomial rest = m;
    if (rest.front().second == 1)
      rest.erase(rest.begin());
    else
      rest.front().second -= 1;
    bool lower = cb.is_lowering(lie);
    int Lg = lower ? letter(cb.root_of(lie), b) : -1;
    if (lower && letter_rank(Lg) <= letter_rank(L0)) {
      PBWMonomial merged = m;
      if (merged.front().first == Lg)
        merged.front().second += 1;
      else
        merged.insert(merged.begin(), {Lg, 1});
      out[merged] = 1;
    } else {
      // g u m' = u (g m') + [g, u] m'
      int gL0 = gen_of_letter(L0);
      const ModuleVector head = apply_gen_locked(g, rest);
      for (const auto& [mk, ck] : head) mv_axpy(out, ck, apply_gen_locked(gL0, mk));
      for (const auto& [g2, c2] : alg_.bracket_gens(g, gL0))
        mv_axpy(out, c2, apply_gen_locked(g2, rest));
    }
  }
  --depth_;
  return memo_.emplace(std::move(key), std::move(out)).first->second;
}

ModuleVector StraighteningEngine::apply_gen(int g, const ModuleVector& v) {
  ModuleVector out;
  for (const auto& [m, c] : v) mv_axpy(out, c, apply_gen(g, m));
  return out;
}

ModuleVector StraighteningEngine::apply_comb(const SparseVec& gens, const ModuleVector& v) {
  ModuleVector out;
  for (const auto& [g, c] : gens) {
    ModuleVector t = apply_gen(g, v);
    mv_axpy(out, c, t);
  }
  return out;
}

namespace {

long env_max_dim() {
  if (const char* s = std::getenv("WEYLFORGE_MAX_DIM")) {
    long v = std::atol(s);
    if (v > 0) return v;
  }
  return 20000;
}

int height_of_eta(const std::vector<int>& eta) {
  int h = 0;
  for (int x : eta) h += x;
  return h;
}

// every lattice point of Q_+ with height <= maxH, in height-ascending order
void enumerate_etas(int rank, int maxH, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> eta(rank, 0);
  for (int h = 0; h <= maxH; ++h) {
    std::function<void(int, int)> rec = [&](int pos, int target) {
      if (pos == rank - 1) {
        eta[pos] = target;
        fn(eta);
        return;
      }
      for (int v = 0; v <= target; ++v) {
        eta[pos] = v;
        rec(pos + 1, target - v);
      }
    };
    rec(0, h);
  }
}

}  // namespace

/// Ambient bases per weight space plus the relation-closure row spaces.
class ClosureState {
public:
  struct Space {
    std::vector<PBWMonomial> monos;
    std::map<PBWMonomial, int> index;
    RowBasis rows;
    long dim() const { return static_cast<long>(monos.size()) - rows.rank(); }
  };

  ClosureState(EnginePtr engine, int H_work, long max_dim)
      : engine_(std::move(engine)), H_work_(H_work), max_dim_(max_dim) {
    const auto& cb = engine_->algebra().chev();
    room_.assign(H_work_ + 1, 0);
    enumerate_etas(cb.rank(), H_work_, [&](const std::vector<int>& eta) {
      Space sp;
      enumerate_monomials(eta, sp.monos);
      require(static_cast<long>(sp.monos.size()) <= max_dim_, Err::ResourceCap,
              "weight space exceeds the monomial cap (" + std::to_string(sp.monos.size()) +
                  " > " + std::to_string(max_dim_) + ")");
      std::sort(sp.monos.begin(), sp.monos.end());
      for (size_t k = 0; k < sp.monos.size(); ++k) sp.index[sp.monos[k]] = static_cast<int>(k);
      room_[height_of_eta(eta)] += static_cast<long>(sp.monos.size());
      spaces_.emplace(eta, std::move(sp));
    });
  }

  int working_height() const { return H_work_; }
  const std::map<std::vector<int>, Space>& spaces() const { return spaces_; }

  const Space* find(const std::vector<int>& eta) const {
    auto it = spaces_.find(eta);
    return it == spaces_.end() ? nullptr : &it->second;
  }

  SparseVec to_sparse(const Space& sp, const ModuleVector& v) const {
    SparseVec out;
    for (const auto& [m, c] : v) {
      auto it = sp.index.find(m);
      require(it != sp.index.end(), Err::Internal, "monomial missing from its weight space");
      out.emplace_back(it->second, c);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  bool add_row(const ModuleVector& v) {
    if (v.empty()) return false;
    std::vector<int> eta = engine_->eta_of(v.begin()->first);
    auto it = spaces_.find(eta);
    require(it != spaces_.end(), Err::Internal, "row outside the working height");
    Space& sp = it->second;
    if (sp.rows.rank() == static_cast<int>(sp.monos.size())) return false;
    bool grew = sp.rows.add(to_sparse(sp, v));
    if (grew) room_[height_of_eta(eta)] -= 1;
    return grew;
  }

  bool in_closure(const ModuleVector& v) const {
    if (v.empty()) return true;
    std::vector<int> eta = engine_->eta_of(v.begin()->first);
    const Space* sp = find(eta);
    require(sp != nullptr, Err::WeightOverflow, "vector beyond the working height");
    return sp->rows.contains(to_sparse(*sp, v));
  }

  /// Two-phase submodule closure from the given relation vectors.
  void close(const std::vector<ModuleVector>& relations) {
    const auto& cb = engine_->algebra().chev();
    int dB = engine_->algebra().dimB();
    // phase 1: close under simple raising currents and Cartan currents
    std::vector<ModuleVector> p1;
    std::map<std::vector<int>, RowBasis> p1span;
    auto p1_add = [&](const ModuleVector& v) {
      if (v.empty()) return false;
      std::vector<int> eta = engine_->eta_of(v.begin()->first);
      auto it = spaces_.find(eta);
      require(it != spaces_.end(), Err::Internal, "phase-1 vector outside working height");
      if (!p1span[eta].add(to_sparse(it->second, v))) return false;
      p1.push_back(v);
      return true;
    };
    for (const auto& r : relations) p1_add(r);
    std::vector<int> simple_roots;
    for (int i = 0; i < cb.rank(); ++i) {
      std::vector<int> c(cb.rank(), 0);
      c[i] = 1;
      simple_roots.push_back(cb.table()->find(c));
    }
    for (size_t head = 0; head < p1.size(); ++head) {
      ModuleVector s = p1[head];
      for (int i = 0; i < cb.rank(); ++i)
        for (int b = 0; b < dB; ++b) {
          p1_add(engine_->apply_gen(engine_->algebra().gen(cb.raise_index(simple_roots[i]), b), s));
          p1_add(engine_->apply_gen(engine_->algebra().gen(cb.cartan_index(i), b), s));
        }
    }
    // phase 2: span by normalized lowering monomials within the height budget
    const auto& roots = cb.table()->roots;
    int nletters = cb.num_pos() * dB;
    std::function<void(const ModuleVector&, int, int)> dfs = [&](const ModuleVector& v,
                                                                 int max_rank, int ht) {
      add_row(v);
      bool has_room = false;
      for (int h = ht + 1; h <= H_work_ && !has_room; ++h) has_room = room_[h] > 0;
      if (!has_room) return;
      for (int L = 0; L < nletters; ++L) {
        if (engine_->letter_rank(L) > max_rank) continue;
        int rh = roots[L / dB].height;
        if (ht + rh > H_work_) continue;
        ModuleVector child = engine_->apply_gen(engine_->gen_of_letter(L), v);
        if (child.empty()) continue;
        dfs(child, engine_->letter_rank(L), ht + rh);
      }
    };
    for (const auto& s : p1)
      dfs(s, nletters, engine_->height_of(s.begin()->first));
  }

private:
  friend class QuotientModule;
  EnginePtr engine_;
  int H_work_;
  long max_dim_;
  std::map<std::vector<int>, Space> spaces_;
  std::vector<long> room_;

  void enumerate_monomials(const std::vector<int>& eta, std::vector<PBWMonomial>& out) const {
    const auto& cb = engine_->algebra().chev();
    int dB = engine_->algebra().dimB();
    const auto& roots = cb.table()->roots;
    PBWMonomial cur;
    std::vector<int> rem = eta;
    std::function<void(int)> rec = [&](int L) {
      bool zero = std::all_of(rem.begin(), rem.end(), [](int x) { return x == 0; });
      if (L == cb.num_pos() * dB) {
        if (zero) {
          PBWMonomial m = cur;
          std::sort(m.begin(), m.end(), [&](const auto& a, const auto& b) {
            return engine_->letter_rank(a.first) < engine_->letter_rank(b.first);
          });
          out.push_back(std::move(m));
        }
        return;
      }
      const auto& c = roots[L / dB].coords;
      int emax = -1;  // max exponent keeping rem nonnegative
      bool unbounded = true;
      for (size_t i = 0; i < c.size(); ++i)
        if (c[i] > 0) {
          int q = rem[i] / c[i];
          emax = unbounded ? q : std::min(emax, q);
          unbounded = false;
        }
      if (unbounded) emax = 0;
      for (int e = 0; e <= emax; ++e) {
        if (e > 0) {
          cur.push_back({L, e});
          for (size_t i = 0; i < c.size(); ++i) rem[i] -= e * c[i];
        }
        rec(L + 1);
        if (e > 0) {
          for (size_t i = 0; i < c.size(); ++i) rem[i] += e * c[i];
          cur.pop_back();
        }
      }
    };
    rec(0);
  }
};

const MapAlgebra& QuotientModule::algebra() const { return engine_->algebra(); }

long QuotientModule::dim_at(const std::vector<int>& eta) const {
  if (height_of_eta(eta) > H_) return 0;
  const auto* sp = closure_->find(eta);
  return sp ? sp->dim() : 0;
}

std::map<std::vector<int>, long> QuotientModule::dims(int maxH) const {
  require(maxH <= H_, Err::InvalidInput, "dimension table beyond the declared height");
  std::map<std::vector<int>, long> out;
  enumerate_etas(algebra().chev().rank(), maxH,
                 [&](const std::vector<int>& eta) { out[eta] = dim_at(eta); });
  return out;
}

long QuotientModule::total_dim() const {
  long t = 0;
  for (const auto& [eta, d] : dims(H_)) t += d;
  return t;
}

bool QuotientModule::complete() const {
  for (const auto& [eta, sp] : closure_->spaces())
    if (height_of_eta(eta) == H_ && sp.dim() != 0) return false;
  return true;
}

const std::vector<PBWMonomial>& QuotientModule::ambient_basis(const std::vector<int>& eta) const {
  const auto* sp = closure_->find(eta);
  require(sp != nullptr, Err::WeightOverflow, "weight space beyond the working height");
  return sp->monos;
}

std::vector<PBWMonomial> QuotientModule::quotient_basis(const std::vector<int>& eta) const {
  const auto* sp = closure_->find(eta);
  require(sp != nullptr, Err::WeightOverflow, "weight space beyond the working height");
  std::vector<PBWMonomial> out;
  for (size_t k = 0; k < sp->monos.size(); ++k)
    if (!sp->rows.is_pivot(static_cast<int>(k))) out.push_back(sp->monos[k]);
  return out;
}

bool QuotientModule::in_closure(const ModuleVector& v) const { return closure_->in_closure(v); }

std::vector<Rat> QuotientModule::quotient_coords(const ModuleVector& v) const {
  require(!v.empty(), Err::InvalidInput, "empty vector has no weight space");
  std::vector<int> eta = engine_->eta_of(v.begin()->first);
  const auto* sp = closure_->find(eta);
  require(sp != nullptr, Err::WeightOverflow, "vector beyond the working height");
  SparseVec res = sp->rows.reduce(closure_->to_sparse(*sp, v));
  std::vector<int> col_of(sp->monos.size(), -1);
  int q = 0;
  for (size_t k = 0; k < sp->monos.size(); ++k)
    if (!sp->rows.is_pivot(static_cast<int>(k))) col_of[k] = q++;
  std::vector<Rat> out(q, Rat(0));
  for (const auto& [idx, c] : res) {
    require(col_of[idx] >= 0, Err::Internal, "residual hit a pivot column");
    out[col_of[idx]] = c;
  }
  return out;
}

ModuleVector QuotientModule::act(int lie_index, int b, const ModuleVector& v) const {
  ModuleVector out = engine_->apply_gen(algebra().gen(lie_index, b), v);
  if (!out.empty()) {
    int h = engine_->height_of(out.begin()->first);
    require(h <= H_work_, Err::WeightOverflow,
            "action result at height " + std::to_string(h) + " exceeds the bound " +
                std::to_string(H_work_));
  }
  return out;
}

namespace {

struct BuildInputs {
  ChevalleyPtr chev;
  EnginePtr engine;
  std::vector<ModuleVector> relations;
};

/// Relation vectors (X_{-beta} tensor a) v for every table root of height
/// <= H_work and every a in the image basis of I_beta.
void sequence_relations(const IdealSequence& seq, const MapAlgebra& alg, int H_work,
                        std::vector<ModuleVector>& out) {
  const auto& cb = alg.chev();
  const auto& roots = cb.table()->roots;
  require(seq.table->gcm == cb.table()->gcm, Err::InvalidInput, "sequence on a different algebra");
  // the sequence must cover all positive roots
  require(seq.table->roots.size() == roots.size(), Err::InvalidInput,
          "ideal sequence must cover all positive roots (increase its height bound)");
  for (size_t r = 0; r < roots.size(); ++r) {
    if (roots[r].height > H_work) continue;
    int seq_idx = seq.table->find(roots[r].coords);
    require(seq_idx >= 0, Err::Internal, "root missing from sequence table");
    for (int b : alg.B().ideal_image_basis(seq.at(seq_idx))) {
      ModuleVector v;
      v[PBWMonomial{{static_cast<int>(r) * alg.dimB() + b, 1}}] = 1;
      out.push_back(std::move(v));
    }
  }
}

}  // namespace

class ModuleBuilder {
 public:
  static QuotientModule finish_build(const Psi& psi, std::optional<IdealSequence> seq,
                                     EnginePtr engine, int H, int H_work,
                                     std::vector<ModuleVector> relations,
                                     const BuildOptions& options) {
  QuotientModule qm;
  qm.psi_ = psi;
  qm.H_ = H;
  qm.H_work_ = H_work;
  qm.table_ = engine->algebra().chev().table();
  qm.engine_ = engine;
  qm.seq_ = std::move(seq);
  qm.relation_count_ = static_cast<long>(relations.size());
  qm.order_note_ = (options.order == PBWOrder::HeightLex)
                       ? "letters ordered by (root height, root lex, B index)"
                       : "letters ordered by (root height, reverse root lex, reverse B index)";
  long cap = options.max_space_dim > 0 ? options.max_space_dim : env_max_dim();
  qm.closure_ = std::make_shared<ClosureState>(engine, H_work, cap);
  qm.closure_->close(relations);
  return qm;
  }

  static void run_integrability_audit(QuotientModule& qm, const BuildOptions& options,
                                      const std::vector<ModuleVector>& relations);
};

QuotientModule build_M(const rootsys::GeneralizedCartanMatrix& gcm, const Psi& psi,
                       const std::optional<IdealSequence>& seq, QuotientPtr B, int H,
                       const BuildOptions& options) {
  require(H >= 1, Err::InvalidInput, "height bound must be >= 1");
  require(!psi.evaluation_data.empty() && hwdata::psi_consistency(psi), Err::InvalidInput,
          "module construction requires a consistent evaluation-form psi");
  auto chev = ChevalleyBasis::build(gcm);
  auto engine = std::make_shared<StraighteningEngine>(MapAlgebra(chev, B), psi, options.order);
  std::vector<ModuleVector> relations;
  if (seq.has_value()) {
    auto rep = hwdata::validate_sequence(*seq);
    require(rep.pass, Err::InvalidInput,
            "ideal sequence invalid: " + (rep.violations.empty() ? "" : rep.violations.front()));
    sequence_relations(*seq, engine->algebra(), H, relations);
  }
  if (options.drop_first_relation && !relations.empty()) relations.erase(relations.begin());
  return ModuleBuilder::finish_build(psi, seq, engine, H, H, std::move(relations), options);
}

namespace {

SparseVec lowering_unit_comb(const MapAlgebra& alg, int root_idx) {
  SparseVec gens;
  for (const auto& [b, c] : alg.B().one())
    gens.emplace_back(alg.gen(alg.chev().lower_index(root_idx), b), c);
  std::sort(gens.begin(), gens.end());
  return gens;
}

}  // namespace

void ModuleBuilder::run_integrability_audit(QuotientModule& qm, const BuildOptions& options,
                                            const std::vector<ModuleVector>& relations) {
  const auto& cb = qm.algebra().chev();
  const Weight& lambda = qm.psi().weight;
  bool full = options.audit == 2 || cb.rank() == 1;
  int ht_cap = full ? qm.height_bound() : std::min(qm.height_bound(), 2);
  qm.audit_.ran = true;
  qm.audit_.scope = full ? "all retained basis vectors"
                         : "retained basis vectors of height <= " + std::to_string(ht_cap);

  // collect audited vectors and the height the extended closure must reach
  std::vector<std::pair<std::vector<int>, PBWMonomial>> targets;
  int H_need = qm.working_height();
  int lam_max = 0;
  for (int i = 0; i < cb.rank(); ++i) lam_max = std::max(lam_max, lambda.coroot_values[i]);
  std::map<std::vector<int>, long> table = qm.dims(ht_cap);
  for (const auto& [eta, d] : table) {
    if (d == 0) continue;
    int ht = height_of_eta(eta);
    for (const auto& m : qm.quotient_basis(eta)) targets.push_back({eta, m});
    H_need = std::max(H_need, ht + lam_max + 2 * ht + 1);
  }

  EnginePtr engine = qm.engine();
  std::shared_ptr<ClosureState> state = qm.closure_;
  if (H_need > qm.working_height()) {
    long cap = options.max_space_dim > 0 ? options.max_space_dim : env_max_dim();
    state = std::make_shared<ClosureState>(engine, H_need, cap);
    state->close(relations);
  }
  std::vector<int> simple_roots;
  for (int i = 0; i < cb.rank(); ++i) {
    std::vector<int> c(cb.rank(), 0);
    c[i] = 1;
    simple_roots.push_back(cb.table()->find(c));
  }
  for (const auto& [eta, mono] : targets) {
    int ht = height_of_eta(eta);
    for (int i = 0; i < cb.rank(); ++i) {
      int power = lambda.coroot_values[i] + 2 * ht + 1;
      ModuleVector v;
      v[mono] = 1;
      SparseVec comb = lowering_unit_comb(qm.algebra(), simple_roots[i]);
      for (int k = 0; k < power && !v.empty(); ++k) v = engine->apply_comb(comb, v);
      if (!state->in_closure(v)) {
        qm.audit_.pass = false;
        qm.audit_.detail = "lowering current not nilpotent at a retained vector (eta height " +
                           std::to_string(ht) + ", i = " + std::to_string(i + 1) + ")";
        return;
      }
    }
  }
}

QuotientModule build_W(const rootsys::GeneralizedCartanMatrix& gcm, const Psi& psi,
                       const CofiniteIdeal& I, QuotientPtr B, int H, const BuildOptions& options) {
  require(H >= 1, Err::InvalidInput, "height bound must be >= 1");
  require(!psi.evaluation_data.empty() && hwdata::psi_consistency(psi), Err::InvalidInput,
          "module construction requires a consistent evaluation-form psi");
  const Weight& lambda = psi.weight;
  require(lambda.dominant(), Err::NotDominant, "Weyl modules need a dominant highest weight");
  auto chev = ChevalleyBasis::build(gcm);
  auto engine = std::make_shared<StraighteningEngine>(MapAlgebra(chev, B), psi, options.order);

  IdealSequence seq = hwdata::standard_sequence(lambda, I, chev->table());
  int H_work = H;
  for (int i = 0; i < chev->rank(); ++i)
    H_work = std::max(H_work, lambda.coroot_values[i] + 1);

  std::vector<ModuleVector> relations;
  sequence_relations(seq, engine->algebra(), H_work, relations);
  std::vector<int> simple_roots;
  for (int i = 0; i < chev->rank(); ++i) {
    std::vector<int> c(chev->rank(), 0);
    c[i] = 1;
    simple_roots.push_back(chev->table()->find(c));
  }
  for (int i = 0; i < chev->rank(); ++i) {
    ModuleVector v;
    v[PBWMonomial{}] = 1;
    SparseVec comb = lowering_unit_comb(engine->algebra(), simple_roots[i]);
    for (int k = 0; k <= lambda.coroot_values[i]; ++k) v = engine->apply_comb(comb, v);
    require(!v.empty(), Err::Internal, "power relation vanished in the ambient module");
    relations.push_back(std::move(v));
  }

  QuotientModule qm = ModuleBuilder::finish_build(psi, seq, engine, H, H_work, relations, options);
  if (options.audit != 0) ModuleBuilder::run_integrability_audit(qm, options, relations);
  return qm;
}

// ---- explicit modules ----

long ExplicitModule::dim_at(const std::vector<int>& eta) const {
  auto it = dims.find(eta);
  return it == dims.end() ? 0 : it->second;
}

long ExplicitModule::total_dim() const {
  long t = 0;
  for (const auto& [eta, d] : dims) t += d;
  return t;
}

std::vector<Rat> ExplicitModule::apply(int gen, const std::vector<int>& eta,
                                       const std::vector<Rat>& coords) const {
  const auto& cb = *chev;
  int lie = gen / B->dim();
  std::vector<int> target = eta;
  int r = cb.root_of(lie);
  if (cb.is_lowering(lie))
    for (size_t i = 0; i < target.size(); ++i) target[i] += cb.table()->roots[r].coords[i];
  else if (cb.is_raising(lie))
    for (size_t i = 0; i < target.size(); ++i) target[i] -= cb.table()->roots[r].coords[i];
  long td = dim_at(target);
  std::vector<Rat> out(td, Rat(0));
  if (td == 0) return out;
  auto git = action.find(gen);
  if (git == action.end()) return out;
  auto mit = git->second.find(eta);
  if (mit == git->second.end()) return out;
  const Mat& M = mit->second;
  for (size_t row = 0; row < M.size(); ++row)
    for (size_t col = 0; col < coords.size(); ++col) out[row] += M[row][col] * coords[col];
  return out;
}

ExplicitModule explicit_from_quotient(const QuotientModule& qm) {
  ExplicitModule em;
  em.chev = qm.algebra().chev_ptr();
  em.B = qm.algebra().B_ptr();
  em.lambda = qm.psi().weight;
  em.height_bound = qm.height_bound();
  em.dims = qm.dims(qm.height_bound());
  std::erase_if(em.dims, [](const auto& kv) { return kv.second == 0; });
  em.complete = qm.complete();
  const auto& cb = *em.chev;
  int dB = em.B->dim();
  for (const auto& [eta, d] : em.dims) {
    auto basis = qm.quotient_basis(eta);
    for (int lie = 0; lie < cb.dim(); ++lie) {
      // target height must stay within the declared bound for lowering
      int r = cb.root_of(lie);
      std::vector<int> target = eta;
      if (cb.is_lowering(lie)) {
        for (size_t i = 0; i < target.size(); ++i) target[i] += cb.table()->roots[r].coords[i];
        if (height_of_eta(target) > qm.height_bound()) continue;
      } else if (cb.is_raising(lie)) {
        bool neg = false;
        for (size_t i = 0; i < target.size(); ++i) {
          target[i] -= cb.table()->roots[r].coords[i];
          if (target[i] < 0) neg = true;
        }
        if (neg) continue;
      }
      for (int b = 0; b < dB; ++b) {
        int g = lie * dB + b;
        long td = qm.dim_at(target);
        if (td == 0) continue;
        Mat M(td, std::vector<Rat>(basis.size(), Rat(0)));
        bool nonzero = false;
        for (size_t col = 0; col < basis.size(); ++col) {
          ModuleVector v;
          v[basis[col]] = 1;
          ModuleVector w = qm.engine()->apply_gen(g, v);
          if (w.empty()) continue;
          std::vector<Rat> coords = qm.quotient_coords(w);
          for (size_t row = 0; row < coords.size(); ++row) {
            if (!is_zero(coords[row])) nonzero = true;
            M[row][col] = coords[row];
          }
        }
        if (nonzero) em.action[g][eta] = std::move(M);
      }
    }
  }
  // highest vector
  ModuleVector vac;
  vac[PBWMonomial{}] = 1;
  std::vector<int> eta0(cb.rank(), 0);
  if (em.dim_at(eta0) > 0) em.highest = qm.quotient_coords(vac);
  return em;
}

namespace {

/// Block layout of a tensor weight space: splits eta = eta1 + eta2 in eta1
/// map order, each block da(eta1) x db(eta2) in row-major (i, j) order.
struct TensorLayout {
  std::vector<std::tuple<std::vector<int>, std::vector<int>, long, long, long>> blocks;
  long total = 0;
};

TensorLayout tensor_layout(const ExplicitModule& a, const ExplicitModule& b,
                           const std::vector<int>& eta) {
  TensorLayout lay;
  for (const auto& [e1, d1] : a.dims) {
    std::vector<int> e2(eta.size());
    bool ok = true;
    for (size_t i = 0; i < eta.size(); ++i) {
      e2[i] = eta[i] - e1[i];
      if (e2[i] < 0) ok = false;
    }
    if (!ok) continue;
    long d2 = b.dim_at(e2);
    if (d1 == 0 || d2 == 0) continue;
    lay.blocks.push_back({e1, e2, d1, d2, lay.total});
    lay.total += d1 * d2;
  }
  return lay;
}

}  // namespace

ExplicitModule tensor_module(const ExplicitModule& a, const ExplicitModule& b, int H_out) {
  require(a.chev->table()->gcm == b.chev->table()->gcm, Err::AlgebraMismatch,
          "tensor factors over different Lie algebras");
  require(a.B->nvars() == b.B->nvars(), Err::AlgebraMismatch,
          "tensor factors over different coefficient algebras");
  ExplicitModule t;
  t.chev = a.chev;
  auto Bc = commalg::quotient_algebra(commalg::intersect(a.B->ideal(), b.B->ideal()));
  t.B = Bc;
  t.lambda = a.lambda + b.lambda;
  t.height_bound = H_out;
  std::vector<int> pa = commalg::projection(*Bc, *a.B);
  std::vector<int> pb = commalg::projection(*Bc, *b.B);

  enumerate_etas(a.chev->rank(), H_out, [&](const std::vector<int>& eta) {
    long d = tensor_layout(a, b, eta).total;
    if (d > 0) t.dims[eta] = d;
  });
  t.complete = true;
  for (const auto& [eta, d] : t.dims)
    if (height_of_eta(eta) == H_out && d != 0) t.complete = false;

  const auto& cb = *t.chev;
  int dBc = Bc->dim();
  for (const auto& [eta, d] : t.dims) {
    TensorLayout src = tensor_layout(a, b, eta);
    for (int lie = 0; lie < cb.dim(); ++lie) {
      std::vector<int> target = eta;
      int r = cb.root_of(lie);
      if (cb.is_lowering(lie)) {
        for (size_t i = 0; i < target.size(); ++i) target[i] += cb.table()->roots[r].coords[i];
        if (height_of_eta(target) > H_out) continue;
      } else if (cb.is_raising(lie)) {
        bool neg = false;
        for (size_t i = 0; i < target.size(); ++i) {
          target[i] -= cb.table()->roots[r].coords[i];
          if (target[i] < 0) neg = true;
        }
        if (neg) continue;
      }
      TensorLayout dst = tensor_layout(a, b, target);
      if (dst.total == 0) continue;
      auto dst_offset = [&](const std::vector<int>& e1, const std::vector<int>& e2) {
        for (const auto& [f1, f2, d1, d2, off] : dst.blocks)
          if (f1 == e1 && f2 == e2) return std::make_tuple(true, d1, d2, off);
        return std::make_tuple(false, 0L, 0L, 0L);
      };
      for (int bc = 0; bc < dBc; ++bc) {
        int g = lie * dBc + bc;
        Mat M(dst.total, std::vector<Rat>(src.total, Rat(0)));
        bool nonzero = false;
        for (const auto& [e1, e2, d1, d2, off] : src.blocks) {
          // act on the left slot
          if (pa[bc] >= 0) {
            int ga = lie * a.B->dim() + pa[bc];
            auto git = a.action.find(ga);
            const Mat* MA = nullptr;
            if (git != a.action.end()) {
              auto mit = git->second.find(e1);
              if (mit != git->second.end()) MA = &mit->second;
            }
            if (MA) {
              std::vector<int> f1 = e1;
              if (cb.is_lowering(lie))
                for (size_t i = 0; i < f1.size(); ++i) f1[i] += cb.table()->roots[r].coords[i];
              else if (cb.is_raising(lie))
                for (size_t i = 0; i < f1.size(); ++i) f1[i] -= cb.table()->roots[r].coords[i];
              auto [found, t1, t2, toff] = dst_offset(f1, e2);
              if (found) {
                for (long i2 = 0; i2 < t1; ++i2)
                  for (long i1 = 0; i1 < d1; ++i1) {
                    if (is_zero((*MA)[i2][i1])) continue;
                    for (long j = 0; j < d2; ++j) {
                      M[toff + i2 * t2 + j][off + i1 * d2 + j] += (*MA)[i2][i1];
                      nonzero = true;
                    }
                  }
              }
            }
          }
          // act on the right slot
          if (pb[bc] >= 0) {
            int gb = lie * b.B->dim() + pb[bc];
            auto git = b.action.find(gb);
            const Mat* MB = nullptr;
            if (git != b.action.end()) {
              auto mit = git->second.find(e2);
              if (mit != git->second.end()) MB = &mit->second;
            }
            if (MB) {
              std::vector<int> f2 = e2;
              if (cb.is_lowering(lie))
                for (size_t i = 0; i < f2.size(); ++i) f2[i] += cb.table()->roots[r].coords[i];
              else if (cb.is_raising(lie))
                for (size_t i = 0; i < f2.size(); ++i) f2[i] -= cb.table()->roots[r].coords[i];
              bool neg = std::any_of(f2.begin(), f2.end(), [](int x) { return x < 0; });
              if (!neg) {
                auto [found, t1, t2, toff] = dst_offset(e1, f2);
                if (found) {
                  for (long j2 = 0; j2 < t2; ++j2)
                    for (long j1 = 0; j1 < d2; ++j1) {
                      if (is_zero((*MB)[j2][j1])) continue;
                      for (long i = 0; i < d1; ++i) {
                        M[toff + i * t2 + j2][off + i * d2 + j1] += (*MB)[j2][j1];
                        nonzero = true;
                      }
                    }
                }
              }
            }
          }
        }
        if (nonzero) t.action[g][eta] = std::move(M);
      }
    }
  }
  // highest vector: block (0, 0)
  std::vector<int> eta0(cb.rank(), 0);
  TensorLayout lay0 = tensor_layout(a, b, eta0);
  t.highest.assign(lay0.total, Rat(0));
  for (const auto& [e1, e2, d1, d2, off] : lay0.blocks) {
    if (height_of_eta(e1) != 0 || height_of_eta(e2) != 0) continue;
    for (long i = 0; i < static_cast<long>(a.highest.size()); ++i)
      for (long j = 0; j < static_cast<long>(b.highest.size()); ++j)
        t.highest[off + i * d2 + j] = a.highest[i] * b.highest[j];
  }
  return t;
}

bool cyclicity_audit(const ExplicitModule& t) {
  std::map<std::vector<int>, RowBasis> span;
  std::vector<std::pair<std::vector<int>, std::vector<Rat>>> queue;
  std::vector<int> eta0(t.chev->rank(), 0);
  auto push = [&](const std::vector<int>& eta, const std::vector<Rat>& coords) {
    SparseVec sv;
    for (size_t k = 0; k < coords.size(); ++k)
      if (!is_zero(coords[k])) sv.emplace_back(static_cast<int>(k), coords[k]);
    if (sv.empty()) return;
    if (span[eta].add(sv)) queue.push_back({eta, coords});
  };
  push(eta0, t.highest);
  int dB = t.B->dim();
  for (size_t head = 0; head < queue.size(); ++head) {
    auto [eta, coords] = queue[head];
    for (int lie = 0; lie < t.chev->dim(); ++lie)
      for (int b = 0; b < dB; ++b) {
        std::vector<int> target = eta;
        int r = t.chev->root_of(lie);
        if (t.chev->is_lowering(lie)) {
          for (size_t i = 0; i < target.size(); ++i)
            target[i] += t.chev->table()->roots[r].coords[i];
          if (height_of_eta(target) > t.height_bound) continue;
        } else if (t.chev->is_raising(lie)) {
          bool neg = false;
          for (size_t i = 0; i < target.size(); ++i) {
            target[i] -= t.chev->table()->roots[r].coords[i];
            if (target[i] < 0) neg = true;
          }
          if (neg) continue;
        }
        push(target, t.apply(lie * dB + b, eta, coords));
      }
  }
  for (const auto& [eta, d] : t.dims)
    if (span[eta].rank() != d) return false;
  return true;
}

ExplicitModule evaluation_module(const rootsys::GeneralizedCartanMatrix& gcm, const Psi& psi) {
  require(!psi.evaluation_data.empty(), Err::InvalidInput, "evaluation data required");
  for (size_t i = 0; i < psi.evaluation_data.size(); ++i)
    for (size_t j = i + 1; j < psi.evaluation_data.size(); ++j)
      require(psi.evaluation_data[i].point != psi.evaluation_data[j].point, Err::DuplicatePoint,
              "evaluation points must be distinct");
  auto chev = ChevalleyBasis::build(gcm);

  // support height of V(lambda): height of lambda - w0(lambda) <= 2 * sum of
  // the root-basis coordinates of lambda
  auto support_height = [&](const Weight& lam) {
    int l = gcm.rank;
    std::vector<std::vector<Rat>> m(l, std::vector<Rat>(l + 1, Rat(0)));
    for (int i = 0; i < l; ++i) {
      for (int j = 0; j < l; ++j) m[i][j] = gcm(i, j);
      m[i][l] = lam.coroot_values[i];
    }
    for (int c = 0; c < l; ++c) {  // gaussian solve A x = lambda
      int p = -1;
      for (int r = c; r < l; ++r)
        if (!is_zero(m[r][c])) {
          p = r;
          break;
        }
      std::swap(m[p], m[c]);
      Rat lead = m[c][c];
      for (int k = 0; k <= l; ++k) m[c][k] /= lead;
      for (int r = 0; r < l; ++r) {
        if (r == c || is_zero(m[r][c])) continue;
        Rat f = m[r][c];
        for (int k = 0; k <= l; ++k) m[r][k] -= f * m[c][k];
      }
    }
    Rat s(0);
    for (int i = 0; i < l; ++i) s += m[i][l];
    Rat bound = 2 * s;
    long h = bound.get_num().get_si() / bound.get_den().get_si();
    if (Rat(h) < bound) ++h;
    // one above the support so the top reported space is visibly zero
    return static_cast<int>(std::max(1L, h + 1));
  };

  BuildOptions opts;
  opts.audit = 0;
  std::optional<ExplicitModule> acc;
  for (const auto& ev : psi.evaluation_data) {
    require(ev.weight.dominant(), Err::NotDominant, "evaluation weights must be dominant");
    auto m_pt = CofiniteIdeal::maximal(ev.point);
    auto B = commalg::quotient_algebra(m_pt);
    int Hk = support_height(ev.weight);
    QuotientModule vk = build_W(gcm, hwdata::make_psi(ev.weight, ev.point, m_pt), m_pt, B,
                                Hk, opts);
    require(vk.complete(), Err::Internal, "classical module support exceeded its bound");
    ExplicitModule ek = explicit_from_quotient(vk);
    if (!acc.has_value()) {
      acc = std::move(ek);
    } else {
      int ha = 0, hb = 0;
      for (const auto& [eta, d] : acc->dims) ha = std::max(ha, height_of_eta(eta));
      for (const auto& [eta, d] : ek.dims) hb = std::max(hb, height_of_eta(eta));
      acc = tensor_module(*acc, ek, ha + hb + 1);
    }
  }
  RelationAudit audit = highest_vector_relations(*acc, psi, psi.annihilating_ideal);
  require(audit.pass, Err::Internal,
          "evaluation module violates its defining relations: " +
              (audit.failures.empty() ? "" : audit.failures.front()));
  return *acc;
}

RelationAudit highest_vector_relations(const ExplicitModule& mod, const Psi& psi,
                                       const CofiniteIdeal& I) {
  RelationAudit audit;
  auto fail_with = [&](const std::string& msg) {
    audit.pass = false;
    audit.failures.push_back(msg);
  };
  const auto& cb = *mod.chev;
  int dB = mod.B->dim();
  std::vector<int> eta0(cb.rank(), 0);
  if (mod.highest.empty() || std::all_of(mod.highest.begin(), mod.highest.end(),
                                         [](const Rat& c) { return is_zero(c); })) {
    fail_with("highest vector is zero");
    return audit;
  }
  auto zero = [](const std::vector<Rat>& v) {
    return std::all_of(v.begin(), v.end(), [](const Rat& c) { return is_zero(c); });
  };
  std::vector<int> simple_roots;
  for (int i = 0; i < cb.rank(); ++i) {
    std::vector<int> c(cb.rank(), 0);
    c[i] = 1;
    simple_roots.push_back(cb.table()->find(c));
  }
  // (1) raising currents annihilate the highest vector
  for (int r = 0; r < cb.num_pos(); ++r)
    for (int b = 0; b < dB; ++b)
      if (!zero(mod.apply(cb.raise_index(r) * dB + b, eta0, mod.highest)))
        fail_with("raising current does not annihilate the highest vector");
  // (2) Cartan currents act by psi
  for (int i = 0; i < cb.rank(); ++i)
    for (int b = 0; b < dB; ++b) {
      Rat expect(0);
      for (const auto& ev : psi.evaluation_data)
        expect += mod.B->value_at(b, ev.point) * ev.weight.coroot_values[i];
      std::vector<Rat> got = mod.apply(cb.cartan_index(i) * dB + b, eta0, mod.highest);
      std::vector<Rat> want = mod.highest;
      for (auto& x : want) x *= expect;
      if (got != want) fail_with("Cartan current disagrees with psi at the highest vector");
    }
  // (3) power relations (X_{-alpha_i} tensor 1)^{lambda_i+1} v = 0
  for (int i = 0; i < cb.rank(); ++i) {
    int power = psi.weight.coroot_values[i] + 1;
    std::vector<int> eta = eta0;
    std::vector<Rat> cur = mod.highest;
    for (int k = 0; k < power; ++k) {
      std::vector<Rat> next;
      std::vector<int> target = eta;
      for (size_t t = 0; t < target.size(); ++t)
        target[t] += cb.table()->roots[simple_roots[i]].coords[t];
      next.assign(static_cast<size_t>(mod.dim_at(target)), Rat(0));
      for (const auto& [b, c] : mod.B->one()) {
        auto part = mod.apply(cb.lower_index(simple_roots[i]) * dB + b, eta, cur);
        for (size_t t = 0; t < next.size(); ++t) next[t] += c * part[t];
      }
      eta = target;
      cur = std::move(next);
      if (cur.empty()) break;
    }
    if (!zero(cur)) fail_with("power relation fails at simple root " + std::to_string(i + 1));
  }
  // (4) X_{-beta} I^{N_{lambda,beta}} v = 0, exercised on an explicit
  // polynomial generator of each power ideal, reduced through B
  for (int r = 0; r < cb.num_pos(); ++r) {
    long N = hwdata::n_lambda_alpha(psi.weight, cb.table()->roots[r]);
    if (N == 0) continue;
    auto IN = commalg::power(I, static_cast<unsigned>(N));
    int nv = I.nvars();
    Poly gen_poly = Poly::constant(nv, 1);
    for (const auto& s : IN.support())
      gen_poly = gen_poly *
                 (Poly::variable(nv, 0) - Poly::constant(nv, s.point[0])).pow(s.exp);
    SparseVec a = mod.B->reduce(gen_poly);
    std::vector<int> target = eta0;
    for (size_t t = 0; t < target.size(); ++t) target[t] += cb.table()->roots[r].coords[t];
    std::vector<Rat> acc(static_cast<size_t>(mod.dim_at(target)), Rat(0));
    for (const auto& [b, c] : a) {
      auto part = mod.apply(cb.lower_index(r) * dB + b, eta0, mod.highest);
      for (size_t t = 0; t < acc.size(); ++t) acc[t] += c * part[t];
    }
    if (!zero(acc))
      fail_with("annihilating-ideal relation fails at positive root #" + std::to_string(r));
  }
  return audit;
}

std::vector<std::vector<Rat>> singular_vectors(const QuotientModule& m,
                                               const std::vector<int>& eta) {
  const auto& cb = m.algebra().chev();
  int dB = m.algebra().dimB();
  auto basis = m.quotient_basis(eta);
  long n = static_cast<long>(basis.size());
  if (n == 0) return {};
  std::vector<SparseVec> equations;
  for (int i = 0; i < cb.rank(); ++i) {
    std::vector<int> c(cb.rank(), 0);
    c[i] = 1;
    int sr = cb.table()->find(c);
    bool valid = true;
    std::vector<int> target = eta;
    for (size_t t = 0; t < target.size(); ++t) {
      target[t] -= c[t];
      if (target[t] < 0) valid = false;
    }
    if (!valid) continue;
    long rows = m.dim_at(target);
    if (rows == 0) continue;
    for (int b = 0; b < dB; ++b) {
      int g = m.algebra().gen(cb.raise_index(sr), b);
      // rows of the action matrix become equations on the coordinates
      std::vector<std::vector<Rat>> cols;
      for (long col = 0; col < n; ++col) {
        ModuleVector v;
        v[basis[col]] = 1;
        ModuleVector w = m.engine()->apply_gen(g, v);
        std::vector<Rat> coords =
            w.empty() ? std::vector<Rat>(rows, Rat(0)) : m.quotient_coords(w);
        cols.push_back(std::move(coords));
      }
      for (long row = 0; row < rows; ++row) {
        SparseVec eq;
        for (long col = 0; col < n; ++col)
          if (!is_zero(cols[col][row])) eq.emplace_back(static_cast<int>(col), cols[col][row]);
        if (!eq.empty()) equations.push_back(std::move(eq));
      }
    }
  }
  return kernel_basis(equations, static_cast<int>(n));
}

std::vector<std::vector<Rat>> singular_vectors(const ExplicitModule& m,
                                               const std::vector<int>& eta) {
  const auto& cb = *m.chev;
  int dB = m.B->dim();
  long n = m.dim_at(eta);
  if (n == 0) return {};
  std::vector<SparseVec> equations;
  for (int i = 0; i < cb.rank(); ++i) {
    std::vector<int> c(cb.rank(), 0);
    c[i] = 1;
    int sr = cb.table()->find(c);
    for (int b = 0; b < dB; ++b) {
      int g = cb.raise_index(sr) * dB + b;
      std::vector<std::vector<Rat>> cols;
      long rows = 0;
      for (long col = 0; col < n; ++col) {
        std::vector<Rat> unitv(n, Rat(0));
        unitv[col] = 1;
        std::vector<Rat> coords = m.apply(g, eta, unitv);
        rows = static_cast<long>(coords.size());
        cols.push_back(std::move(coords));
      }
      for (long row = 0; row < rows; ++row) {
        SparseVec eq;
        for (long col = 0; col < n; ++col)
          if (!is_zero(cols[col][row])) eq.emplace_back(static_cast<int>(col), cols[col][row]);
        if (!eq.empty()) equations.push_back(std::move(eq));
      }
    }
  }
  return kernel_basis(equations, static_cast<int>(n));
}

bool verify_nested_annihilation(const QuotientModule& m, int beta_idx,
                                const std::vector<int>& gamma_idx,
                                const std::vector<SparseVec>& a_coeffs) {
  require(gamma_idx.size() == a_coeffs.size(), Err::InvalidInput,
          "gamma list and coefficient list differ in length");
  const auto& cb = m.algebra().chev();
  const auto& roots = cb.table()->roots;
  for (int g : gamma_idx)
    require(rootsys::root_leq(roots.at(g), roots.at(beta_idx)), Err::OrderViolation,
            "every gamma_i must precede beta in the root order");
  require(m.sequence().has_value(), Err::InvalidInput, "module was built without a sequence");
  int n = static_cast<int>(gamma_idx.size());
  const auto& seq = *m.sequence();
  int seq_idx = seq.table->find(roots[beta_idx].coords);
  require(seq_idx >= 0, Err::Internal, "beta missing from the sequence table");
  CofiniteIdeal power_ideal = commalg::power(seq.at(seq_idx), static_cast<unsigned>(n + 1));

  // word applied right-to-left: X_{-gamma_n} a_n first
  ModuleVector base;
  base[PBWMonomial{}] = 1;
  for (int k = n - 1; k >= 0; --k) {
    SparseVec gens;
    for (const auto& [b, c] : a_coeffs[k])
      gens.emplace_back(m.algebra().gen(cb.lower_index(gamma_idx[k]), b), c);
    std::sort(gens.begin(), gens.end());
    base = m.engine()->apply_comb(gens, base);
  }
  for (int b : m.algebra().B().ideal_image_basis(power_ideal)) {
    ModuleVector v = m.engine()->apply_gen(m.algebra().gen(cb.lower_index(beta_idx), b), base);
    if (!m.in_closure(v)) return false;
  }
  return true;
}

}  // namespace weylforge::modeng
