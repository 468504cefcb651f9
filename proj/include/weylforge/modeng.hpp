#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "weylforge/chevalley.hpp"
#include "weylforge/commalg.hpp"
#include "weylforge/hwdata.hpp"

namespace weylforge::modeng {

using commalg::CofiniteIdeal;
using commalg::QuotientAlgebra;
using commalg::QuotientPtr;
using hwdata::IdealSequence;
using hwdata::Psi;
using hwdata::Weight;

/// g' tensor B for a finite-type Chevalley basis and a finite-dimensional
/// coefficient algebra B. Generators are encoded as lie_index * dim(B) + b.
class MapAlgebra {
public:
  MapAlgebra(ChevalleyPtr chev, QuotientPtr B);

  const ChevalleyBasis& chev() const { return *chev_; }
  ChevalleyPtr chev_ptr() const { return chev_; }
  const QuotientAlgebra& B() const { return *B_; }
  QuotientPtr B_ptr() const { return B_; }
  int dimB() const { return B_->dim(); }

  int gen(int lie, int b) const { return lie * dimB() + b; }
  int gen_lie(int g) const { return g / dimB(); }
  int gen_b(int g) const { return g % dimB(); }

  /// [g1, g2] = [x,y] tensor (ab) expanded over generators.
  SparseVec bracket_gens(int g1, int g2) const;

private:
  ChevalleyPtr chev_;
  QuotientPtr B_;
};

/// PBW monomial over the lowering letters (root_idx * dimB + b): a word of
/// (letter, exponent) pairs, sorted by the engine's letter order, applied to
/// the highest-weight vector.
using PBWMonomial = std::vector<std::pair<int, int>>;

/// Homogeneous sparse vector in the ambient induced module.
using ModuleVector = std::map<PBWMonomial, Rat>;

void mv_axpy(ModuleVector& acc, const Rat& c, const ModuleVector& v);

enum class PBWOrder { HeightLex = 0, HeightRevLex = 1 };

/// Normal-orders products of map-algebra generators against PBW monomials by
/// repeated adjacent transposition uv = vu + [u,v], with highest-weight rules
/// at the vacuum. Straightening is memoized per (generator, monomial); psi
/// enters only through Cartan currents reaching the vacuum.
class StraighteningEngine {
public:
  StraighteningEngine(MapAlgebra algebra, Psi psi, PBWOrder order);

  const MapAlgebra& algebra() const { return alg_; }
  const Psi& psi() const { return psi_; }
  PBWOrder order() const { return order_; }

  int letter(int root_idx, int b) const { return root_idx * alg_.dimB() + b; }
  int letter_rank(int L) const { return rank_.at(L); }
  int gen_of_letter(int L) const {
    return alg_.gen(alg_.chev().lower_index(L / alg_.dimB()), L % alg_.dimB());
  }

  /// psi(h_i tensor b) via the evaluation data.
  Rat psi_cartan(int i, int b) const;

  /// Straightened g . v for a single generator.
  const ModuleVector& apply_gen(int g, const PBWMonomial& m);
  ModuleVector apply_gen(int g, const ModuleVector& v);
  /// Straightened (sum_k c_k g_k) . v.
  ModuleVector apply_comb(const SparseVec& gens, const ModuleVector& v);

  std::vector<int> eta_of(const PBWMonomial& m) const;
  int height_of(const PBWMonomial& m) const;

private:
  const ModuleVector& apply_gen_locked(int g, const PBWMonomial& m);

  MapAlgebra alg_;
  Psi psi_;
  PBWOrder order_;
  std::vector<int> rank_;
  std::map<std::pair<int, PBWMonomial>, ModuleVector> memo_;
  int depth_ = 0;
  // queries mutate the memo table, so shared post-construction reads take
  // this lock; results are identical regardless of interleaving
  mutable std::mutex memo_mutex_;
};

using EnginePtr = std::shared_ptr<StraighteningEngine>;

struct BuildOptions {
  PBWOrder order = PBWOrder::HeightLex;
  /// 0 = skip, 1 = auto (full scope at rank 1, height-capped above), 2 = full.
  int audit = 1;
  /// Per-weight-space monomial cap; 0 reads WEYLFORGE_MAX_DIM (default 20000).
  long max_space_dim = 0;
  /// Negative-control hook: drops the first relation generator so harnesses
  /// can prove they detect seeded violations.
  bool drop_first_relation = false;
};

struct AuditInfo {
  bool ran = false;
  bool pass = true;
  std::string scope;
  std::string detail;
};

/// A constructed highest-weight quotient: ambient PBW bases per weight space
/// together with the row space of the relation closure. Weight spaces are
/// indexed by eta (the drop below the highest weight, in simple-root
/// coordinates).
class QuotientModule {
public:
  const Psi& psi() const { return psi_; }
  int height_bound() const { return H_; }
  int working_height() const { return H_work_; }
  const MapAlgebra& algebra() const;
  EnginePtr engine() const { return engine_; }
  rootsys::TablePtr table() const { return table_; }

  /// Quotient dimension of the eta weight space (0 beyond the bound).
  long dim_at(const std::vector<int>& eta) const;
  /// All eta with height <= maxH (every lattice point, including dim-0 ones).
  std::map<std::vector<int>, long> dims(int maxH) const;
  long total_dim() const;
  bool complete() const;  // all top-height reported spaces vanish

  /// Ambient monomial basis and quotient basis (non-pivot monomials) at eta.
  const std::vector<PBWMonomial>& ambient_basis(const std::vector<int>& eta) const;
  std::vector<PBWMonomial> quotient_basis(const std::vector<int>& eta) const;

  /// Membership of a homogeneous ambient vector in the relation closure.
  bool in_closure(const ModuleVector& v) const;
  /// Residual of v against the closure, as coordinates over the quotient
  /// basis at its weight space.
  std::vector<Rat> quotient_coords(const ModuleVector& v) const;

  /// Spec operation `act`: straightened generator action with the height
  /// budget enforced (WeightOverflow beyond the working height).
  ModuleVector act(int lie_index, int b, const ModuleVector& v) const;

  long relation_count() const { return relation_count_; }
  const AuditInfo& audit() const { return audit_; }
  const std::string& order_note() const { return order_note_; }

  /// The sequence the relations came from (absent for a plain M(psi) build).
  const std::optional<IdealSequence>& sequence() const { return seq_; }

private:
  friend class ModuleBuilder;

  Psi psi_;
  int H_ = 0, H_work_ = 0;
  rootsys::TablePtr table_;
  EnginePtr engine_;
  std::shared_ptr<class ClosureState> closure_;
  std::optional<IdealSequence> seq_;
  long relation_count_ = 0;
  AuditInfo audit_;
  std::string order_note_;
};

/// M(psi) when seq is empty, M(psi, {I_alpha}) otherwise. The sequence must
/// cover all of Delta^+, and B must refine every entry.
QuotientModule build_M(const rootsys::GeneralizedCartanMatrix& gcm, const Psi& psi,
                       const std::optional<IdealSequence>& seq, QuotientPtr B, int H,
                       const BuildOptions& options = {});

/// Weyl-module presentation: the standard-sequence relations of I plus the
/// power relations (X_{-alpha_i} tensor 1)^{lambda(alpha_i^vee)+1} v = 0,
/// with a post-hoc integrability audit.
QuotientModule build_W(const rootsys::GeneralizedCartanMatrix& gcm, const Psi& psi,
                       const CofiniteIdeal& I, QuotientPtr B, int H,
                       const BuildOptions& options = {});

/// Explicit weight-graded module with exact generator action matrices;
/// produced from quotient presentations, tensor products, or the evaluation
/// construction.
class ExplicitModule {
public:
  ChevalleyPtr chev;
  QuotientPtr B;
  Weight lambda;
  int height_bound = 0;
  bool complete = false;
  std::map<std::vector<int>, long> dims;
  /// action[gen][eta]: matrix taking coords at eta to coords at the target
  /// weight space (eta + root for lowering, eta - root for raising).
  std::map<int, std::map<std::vector<int>, Mat>> action;
  std::vector<Rat> highest;  // coordinates inside the eta = 0 space

  long dim_at(const std::vector<int>& eta) const;
  long total_dim() const;
  std::vector<Rat> apply(int gen, const std::vector<int>& eta,
                         const std::vector<Rat>& coords) const;
};

/// Expands the closure presentation into explicit action matrices.
ExplicitModule explicit_from_quotient(const QuotientModule& qm);

/// Graded tensor with the coproduct action over B = A/(I1 cap I2).
/// Cyclicity of highest tensor highest is auditable separately.
ExplicitModule tensor_module(const ExplicitModule& a, const ExplicitModule& b, int H_out);

/// Does U(g' tensor B) . (v1 tensor v2) exhaust the tensor up to the bound?
bool cyclicity_audit(const ExplicitModule& t);

/// Evaluation module: tensor of the V(lambda_i) = W(psi_i, m_i) with
/// x tensor a acting through the point values a(p_i). The highest-vector
/// relation audit runs at construction.
ExplicitModule evaluation_module(const rootsys::GeneralizedCartanMatrix& gcm, const Psi& psi);

/// Relation audit of Def-dw conditions at the highest vector of an explicit
/// module (raising annihilation, Cartan scalars, power relations, and the
/// X_{-beta} I^{N_{lambda,beta}} relations for the given ideal).
struct RelationAudit {
  bool pass = true;
  std::vector<std::string> failures;
};
RelationAudit highest_vector_relations(const ExplicitModule& mod, const Psi& psi,
                                       const CofiniteIdeal& I);

/// Exact kernel of the stacked simple-raising actions on the eta space.
std::vector<std::vector<Rat>> singular_vectors(const QuotientModule& m,
                                               const std::vector<int>& eta);
std::vector<std::vector<Rat>> singular_vectors(const ExplicitModule& m,
                                               const std::vector<int>& eta);

/// Applies X_{-beta} a X_{-gamma_1} a_1 ... X_{-gamma_n} a_n to the highest
/// vector (a in the image of I_beta^{n+1}) and tests closure membership.
/// Each gamma_i must precede beta in the root order.
bool verify_nested_annihilation(const QuotientModule& m, int beta_idx,
                                const std::vector<int>& gamma_idx,
                                const std::vector<SparseVec>& a_coeffs);

}  // namespace weylforge::modeng
