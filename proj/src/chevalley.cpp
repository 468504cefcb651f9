#include "weylforge/chevalley.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <optional>

namespace weylforge::modeng {

namespace {

Mat zeros(int n) { return Mat(n, std::vector<Rat>(n, Rat(0))); }

Mat unit(int n, int r, int c) {
  Mat m = zeros(n);
  m[r][c] = 1;
  return m;
}

Mat add(const Mat& a, const Mat& b, const Rat& cb = Rat(1)) {
  Mat r = a;
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a.size(); ++j) r[i][j] += cb * b[i][j];
  return r;
}

Mat mul(const Mat& a, const Mat& b) {
  int n = static_cast<int>(a.size());
  Mat r = zeros(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      if (is_zero(a[i][k])) continue;
      for (int j = 0; j < n; ++j) r[i][j] += a[i][k] * b[k][j];
    }
  return r;
}

Mat comm(const Mat& a, const Mat& b) { return add(mul(a, b), mul(b, a), Rat(-1)); }

bool mat_zero(const Mat& a) {
  for (const auto& row : a)
    for (const auto& x : row)
      if (!is_zero(x)) return false;
  return true;
}

void mat_scale(Mat& a, const Rat& c) {
  for (auto& row : a)
    for (auto& x : row) x *= c;
}

SparseVec mat_vec(const Mat& a) {
  SparseVec v;
  int n = static_cast<int>(a.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!is_zero(a[i][j])) v.emplace_back(i * n + j, a[i][j]);
  return v;
}

/// Exact coordinates of targets inside the span of `basis` matrices, via an
/// augmented echelon basis: row k is [vec(basis_k) | e_k].
class SpanSolver {
public:
  explicit SpanSolver(const std::vector<Mat>& basis) {
    require(!basis.empty(), Err::Internal, "empty span");
    n2_ = static_cast<int>(basis[0].size() * basis[0].size());
    k_ = static_cast<int>(basis.size());
    for (int k = 0; k < k_; ++k) {
      SparseVec row = mat_vec(basis[k]);
      row.emplace_back(n2_ + k, Rat(1));
      bool fresh = rb_.add(std::move(row));
      require(fresh, Err::Internal, "span basis is linearly dependent");
    }
  }

  /// Coordinates x with target = sum x_k basis_k; nullopt if not in the span.
  std::optional<SparseVec> solve(const Mat& target) const {
    SparseVec res = rb_.reduce(mat_vec(target));
    SparseVec coords;
    for (const auto& [idx, c] : res) {
      if (idx < n2_) return std::nullopt;
      coords.emplace_back(idx - n2_, -c);
    }
    return coords;
  }

private:
  RowBasis rb_;
  int n2_ = 0, k_ = 0;
};

struct Realization {
  std::vector<Mat> e, f;
  std::string name;
};

Realization realize_a1() {
  return {{unit(2, 0, 1)}, {unit(2, 1, 0)}, "sl2 defining representation"};
}

Realization realize_a2() {
  return {{unit(3, 0, 1), unit(3, 1, 2)},
          {unit(3, 1, 0), unit(3, 2, 1)},
          "sl3 defining representation"};
}

// sp4 preserving the form with antidiagonal blocks; coordinates ordered
// (eps1, eps2, -eps2, -eps1). Canonical labeling: alpha1 short, alpha2 long.
Realization realize_b2() {
  Mat e1 = add(unit(4, 0, 1), unit(4, 2, 3), Rat(-1));
  Mat f1 = add(unit(4, 1, 0), unit(4, 3, 2), Rat(-1));
  Mat e2 = unit(4, 1, 2);
  Mat f2 = unit(4, 2, 1);
  return {{e1, e2}, {f1, f2}, "sp4 defining representation"};
}

// --- split octonions and their derivation algebra (G2) ---

// Zorn vector-matrix basis: 0 = diag unit E11, 1..3 = v-part, 4..6 = w-part,
// 7 = diag unit E22. Product per the standard cross/dot rule.
std::vector<Rat> octonion_mul(int i, int j) {
  auto cross = [](int a, int b, int& k, int& sign) {
    // e_a x e_b = sign * e_k in a right-handed basis
    if (a == b) {
      k = -1;
      sign = 0;
      return;
    }
    k = 3 - a - b;
    sign = ((b - a + 3) % 3 == 1) ? 1 : -1;
  };
  std::vector<Rat> out(8, Rat(0));
  bool di = (i == 0 || i == 7), dj = (j == 0 || j == 7);
  if (di && dj) {
    if (i == j) out[i] = 1;
    return out;
  }
  if (di) {  // diag * basis
    if (i == 0 && j >= 1 && j <= 3) out[j] = 1;   // a * v
    if (i == 7 && j >= 4 && j <= 6) out[j] = 1;   // b * w
    return out;
  }
  if (dj) {
    if (j == 7 && i >= 1 && i <= 3) out[i] = 1;   // v * b'
    if (j == 0 && i >= 4 && i <= 6) out[i] = 1;   // w * a'
    return out;
  }
  if (i <= 3 && j <= 3) {  // v x v' lands in w
    int k, s;
    cross(i - 1, j - 1, k, s);
    if (s != 0) out[4 + k] = s;
    return out;
  }
  if (i >= 4 && j >= 4) {  // -(w x w') lands in v
    int k, s;
    cross(i - 4, j - 4, k, s);
    if (s != 0) out[1 + k] = -s;
    return out;
  }
  if (i <= 3 && j >= 4) {  // v . w' contributes to the first diagonal unit
    if (i - 1 == j - 4) out[0] = 1;
    return out;
  }
  // w . v' contributes to the second diagonal unit
  if (i - 4 == j - 1) out[7] = 1;
  return out;
}

std::vector<Mat> octonion_derivations() {
  // D(xy) = D(x)y + xD(y); unknowns D[r][c], index r*8+c
  std::vector<SparseVec> rows;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      std::vector<Rat> p = octonion_mul(i, j);
      for (int mcomp = 0; mcomp < 8; ++mcomp) {
        std::map<int, Rat> row;
        for (int k = 0; k < 8; ++k)
          if (!is_zero(p[k])) row[mcomp * 8 + k] += p[k];
        for (int r = 0; r < 8; ++r) {
          std::vector<Rat> erj = octonion_mul(r, j);
          if (!is_zero(erj[mcomp])) row[r * 8 + i] -= erj[mcomp];
          std::vector<Rat> eir = octonion_mul(i, r);
          if (!is_zero(eir[mcomp])) row[r * 8 + j] -= eir[mcomp];
        }
        SparseVec sv;
        for (const auto& [idx, c] : row)
          if (!is_zero(c)) sv.emplace_back(idx, c);
        if (!sv.empty()) rows.push_back(std::move(sv));
      }
    }
  auto ker = kernel_basis(rows, 64);
  require(ker.size() == 14, Err::Internal,
          "octonion derivation algebra has dimension " + std::to_string(ker.size()));
  std::vector<Mat> ders;
  for (const auto& v : ker) {
    Mat d = zeros(8);
    for (int r = 0; r < 8; ++r)
      for (int c = 0; c < 8; ++c) d[r][c] = v[r * 8 + c];
    ders.push_back(std::move(d));
  }
  return ders;
}

Realization realize_g2() {
  std::vector<Mat> ders = octonion_derivations();
  // split torus: D(v_i) = c_i v_i, D(w_i) = -c_i w_i with sum c_i = 0
  auto torus = [](int c1, int c2, int c3) {
    Mat h = zeros(8);
    h[1][1] = c1;
    h[2][2] = c2;
    h[3][3] = c3;
    h[4][4] = -c1;
    h[5][5] = -c2;
    h[6][6] = -c3;
    return h;
  };
  Mat H1 = torus(1, -1, 0), H2 = torus(0, 1, -1);

  SpanSolver solver(ders);
  auto ad_matrix = [&](const Mat& H) {
    std::vector<std::vector<Rat>> ad(14, std::vector<Rat>(14, Rat(0)));
    for (int j = 0; j < 14; ++j) {
      auto coords = solver.solve(comm(H, ders[j]));
      require(coords.has_value(), Err::Internal, "torus does not normalize the derivations");
      for (const auto& [i, c] : *coords) ad[i][j] = c;
    }
    return ad;
  };
  auto A1 = ad_matrix(H1), A2 = ad_matrix(H2);

  // simultaneous integer eigenpairs
  std::map<std::pair<int, int>, std::vector<std::vector<Rat>>> spaces;
  for (int mv = -3; mv <= 3; ++mv)
    for (int nv = -3; nv <= 3; ++nv) {
      std::vector<SparseVec> eqs;
      for (int r = 0; r < 14; ++r) {
        SparseVec row1, row2;
        for (int c = 0; c < 14; ++c) {
          Rat x1 = A1[r][c] - (r == c ? Rat(mv) : Rat(0));
          Rat x2 = A2[r][c] - (r == c ? Rat(nv) : Rat(0));
          if (!is_zero(x1)) row1.emplace_back(c, x1);
          if (!is_zero(x2)) row2.emplace_back(c, x2);
        }
        if (!row1.empty()) eqs.push_back(std::move(row1));
        if (!row2.empty()) eqs.push_back(std::move(row2));
      }
      auto ker = kernel_basis(eqs, 14);
      if (!ker.empty()) spaces[{mv, nv}] = ker;
    }
  require(spaces.count({0, 0}) && spaces[{0, 0}].size() == 2, Err::Internal,
          "G2 Cartan is not two-dimensional");
  std::vector<std::pair<int, int>> roots;
  for (const auto& [mn, ker] : spaces) {
    if (mn == std::pair<int, int>{0, 0}) continue;
    require(ker.size() == 1, Err::Internal, "G2 root space not one-dimensional");
    roots.push_back(mn);
  }
  require(roots.size() == 12, Err::Internal, "expected 12 G2 roots");

  auto to_der = [&](const std::vector<Rat>& coords) {
    Mat d = zeros(8);
    for (int k = 0; k < 14; ++k)
      if (!is_zero(coords[k])) d = add(d, ders[k], coords[k]);
    return d;
  };

  // positivity by a generic functional, then simple = not a sum of positives
  auto positive = [](std::pair<int, int> mn) { return 3 * mn.first + mn.second > 0; };
  std::vector<std::pair<int, int>> pos;
  for (auto mn : roots)
    if (positive(mn)) pos.push_back(mn);
  require(pos.size() == 6, Err::Internal, "positivity functional degenerate");
  std::vector<std::pair<int, int>> simples;
  for (auto mn : pos) {
    bool decomposable = false;
    for (auto a : pos)
      for (auto b : pos)
        if (a.first + b.first == mn.first && a.second + b.second == mn.second)
          decomposable = true;
    if (!decomposable) simples.push_back(mn);
  }
  std::sort(simples.begin(), simples.end());
  require(simples.size() == 2, Err::Internal, "expected 2 simple roots");

  Realization R;
  R.name = "derivations of the split octonions (Zorn vector matrices)";
  for (auto mn : simples) {
    Mat x = to_der(spaces[mn][0]);
    Mat y = to_der(spaces[{-mn.first, -mn.second}][0]);
    Mat t = comm(x, y);
    // alpha(t): [t, x] = alpha(t) x
    Mat tx = comm(t, x);
    Rat alpha_t;
    bool found = false;
    for (int r = 0; r < 8 && !found; ++r)
      for (int c = 0; c < 8 && !found; ++c)
        if (!is_zero(x[r][c])) {
          alpha_t = tx[r][c] / x[r][c];
          found = true;
        }
    require(found && !is_zero(alpha_t), Err::Internal, "degenerate sl2 triple in G2");
    require(mat_zero(add(tx, x, -alpha_t)), Err::Internal, "non-proportional [t,x] in G2");
    mat_scale(y, 2 / alpha_t);
    R.e.push_back(x);
    R.f.push_back(y);
  }
  return R;
}

std::vector<std::vector<int>> permutations(int l) {
  std::vector<int> idx(l);
  for (int i = 0; i < l; ++i) idx[i] = i;
  std::vector<std::vector<int>> out;
  do {
    out.push_back(idx);
  } while (std::next_permutation(idx.begin(), idx.end()));
  return out;
}

std::mutex chev_cache_mutex;
std::map<rootsys::GeneralizedCartanMatrix, ChevalleyPtr> chev_cache;

}  // namespace

int ChevalleyBasis::root_of(int k) const {
  if (is_lowering(k)) return k;
  if (is_raising(k)) return k - m_ - l_;
  return -1;
}

int ChevalleyBasis::pairing(int root_idx, int i) const {
  const auto& coords = table_->roots.at(root_idx).coords;
  int p = 0;
  for (int j = 0; j < l_; ++j) p += gcm_(i, j) * coords[j];
  return p;
}

LieComb ChevalleyBasis::coroot(int root_idx) const {
  return brackets_[raise_index(root_idx)][lower_index(root_idx)];
}

ChevalleyPtr ChevalleyBasis::build(const rootsys::GeneralizedCartanMatrix& gcm) {
  require(gcm.type == rootsys::GcmType::Finite, Err::UnsupportedType,
          "module construction supports finite type only");
  {
    std::lock_guard<std::mutex> lock(chev_cache_mutex);
    auto it = chev_cache.find(gcm);
    if (it != chev_cache.end()) return it->second;
  }

  auto cb_raw = new ChevalleyBasis();
  std::shared_ptr<ChevalleyBasis> cb(cb_raw);
  cb->gcm_ = gcm;
  cb->table_ = rootsys::positive_roots(gcm, 64);
  cb->l_ = gcm.rank;
  cb->m_ = static_cast<int>(cb->table_->roots.size());

  Realization R;
  if (gcm.rank == 1 && cb->m_ == 1) {
    R = realize_a1();
  } else if (gcm.rank == 2 && cb->m_ == 3) {
    R = realize_a2();
  } else if (gcm.rank == 2 && cb->m_ == 4) {
    R = realize_b2();
  } else if (gcm.rank == 2 && cb->m_ == 6) {
    R = realize_g2();
  } else {
    fail(Err::UnsupportedType, "supported types are A1, A2, B2, G2");
  }

  // realized Cartan integers a_ij from [h_i, e_j] = a_ij e_j
  int l = gcm.rank;
  std::vector<Mat> h(l);
  for (int i = 0; i < l; ++i) h[i] = comm(R.e[i], R.f[i]);
  std::vector<std::vector<int>> realized(l, std::vector<int>(l));
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) {
      Mat he = comm(h[i], R.e[j]);
      Rat ratio;
      bool found = false;
      for (size_t r = 0; r < he.size() && !found; ++r)
        for (size_t c = 0; c < he.size() && !found; ++c)
          if (!is_zero(R.e[j][r][c])) {
            ratio = he[r][c] / R.e[j][r][c];
            found = true;
          }
      require(found && mat_zero(add(he, R.e[j], -ratio)), Err::Internal,
              "realized generator is not an h-eigenvector");
      realized[i][j] = static_cast<int>(rat_long(ratio));
    }

  std::vector<int> perm;
  for (const auto& p : permutations(l)) {
    bool ok = true;
    for (int i = 0; i < l && ok; ++i)
      for (int j = 0; j < l && ok; ++j)
        if (gcm(i, j) != realized[p[i]][p[j]]) ok = false;
    if (ok) {
      perm = p;
      break;
    }
  }
  require(!perm.empty(), Err::UnsupportedType,
          "Cartan matrix does not match the realized type under any labeling");

  std::vector<Mat> e(l), f(l);
  for (int i = 0; i < l; ++i) {
    e[i] = R.e[perm[i]];
    f[i] = R.f[perm[i]];
  }

  std::string note = R.name + "; labeling permutation (";
  for (int i = 0; i < l; ++i) note += (i ? "," : "") + std::to_string(perm[i]);
  note += ")";

  // root vectors by bracketing along simple-root chains, then sl2 normalization
  const auto& roots = cb->table_->roots;
  std::vector<Mat> xp(cb->m_), xm(cb->m_);
  std::vector<Mat> hmats(l);
  for (int i = 0; i < l; ++i) hmats[i] = comm(e[i], f[i]);
  SpanSolver hsolver(hmats);
  for (int r = 0; r < cb->m_; ++r) {
    if (roots[r].height == 1) {
      for (int i = 0; i < l; ++i)
        if (roots[r].coords[i] == 1) {
          xp[r] = e[i];
          xm[r] = f[i];
        }
      continue;
    }
    int j = -1, base = -1;
    for (int i = 0; i < l && j < 0; ++i) {
      if (roots[r].coords[i] == 0) continue;
      auto c = roots[r].coords;
      c[i] -= 1;
      int idx = cb->table_->find(c);
      if (idx >= 0) {
        j = i;
        base = idx;
      }
    }
    require(j >= 0, Err::Internal, "root has no simple-root predecessor");
    xp[r] = comm(e[j], xp[base]);
    xm[r] = comm(f[j], xm[base]);
    require(!mat_zero(xp[r]) && !mat_zero(xm[r]), Err::Internal, "vanishing chain bracket");
    note += "; X[" + std::to_string(r) + "]=[e" + std::to_string(j + 1) + ",X[" +
            std::to_string(base) + "]]";
    // normalize so that [X_beta, X_{-beta}] = beta^vee
    Mat t = comm(xp[r], xm[r]);
    auto coords = hsolver.solve(t);
    require(coords.has_value(), Err::Internal, "[x,y] escaped the Cartan");
    Rat alpha_t(0);
    for (const auto& [i, c] : *coords) alpha_t += c * cb->pairing(r, i);
    require(!is_zero(alpha_t), Err::Internal, "isotropic sl2 normalization");
    mat_scale(xm[r], 2 / alpha_t);
  }

  cb->mats_.resize(cb->dim());
  for (int r = 0; r < cb->m_; ++r) cb->mats_[cb->lower_index(r)] = xm[r];
  for (int i = 0; i < l; ++i) cb->mats_[cb->cartan_index(i)] = hmats[i];
  for (int r = 0; r < cb->m_; ++r) cb->mats_[cb->raise_index(r)] = xp[r];
  cb->note_ = note;

  // full bracket table through the span solver
  SpanSolver gsolver(cb->mats_);
  int d = cb->dim();
  cb->brackets_.assign(d, std::vector<LieComb>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < i; ++j) {
      Mat c = comm(cb->mats_[i], cb->mats_[j]);
      auto coords = gsolver.solve(c);
      require(coords.has_value(), Err::Internal, "bracket escaped the algebra");
      cb->brackets_[i][j] = *coords;
      LieComb neg = *coords;
      sv_scale(neg, Rat(-1));
      cb->brackets_[j][i] = neg;
    }

  cb->verify();
  ChevalleyPtr out = cb;
  {
    std::lock_guard<std::mutex> lock(chev_cache_mutex);
    chev_cache.emplace(gcm, out);
  }
  return out;
}

LieComb comb_bracket(const ChevalleyBasis& cb, const LieComb& a, const LieComb& b) {
  LieComb acc;
  for (const auto& [i, ci] : a)
    for (const auto& [j, cj] : b) acc = sv_axpy(acc, ci * cj, cb.bracket(i, j));
  return acc;
}

void ChevalleyBasis::verify() const {
  int d = dim();
  // antisymmetry and vanishing diagonal
  for (int i = 0; i < d; ++i) {
    require(brackets_[i][i].empty(), Err::Internal, "nonzero self-bracket");
    for (int j = 0; j < d; ++j) {
      LieComb neg = brackets_[j][i];
      sv_scale(neg, Rat(-1));
      require(brackets_[i][j] == neg, Err::Internal, "bracket not antisymmetric");
    }
  }
  // Cartan action: [h_i, X_{+-beta}] = +-beta(alpha_i^vee) X_{+-beta}
  for (int i = 0; i < l_; ++i)
    for (int r = 0; r < m_; ++r) {
      LieComb up = bracket(cartan_index(i), raise_index(r));
      LieComb expect_up{{raise_index(r), Rat(pairing(r, i))}};
      if (pairing(r, i) == 0) expect_up.clear();
      require(up == expect_up, Err::Internal, "raising vector has wrong h-eigenvalue");
      LieComb dn = bracket(cartan_index(i), lower_index(r));
      LieComb expect_dn{{lower_index(r), Rat(-pairing(r, i))}};
      if (pairing(r, i) == 0) expect_dn.clear();
      require(dn == expect_dn, Err::Internal, "lowering vector has wrong h-eigenvalue");
    }
  // sl2 triples: [X_beta, X_{-beta}] = beta^vee with beta(beta^vee) = 2
  for (int r = 0; r < m_; ++r) {
    LieComb co = coroot(r);
    Rat two(0);
    for (const auto& [k, c] : co) {
      require(is_cartan(k), Err::Internal, "coroot has a non-Cartan component");
      two += c * pairing(r, k - m_);
    }
    require(two == 2, Err::Internal, "coroot not sl2-normalized");
  }
  // Jacobi on all basis triples
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      for (int k = j + 1; k < d; ++k) {
        LieComb s = comb_bracket(*this, LieComb{{i, Rat(1)}}, brackets_[j][k]);
        s = sv_add(s, comb_bracket(*this, LieComb{{j, Rat(1)}}, brackets_[k][i]));
        s = sv_add(s, comb_bracket(*this, LieComb{{k, Rat(1)}}, brackets_[i][j]));
        require(s.empty(), Err::Internal, "Jacobi identity fails on basis triple");
      }
  // Serre relations in the adjoint action
  for (int i = 0; i < l_; ++i)
    for (int j = 0; j < l_; ++j) {
      if (i == j) continue;
      int si = table_->find([&] {
        std::vector<int> c(l_, 0);
        c[i] = 1;
        return c;
      }());
      int sj = table_->find([&] {
        std::vector<int> c(l_, 0);
        c[j] = 1;
        return c;
      }());
      int n = 1 - gcm_(i, j);
      LieComb accp{{raise_index(sj), Rat(1)}};
      LieComb accm{{lower_index(sj), Rat(1)}};
      for (int k = 0; k < n; ++k) {
        accp = comb_bracket(*this, LieComb{{raise_index(si), Rat(1)}}, accp);
        accm = comb_bracket(*this, LieComb{{lower_index(si), Rat(1)}}, accm);
      }
      require(accp.empty(), Err::Internal, "Serre relation fails for raising generators");
      require(accm.empty(), Err::Internal, "Serre relation fails for lowering generators");
    }
}

}  // namespace weylforge::modeng
