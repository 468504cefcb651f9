#include "weylforge/rootsys.hpp"

#include <algorithm>
#include <mutex>
#include <set>

#include "weylforge/rational.hpp"

namespace weylforge::rootsys {

std::string gcm_type_name(GcmType t) {
  return t == GcmType::Finite ? "finite" : "affine-untwisted";
}

GcmType gcm_type_parse(const std::string& s) {
  if (s == "finite") return GcmType::Finite;
  if (s == "affine-untwisted" || s == "affine") return GcmType::AffineUntwisted;
  fail(Err::InvalidInput, "unknown GCM type '" + s + "'");
}

namespace {

// exact determinant of a small integer matrix via rational elimination
Rat det(std::vector<std::vector<Rat>> m) {
  int n = static_cast<int>(m.size());
  Rat d(1);
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int r = c; r < n; ++r)
      if (!is_zero(m[r][c])) {
        p = r;
        break;
      }
    if (p < 0) return Rat(0);
    if (p != c) {
      std::swap(m[p], m[c]);
      d = -d;
    }
    d *= m[c][c];
    for (int r = c + 1; r < n; ++r) {
      if (is_zero(m[r][c])) continue;
      Rat f = m[r][c] / m[c][c];
      for (int k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return d;
}

Rat principal_minor(const std::vector<std::vector<int>>& a, const std::vector<int>& idx) {
  std::vector<std::vector<Rat>> m(idx.size(), std::vector<Rat>(idx.size()));
  for (size_t r = 0; r < idx.size(); ++r)
    for (size_t c = 0; c < idx.size(); ++c) m[r][c] = a[idx[r]][idx[c]];
  return det(m);
}

}  // namespace

GeneralizedCartanMatrix validate_gcm(const std::vector<std::vector<int>>& entries,
                                     GcmType declared) {
  int l = static_cast<int>(entries.size());
  require(l >= 1, Err::NonCartan, "empty matrix");
  for (const auto& row : entries)
    require(static_cast<int>(row.size()) == l, Err::NonCartan, "matrix not square");
  for (int i = 0; i < l; ++i) {
    require(entries[i][i] == 2, Err::NonCartan, "diagonal entry != 2");
    for (int j = 0; j < l; ++j) {
      if (i == j) continue;
      require(entries[i][j] <= 0, Err::NonCartan, "positive off-diagonal entry");
      require((entries[i][j] == 0) == (entries[j][i] == 0), Err::NonCartan,
              "asymmetric zero pattern");
    }
  }
  require(l <= 8, Err::UnsupportedType, "principal-minor certification limited to rank <= 8");

  // enumerate all nonempty principal minors
  bool all_pos = true, proper_pos = true;
  Rat full;
  for (unsigned mask = 1; mask < (1u << l); ++mask) {
    std::vector<int> idx;
    for (int i = 0; i < l; ++i)
      if (mask & (1u << i)) idx.push_back(i);
    Rat d = principal_minor(entries, idx);
    if (static_cast<int>(idx.size()) == l) {
      full = d;
      if (sgn(d) <= 0) all_pos = false;
    } else {
      if (sgn(d) <= 0) {
        all_pos = false;
        proper_pos = false;
      }
    }
  }
  GcmType actual;
  if (all_pos) {
    actual = GcmType::Finite;
  } else if (proper_pos && is_zero(full)) {
    actual = GcmType::AffineUntwisted;
  } else {
    fail(Err::UnsupportedType, "matrix is neither finite nor untwisted-affine type");
  }
  require(actual == declared, Err::TypeMismatch,
          "declared type " + gcm_type_name(declared) + " but minors certify " +
              gcm_type_name(actual));
  return GeneralizedCartanMatrix{entries, l, declared};
}

int RootSystemTable::find(const std::vector<int>& coords) const {
  for (size_t i = 0; i < roots.size(); ++i)
    if (roots[i].coords == coords) return static_cast<int>(i);
  return -1;
}

const RootVector& RootSystemTable::simple(int i) const {
  require(i >= 0 && i < gcm.rank, Err::IndexOutOfRange, "simple root index");
  std::vector<int> c(gcm.rank, 0);
  c[i] = 1;
  int idx = find(c);
  require(idx >= 0, Err::Internal, "simple root missing from table");
  return roots[idx];
}

namespace {

int height_of(const std::vector<int>& c) {
  int h = 0;
  for (int x : c) h += x;
  return h;
}

void sort_roots(std::vector<RootVector>& roots) {
  std::sort(roots.begin(), roots.end(), [](const RootVector& x, const RootVector& y) {
    if (x.height != y.height) return x.height < y.height;
    return x.coords < y.coords;
  });
}

// Orbit of the simple roots under simple reflections, keeping positive roots.
// For finite type this is the whole of Delta^+.
std::vector<RootVector> finite_positive_roots(const GeneralizedCartanMatrix& gcm) {
  int l = gcm.rank;
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> queue;
  for (int i = 0; i < l; ++i) {
    std::vector<int> c(l, 0);
    c[i] = 1;
    seen.insert(c);
    queue.push_back(c);
  }
  while (!queue.empty()) {
    std::vector<int> c = queue.back();
    queue.pop_back();
    for (int i = 0; i < l; ++i) {
      int pairing = 0;
      for (int j = 0; j < l; ++j) pairing += gcm(i, j) * c[j];
      std::vector<int> r = c;
      r[i] -= pairing;
      if (std::all_of(r.begin(), r.end(), [](int x) { return x >= 0; }) && !seen.count(r)) {
        seen.insert(r);
        queue.push_back(r);
      }
    }
  }
  std::vector<RootVector> roots;
  for (const auto& c : seen) roots.push_back(RootVector{c, height_of(c), 1});
  sort_roots(roots);
  return roots;
}

// Primitive positive integer vector in the kernel of the affine GCM.
std::vector<int> null_root(const GeneralizedCartanMatrix& gcm) {
  int l = gcm.rank;
  // solve A d = 0 over Q; kernel is one-dimensional for affine type
  std::vector<std::vector<Rat>> m(l, std::vector<Rat>(l));
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) m[i][j] = gcm(i, j);
  // rational Gauss to echelon form
  std::vector<int> pivot_col(l, -1);
  int row = 0;
  for (int c = 0; c < l && row < l; ++c) {
    int p = -1;
    for (int r = row; r < l; ++r)
      if (!is_zero(m[r][c])) {
        p = r;
        break;
      }
    if (p < 0) continue;
    std::swap(m[p], m[row]);
    Rat lead = m[row][c];
    for (int k = 0; k < l; ++k) m[row][k] /= lead;
    for (int r = 0; r < l; ++r) {
      if (r == row || is_zero(m[r][c])) continue;
      Rat f = m[r][c];
      for (int k = 0; k < l; ++k) m[r][k] -= f * m[row][k];
    }
    pivot_col[row++] = c;
  }
  require(row == l - 1, Err::TypeMismatch, "affine GCM kernel is not one-dimensional");
  int free_col = -1;
  for (int c = 0; c < l; ++c)
    if (std::find(pivot_col.begin(), pivot_col.end(), c) == pivot_col.end()) free_col = c;
  std::vector<Rat> d(l, Rat(0));
  d[free_col] = 1;
  for (int r = 0; r < row; ++r) d[pivot_col[r]] = -m[r][free_col];
  // scale to primitive integer vector
  mpz_class lcm_den(1);
  for (auto& x : d) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), x.get_den().get_mpz_t());
  std::vector<mpz_class> ints(l);
  mpz_class g(0);
  for (int i = 0; i < l; ++i) {
    ints[i] = d[i].get_num() * (lcm_den / d[i].get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ints[i].get_mpz_t());
  }
  std::vector<int> out(l);
  for (int i = 0; i < l; ++i) {
    mpz_class v = ints[i] / g;
    require(v.fits_sint_p(), Err::Internal, "null root overflow");
    out[i] = static_cast<int>(v.get_si());
    require(out[i] != 0, Err::TypeMismatch, "affine null root has a zero mark");
  }
  if (out[0] < 0)
    for (auto& x : out) x = -x;
  for (int x : out) require(x > 0, Err::TypeMismatch, "affine null root not positive");
  return out;
}

std::vector<RootVector> affine_positive_roots(const GeneralizedCartanMatrix& gcm, int H,
                                              std::vector<int>& delta_out) {
  int l = gcm.rank;
  std::vector<int> delta = null_root(gcm);
  require(delta[0] == 1, Err::TypeMismatch,
          "first node is not an affine node of mark 1; order the affine node first");
  // underlying finite system on nodes 1..l-1
  std::vector<std::vector<int>> sub(l - 1, std::vector<int>(l - 1));
  for (int i = 1; i < l; ++i)
    for (int j = 1; j < l; ++j) sub[i - 1][j - 1] = gcm(i, j);
  GeneralizedCartanMatrix fin = validate_gcm(sub, GcmType::Finite);
  std::vector<RootVector> fin_roots = finite_positive_roots(fin);
  int fin_rank = l - 1;
  int delta_ht = height_of(delta);

  std::vector<RootVector> roots;
  auto embed = [&](const std::vector<int>& fc, int k, int sign) {
    std::vector<int> c(l, 0);
    for (int i = 0; i < l; ++i) c[i] = k * delta[i];
    for (int j = 0; j < fin_rank; ++j) c[j + 1] += sign * fc[j];
    return c;
  };
  for (const auto& fr : fin_roots) {
    for (int k = 0;; ++k) {  // beta + k*delta
      std::vector<int> c = embed(fr.coords, k, +1);
      int h = height_of(c);
      if (h > H) break;
      roots.push_back(RootVector{c, h, 1});
    }
    for (int k = 1;; ++k) {  // -beta + k*delta
      std::vector<int> c = embed(fr.coords, k, -1);
      int h = height_of(c);
      if (h > H) break;
      roots.push_back(RootVector{c, h, 1});
    }
  }
  for (int k = 1; k * delta_ht <= H; ++k) {
    std::vector<int> c(l);
    for (int i = 0; i < l; ++i) c[i] = k * delta[i];
    roots.push_back(RootVector{c, k * delta_ht, fin_rank});
  }
  sort_roots(roots);
  delta_out = delta;
  return roots;
}

std::mutex cache_mutex;
std::map<GeneralizedCartanMatrix, std::vector<RootVector>> finite_cache;

}  // namespace

TablePtr positive_roots(const GeneralizedCartanMatrix& gcm, int H) {
  require(H >= 1, Err::InvalidInput, "height bound must be >= 1");
  auto table = std::make_shared<RootSystemTable>();
  table->gcm = gcm;
  table->height_bound = H;
  if (gcm.type == GcmType::Finite) {
    {
      std::lock_guard<std::mutex> lock(cache_mutex);
      auto it = finite_cache.find(gcm);
      if (it == finite_cache.end())
        it = finite_cache.emplace(gcm, finite_positive_roots(gcm)).first;
      table->roots = it->second;
    }
    std::erase_if(table->roots, [&](const RootVector& r) { return r.height > H; });
  } else {
    table->roots = affine_positive_roots(gcm, H, table->delta);
  }
  return table;
}

bool root_leq(const RootVector& alpha, const RootVector& beta) {
  require(alpha.coords.size() == beta.coords.size(), Err::TableMismatch,
          "roots from different tables");
  for (size_t i = 0; i < alpha.coords.size(); ++i)
    if (beta.coords[i] - alpha.coords[i] < 0) return false;
  return true;
}

int root_sum_index(const RootSystemTable& table, int ia, int ib) {
  const auto& a = table.roots.at(ia).coords;
  const auto& b = table.roots.at(ib).coords;
  std::vector<int> c(a.size());
  for (size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return table.find(c);
}

}  // namespace weylforge::rootsys
