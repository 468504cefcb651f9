#include <cctype>
#include <sstream>

#include "weylforge/errors.hpp"
#include "weylforge/rational.hpp"
#include "weylforge/sparse_linalg.hpp"

namespace weylforge {

const char* err_name(Err e) {
  switch (e) {
    case Err::NonCartan: return "NonCartan";
    case Err::TypeMismatch: return "TypeMismatch";
    case Err::UnsupportedType: return "UnsupportedType";
    case Err::IndexOutOfRange: return "IndexOutOfRange";
    case Err::NotCofinite: return "NotCofinite";
    case Err::UnsupportedPresentation: return "UnsupportedPresentation";
    case Err::NotCoprime: return "NotCoprime";
    case Err::NotDominant: return "NotDominant";
    case Err::SharedPoint: return "SharedPoint";
    case Err::TableMismatch: return "TableMismatch";
    case Err::WeightOverflow: return "WeightOverflow";
    case Err::IncompatibleCoefficients: return "IncompatibleCoefficients";
    case Err::AlgebraMismatch: return "AlgebraMismatch";
    case Err::DuplicatePoint: return "DuplicatePoint";
    case Err::OrderViolation: return "OrderViolation";
    case Err::ResourceCap: return "ResourceCap";
    case Err::InvalidInput: return "InvalidInput";
    case Err::Internal: return "Internal";
  }
  return "Unknown";
}

Rat rat_parse(const std::string& s) {
  std::string t;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty()) fail(Err::InvalidInput, "empty rational literal");
  auto ok = [](const std::string& u) {
    if (u.empty()) return false;
    size_t i = (u[0] == '-' || u[0] == '+') ? 1 : 0;
    if (i == u.size()) return false;
    for (; i < u.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(u[i]))) return false;
    return true;
  };
  auto slash = t.find('/');
  if (slash == std::string::npos) {
    if (!ok(t)) fail(Err::InvalidInput, "bad rational literal '" + s + "'");
    return Rat(mpz_class(t));
  }
  std::string num = t.substr(0, slash), den = t.substr(slash + 1);
  if (!ok(num) || !ok(den) || mpz_class(den) == 0)
    fail(Err::InvalidInput, "bad rational literal '" + s + "'");
  Rat r{mpz_class(num), mpz_class(den)};
  r.canonicalize();
  return r;
}

std::string rat_str(const Rat& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

long rat_long(const Rat& x) {
  require(x.get_den() == 1 && x.get_num().fits_slong_p(), Err::Internal,
          "expected small integer, got " + rat_str(x));
  return x.get_num().get_si();
}

std::string point_str(const std::vector<Rat>& p) {
  std::string s = "(";
  for (size_t i = 0; i < p.size(); ++i) {
    if (i) s += ",";
    s += rat_str(p[i]);
  }
  return s + ")";
}

SparseVec sv_axpy(const SparseVec& a, const Rat& c, const SparseVec& b) {
  if (is_zero(c)) return a;
  SparseVec out;
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      Rat v = c * b[j].second;
      if (!is_zero(v)) out.emplace_back(b[j].first, v);
      ++j;
    } else {
      Rat v = a[i].second + c * b[j].second;
      if (!is_zero(v)) out.emplace_back(a[i].first, v);
      ++i, ++j;
    }
  }
  return out;
}

SparseVec sv_add(const SparseVec& a, const SparseVec& b) { return sv_axpy(a, Rat(1), b); }

void sv_scale(SparseVec& a, const Rat& c) {
  if (is_zero(c)) {
    a.clear();
    return;
  }
  for (auto& [i, v] : a) v *= c;
}

bool sv_equal(const SparseVec& a, const SparseVec& b) { return a == b; }

Rat sv_get(const SparseVec& a, int idx) {
  auto it = std::lower_bound(a.begin(), a.end(), idx,
                             [](const auto& p, int k) { return p.first < k; });
  if (it != a.end() && it->first == idx) return it->second;
  return Rat(0);
}

SparseVec RowBasis::reduce(SparseVec v) const {
  // Stored rows carry zeros at every other pivot column, so eliminating the
  // entry at one pivot never reintroduces an earlier one; a forward sweep
  // terminates.
  size_t k = 0;
  while (k < v.size()) {
    auto it = rows_.find(v[k].first);
    if (it == rows_.end()) {
      ++k;
      continue;
    }
    v = sv_axpy(v, -v[k].second, it->second);
  }
  return v;
}

bool RowBasis::add(SparseVec v) {
  v = reduce(v);
  if (v.empty()) return false;
  Rat inv = 1 / v.front().second;
  sv_scale(v, inv);
  int pivot = v.front().first;
  for (auto& [p, row] : rows_) {
    Rat c = sv_get(row, pivot);
    if (!is_zero(c)) row = sv_axpy(row, -c, v);
  }
  rows_.emplace(pivot, std::move(v));
  return true;
}

std::vector<std::vector<Rat>> kernel_basis(const std::vector<SparseVec>& rows, int ncols) {
  RowBasis rb;
  for (const auto& r : rows) rb.add(r);
  std::vector<std::vector<Rat>> out;
  for (int f = 0; f < ncols; ++f) {
    if (rb.is_pivot(f)) continue;
    std::vector<Rat> x(ncols, Rat(0));
    x[f] = 1;
    for (const auto& [p, row] : rb.rows()) x[p] = -sv_get(row, f);
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace weylforge
