#include "weylforge/charcalc.hpp"

#include <algorithm>

namespace weylforge::charcalc {

namespace {

int height_of(const std::vector<int>& c) {
  int h = 0;
  for (int x : c) h += x;
  return h;
}

long long binom_ll(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

void check_compatible(const FormalCharacter& a, const FormalCharacter& b) {
  require(a.table && b.table, Err::TableMismatch, "character without a table");
  require(a.table->gcm == b.table->gcm && a.height_bound == b.height_bound, Err::TableMismatch,
          "characters live on different tables or heights");
}

}  // namespace

FormalCharacter unit_character(TablePtr table, int H, const Weight& base) {
  FormalCharacter ch;
  ch.table = std::move(table);
  ch.height_bound = H;
  ch.base_weight = base;
  ch.coeffs[std::vector<int>(ch.table->gcm.rank, 0)] = 1;
  return ch;
}

FormalCharacter geometric_factor(TablePtr table, int root_index, long c, int H) {
  require(c >= 0, Err::InvalidInput, "geometric factor exponent must be >= 0");
  Weight zero;
  zero.coroot_values.assign(table->gcm.rank, 0);
  FormalCharacter ch = unit_character(table, H, zero);
  if (c == 0) return ch;
  const auto& alpha = table->roots.at(root_index);
  for (long j = 1; j * alpha.height <= H; ++j) {
    std::vector<int> eta(alpha.coords.size());
    for (size_t i = 0; i < eta.size(); ++i) eta[i] = static_cast<int>(j) * alpha.coords[i];
    ch.coeffs[eta] = binom_ll(j + c - 1, c - 1);
  }
  return ch;
}

FormalCharacter multiply(const FormalCharacter& a, const FormalCharacter& b) {
  check_compatible(a, b);
  FormalCharacter ch;
  ch.table = a.table;
  ch.height_bound = a.height_bound;
  ch.base_weight = a.base_weight + b.base_weight;
  for (const auto& [ea, ca] : a.coeffs) {
    int ha = height_of(ea);
    for (const auto& [eb, cb] : b.coeffs) {
      if (ha + height_of(eb) > ch.height_bound) continue;
      std::vector<int> e(ea.size());
      for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      ch.coeffs[e] += ca * cb;
    }
  }
  std::erase_if(ch.coeffs, [](const auto& kv) { return kv.second == 0; });
  return ch;
}

FormalCharacter character_of_M(const Psi& psi, const IdealSequence& seq, int H) {
  auto rep = hwdata::validate_sequence(seq);
  require(rep.pass, Err::InvalidInput,
          "ideal sequence invalid: " + (rep.violations.empty() ? "" : rep.violations.front()));
  if (!psi.evaluation_data.empty())
    require(hwdata::psi_consistency(psi), Err::InvalidInput, "psi inconsistent with its ideal");
  FormalCharacter ch = unit_character(seq.table, H, psi.weight);
  // factors in increasing root height; table roots are already sorted that way
  for (size_t r = 0; r < seq.table->roots.size(); ++r) {
    if (seq.table->roots[r].height > H) continue;
    long c = codim(seq.entries[r]) * seq.table->roots[r].mult;
    if (c == 0) continue;
    ch = multiply(ch, geometric_factor(seq.table, static_cast<int>(r), c, H));
  }
  ch.base_weight = psi.weight;
  return ch;
}

DimReport verify_t1_dimensions(const Weight& lambda, const commalg::CofiniteIdeal& I,
                               const Weight& mu, const commalg::CofiniteIdeal& J, TablePtr table,
                               int H) {
  require(commalg::coprime(I, J), Err::NotCoprime, "verification requires coprime ideals");
  DimReport rep;
  auto seq_i = hwdata::standard_sequence(lambda, I, table);
  auto seq_j = hwdata::standard_sequence(mu, J, table);
  auto seq_k = hwdata::k_sequence(lambda, I, mu, J, table);
  for (size_t r = 0; r < table->roots.size(); ++r) {
    long m = codim(seq_i.entries[r]);
    long n = codim(seq_j.entries[r]);
    long k = codim(seq_k.entries[r]);
    rep.k_codims.push_back(k);
    if (m + n != k) {
      rep.pass = false;
      rep.first_discrepancy = "codim additivity fails at root #" + std::to_string(r) + ": " +
                              std::to_string(m) + "+" + std::to_string(n) +
                              " != " + std::to_string(k);
      return rep;
    }
  }
  auto psi1 = hwdata::make_formal_psi(lambda, I);
  auto psi2 = hwdata::make_formal_psi(mu, J);
  auto psi = hwdata::make_formal_psi(lambda + mu, seq_k.envelope);
  FormalCharacter lhs = character_of_M(psi, seq_k, H);
  FormalCharacter rhs = multiply(character_of_M(psi1, seq_i, H), character_of_M(psi2, seq_j, H));
  if (lhs.coeffs != rhs.coeffs) {
    rep.pass = false;
    auto scan = [&](const FormalCharacter& x, const FormalCharacter& y) {
      for (const auto& [e, c] : x.coeffs) {
        if (y.at(e) != c) {
          std::string es;
          for (int v : e) es += (es.empty() ? "" : ",") + std::to_string(v);
          rep.first_discrepancy = "character mismatch at eta=(" + es +
                                  "): " + std::to_string(lhs.at(e)) + " vs " +
                                  std::to_string(rhs.at(e));
          return true;
        }
      }
      return false;
    };
    if (!scan(lhs, rhs)) scan(rhs, lhs);
  }
  return rep;
}

}  // namespace weylforge::charcalc
