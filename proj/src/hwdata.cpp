#include "weylforge/hwdata.hpp"

#include <algorithm>

namespace weylforge::hwdata {

bool Weight::dominant() const {
  return std::all_of(coroot_values.begin(), coroot_values.end(), [](int v) { return v >= 0; });
}

bool Weight::is_zero() const {
  return std::all_of(coroot_values.begin(), coroot_values.end(), [](int v) { return v == 0; });
}

Weight Weight::operator+(const Weight& o) const {
  require(rank() == o.rank(), Err::InvalidInput, "weights of different rank");
  Weight r;
  r.coroot_values.resize(rank());
  for (int i = 0; i < rank(); ++i) r.coroot_values[i] = coroot_values[i] + o.coroot_values[i];
  const auto& a = hpp_values.empty() ? o.hpp_values : hpp_values;
  const auto& b = hpp_values.empty() ? hpp_values : o.hpp_values;
  if (b.empty()) {
    r.hpp_values = a;
  } else {
    require(a.size() == b.size(), Err::InvalidInput, "h'' arity mismatch");
    r.hpp_values = a;
    for (size_t i = 0; i < b.size(); ++i) r.hpp_values[i] += b[i];
  }
  return r;
}

std::string Weight::str() const {
  std::string s = "(";
  for (int i = 0; i < rank(); ++i) {
    if (i) s += ",";
    s += std::to_string(coroot_values[i]);
  }
  return s + ")";
}

int coroot_pairing(const Weight& lambda, int i) {
  require(i >= 1 && i <= lambda.rank(), Err::IndexOutOfRange,
          "coroot index " + std::to_string(i) + " out of range");
  return lambda.coroot_values[i - 1];
}

long n_lambda_alpha(const Weight& lambda, const RootVector& alpha) {
  require(lambda.dominant(), Err::NotDominant, "weight " + lambda.str() + " is not dominant");
  require(lambda.rank() == static_cast<int>(alpha.coords.size()), Err::InvalidInput,
          "weight/root rank mismatch");
  long n = 0;
  for (int i = 0; i < lambda.rank(); ++i)
    n += static_cast<long>(alpha.coords[i]) * lambda.coroot_values[i];
  return n;
}

Psi make_psi(const Weight& lambda, const std::vector<Rat>& point, const CofiniteIdeal& ideal) {
  return Psi{lambda, {PsiSummand{point, lambda}}, ideal};
}

Psi make_formal_psi(const Weight& lambda, const CofiniteIdeal& ideal) {
  return Psi{lambda, {}, ideal};
}

bool psi_consistency(const Psi& psi) {
  require(!psi.evaluation_data.empty(), Err::InvalidInput,
          "psi consistency needs evaluation data");
  // weight must be the sum of the evaluation weights
  Weight sum = psi.evaluation_data.front().weight;
  for (size_t k = 1; k < psi.evaluation_data.size(); ++k)
    sum = sum + psi.evaluation_data[k].weight;
  if (!(sum == psi.weight)) return false;
  // each evaluation point must lie in the vanishing locus of the ideal:
  // exponent-1 containment suffices since evaluation uses only point values
  for (const auto& s : psi.evaluation_data) {
    CofiniteIdeal m = CofiniteIdeal::maximal(s.point);
    if (!commalg::subset_of(psi.annihilating_ideal, m)) return false;
  }
  return true;
}

Psi psi_add(const Psi& a, const Psi& b) {
  for (const auto& s : a.evaluation_data)
    for (const auto& t : b.evaluation_data)
      require(s.point != t.point, Err::SharedPoint,
              "evaluation point " + point_str(s.point) + " appears in both summands");
  Psi r;
  r.weight = a.weight + b.weight;
  r.evaluation_data = a.evaluation_data;
  r.evaluation_data.insert(r.evaluation_data.end(), b.evaluation_data.begin(),
                           b.evaluation_data.end());
  std::sort(r.evaluation_data.begin(), r.evaluation_data.end(),
            [](const PsiSummand& x, const PsiSummand& y) {
              return std::lexicographical_compare(
                  x.point.begin(), x.point.end(), y.point.begin(), y.point.end(),
                  [](const Rat& u, const Rat& v) { return u < v; });
            });
  r.annihilating_ideal = commalg::intersect(a.annihilating_ideal, b.annihilating_ideal);
  return r;
}

IdealSequence standard_sequence(const Weight& lambda, const CofiniteIdeal& I, TablePtr table) {
  require(lambda.rank() == table->gcm.rank, Err::InvalidInput, "weight/table rank mismatch");
  IdealSequence seq;
  seq.table = table;
  seq.envelope = I;
  for (const auto& alpha : table->roots)
    seq.entries.push_back(commalg::power(I, static_cast<unsigned>(n_lambda_alpha(lambda, alpha))));
  return seq;
}

IdealSequence k_sequence(const Weight& lambda, const CofiniteIdeal& I, const Weight& mu,
                         const CofiniteIdeal& J, TablePtr table) {
  require(commalg::coprime(I, J), Err::NotCoprime, "K sequence requires coprime ideals");
  IdealSequence seq;
  seq.table = table;
  seq.envelope = commalg::intersect(I, J);
  for (const auto& alpha : table->roots) {
    auto In = commalg::power(I, static_cast<unsigned>(n_lambda_alpha(lambda, alpha)));
    auto Jm = commalg::power(J, static_cast<unsigned>(n_lambda_alpha(mu, alpha)));
    seq.entries.push_back(commalg::intersect(In, Jm));
  }
  return seq;
}

SequenceReport validate_sequence(const IdealSequence& seq) {
  SequenceReport rep;
  const auto& roots = seq.table->roots;
  require(seq.entries.size() == roots.size(), Err::InvalidInput,
          "sequence does not cover the table");
  auto coords_str = [](const RootVector& r) {
    std::string s = "(";
    for (size_t i = 0; i < r.coords.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(r.coords[i]);
    }
    return s + ")";
  };
  for (size_t a = 0; a < roots.size(); ++a) {
    for (size_t b = 0; b < roots.size(); ++b) {
      if (a != b && rootsys::root_leq(roots[a], roots[b]) &&
          !commalg::subset_of(seq.entries[b], seq.entries[a])) {
        rep.pass = false;
        rep.violations.push_back("condition (1) fails at " + coords_str(roots[a]) + " <= " +
                                 coords_str(roots[b]));
      }
      int s = rootsys::root_sum_index(*seq.table, static_cast<int>(a), static_cast<int>(b));
      if (s >= 0) {
        auto prod = commalg::product(seq.entries[a], seq.entries[b]);
        if (!commalg::subset_of(prod, seq.entries[s])) {
          rep.pass = false;
          rep.violations.push_back("condition (2) fails at " + coords_str(roots[a]) + " + " +
                                   coords_str(roots[b]));
        }
      }
    }
    // Envelope containment, localized to the entry's own support: entries may
    // drop envelope points entirely where an I^0 = A factor was absorbed (the
    // vanishing-exponent convention), so only shared points are constrained.
    for (const auto& s : seq.envelope.support()) {
      unsigned have = seq.entries[a].is_unit() ? 0 : seq.entries[a].order_at(s.point);
      if (have != 0 && have < s.exp) {
        rep.pass = false;
        rep.violations.push_back("envelope violated at " + coords_str(roots[a]));
      }
    }
  }
  return rep;
}

}  // namespace weylforge::hwdata
