#pragma once

#include <map>
#include <string>
#include <vector>

#include "weylforge/rational.hpp"

namespace weylforge {

/// Exponent tuple of a monomial in n variables.
using Expo = std::vector<unsigned>;

inline unsigned expo_degree(const Expo& e) {
  unsigned d = 0;
  for (unsigned k : e) d += k;
  return d;
}

/// Sparse multivariate polynomial over Rat with a fixed variable count.
/// Terms are kept in a sorted map so iteration (and hence every serialized
/// form) is deterministic.
class Poly {
public:
  explicit Poly(int nvars = 1) : nvars_(nvars) {}
  static Poly constant(int nvars, const Rat& c);
  static Poly variable(int nvars, int var, unsigned pow = 1);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Expo, Rat>& terms() const { return terms_; }
  unsigned degree() const;

  /// Adds c * x^e, erasing the term if the sum vanishes.
  void add_term(const Expo& e, const Rat& c);
  Rat coeff(const Expo& e) const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const Rat& c) const;
  Poly pow(unsigned k) const;
  bool operator==(const Poly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

  Rat eval(const std::vector<Rat>& point) const;

  /// f(x + p): recentres the polynomial at p, so the coefficient of x^e in
  /// the result is the order-e Taylor coefficient of f at p.
  Poly shift(const std::vector<Rat>& p) const;

  std::string str() const;

private:
  int nvars_;
  std::map<Expo, Rat> terms_;
};

/// Parses "+ - * ^ ( )" expressions with integer or p/q literals.
/// Variables: "x1".."xn" always; "t" when n == 1; "x","y","z" when n <= 3.
Poly poly_parse(const std::string& src, int nvars);

}  // namespace weylforge
