#include "weylforge/polynomial.hpp"

#include <cctype>

#include "weylforge/errors.hpp"

namespace weylforge {

Poly Poly::constant(int nvars, const Rat& c) {
  Poly p(nvars);
  p.add_term(Expo(nvars, 0), c);
  return p;
}

Poly Poly::variable(int nvars, int var, unsigned pow) {
  require(var >= 0 && var < nvars, Err::IndexOutOfRange, "variable index");
  Poly p(nvars);
  Expo e(nvars, 0);
  e[var] = pow;
  p.add_term(e, Rat(1));
  return p;
}

unsigned Poly::degree() const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, expo_degree(e));
  return d;
}

void Poly::add_term(const Expo& e, const Rat& c) {
  if (weylforge::is_zero(c)) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
  } else {
    it->second += c;
    if (weylforge::is_zero(it->second)) terms_.erase(it);
  }
}

Rat Poly::coeff(const Expo& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rat(0) : it->second;
}

Poly Poly::operator+(const Poly& o) const {
  require(nvars_ == o.nvars_, Err::Internal, "mixed variable counts");
  Poly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  require(nvars_ == o.nvars_, Err::Internal, "mixed variable counts");
  Poly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  require(nvars_ == o.nvars_, Err::Internal, "mixed variable counts");
  Poly r(nvars_);
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) {
      Expo e(nvars_);
      for (int i = 0; i < nvars_; ++i) e[i] = e1[i] + e2[i];
      r.add_term(e, c1 * c2);
    }
  return r;
}

Poly Poly::operator*(const Rat& c) const {
  Poly r(nvars_);
  if (weylforge::is_zero(c)) return r;
  for (const auto& [e, v] : terms_) r.add_term(e, v * c);
  return r;
}

Poly Poly::pow(unsigned k) const {
  Poly acc = Poly::constant(nvars_, 1);
  Poly base = *this;
  while (k) {
    if (k & 1) acc = acc * base;
    base = base * base;
    k >>= 1;
  }
  return acc;
}

Rat Poly::eval(const std::vector<Rat>& point) const {
  require(static_cast<int>(point.size()) == nvars_, Err::InvalidInput, "point arity");
  Rat total(0);
  for (const auto& [e, c] : terms_) {
    Rat t = c;
    for (int i = 0; i < nvars_; ++i)
      for (unsigned k = 0; k < e[i]; ++k) t *= point[i];
    total += t;
  }
  return total;
}

Poly Poly::shift(const std::vector<Rat>& p) const {
  require(static_cast<int>(p.size()) == nvars_, Err::InvalidInput, "point arity");
  Poly r(nvars_);
  for (const auto& [e, c] : terms_) {
    // expand prod_i (x_i + p_i)^{e_i}
    Poly term = Poly::constant(nvars_, c);
    for (int i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      Poly lin = Poly::variable(nvars_, i) + Poly::constant(nvars_, p[i]);
      term = term * lin.pow(e[i]);
    }
    r = r + term;
  }
  return r;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  // highest degree first reads naturally
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    std::string mono;
    for (int i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += (nvars_ == 1) ? "t" : ("x" + std::to_string(i + 1));
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    std::string cs = rat_str(c);
    std::string piece;
    if (mono.empty()) {
      piece = cs;
    } else if (cs == "1") {
      piece = mono;
    } else if (cs == "-1") {
      piece = "-" + mono;
    } else {
      piece = cs + "*" + mono;
    }
    if (out.empty()) {
      out = piece;
    } else if (!piece.empty() && piece[0] == '-') {
      out += " - " + piece.substr(1);
    } else {
      out += " + " + piece;
    }
  }
  return out;
}

namespace {

class Parser {
public:
  Parser(const std::string& src, int nvars) : s_(src), n_(nvars) {}

  Poly run() {
    Poly p = expr();
    skip();
    require(pos_ == s_.size(), Err::InvalidInput, "trailing characters in polynomial");
    return p;
  }

private:
  const std::string& s_;
  int n_;
  size_t pos_ = 0;

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool eat(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly expr() {
    bool neg = false;
    if (eat('-')) neg = true;
    else eat('+');
    Poly acc = term();
    if (neg) acc = acc * Rat(-1);
    while (true) {
      if (eat('+')) acc = acc + term();
      else if (eat('-')) acc = acc - term();
      else break;
    }
    return acc;
  }

  Poly term() {
    Poly acc = factor();
    while (eat('*')) acc = acc * factor();
    return acc;
  }

  Poly factor() {
    Poly base = atom();
    if (eat('^')) {
      unsigned k = uint_lit();
      base = base.pow(k);
    }
    return base;
  }

  unsigned uint_lit() {
    skip();
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    require(pos_ > start, Err::InvalidInput, "expected integer in polynomial");
    return static_cast<unsigned>(std::stoul(s_.substr(start, pos_ - start)));
  }

  Poly atom() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      Poly p = expr();
      require(eat(')'), Err::InvalidInput, "missing ')' in polynomial");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      unsigned num = uint_lit();
      if (eat('/')) {
        unsigned den = uint_lit();
        require(den != 0, Err::InvalidInput, "zero denominator");
        Rat r(static_cast<long>(num), static_cast<long>(den));
        r.canonicalize();
        return Poly::constant(n_, r);
      }
      return Poly::constant(n_, Rat(static_cast<long>(num)));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      ++pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      return Poly::variable(n_, var_index(name));
    }
    fail(Err::InvalidInput, std::string("unexpected character '") + c + "' in polynomial");
  }

  int var_index(const std::string& name) {
    if (name == "t" && n_ == 1) return 0;
    if (name == "x" && n_ <= 3) return 0;
    if (name == "y" && n_ >= 2 && n_ <= 3) return 1;
    if (name == "z" && n_ == 3) return 2;
    if (name.size() >= 2 && name[0] == 'x') {
      int k = std::stoi(name.substr(1));
      if (k >= 1 && k <= n_) return k - 1;
    }
    fail(Err::InvalidInput, "unknown variable '" + name + "'");
  }
};

}  // namespace

Poly poly_parse(const std::string& src, int nvars) { return Parser(src, nvars).run(); }

}  // namespace weylforge
