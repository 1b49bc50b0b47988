#include "s1fc/rational_function.hpp"

#include <cctype>
#include <stdexcept>

namespace s1fc {

Poly RationalFunction::denominator() const {
  Poly d(1);
  for (const auto& [f, e] : den_) d *= f.pow(e);
  return d;
}

void RationalFunction::divide_by_poly(const Poly& p, int e) {
  if (p.is_zero()) throw std::domain_error("division by zero");
  if (e == 0) return;
  Poly q = p;
  for (auto& [f, k] : den_)
    while (!q.is_constant()) {
      auto r = q.divide_exact(f);
      if (!r) break;
      q = std::move(*r);
      k += e;
    }
  const Rational lc = q.leading().second;
  num_ *= s1fc::pow(Rational(1) / lc, e);
  if (!q.is_constant()) den_[q * (Rational(1) / lc)] += e;
  cancel();
}

void RationalFunction::cancel() {
  if (num_.is_zero()) {
    den_.clear();
    return;
  }
  for (auto it = den_.begin(); it != den_.end();) {
    while (it->second > 0) {
      auto q = num_.divide_exact(it->first);
      if (!q) break;
      num_ = std::move(*q);
      --it->second;
    }
    if (it->second == 0)
      it = den_.erase(it);
    else
      ++it;
  }
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  std::map<Poly, int> l = den_;
  for (const auto& [f, e] : o.den_) l[f] = std::max(l[f], e);
  Poly a = num_, b = o.num_;
  for (const auto& [f, e] : l) {
    auto ia = den_.find(f);
    auto ib = o.den_.find(f);
    int ea = ia == den_.end() ? 0 : ia->second;
    int eb = ib == o.den_.end() ? 0 : ib->second;
    if (e > ea) a *= f.pow(e - ea);
    if (e > eb) b *= f.pow(e - eb);
  }
  num_ = a + b;
  den_ = std::move(l);
  cancel();
  return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) { return *this += -o; }

RationalFunction RationalFunction::operator-() const {
  RationalFunction r(*this);
  r.num_ = -r.num_;
  return r;
}

RationalFunction& RationalFunction::operator*=(const RationalFunction& o) {
  if (is_zero() || o.is_zero()) return *this = RationalFunction();
  num_ *= o.num_;
  for (const auto& [f, e] : o.den_) den_[f] += e;
  cancel();
  return *this;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& o) {
  if (o.is_zero()) throw std::domain_error("division by zero rational function");
  num_ *= o.denominator();
  divide_by_poly(o.num_, 1);
  return *this;
}

RationalFunction RationalFunction::pow(int e) const {
  if (e < 0) return RationalFunction(1) / pow(-e);
  RationalFunction r(1), b(*this);
  while (e) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return r;
}

Rational RationalFunction::eval(const std::vector<Rational>& x) const {
  Rational d(1);
  for (const auto& [f, e] : den_) d *= s1fc::pow(f.eval(x), e);
  if (d == 0) throw std::domain_error("rational function evaluated at a pole");
  return num_.eval(x) / d;
}

namespace {

RationalSeries poly_series(const std::vector<Rational>& c) {
  return RationalSeries::from_coeffs(0, c, kExactOrder);
}

int poly_valuation(const std::vector<Rational>& c) {
  for (size_t i = 0; i < c.size(); ++i)
    if (c[i] != 0) return static_cast<int>(i);
  return -1;
}

}  // namespace

RationalSeries RationalFunction::along_ray(const std::vector<Rational>& a, int order) const {
  if (num_.is_zero()) return RationalSeries(order);
  auto nc = num_.along_ray(a);
  int v = poly_valuation(nc);
  if (v < 0) return RationalSeries(order);
  std::vector<std::pair<std::vector<Rational>, int>> fs;
  int total = v;
  for (const auto& [f, e] : den_) {
    auto fc = f.along_ray(a);
    int vf = poly_valuation(fc);
    if (vf < 0) throw std::domain_error("denominator factor vanishes identically on the ray");
    total -= e * vf;
    fs.emplace_back(std::move(fc), e);
  }
  const int rel = order - total;
  if (rel <= 0) return RationalSeries(order);
  RationalSeries r = poly_series(nc).truncated(v + rel);
  for (const auto& [fc, e] : fs) {
    int vf = poly_valuation(fc);
    RationalSeries inv = poly_series(fc).truncated(vf + rel).inverse();
    for (int k = 0; k < e; ++k) r *= inv;
  }
  return r.truncated(order);
}

RationalFunction RationalFunction::substitute(const std::vector<Poly>& images) const {
  RationalFunction r(num_.substitute(images));
  for (const auto& [f, e] : den_) r.divide_by_poly(f.substitute(images), e);
  return r;
}

std::string RationalFunction::str(const std::vector<std::string>& names) const {
  if (den_.empty()) return num_.str(names);
  std::string d;
  for (const auto& [f, e] : den_) {
    if (!d.empty()) d += "*";
    d += "(" + f.str(names) + ")";
    if (e > 1) d += "^" + std::to_string(e);
  }
  return "(" + num_.str(names) + ")/(" + d + ")";
}

namespace {

class Parser {
 public:
  Parser(std::string_view s, const std::vector<std::string>& names) : s_(s), names_(names) {}

  RationalFunction parse() {
    RationalFunction r = expr();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("parse error at " + std::to_string(pos_) + ": " + what + " in '" + std::string(s_) + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  RationalFunction expr() {
    RationalFunction r = term();
    for (;;) {
      if (eat('+'))
        r += term();
      else if (eat('-'))
        r -= term();
      else
        return r;
    }
  }
  RationalFunction term() {
    RationalFunction r = unary();
    for (;;) {
      if (eat('*'))
        r *= unary();
      else if (eat('/'))
        r /= unary();
      else
        return r;
    }
  }
  RationalFunction unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }
  RationalFunction power() {
    RationalFunction b = primary();
    if (eat('^')) {
      skip();
      bool neg = eat('-');
      skip();
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("exponent expected");
      int e = std::stoi(std::string(s_.substr(start, pos_ - start)));
      return b.pow(neg ? -e : e);
    }
    return b;
  }
  RationalFunction primary() {
    skip();
    if (eat('(')) {
      RationalFunction r = expr();
      if (!eat(')')) fail("')' expected");
      return r;
    }
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return RationalFunction(Rational(Integer(std::string(s_.substr(start, pos_ - start)))));
    }
    if (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
      size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string id(s_.substr(start, pos_ - start));
      for (size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == id) return RationalFunction::var(static_cast<int>(i));
      fail("unknown variable '" + id + "'");
    }
    fail("operand expected");
  }

  std::string_view s_;
  const std::vector<std::string>& names_;
  size_t pos_ = 0;
};

}  // namespace

RationalFunction parse_rational_function(std::string_view text, const std::vector<std::string>& names) {
  return Parser(text, names).parse();
}

namespace {

Poly truncate_degree(const Poly& p, int max_deg) {
  Poly out;
  for (const auto& [m, c] : p.terms()) {
    int d = 0;
    for (int x : m) d += x;
    if (d <= max_deg) out += Poly::monomial(m, c);
  }
  return out;
}

}  // namespace

Rational taylor_coefficient(const RationalFunction& f, const Poly::Mono& e0) {
  Poly::Mono e(e0);
  while (!e.empty() && e.back() == 0) e.pop_back();
  int deg = 0;
  for (int x : e) deg += x;
  const Poly d = f.denominator();
  const Rational d0 = d.constant_term();
  if (d0 == 0) throw SingularExpansion("denominator vanishes at the expansion point");
  const Poly r = (d - Poly(d0)) * (Rational(-1) / d0);
  Poly inv(1), power(1);
  for (int k = 1; k <= deg; ++k) {
    power = truncate_degree(power * r, deg);
    if (power.is_zero()) break;
    inv += power;
  }
  Poly full = truncate_degree(f.numerator() * inv, deg) * (Rational(1) / d0);
  auto it = full.terms().find(e);
  return it == full.terms().end() ? Rational(0) : it->second;
}

}  // namespace s1fc
