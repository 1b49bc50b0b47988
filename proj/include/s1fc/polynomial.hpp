#pragma once

#include "s1fc/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace s1fc {

// Multivariate polynomial over Rational. Variables are indices 0,1,...;
// exponent vectors carry no trailing zeros, so std::vector order is lex order.
class Poly {
 public:
  using Mono = std::vector<int>;

  Poly() = default;
  Poly(const Rational& c);  // NOLINT
  Poly(int c) : Poly(Rational(c)) {}
  static Poly var(int i);
  static Poly monomial(const Mono& m, const Rational& c);

  const std::map<Mono, Rational>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first.empty()); }
  Rational constant_term() const;
  // Lex-greatest term.
  const std::pair<const Mono, Rational>& leading() const { return *t_.rbegin(); }
  int total_degree() const;
  int num_vars() const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rational& r);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& r) { return a *= r; }
  Poly operator-() const;
  friend bool operator==(const Poly& a, const Poly& b) { return a.t_ == b.t_; }
  friend bool operator<(const Poly& a, const Poly& b) { return a.t_ < b.t_; }

  Poly pow(int e) const;
  Rational eval(const std::vector<Rational>& x) const;
  // Substitute x_i -> a_i * t; entry d of the result is the coefficient of t^d.
  std::vector<Rational> along_ray(const std::vector<Rational>& a) const;
  // Substitute x_i -> images[i] (polynomials).
  Poly substitute(const std::vector<Poly>& images) const;
  // Quotient when d divides *this exactly.
  std::optional<Poly> divide_exact(const Poly& d) const;

  std::string str(const std::vector<std::string>& names = {}) const;

 private:
  void add(const Mono& m, const Rational& c);
  std::map<Mono, Rational> t_;
};

}  // namespace s1fc
