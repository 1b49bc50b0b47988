#pragma once

#include "s1fc/laurent.hpp"
#include "s1fc/polynomial.hpp"

#include <map>
#include <string>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace s1fc {

// numerator / prod_k factor_k^e_k. Factors are kept monic (lex leading
// coefficient 1) and non-constant; a common denominator is the exponent-wise max,
// so no multivariate gcd is needed. Factors dividing the numerator are cancelled.
class RationalFunction {
 public:
  RationalFunction() = default;
  RationalFunction(const Rational& c) : num_(c) {}  // NOLINT
  RationalFunction(int c) : num_(Rational(c)) {}     // NOLINT
  RationalFunction(const Poly& p) : num_(p) {}       // NOLINT
  static RationalFunction var(int i) { return RationalFunction(Poly::var(i)); }

  const Poly& numerator() const { return num_; }
  const std::map<Poly, int>& denominator_factors() const { return den_; }
  Poly denominator() const;
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.empty(); }

  RationalFunction& operator+=(const RationalFunction& o);
  RationalFunction& operator-=(const RationalFunction& o);
  RationalFunction& operator*=(const RationalFunction& o);
  RationalFunction& operator/=(const RationalFunction& o);
  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
  friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
  friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
  RationalFunction operator-() const;
  RationalFunction pow(int e) const;
  // Exact equality of the represented functions.
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) { return (a - b).is_zero(); }

  Rational eval(const std::vector<Rational>& x) const;
  // x_i -> a_i t, expanded up to (excluding) t^order.
  RationalSeries along_ray(const std::vector<Rational>& a, int order) const;
  RationalFunction substitute(const std::vector<Poly>& images) const;

  std::string str(const std::vector<std::string>& names = {}) const;

 private:
  void divide_by_poly(const Poly& p, int e);
  void cancel();
  Poly num_;
  std::map<Poly, int> den_;
};

struct SingularExpansion : std::domain_error {
  using std::domain_error::domain_error;
};
// Taylor coefficient of the monomial x^e at the origin; SingularExpansion if the denominator vanishes there.
Rational taylor_coefficient(const RationalFunction& f, const Poly::Mono& e);

// Parser for "+ - * / ^ ( )", integers and the given variable names.
RationalFunction parse_rational_function(std::string_view text, const std::vector<std::string>& names);

}  // namespace s1fc
