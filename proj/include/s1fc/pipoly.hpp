#pragma once

#include "s1fc/rational.hpp"

#include <map>
#include <optional>
#include <string>

#include <json.hpp>

namespace s1fc {

// Polynomial in π² with rational coefficients. Key k stands for π^(2k).
class PiPoly {
 public:
  PiPoly() = default;
  PiPoly(const Rational& c);  // NOLINT: constants embed implicitly
  PiPoly(int c) : PiPoly(Rational(c)) {}

  static PiPoly pi2_power(int k, const Rational& c = 1);

  const std::map<int, Rational>& terms() const { return c_; }
  Rational coeff(int k) const;
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.empty() || (c_.size() == 1 && c_.begin()->first == 0); }
  Rational constant() const { return coeff(0); }
  // Degree in π²; -1 for the zero polynomial.
  int degree() const { return c_.empty() ? -1 : c_.rbegin()->first; }

  PiPoly& operator+=(const PiPoly& o);
  PiPoly& operator-=(const PiPoly& o);
  PiPoly& operator*=(const PiPoly& o);
  PiPoly& operator*=(const Rational& r);
  friend PiPoly operator+(PiPoly a, const PiPoly& b) { return a += b; }
  friend PiPoly operator-(PiPoly a, const PiPoly& b) { return a -= b; }
  friend PiPoly operator*(PiPoly a, const PiPoly& b) { return a *= b; }
  friend PiPoly operator*(PiPoly a, const Rational& b) { return a *= b; }
  friend PiPoly operator*(const Rational& b, PiPoly a) { return a *= b; }
  PiPoly operator-() const;
  friend bool operator==(const PiPoly& a, const PiPoly& b) { return a.c_ == b.c_; }

  // Inverse only for nonzero constants.
  std::optional<PiPoly> inverse() const;

  // Human form, e.g. "8/9·π² − 34/3".
  std::string str() const;

  nlohmann::json to_json() const;
  static PiPoly from_json(const nlohmann::json& j);

 private:
  void add(int k, const Rational& v);
  std::map<int, Rational> c_;
};

}  // namespace s1fc
