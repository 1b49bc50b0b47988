#pragma once

#include "s1fc/pipoly.hpp"
#include "s1fc/rational.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <string>

#include <json.hpp>

namespace s1fc {

using Mpfr = boost::multiprecision::mpfr_float;

// Sets the default mpfr precision (decimal digits) for the current scope.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned digits) : old_(Mpfr::default_precision()) { Mpfr::default_precision(digits); }
  ~PrecisionScope() { Mpfr::default_precision(old_); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned old_;
};

struct BigFloat {
  Mpfr value;
  unsigned digits = 0;

  // Round-half-even to `sig` significant digits.
  std::string decimal(unsigned sig = 10) const;
  nlohmann::json to_json(unsigned sig = 10) const;
};

Mpfr pi_mpfr();
Mpfr to_mpfr(const Rational& q);
BigFloat make_bigfloat(const Rational& q, unsigned digits);

// Requires digits >= 10.
BigFloat pipoly_eval(const PiPoly& p, unsigned digits);

std::string round_half_even(const Mpfr& x, unsigned sig);

// |a-b| <= 10^-digits * max(1,|a|,|b|)
bool agree_to_digits(const Mpfr& a, const Mpfr& b, unsigned digits);

}  // namespace s1fc
