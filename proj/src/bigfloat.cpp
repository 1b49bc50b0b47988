#include "s1fc/bigfloat.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace s1fc {

Mpfr pi_mpfr() {
  Mpfr p;
  mpfr_const_pi(p.backend().data(), MPFR_RNDN);
  return p;
}

Mpfr to_mpfr(const Rational& q) {
  Mpfr r;
  mpfr_set_q(r.backend().data(), q.backend().data(), MPFR_RNDN);
  return r;
}

BigFloat make_bigfloat(const Rational& q, unsigned digits) {
  PrecisionScope scope(digits + 10);
  return BigFloat{to_mpfr(q), digits};
}

BigFloat pipoly_eval(const PiPoly& p, unsigned digits) {
  if (digits < 10) throw std::invalid_argument("pipoly_eval: digits must be >= 10");
  // Guard digits cover cancellation between large coefficients.
  unsigned guard = 20;
  for (const auto& [k, v] : p.terms()) {
    auto bits = std::max(msb(abs(num(v))) , msb(den(v)));
    guard = std::max<unsigned>(guard, static_cast<unsigned>(bits / 3) + 20);
  }
  PrecisionScope scope(digits + guard);
  const Mpfr pi2 = pi_mpfr() * pi_mpfr();
  Mpfr s = 0;
  for (const auto& [k, v] : p.terms()) s += to_mpfr(v) * boost::multiprecision::pow(pi2, k);
  return BigFloat{s, digits};
}

std::string round_half_even(const Mpfr& x, unsigned sig) {
  if (sig == 0) throw std::invalid_argument("sig must be positive");
  if (x == 0) return "0";
  std::string s = x.str(static_cast<std::streamsize>(sig + 25), std::ios_base::scientific);
  bool neg = false;
  if (s[0] == '-') {
    neg = true;
    s.erase(0, 1);
  }
  const auto epos = s.find_first_of("eE");
  int exp10 = std::stoi(s.substr(epos + 1));
  std::string mant = s.substr(0, epos);
  mant.erase(std::remove(mant.begin(), mant.end(), '.'), mant.end());
  std::string keep = mant.substr(0, sig);
  std::string rest = mant.substr(sig);
  bool up = false;
  if (!rest.empty()) {
    if (rest[0] > '5') {
      up = true;
    } else if (rest[0] == '5') {
      bool tail_nonzero = std::any_of(rest.begin() + 1, rest.end(), [](char c) { return c != '0'; });
      up = tail_nonzero || ((keep.back() - '0') % 2 == 1);
    }
  }
  if (up) {
    int i = static_cast<int>(keep.size()) - 1;
    while (i >= 0 && keep[i] == '9') keep[i--] = '0';
    if (i < 0) {
      keep.insert(keep.begin(), '1');
      keep.pop_back();
      ++exp10;
    } else {
      ++keep[i];
    }
  }
  std::string out;
  if (exp10 >= -6 && exp10 < static_cast<int>(sig) + 6) {
    if (exp10 < 0) {
      out = "0." + std::string(-exp10 - 1, '0') + keep;
    } else if (exp10 + 1 >= static_cast<int>(keep.size())) {
      out = keep + std::string(exp10 + 1 - keep.size(), '0');
    } else {
      out = keep.substr(0, exp10 + 1) + "." + keep.substr(exp10 + 1);
    }
  } else {
    out = keep.substr(0, 1) + (keep.size() > 1 ? "." + keep.substr(1) : "") + "e" + std::to_string(exp10);
  }
  return neg ? "-" + out : out;
}

std::string BigFloat::decimal(unsigned sig) const { return round_half_even(value, sig); }

nlohmann::json BigFloat::to_json(unsigned sig) const {
  return {{"decimal", decimal(sig)}, {"precision_digits", digits}};
}

bool agree_to_digits(const Mpfr& a, const Mpfr& b, unsigned digits) {
  PrecisionScope scope(digits + 20);
  Mpfr scale = std::max({Mpfr(1), Mpfr(abs(a)), Mpfr(abs(b))});
  Mpfr tol = boost::multiprecision::pow(Mpfr(10), -static_cast<int>(digits)) * scale;
  return abs(a - b) <= tol;
}

}  // namespace s1fc
