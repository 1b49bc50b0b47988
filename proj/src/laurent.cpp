#include "s1fc/laurent.hpp"

namespace s1fc {

PiSeries p_series(const Rational& c, int order) {
  if (c == 0) throw std::domain_error("p_series: zero direction");
  // sin(π c t)/(π c t) = sum_k (-1)^k π^(2k) c^(2k) t^(2k) / (2k+1)!
  const int n = std::max(order + 1, 1);
  std::vector<PiPoly> s(n, PiPoly());
  Rational fact(1);
  for (int k = 0; 2 * k < n; ++k) {
    if (k > 0) fact *= Rational((2 * k) * (2 * k + 1));
    Rational v = pow(c, 2 * k) / fact;
    if (k % 2) v = -v;
    s[2 * k] = PiPoly::pi2_power(k, v);
  }
  PiSeries sinc = PiSeries::from_coeffs(0, s, n);
  PiSeries lead = PiSeries::monomial(PiPoly(Rational(1) / (2 * c)), -1, kExactOrder);
  return (lead * sinc.inverse()).truncated(order);
}

}  // namespace s1fc
