#include "s1fc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace s1fc {

void upoly_trim(UPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int upoly_degree(const UPoly& p) { return static_cast<int>(p.size()) - 1; }

UPoly upoly_mul(const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly c(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  upoly_trim(c);
  return c;
}

UPoly upoly_sub(const UPoly& a, const UPoly& b) {
  UPoly c(std::max(a.size(), b.size()), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) c[i] -= b[i];
  upoly_trim(c);
  return c;
}

UPoly upoly_derivative(const UPoly& p) {
  UPoly d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * static_cast<long>(k));
  upoly_trim(d);
  return d;
}

std::pair<UPoly, UPoly> upoly_divmod(const UPoly& a, const UPoly& b) {
  if (b.empty()) throw std::domain_error("polynomial division by zero");
  UPoly r = a, q;
  upoly_trim(r);
  if (r.size() < b.size()) return {{}, r};
  q.assign(r.size() - b.size() + 1, Rational(0));
  for (int k = upoly_degree(r) - upoly_degree(b); k >= 0; --k) {
    Rational c = r[k + b.size() - 1] / b.back();
    q[k] = c;
    if (c == 0) continue;
    for (std::size_t i = 0; i < b.size(); ++i) r[k + i] -= c * b[i];
  }
  upoly_trim(q);
  upoly_trim(r);
  return {q, r};
}

UPoly upoly_monic(UPoly p) {
  upoly_trim(p);
  if (p.empty()) return p;
  Rational lc = p.back();
  for (auto& c : p) c /= lc;
  return p;
}

UPoly upoly_gcd(UPoly a, UPoly b) {
  upoly_trim(a);
  upoly_trim(b);
  while (!b.empty()) {
    UPoly r = upoly_monic(upoly_divmod(a, b).second);
    a = std::move(b);
    b = std::move(r);
  }
  return upoly_monic(a);
}

Rational upoly_eval(const UPoly& p, const Rational& x) {
  Rational s(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) s = s * x + *it;
  return s;
}

Mpfr upoly_eval(const UPoly& p, const Mpfr& x) {
  Mpfr s = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) s = s * x + to_mpfr(*it);
  return s;
}

UPoly charpoly(const QMatrix& a0) {
  const std::size_t n = a0.rows();
  if (a0.cols() != n) throw DimensionMismatch("charpoly needs a square matrix");
  QMatrix h = a0;
  for (std::size_t m = 1; m + 1 < n; ++m) {
    std::size_t piv = m;
    while (piv < n && h(piv, m - 1) == 0) ++piv;
    if (piv == n) continue;
    if (piv != m) {
      for (std::size_t j = 0; j < n; ++j) std::swap(h(piv, j), h(m, j));
      for (std::size_t i = 0; i < n; ++i) std::swap(h(i, piv), h(i, m));
    }
    for (std::size_t i = m + 1; i < n; ++i) {
      if (h(i, m - 1) == 0) continue;
      Rational u = h(i, m - 1) / h(m, m - 1);
      for (std::size_t j = 0; j < n; ++j) h(i, j) -= u * h(m, j);
      for (std::size_t r = 0; r < n; ++r) h(r, m) += u * h(r, i);
    }
  }
  // p[k] = charpoly of the leading k x k block.
  std::vector<UPoly> p(n + 1);
  p[0] = {Rational(1)};
  for (std::size_t m = 1; m <= n; ++m) {
    p[m] = upoly_mul({-h(m - 1, m - 1), Rational(1)}, p[m - 1]);
    Rational prod(1);
    for (std::size_t i = m - 1; i-- > 0;) {
      prod *= h(i + 1, i);
      if (prod == 0) break;
      UPoly term = p[i];
      for (auto& c : term) c *= prod * h(i, m - 1);
      p[m] = upoly_sub(p[m], term);
    }
  }
  return p[n];
}

UPoly charpoly_leverrier(const QMatrix& a) {
  const std::size_t n = a.rows();
  UPoly c(n + 1, Rational(0));
  c[n] = 1;
  QMatrix m(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    m = multiply_serial(a, m) + QMatrix::identity(n) * c[n - k + 1];
    c[n - k] = -multiply_serial(a, m).trace() / static_cast<long>(k);
  }
  return c;
}

std::vector<std::pair<UPoly, int>> squarefree_factorization(const UPoly& p0) {
  UPoly p = upoly_monic(p0);
  std::vector<std::pair<UPoly, int>> out;
  if (upoly_degree(p) < 1) return out;
  UPoly dp = upoly_derivative(p);
  UPoly a = upoly_gcd(p, dp);
  UPoly b = upoly_divmod(p, a).first, c = upoly_divmod(dp, a).first;
  UPoly d = upoly_sub(c, upoly_derivative(b));
  for (int i = 1; upoly_degree(b) >= 1; ++i) {
    a = upoly_gcd(b, d);
    if (upoly_degree(a) >= 1) out.emplace_back(a, i);
    b = upoly_divmod(b, a).first;
    c = upoly_divmod(d, a).first;
    d = upoly_sub(c, upoly_derivative(b));
  }
  return out;
}

std::vector<std::complex<long double>> approximate_roots(const UPoly& p0) {
  using C = std::complex<long double>;
  UPoly p = upoly_monic(p0);
  const int n = upoly_degree(p);
  if (n < 1) return {};
  std::vector<C> a(p.size()), da;
  for (std::size_t k = 0; k < p.size(); ++k) a[k] = static_cast<long double>(p[k].convert_to<long double>());
  for (std::size_t k = 1; k < a.size(); ++k) da.push_back(a[k] * static_cast<long double>(k));
  auto horner = [](const std::vector<C>& c, C x) {
    C s = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * x + *it;
    return s;
  };
  long double bound = 0;
  for (int k = 0; k < n; ++k) bound = std::max(bound, std::abs(a[k]));
  bound += 1;
  std::vector<C> z(n);
  for (int k = 0; k < n; ++k)
    z[k] = std::polar(bound * 0.7L, 2.0L * 3.14159265358979323846L * (k + 0.25L) / n);
  for (int it = 0; it < 2000; ++it) {
    long double change = 0;
    for (int k = 0; k < n; ++k) {
      C f = horner(a, z[k]), df = horner(da, z[k]);
      if (std::abs(f) == 0) continue;
      C ratio = f / df, s = 0;
      for (int j = 0; j < n; ++j)
        if (j != k) s += 1.0L / (z[k] - z[j]);
      C w = ratio / (1.0L - ratio * s);
      z[k] -= w;
      change = std::max(change, std::abs(w) / std::max(1.0L, std::abs(z[k])));
    }
    if (change < 1e-17L) break;
  }
  return z;
}

Mpfr refine_real_root(const UPoly& p, Mpfr x) {
  UPoly dp = upoly_derivative(p);
  const Mpfr eps = boost::multiprecision::pow(Mpfr(10), -static_cast<int>(Mpfr::default_precision()) + 5);
  for (int it = 0; it < 200; ++it) {
    Mpfr step = upoly_eval(p, x) / upoly_eval(dp, x);
    x -= step;
    if (abs(step) <= eps * std::max(Mpfr(1), Mpfr(abs(x)))) break;
  }
  return x;
}

Rational decimal_to_rational(const std::string& s) {
  std::size_t epos = s.find_first_of("eE");
  std::string mant = s.substr(0, epos);
  long exp10 = epos == std::string::npos ? 0 : std::stol(s.substr(epos + 1));
  bool neg = !mant.empty() && mant[0] == '-';
  if (neg || (!mant.empty() && mant[0] == '+')) mant = mant.substr(1);
  std::string digits;
  for (char ch : mant) {
    if (ch == '.') continue;
    if (ch < '0' || ch > '9') throw std::invalid_argument("bad decimal: " + s);
    digits += ch;
  }
  std::size_t dot = mant.find('.');
  if (dot != std::string::npos) exp10 -= static_cast<long>(mant.size() - dot - 1);
  Rational q{Integer(digits.empty() ? "0" : digits)};
  q *= pow(Rational(10), static_cast<int>(exp10));
  return neg ? Rational(-q) : q;
}

std::optional<Rational> rational_root_near(const UPoly& p, const Mpfr& x, unsigned digits) {
  // Continued-fraction convergents of x.
  Mpfr r = x;
  Integer h0 = 1, h1 = 0, k0 = 0, k1 = 1;
  const Mpfr tol = boost::multiprecision::pow(Mpfr(10), -static_cast<int>(digits));
  for (int it = 0; it < 200; ++it) {
    Mpfr fl = floor(r);
    Integer a(fl);
    Integer h = a * h0 + h1, k = a * k0 + k1;
    h1 = h0;
    h0 = h;
    k1 = k0;
    k0 = k;
    Rational c(h, k);
    if (upoly_eval(p, c) == 0) return c;
    if (abs(to_mpfr(c) - x) < tol) return std::nullopt;
    Mpfr frac = r - fl;
    if (frac == 0) return std::nullopt;
    r = 1 / frac;
  }
  return std::nullopt;
}

std::vector<std::vector<Rational>> nullspace(const QMatrix& a0) {
  QMatrix a = a0;
  const std::size_t n = a.rows(), m = a.cols();
  std::vector<std::size_t> pivcol;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m && row < n; ++col) {
    std::size_t piv = row;
    while (piv < n && a(piv, col) == 0) ++piv;
    if (piv == n) continue;
    for (std::size_t j = 0; j < m; ++j) std::swap(a(piv, j), a(row, j));
    Rational inv = Rational(1) / a(row, col);
    for (std::size_t j = 0; j < m; ++j) a(row, j) *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == row || a(i, col) == 0) continue;
      Rational f = a(i, col);
      for (std::size_t j = 0; j < m; ++j) a(i, j) -= f * a(row, j);
    }
    pivcol.push_back(col);
    ++row;
  }
  std::vector<std::vector<Rational>> basis;
  std::vector<bool> is_piv(m, false);
  for (auto c : pivcol) is_piv[c] = true;
  for (std::size_t free = 0; free < m; ++free) {
    if (is_piv[free]) continue;
    std::vector<Rational> v(m, Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < pivcol.size(); ++r) v[pivcol[r]] = -a(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<Mpfr> nullspace_mpfr(const Matrix<Mpfr>& a0) {
  Matrix<Mpfr> a = a0;
  const std::size_t n = a.rows();
  Mpfr scale = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, Mpfr(abs(a(i, j))));
  const Mpfr tol = scale * boost::multiprecision::pow(Mpfr(10), -static_cast<int>(Mpfr::default_precision()) / 2);
  std::vector<std::size_t> pivcol;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < n; ++col) {
    std::size_t piv = row;
    for (std::size_t i = row + 1; i < n; ++i)
      if (abs(a(i, col)) > abs(a(piv, col))) piv = i;
    if (abs(a(piv, col)) <= tol) continue;
    for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(row, j));
    Mpfr inv = 1 / a(row, col);
    for (std::size_t j = 0; j < n; ++j) a(row, j) *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == row) continue;
      Mpfr f = a(i, col);
      if (f == 0) continue;
      for (std::size_t j = 0; j < n; ++j) a(i, j) -= f * a(row, j);
    }
    pivcol.push_back(col);
    ++row;
  }
  if (pivcol.size() + 1 != n) throw std::runtime_error("numerical kernel is not one-dimensional");
  std::vector<bool> is_piv(n, false);
  for (auto c : pivcol) is_piv[c] = true;
  std::size_t free = 0;
  while (is_piv[free]) ++free;
  std::vector<Mpfr> v(n, Mpfr(0));
  v[free] = 1;
  for (std::size_t r = 0; r < pivcol.size(); ++r) v[pivcol[r]] = -a(r, free);
  return v;
}

Matrix<Mpfr> to_mpfr_matrix(const QMatrix& a) {
  Matrix<Mpfr> m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = to_mpfr(a(i, j));
  return m;
}

}  // namespace s1fc
