#pragma once

#include "s1fc/bigfloat.hpp"
#include "s1fc/matrix.hpp"

#include <complex>
#include <optional>
#include <utility>
#include <vector>

namespace s1fc {

// Dense univariate polynomial over Q, coefficient of x^k at index k, no trailing zeros.
using UPoly = std::vector<Rational>;

void upoly_trim(UPoly& p);
int upoly_degree(const UPoly& p);
UPoly upoly_mul(const UPoly& a, const UPoly& b);
UPoly upoly_sub(const UPoly& a, const UPoly& b);
UPoly upoly_derivative(const UPoly& p);
// Quotient and remainder.
std::pair<UPoly, UPoly> upoly_divmod(const UPoly& a, const UPoly& b);
UPoly upoly_monic(UPoly p);
UPoly upoly_gcd(UPoly a, UPoly b);
Rational upoly_eval(const UPoly& p, const Rational& x);
Mpfr upoly_eval(const UPoly& p, const Mpfr& x);

// Characteristic polynomial det(x - A) via Hessenberg reduction.
UPoly charpoly(const QMatrix& a);
// Faddeev-LeVerrier, used as an independent check.
UPoly charpoly_leverrier(const QMatrix& a);

// Yun factorization: (factor, multiplicity) pairs, factors monic squarefree.
std::vector<std::pair<UPoly, int>> squarefree_factorization(const UPoly& p);

// All complex roots of a squarefree polynomial (Aberth iteration).
std::vector<std::complex<long double>> approximate_roots(const UPoly& p);

// Newton refinement of a simple real root at the current mpfr precision.
Mpfr refine_real_root(const UPoly& p, Mpfr x);

// Exact decimal expansion of a finite scientific-notation string.
Rational decimal_to_rational(const std::string& s);

// Smallest-denominator rational within 10^-digits of x whose value is a root of p, if any.
std::optional<Rational> rational_root_near(const UPoly& p, const Mpfr& x, unsigned digits);

// Basis of the right kernel.
std::vector<std::vector<Rational>> nullspace(const QMatrix& a);
// Kernel vector of a numerically rank-deficient-by-one matrix.
std::vector<Mpfr> nullspace_mpfr(const Matrix<Mpfr>& a);

Matrix<Mpfr> to_mpfr_matrix(const QMatrix& a);

}  // namespace s1fc
