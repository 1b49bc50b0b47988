#pragma once

#include "s1fc/laurent.hpp"
#include "s1fc/matrix.hpp"
#include "s1fc/rational_function.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace s1fc {

struct PoleAtZ : std::domain_error {
  using std::domain_error::domain_error;
};
struct ResidualOmega : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SingularLimit : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DirectionDependence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// φ(z) = (-3/(z+1) - 1/(z-1) + 3/z + 1/(z+2)) / 4.
Rational phi(const Rational& z);
RationalFunction phi(const RationalFunction& z);

// ω(λ_i-λ_j+k), p(λ_i-λ_j+k) = π/(2 sin π(...)), or the same-site atom σ_i.
struct Atom {
  enum class Type : int { Omega = 0, P = 1, Sigma = 2 };
  Type type;
  int i = 0, j = 0, k = 0;
  friend auto operator<=>(const Atom&, const Atom&) = default;
};

// Polynomial in atoms over rational functions of λ_0, λ_1, ...
class OmegaExpr {
 public:
  using Mono = std::map<Atom, int>;

  OmegaExpr() = default;
  OmegaExpr(const RationalFunction& c);  // NOLINT
  OmegaExpr(int c) : OmegaExpr(RationalFunction(c)) {}  // NOLINT
  static OmegaExpr atom(const Atom& a);
  static OmegaExpr omega(int i, int j, int k = 0) { return atom({Atom::Type::Omega, i, j, k}); }
  static OmegaExpr p(int i, int j, int k = 0) { return atom({Atom::Type::P, i, j, k}); }
  static OmegaExpr sigma(int i) { return atom({Atom::Type::Sigma, i, i, 0}); }

  const std::map<Mono, RationalFunction>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool contains(Atom::Type type) const;

  OmegaExpr& operator+=(const OmegaExpr& o);
  OmegaExpr& operator-=(const OmegaExpr& o);
  OmegaExpr& operator*=(const OmegaExpr& o);
  OmegaExpr operator-() const;
  friend OmegaExpr operator+(OmegaExpr a, const OmegaExpr& b) { return a += b; }
  friend OmegaExpr operator-(OmegaExpr a, const OmegaExpr& b) { return a -= b; }
  friend OmegaExpr operator*(const OmegaExpr& a, const OmegaExpr& b);
  friend bool operator==(const OmegaExpr& a, const OmegaExpr& b) { return (a - b).is_zero(); }

  // Canonical text, e.g. "(1/(l0-l1)) p(l0-l1)^2 + ..."
  std::string str(const std::vector<std::string>& names = {}) const;

 private:
  void add(const Mono& m, const RationalFunction& c);
  std::map<Mono, RationalFunction> t_;
};

// Eliminates ω(x+k), k ≠ 0, and p(x+k) via the functional equation
// ω(x+1) + ω(x) = p(x) - φ(x); orients every pair as i < j (ω even, p odd).
OmegaExpr omega_reduce(const OmegaExpr& e);

// Reduces and returns the ω-free remainder; ResidualOmega names the first surviving ω or σ term.
OmegaExpr assert_omega_cancellation(const OmegaExpr& e);

// ω̃ between the points λ_i + r/2 (row) and λ_j + c/2 (column), r, c ∈ {+1, -1}.
OmegaExpr omega_tilde(int i, int r, int j, int c);

// Laplace expansion.
OmegaExpr determinant(const std::vector<std::vector<OmegaExpr>>& m);

// λ_j = t a_j; series exact below t^order. e must be ω- and σ-free.
PiSeries expand_homogeneous(const OmegaExpr& e, const std::vector<Rational>& directions, int order = 1);

// Constant term after asserting that every negative power vanishes.
PiPoly regular_constant(const PiSeries& s, const std::string& context = "");
// Constant term, identical for every direction tuple.
PiPoly homogeneous_limit(const OmegaExpr& e, const std::vector<std::vector<Rational>>& directions);

}  // namespace s1fc
