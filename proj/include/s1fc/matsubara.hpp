#pragma once

#include "s1fc/bigfloat.hpp"
#include "s1fc/lattice.hpp"
#include "s1fc/linalg.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace s1fc {

struct DegenerateDominantEigenvalue : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ZeroEigenvalue : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DimensionTooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Soft cap on the Matsubara space dimension (env S1FC_MAX_DIM, default 3^8).
std::size_t max_dimension();

// Dominant eigenpair of the Matsubara transfer matrix T(0).
struct SpectralState {
  MatsubaraData md;
  unsigned digits = 0;
  std::string method;  // "scalar", "exact", "algebraic", "power-iteration"

  // Set when the eigenpair is rational.
  std::optional<Rational> eigenvalue_exact;
  std::vector<Rational> right_exact, left_exact;

  Mpfr eigenvalue;
  std::vector<Mpfr> right, left;

  bool exact() const { return eigenvalue_exact.has_value(); }
  // max |T v - θ v| / max |v| over both sides.
  Mpfr residual() const;
};

SpectralState dominant_state(const MatsubaraData& md, unsigned digits);

// Operator on n spin-1 sites, 3^n x 3^n.
struct LocalOperator {
  int n = 0;
  QMatrix m;

  bool sl2_invariant() const;
  static LocalOperator identity(int n);
  // Builtin "id:n", "ss:n", or a JSON matrix of "p/q" strings.
  static LocalOperator parse(const std::string& spec);
};

// Σ_a S^a_1 S^a_n with identities in between.
LocalOperator build_ss_operator(int n);
// Global generator Σ_j x_j on n spin-1 sites.
QMatrix global_generator(int n, const QMatrix& x);

struct Expectation {
  std::optional<Rational> exact;
  BigFloat value;
};

// ⟨Ψ| Σ O_{JI} 𝐓_{i1 j1}(λ1)...𝐓_{in jn}(λn) |Ψ⟩ / (Π 𝐓(λj) ⟨Ψ|Ψ⟩).
Expectation direct_expectation(const LocalOperator& o, const std::vector<Rational>& lambdas,
                               const SpectralState& st, unsigned digits);
// Same quantity from the explicit partial trace over the spin-1 auxiliary spaces.
Expectation direct_expectation_bruteforce(const LocalOperator& o, const std::vector<Rational>& lambdas,
                                          const SpectralState& st, unsigned digits);

}  // namespace s1fc
