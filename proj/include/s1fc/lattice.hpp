#pragma once

#include "s1fc/matrix.hpp"

#include <json.hpp>

#include <stdexcept>
#include <vector>

namespace s1fc {

struct CalibrationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Explicit spin-1 R-matrix on C^3 (x) C^3.
QMatrix r_s1(const Rational& zeta);
// Permutation of C^d (x) C^d.
QMatrix permutation(std::size_t d);

// A acts on factors i, j of a tensor product with the given dimensions.
QMatrix embed_two_site(const QMatrix& a, int i, int j, const std::vector<int>& dims);

// R12 R13 R23 == R23 R13 R12 for two-site matrices on a triple product.
bool check_yang_baxter(const QMatrix& r12, const QMatrix& r13, const QMatrix& r23,
                       const std::vector<int>& dims);
bool check_yang_baxter_s1(const Rational& zeta, const Rational& eta);
// Spin-1 R against the spin-1 (aux) Lax on a spin-1/2 quantum site.
bool check_mixed_rll(const Rational& u, const Rational& v);

// Spin s = spin2/2 generators in the basis f^k v0 / k!.
struct Sl2Rep {
  QMatrix h, e, f;
};
Sl2Rep sl2_rep(int spin2);

// (u+1/2) Id + h(x)h/2 + e(x)f + f(x)e, aux factor first.
QMatrix lax(int aux_spin2, int quantum_spin2, const Rational& u);

struct MatsubaraData {
  std::vector<int> spin2;  // 2 s_k
  std::vector<Rational> tau;

  int length() const { return static_cast<int>(spin2.size()); }
  std::size_t dimension() const;

  static MatsubaraData from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

// Matrix over an auxiliary space whose entries are quantum-space operators.
struct AuxOperator {
  int aux_dim = 0;
  std::vector<QMatrix> blocks;  // row-major aux_dim x aux_dim

  const QMatrix& operator()(int a, int b) const { return blocks[a * aux_dim + b]; }
  QMatrix& operator()(int a, int b) { return blocks[a * aux_dim + b]; }
  std::size_t quantum_dim() const { return blocks.empty() ? 0 : blocks[0].rows(); }
  QMatrix trace() const;
  // Single matrix on aux (x) quantum.
  QMatrix full() const;
};

// Aux operator on aux factor pos of the given aux factors; aux first, quantum last.
QMatrix embed_aux(const AuxOperator& t, int pos, const std::vector<int>& aux_dims);

// Spin-1/2 auxiliary monodromy L_1(λ-τ_1) ... L_L(λ-τ_L).
AuxOperator monodromy(const Rational& lambda, const MatsubaraData& md);
QMatrix transfer(const Rational& lambda, const MatsubaraData& md);

// Symmetric fusion vectors: V maps C^3 into C^2 (x) C^2, W V = Id, V W = projector.
QMatrix fusion_v();
QMatrix fusion_w();
QMatrix fusion_projector(int n);

// Spin-1 auxiliary monodromy W T_a1(λ-1/2) T_a2(λ+1/2) V.
AuxOperator fused_monodromy(const Rational& lambda, const MatsubaraData& md);
QMatrix fused_transfer(const Rational& lambda, const MatsubaraData& md);

// T_1(λ_j-1/2) T_2(λ_j+1/2) ... P == P (fused product) P on the full space, n = lambdas.size().
bool check_fusion(const std::vector<Rational>& lambdas, const MatsubaraData& md);

// T(λ-1/2)T(λ+1/2) - 𝐓(λ); CalibrationFailure unless it is central.
Rational quantum_determinant(const Rational& lambda, const MatsubaraData& md);
bool check_eigen_relation(const MatsubaraData& md, const std::vector<Rational>& lambdas);
bool check_commute(const MatsubaraData& md, const Rational& lambda, const Rational& mu);

}  // namespace s1fc
