#pragma once

#include "s1fc/bigfloat.hpp"
#include "s1fc/current_algebra.hpp"
#include "s1fc/matsubara.hpp"
#include "s1fc/omega.hpp"

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace s1fc {

struct UncalibratedSign : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SingularSystem : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotADensityMatrix : std::domain_error {
  using std::domain_error::domain_error;
};

// Per active site factor of the zero-temperature determinant formula.
inline constexpr int kSiteFactor = 2;

// g^{a,b} at spectral variable λ_site (0-based).
struct GFactor {
  int a, b;
  int site;
  friend auto operator<=>(const GFactor&, const GFactor&) = default;
};
using GMonomial = std::vector<GFactor>;

// "g13(l1) g31(l2)"; sites are 1-based in text. Empty text is the identity.
GMonomial parse_gmonomial(const std::string& text);
std::string gmonomial_str(const GMonomial& m);

// g12 → b*, g21 → c*, g13 → j+, g22 → j0, g31 → j-; UncalibratedSign otherwise.
Kind g_kind(const GFactor& g);
Word g_word(const GMonomial& m);

// Coefficients as rational functions of λ_0 … λ_{n-1}.
struct GCoefficientTable {
  int n = 0;
  std::vector<std::pair<GMonomial, RationalFunction>> entries;
};
std::string data_dir();
GCoefficientTable appendix_table(int n, const std::string& dir = data_dir());

// Mode decomposition of Σ_a S^a_1 S^a_n: normal-ordered mode words and coefficients.
struct ModeTable {
  int n = 0;
  std::vector<std::pair<Word, Rational>> terms;
};
ModeTable mode_table(int n, const std::string& dir = data_dir());

// Fermion point λ_site + shift/2 carrying b (true) or c (false).
struct FermionPoint {
  int site;
  int shift;
  bool b;
};
// Alternatives whose sum is the fat operator.
std::vector<std::vector<FermionPoint>> fat_expansion(const GFactor& g);

// Plain product expectation: signed ω̃ determinants, times kSiteFactor per site.
OmegaExpr g_plain_expectation(const GMonomial& m);

// ⟨:w:⟩ for a word at distinct spectral variables, with the singular corrections from normal_order.
OmegaExpr current_expectation(const Word& w);

// ⟨:Π g:⟩ = current_expectation of the letter word, ω- and σ-free.
OmegaExpr g_expectation_zeroT(const GMonomial& m);

// Coefficient of Π λ_i^{e_i} in a regular ω-free expression.
PiPoly homogeneous_coefficient(const OmegaExpr& f, const std::vector<int>& exponents);

// ⟨w⟩ for a normal-ordered mode word.
PiPoly mode_expectation(const Word& modes);

struct CorrelatorResult {
  int n = 0;
  PiPoly exact;
  BigFloat decimal;
  std::vector<std::string> log;
  nlohmann::json to_json(unsigned sig = 10) const;
};

enum class Route { Appendix, Modes };

struct CorrelatorOptions {
  Route route = Route::Appendix;
  std::vector<Rational> directions = {0, 1, 3};
  // Extra tuples for the direction independence check.
  std::vector<std::vector<Rational>> check_directions = {{0, 2, -5}, {Rational(1), Rational(-1, 2), Rational(4)}};
  unsigned digits = 50;
  bool parallel = true;
  std::string data = data_dir();
};

CorrelatorResult correlator(int n, const CorrelatorOptions& options = {});

// Stored exact values for n = 2..5.
CorrelatorResult reference_values(int n, unsigned digits = 50, const std::string& dir = data_dir());

// Basis expectation at one sample; supplied by the caller.
struct FitSample {
  MatsubaraData md;
  std::vector<Rational> lambdas;
};
using OmegaOracle = std::function<Rational(const GMonomial&, const FitSample&)>;

struct FitReport {
  std::vector<std::vector<Rational>> system;
  std::vector<Rational> rhs;
  std::size_t rank = 0;
  std::vector<Rational> coefficients;
};

// Σ_k x_k oracle(basis_k, s) = direct_expectation(target, s) for every sample, solved exactly.
FitReport fit_framework(const std::vector<GMonomial>& basis, const OmegaOracle& oracle,
                        const std::vector<FitSample>& samples, const LocalOperator& target, unsigned digits = 50);

// -Tr D log D.
BigFloat entropy(const QMatrix& d, unsigned digits = 50);

}  // namespace s1fc
