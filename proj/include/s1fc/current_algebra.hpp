#pragma once

#include "s1fc/rational_function.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace s1fc {

struct NonTerminating : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SingularExtraction : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Declaration order is the normal ordering b* < c* < j+ < j0 < j-.
enum class Kind : int { BStar = 0, CStar = 1, JPlus = 2, JZero = 3, JMinus = 4 };

bool is_fermion(Kind k);
std::string kind_name(Kind k);  // "b*", "c*", "j+", "j0", "j-"
Kind parse_kind(const std::string& s);

// Generator at spectral variable `arg` (index) or with mode index `arg` >= 1.
struct Letter {
  Kind kind;
  int arg;
  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter& a, const Letter& b) {
    if (a.kind != b.kind) return static_cast<int>(a.kind) <=> static_cast<int>(b.kind);
    return a.arg <=> b.arg;
  }
};
using Word = std::vector<Letter>;

// Sorts a normal-ordered word; returns the permutation sign, or 0 for a repeated fermion.
int canonicalize(Word& w);

// Linear combination of normal-ordered words (canonical order) over rational
// functions of the spectral variables.
class NormalForm {
 public:
  NormalForm() = default;
  static NormalForm one() { return NormalForm::term({}, RationalFunction(1)); }
  // Adds c · :w: after canonical sorting.
  static NormalForm term(Word w, const RationalFunction& c);
  void add(Word w, const RationalFunction& c);

  const std::map<Word, RationalFunction>& terms() const { return t_; }
  RationalFunction coefficient(const Word& canonical) const;
  bool is_zero() const { return t_.empty(); }

  NormalForm& operator+=(const NormalForm& o);
  NormalForm& operator*=(const RationalFunction& c);
  friend NormalForm operator+(NormalForm a, const NormalForm& b) { return a += b; }
  friend NormalForm operator*(NormalForm a, const RationalFunction& c) { return a *= c; }
  friend bool operator==(const NormalForm& a, const NormalForm& b);

  std::string str(const std::vector<std::string>& names = {}) const;

 private:
  std::map<Word, RationalFunction> t_;
};

// One listed rule, read as :x(λ)y(μ): = x(λ)y(μ) + coeff · [leftover(μ)] / (λ-μ)^pole.
struct OpeRule {
  Kind x, y;
  std::optional<Kind> leftover;
  Rational coeff;
  int pole;
};
const std::vector<OpeRule>& ope_rules();

// Singular part of the plain product p(λ_a) x(λ_b) with kind(p) <= kind(x):
// plain = normal + Σ coefficient · [leftover at λ_b].
struct Contraction {
  RationalFunction coefficient;
  std::optional<Letter> leftover;
};
std::vector<Contraction> contract(const Letter& p, const Letter& x);

struct OrderingStrategy {
  enum class Pivot { First, Last, Random } pivot = Pivot::First;
  std::uint64_t seed = 0;
};

// Normal form of the plain product of generating functions (distinct spectral variables).
NormalForm normal_order(const Word& plain, const OrderingStrategy& strategy = {});

// Text syntax: "j+(l1) j-(l2)", ":b*_1 c*_1:", "b*(x) c*(y)".
struct ParsedWord {
  Word word;
  bool normal_ordered = false;
  bool modes = false;
  std::vector<std::string> variables;  // spectral variable names by index
};
ParsedWord parse_word(const std::string& text);
std::string word_str(const Word& w, bool modes, const std::vector<std::string>& names = {});

struct Admissibility {
  bool ok;
  std::string diagnostics;
};
// Σk_i <= n and k_b* - k_c* + 2k_j+ - 2k_j- == 0.
Admissibility admissible(const Word& w, int n);

// Coefficient of Π λ_i^(p_i - 1) in nf, as a combination of normal-ordered mode words.
std::map<Word, Rational> mode_extract(const NormalForm& nf, const std::vector<int>& modes);

}  // namespace s1fc
