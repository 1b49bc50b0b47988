#include "s1fc/current_algebra.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <sstream>

namespace s1fc {

bool is_fermion(Kind k) { return k == Kind::BStar || k == Kind::CStar; }

std::string kind_name(Kind k) {
  switch (k) {
    case Kind::BStar: return "b*";
    case Kind::CStar: return "c*";
    case Kind::JPlus: return "j+";
    case Kind::JZero: return "j0";
    case Kind::JMinus: return "j-";
  }
  return "?";
}

Kind parse_kind(const std::string& s) {
  if (s == "b*") return Kind::BStar;
  if (s == "c*") return Kind::CStar;
  if (s == "j+") return Kind::JPlus;
  if (s == "j0") return Kind::JZero;
  if (s == "j-") return Kind::JMinus;
  throw ParseError("unknown generator: " + s);
}

int canonicalize(Word& w) {
  int sign = 1;
  for (std::size_t i = 1; i < w.size(); ++i)
    for (std::size_t j = i; j > 0 && w[j] < w[j - 1]; --j) {
      if (is_fermion(w[j].kind) && is_fermion(w[j - 1].kind)) sign = -sign;
      std::swap(w[j], w[j - 1]);
    }
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i] == w[i - 1] && is_fermion(w[i].kind)) return 0;
  return sign;
}

NormalForm NormalForm::term(Word w, const RationalFunction& c) {
  NormalForm nf;
  nf.add(std::move(w), c);
  return nf;
}

void NormalForm::add(Word w, const RationalFunction& c) {
  if (c.is_zero()) return;
  int s = canonicalize(w);
  if (s == 0) return;
  auto it = t_.find(w);
  RationalFunction v = s > 0 ? c : -c;
  if (it == t_.end()) {
    t_.emplace(std::move(w), v);
  } else {
    it->second += v;
    if (it->second.is_zero()) t_.erase(it);
  }
}

RationalFunction NormalForm::coefficient(const Word& w) const {
  auto it = t_.find(w);
  return it == t_.end() ? RationalFunction() : it->second;
}

NormalForm& NormalForm::operator+=(const NormalForm& o) {
  for (const auto& [w, c] : o.t_) add(w, c);
  return *this;
}

NormalForm& NormalForm::operator*=(const RationalFunction& c) {
  if (c.is_zero()) {
    t_.clear();
    return *this;
  }
  for (auto& [w, v] : t_) v *= c;
  return *this;
}

bool operator==(const NormalForm& a, const NormalForm& b) {
  NormalForm d = a;
  for (const auto& [w, c] : b.t_) d.add(w, -c);
  return d.is_zero();
}

std::string NormalForm::str(const std::vector<std::string>& names) const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : t_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str(names) << ")";
    if (!w.empty()) os << " :" << word_str(w, false, names) << ":";
  }
  return os.str();
}

const std::vector<OpeRule>& ope_rules() {
  // :c*(λ)j+(μ): is read with c*(λ)j+(μ) on the right (the b*j- term is a copy slip).
  static const std::vector<OpeRule> rules = {
      {Kind::JZero, Kind::JZero, std::nullopt, Rational(-2), 2},
      {Kind::JPlus, Kind::JMinus, Kind::JZero, Rational(1), 1},
      {Kind::JPlus, Kind::JMinus, std::nullopt, Rational(1), 2},
      {Kind::JPlus, Kind::JZero, Kind::JPlus, Rational(2), 1},
      {Kind::JZero, Kind::JMinus, Kind::JMinus, Rational(2), 1},
      {Kind::BStar, Kind::JMinus, Kind::CStar, Rational(-1), 1},
      {Kind::CStar, Kind::JPlus, Kind::BStar, Rational(1), 1},
      {Kind::BStar, Kind::JZero, Kind::BStar, Rational(1), 1},
      {Kind::CStar, Kind::JZero, Kind::CStar, Rational(-1), 1},
  };
  return rules;
}

std::vector<Contraction> contract(const Letter& p, const Letter& x) {
  std::vector<Contraction> out;
  if (p.arg == x.arg) throw std::invalid_argument("contraction at coincident spectral variables");
  const RationalFunction d = RationalFunction::var(p.arg) - RationalFunction::var(x.arg);
  for (const OpeRule& r : ope_rules()) {
    if (r.x != p.kind || r.y != x.kind) continue;
    RationalFunction c(-r.coeff);
    for (int k = 0; k < r.pole; ++k) c /= d;
    std::optional<Letter> z;
    if (r.leftover) z = Letter{*r.leftover, x.arg};
    out.push_back({c, z});
  }
  return out;
}

namespace {

int fermions_in(const Word& w, std::size_t begin, std::size_t end) {
  int n = 0;
  for (std::size_t i = begin; i < end; ++i) n += is_fermion(w[i].kind);
  return n;
}

class WardOrderer {
 public:
  explicit WardOrderer(const OrderingStrategy& s) : s_(s), rng_(s.seed) {}

  NormalForm run(const Word& word, int depth) {
    if (depth > 64) throw NonTerminating("normal ordering exceeded the recursion guard");
    if (word.empty()) return NormalForm::one();
    int min_kind = 5;
    for (const auto& l : word) min_kind = std::min(min_kind, static_cast<int>(l.kind));
    std::vector<std::size_t> cands;
    for (std::size_t i = 0; i < word.size(); ++i)
      if (static_cast<int>(word[i].kind) == min_kind) cands.push_back(i);
    std::size_t pi = pick(cands);
    const Letter p = word[pi];
    const int s = is_fermion(p.kind) && fermions_in(word, 0, pi) % 2 ? -1 : 1;
    Word rest = word;
    rest.erase(rest.begin() + pi);

    NormalForm out;
    const NormalForm tail = run(rest, depth + 1);
    for (const auto& [w, c] : tail.terms()) {
      Word full{p};
      full.insert(full.end(), w.begin(), w.end());
      out.add(std::move(full), s > 0 ? c : -c);
    }
    for (std::size_t j = 0; j < rest.size(); ++j) {
      const Letter& x = rest[j];
      int s2 = s;
      if (is_fermion(x.kind) && fermions_in(rest, 0, j) % 2) s2 = -s2;
      for (const Contraction& ct : contract(p, x)) {
        Word r2 = rest;
        r2.erase(r2.begin() + j);
        int s3 = s2;
        if (ct.leftover) {
          if (is_fermion(ct.leftover->kind) && fermions_in(r2, 0, j) % 2) s3 = -s3;
          r2.insert(r2.begin() + j, *ct.leftover);
        }
        RationalFunction c = s3 > 0 ? ct.coefficient : -ct.coefficient;
        out += run(r2, depth + 1) * c;
      }
    }
    return out;
  }

 private:
  std::size_t pick(const std::vector<std::size_t>& c) {
    switch (s_.pivot) {
      case OrderingStrategy::Pivot::First: return c.front();
      case OrderingStrategy::Pivot::Last: return c.back();
      case OrderingStrategy::Pivot::Random: return c[std::uniform_int_distribution<std::size_t>(0, c.size() - 1)(rng_)];
    }
    return c.front();
  }

  OrderingStrategy s_;
  std::mt19937_64 rng_;
};

}  // namespace

NormalForm normal_order(const Word& plain, const OrderingStrategy& strategy) {
  for (std::size_t i = 0; i < plain.size(); ++i)
    for (std::size_t j = i + 1; j < plain.size(); ++j)
      if (plain[i].arg == plain[j].arg) throw std::invalid_argument("spectral variables must be distinct");
  WardOrderer w(strategy);
  return w.run(plain, 0);
}

ParsedWord parse_word(const std::string& text) {
  ParsedWord out;
  std::string s = text;
  auto strip = [](std::string& t) {
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.erase(t.begin());
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
  };
  strip(s);
  if (s.size() >= 2 && s.front() == ':' && s.back() == ':') {
    out.normal_ordered = true;
    s = s.substr(1, s.size() - 2);
  }
  std::istringstream is(s);
  std::string tok;
  int kind_of_args = -1;  // 0 spectral, 1 modes
  while (is >> tok) {
    if (tok.size() < 3) throw ParseError("bad token: " + tok);
    Kind k = parse_kind(tok.substr(0, 2));
    std::string rest = tok.substr(2);
    if (rest[0] == '_') {
      if (kind_of_args == 0) throw ParseError("cannot mix modes and spectral arguments");
      kind_of_args = 1;
      int p = 0;
      try {
        p = std::stoi(rest.substr(1));
      } catch (...) {
        throw ParseError("bad mode index: " + tok);
      }
      if (p < 1) throw ParseError("mode indices must be positive: " + tok);
      out.word.push_back({k, p});
    } else if (rest[0] == '(' && rest.back() == ')') {
      if (kind_of_args == 1) throw ParseError("cannot mix modes and spectral arguments");
      kind_of_args = 0;
      std::string name = rest.substr(1, rest.size() - 2);
      if (name.empty()) throw ParseError("empty argument: " + tok);
      auto it = std::find(out.variables.begin(), out.variables.end(), name);
      int idx = static_cast<int>(it - out.variables.begin());
      if (it == out.variables.end()) out.variables.push_back(name);
      out.word.push_back({k, idx});
    } else {
      throw ParseError("bad token: " + tok);
    }
  }
  out.modes = kind_of_args == 1;
  return out;
}

std::string word_str(const Word& w, bool modes, const std::vector<std::string>& names) {
  std::ostringstream os;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) os << ' ';
    os << kind_name(w[i].kind);
    if (modes) {
      os << '_' << w[i].arg;
    } else {
      os << '(' << (w[i].arg < static_cast<int>(names.size()) ? names[w[i].arg] : "x" + std::to_string(w[i].arg))
         << ')';
    }
  }
  return os.str();
}

Admissibility admissible(const Word& w, int n) {
  int k[5] = {0, 0, 0, 0, 0};
  for (const auto& l : w) ++k[static_cast<int>(l.kind)];
  const int total = k[0] + k[1] + k[2] + k[3] + k[4];
  const int charge = k[0] - k[1] + 2 * k[2] - 2 * k[4];
  std::ostringstream os;
  os << "length " << total << (total <= n ? " <= " : " > ") << n << ", sl2 charge " << charge;
  return {total <= n && charge == 0, os.str()};
}

std::map<Word, Rational> mode_extract(const NormalForm& nf, const std::vector<int>& modes) {
  std::map<Word, Rational> out;
  for (int p : modes)
    if (p < 1) throw std::invalid_argument("mode indices must be positive");
  for (const auto& [w, c] : nf.terms()) {
    std::vector<int> exps(modes.size());
    for (std::size_t i = 0; i < modes.size(); ++i) exps[i] = modes[i] - 1;
    // Letters take q-1 powers of their own variable; the coefficient takes the rest.
    std::vector<int> letter_max(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (w[i].arg >= static_cast<int>(modes.size())) throw std::invalid_argument("word variable outside the mode list");
      letter_max[i] = exps[w[i].arg];
    }
    std::vector<int> q(w.size(), 0);
    while (true) {
      std::vector<int> remaining = exps;
      bool ok = true;
      for (std::size_t i = 0; i < w.size(); ++i) {
        remaining[w[i].arg] -= q[i];
        if (remaining[w[i].arg] < 0) ok = false;
      }
      if (ok) {
        Rational coef;
        try {
          coef = taylor_coefficient(c, remaining);
        } catch (const SingularExpansion&) {
          throw SingularExtraction("pole through the extraction point in the coefficient of :" +
                                   word_str(w, false) + ":");
        }
        if (coef != 0) {
          Word mw;
          for (std::size_t i = 0; i < w.size(); ++i) mw.push_back({w[i].kind, q[i] + 1});
          int s = canonicalize(mw);
          if (s != 0) {
            Rational& slot = out[mw];
            slot += s * coef;
            if (slot == 0) out.erase(mw);
          }
        }
      }
      std::size_t i = 0;
      while (i < q.size() && q[i] == letter_max[i]) q[i++] = 0;
      if (i == q.size()) break;
      ++q[i];
    }
  }
  return out;
}

}  // namespace s1fc
