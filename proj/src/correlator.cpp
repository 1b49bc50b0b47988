#include "s1fc/correlator.hpp"

#include <algorithm>
#include <exception>
#include <fstream>
#include <random>
#include <regex>
#include <set>
#include <sstream>

#include <boost/multiprecision/mpfr.hpp>

namespace s1fc {

GMonomial parse_gmonomial(const std::string& text) {
  static const std::regex factor(R"(\s*g([1-3])([1-3])\((?:l|λ)([1-9][0-9]*)\)\s*)");
  GMonomial m;
  auto it = text.cbegin();
  std::smatch sm;
  while (it != text.cend()) {
    if (std::all_of(it, text.cend(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); })) break;
    if (!std::regex_search(it, text.cend(), sm, factor, std::regex_constants::match_continuous))
      throw ParseError("bad g-monomial: '" + text + "'");
    m.push_back({std::stoi(sm[1]), std::stoi(sm[2]), std::stoi(sm[3]) - 1});
    it = sm[0].second;
  }
  std::set<int> sites;
  for (const auto& g : m)
    if (!sites.insert(g.site).second) throw ParseError("two g factors at one site in '" + text + "'");
  return m;
}

std::string gmonomial_str(const GMonomial& m) {
  std::string s;
  for (const auto& g : m) {
    if (!s.empty()) s += " ";
    s += "g" + std::to_string(g.a) + std::to_string(g.b) + "(l" + std::to_string(g.site + 1) + ")";
  }
  return s;
}

Kind g_kind(const GFactor& g) {
  const int key = 10 * g.a + g.b;
  switch (key) {
    case 12: return Kind::BStar;
    case 21: return Kind::CStar;
    case 13: return Kind::JPlus;
    case 22: return Kind::JZero;
    case 31: return Kind::JMinus;
    default: throw UncalibratedSign("no sign convention for g" + std::to_string(key));
  }
}

Word g_word(const GMonomial& m) {
  Word w;
  for (const auto& g : m) w.push_back({g_kind(g), g.site});
  return w;
}

std::string data_dir() {
  if (const char* e = std::getenv("S1FC_DATA")) return e;
  return S1FC_DATA_DIR;
}

namespace {

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open data file: " + path);
  return nlohmann::json::parse(in);
}

}  // namespace

GCoefficientTable appendix_table(int n, const std::string& dir) {
  if (n != 2 && n != 3) throw ConfigError("coefficient tables exist for n = 2, 3 only");
  const auto j = load_json(dir + "/appendix_n" + std::to_string(n) + ".json");
  std::vector<std::string> names;
  for (const auto& v : j.at("variables")) names.push_back(v.get<std::string>());
  // m_j = λ_j - λ_0
  std::vector<Poly> images;
  for (int k = 1; k < n; ++k) images.push_back(Poly::var(k) - Poly::var(0));
  GCoefficientTable t;
  t.n = n;
  for (const auto& e : j.at("entries")) {
    RationalFunction c = parse_rational_function(e.at("coefficient").get<std::string>(), names);
    t.entries.emplace_back(parse_gmonomial(e.at("monomial").get<std::string>()), c.substitute(images));
  }
  return t;
}

ModeTable mode_table(int n, const std::string& dir) {
  if (n != 2 && n != 3) throw ConfigError("mode decompositions exist for n = 2, 3 only");
  const auto j = load_json(dir + "/modes_n" + std::to_string(n) + ".json");
  ModeTable t;
  t.n = n;
  for (const auto& e : j.at("terms")) {
    const std::string w = e.at("word").get<std::string>();
    Word word;
    if (!w.empty()) {
      ParsedWord pw = parse_word(w);
      if (!pw.modes) throw ConfigError("mode word expected: " + w);
      word = pw.word;
    }
    t.terms.emplace_back(word, parse_rational(e.at("coefficient").get<std::string>()));
  }
  return t;
}

std::vector<std::vector<FermionPoint>> fat_expansion(const GFactor& g) {
  const int i = g.site;
  switch (g_kind(g)) {
    case Kind::BStar: return {{{i, 1, true}}, {{i, -1, true}}};
    case Kind::CStar: return {{{i, 1, false}}, {{i, -1, false}}};
    case Kind::JPlus: return {{{i, 1, true}, {i, -1, true}}};
    case Kind::JMinus: return {{{i, 1, false}, {i, -1, false}}};
    case Kind::JZero: return {{{i, 1, false}, {i, -1, true}}, {{i, 1, true}, {i, -1, false}}};
  }
  return {};
}

OmegaExpr g_plain_expectation(const GMonomial& m) {
  std::vector<std::vector<FermionPoint>> words{{}};
  for (const auto& g : m) {
    std::vector<std::vector<FermionPoint>> next;
    for (const auto& w : words)
      for (const auto& alt : fat_expansion(g)) {
        auto x = w;
        x.insert(x.end(), alt.begin(), alt.end());
        next.push_back(std::move(x));
      }
    words = std::move(next);
  }
  OmegaExpr total;
  for (auto& w : words) {
    // Points ordered by site, λ-1/2 before λ+1/2.
    std::sort(w.begin(), w.end(), [](const FermionPoint& x, const FermionPoint& y) {
      return x.site != y.site ? x.site < y.site : x.shift < y.shift;
    });
    std::vector<FermionPoint> cs, bs;
    int inversions = 0;
    for (const auto& p : w) {
      if (p.b) bs.push_back(p);
      else {
        cs.push_back(p);
        inversions += static_cast<int>(bs.size());
      }
    }
    if (cs.size() != bs.size()) continue;
    const int k = static_cast<int>(cs.size());
    std::vector<std::vector<OmegaExpr>> mat(k, std::vector<OmegaExpr>(k));
    for (int r = 0; r < k; ++r)
      for (int c = 0; c < k; ++c) mat[r][c] = omega_tilde(cs[r].site, cs[r].shift, bs[c].site, bs[c].shift);
    OmegaExpr d = determinant(mat);
    if ((inversions + k * (k - 1) / 2) % 2) d = -d;
    total += d;
  }
  Rational scale(1);
  for (std::size_t s = 0; s < m.size(); ++s) scale *= kSiteFactor;
  return omega_reduce(total * OmegaExpr(RationalFunction(scale)));
}

namespace {

GMonomial word_to_g(const Word& w) {
  GMonomial m;
  for (const auto& l : w) {
    switch (l.kind) {
      case Kind::BStar: m.push_back({1, 2, l.arg}); break;
      case Kind::CStar: m.push_back({2, 1, l.arg}); break;
      case Kind::JPlus: m.push_back({1, 3, l.arg}); break;
      case Kind::JZero: m.push_back({2, 2, l.arg}); break;
      case Kind::JMinus: m.push_back({3, 1, l.arg}); break;
    }
  }
  return m;
}

class Evaluator {
 public:
  // ⟨:w:⟩ for canonical w.
  OmegaExpr canonical(const Word& w) {
    if (w.empty()) return OmegaExpr(1);
    if (auto it = memo_.find(w); it != memo_.end()) return it->second;
    Word site = w;
    // Stable sort by variable; fermion sign of the reordering.
    int sign = 1;
    for (std::size_t i = 0; i < site.size(); ++i)
      for (std::size_t j = 0; j + 1 < site.size() - i; ++j)
        if (site[j].arg > site[j + 1].arg) {
          if (is_fermion(site[j].kind) && is_fermion(site[j + 1].kind)) sign = -sign;
          std::swap(site[j], site[j + 1]);
        }
    for (std::size_t i = 0; i + 1 < site.size(); ++i)
      if (site[i].arg == site[i + 1].arg) throw std::invalid_argument("letters must sit at distinct variables");
    // plain(site) = :site: + Σ_v c_v :v:, :site: = sign · :w:
    const NormalForm nf = normal_order(site);
    OmegaExpr e = g_plain_expectation(word_to_g(site));
    for (const auto& [v, c] : nf.terms()) {
      if (v == w) continue;
      e -= OmegaExpr(c) * canonical(v);
    }
    if (nf.coefficient(w) != RationalFunction(sign))
      throw std::logic_error("normal form does not reproduce the leading word");
    e = omega_reduce(sign < 0 ? -e : e);
    memo_.emplace(w, e);
    return e;
  }

 private:
  std::map<Word, OmegaExpr> memo_;
};

}  // namespace

OmegaExpr current_expectation(const Word& w) {
  Word c = w;
  const int s = canonicalize(c);
  if (s == 0) return OmegaExpr();
  Evaluator ev;
  OmegaExpr e = ev.canonical(c);
  return s < 0 ? -e : e;
}

OmegaExpr g_expectation_zeroT(const GMonomial& m) { return assert_omega_cancellation(current_expectation(g_word(m))); }

namespace {

void enumerate_exponents(int vars, int degree, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == vars - 1) {
    cur.push_back(degree);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int e = degree; e >= 0; --e) {
    cur.push_back(e);
    enumerate_exponents(vars, degree - e, cur, out);
    cur.pop_back();
  }
}

// Exact least-squares-free solve of A x = b (A rational, b PiPoly); throws when inconsistent or underdetermined.
std::vector<PiPoly> solve_pipoly(std::vector<std::vector<Rational>> a, std::vector<PiPoly> b) {
  const std::size_t rows = a.size(), cols = a.empty() ? 0 : a[0].size();
  std::size_t r = 0;
  std::vector<std::size_t> pivots;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    std::swap(b[p], b[r]);
    const Rational inv = Rational(1) / a[r][c];
    for (auto& x : a[r]) x *= inv;
    b[r] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Rational f = a[i][c];
      for (std::size_t k = 0; k < cols; ++k) a[i][k] -= f * a[r][k];
      b[i] -= b[r] * f;
    }
    pivots.push_back(c);
    ++r;
  }
  if (pivots.size() < cols) throw SingularSystem("interpolation system is rank deficient");
  for (std::size_t i = r; i < rows; ++i)
    if (!b[i].is_zero()) throw SingularSystem("sampled coefficients are not a homogeneous polynomial");
  std::vector<PiPoly> x(cols);
  for (std::size_t i = 0; i < r; ++i) x[pivots[i]] = b[i];
  return x;
}

}  // namespace

PiPoly homogeneous_coefficient(const OmegaExpr& f, const std::vector<int>& exponents) {
  const int vars = static_cast<int>(exponents.size());
  int degree = 0;
  for (int e : exponents) {
    if (e < 0) throw std::invalid_argument("negative exponent");
    degree += e;
  }
  if (vars == 0) return regular_constant(expand_homogeneous(f, {}, 1));
  std::vector<std::vector<int>> monos;
  std::vector<int> cur;
  enumerate_exponents(vars, degree, cur, monos);
  const std::size_t samples = monos.size() + 2;
  std::mt19937_64 rng(20240607);
  std::uniform_int_distribution<int> pick(-24, 24);
  std::vector<std::vector<Rational>> a;
  std::vector<PiPoly> b;
  while (a.size() < samples) {
    std::vector<Rational> dir;
    std::set<int> used;
    while (static_cast<int>(dir.size()) < vars) {
      int v = pick(rng);
      if (used.insert(v).second) dir.emplace_back(v);
    }
    PiSeries s = expand_homogeneous(f, dir, degree + 1);
    if (s.valuation() < 0)
      throw SingularExtraction("expression is singular at coincident points (t^" + std::to_string(s.valuation()) + ")");
    std::vector<Rational> row;
    for (const auto& m : monos) {
      Rational v(1);
      for (int i = 0; i < vars; ++i) v *= pow(dir[i], m[i]);
      row.push_back(v);
    }
    a.push_back(std::move(row));
    b.push_back(s.coeff(degree));
  }
  const auto x = solve_pipoly(a, b);
  for (std::size_t k = 0; k < monos.size(); ++k)
    if (monos[k] == exponents) return x[k];
  return PiPoly();
}

PiPoly mode_expectation(const Word& modes) {
  Word w;
  std::vector<int> exps;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    w.push_back({modes[i].kind, static_cast<int>(i)});
    exps.push_back(modes[i].arg - 1);
  }
  OmegaExpr f = assert_omega_cancellation(current_expectation(w));
  return homogeneous_coefficient(f, exps);
}

nlohmann::json CorrelatorResult::to_json(unsigned sig) const {
  return {{"n", n}, {"pipoly", exact.str()}, {"terms", exact.to_json()}, {"decimal", decimal.decimal(sig)}, {"log", log}};
}

namespace {

std::vector<Rational> head(const std::vector<Rational>& d, int n) {
  if (static_cast<int>(d.size()) < n) throw ConfigError("need " + std::to_string(n) + " direction components");
  std::vector<Rational> r(d.begin(), d.begin() + n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (r[i] == r[j]) throw ConfigError("directions must be pairwise distinct");
  return r;
}

std::string dir_str(const std::vector<Rational>& d) {
  std::string s = "(";
  for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + to_string(d[i]);
  return s + ")";
}

struct MonomialSeries {
  std::vector<PiSeries> series;  // one per direction tuple
  std::string note;
};

MonomialSeries expand_entry(const GMonomial& m, const RationalFunction& c,
                            const std::vector<std::vector<Rational>>& dirs) {
  MonomialSeries out;
  OmegaExpr e = g_expectation_zeroT(m);
  OmegaExpr term = OmegaExpr(c) * e;
  for (const auto& d : dirs) out.series.push_back(expand_homogeneous(term, d, 1));
  out.note = "⟨" + (m.empty() ? std::string("1") : gmonomial_str(m)) + "⟩: ω-free";
  return out;
}

CorrelatorResult finish(int n, const PiPoly& value, unsigned digits, std::vector<std::string> log) {
  CorrelatorResult r;
  r.n = n;
  r.exact = value;
  r.decimal = pipoly_eval(value, std::max(digits, 10u));
  r.log = std::move(log);
  return r;
}

CorrelatorResult appendix_route(int n, const CorrelatorOptions& o) {
  const GCoefficientTable table = appendix_table(n, o.data);
  std::vector<std::vector<Rational>> dirs{head(o.directions, n)};
  for (const auto& d : o.check_directions) dirs.push_back(head(d, n));
  const std::size_t count = table.entries.size();
  std::vector<MonomialSeries> parts(count);
  std::vector<std::exception_ptr> errors(count);
#pragma omp parallel for schedule(dynamic) if (o.parallel)
  for (std::size_t k = 0; k < count; ++k) {
    try {
      parts[k] = expand_entry(table.entries[k].first, table.entries[k].second, dirs);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<std::string> log{"route: coefficient tables", "site factor: " + std::to_string(kSiteFactor)};
  PiPoly ref;
  for (std::size_t d = 0; d < dirs.size(); ++d) {
    PiSeries sum(1);
    for (const auto& p : parts) sum += p.series[d];
    PiPoly c = regular_constant(sum, "directions " + dir_str(dirs[d]));
    if (d == 0) ref = c;
    else if (!(c == ref))
      throw DirectionDependence("constant term " + c.str() + " at " + dir_str(dirs[d]) + " differs from " + ref.str());
    log.push_back("directions " + dir_str(dirs[d]) + ": singular part vanishes, constant " + c.str());
  }
  for (const auto& p : parts) log.push_back(p.note);
  return finish(n, ref, o.digits, std::move(log));
}

CorrelatorResult mode_route(int n, const CorrelatorOptions& o) {
  const ModeTable table = mode_table(n, o.data);
  const std::size_t count = table.terms.size();
  std::vector<PiPoly> values(count);
  std::vector<std::exception_ptr> errors(count);
#pragma omp parallel for schedule(dynamic) if (o.parallel)
  for (std::size_t k = 0; k < count; ++k) {
    try {
      values[k] = mode_expectation(table.terms[k].first);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<std::string> log{"route: mode decomposition", "site factor: " + std::to_string(kSiteFactor)};
  PiPoly total;
  for (std::size_t k = 0; k < count; ++k) {
    total += values[k] * table.terms[k].second;
    log.push_back("⟨" + (table.terms[k].first.empty() ? std::string("1") : word_str(table.terms[k].first, true)) +
                  "⟩ = " + values[k].str());
  }
  return finish(n, total, o.digits, std::move(log));
}

}  // namespace

CorrelatorResult correlator(int n, const CorrelatorOptions& options) {
  if (n != 2 && n != 3) throw ConfigError("correlator is computed for n = 2, 3");
  return options.route == Route::Appendix ? appendix_route(n, options) : mode_route(n, options);
}

CorrelatorResult reference_values(int n, unsigned digits, const std::string& dir) {
  if (n < 2 || n > 5) throw ConfigError("reference values exist for n = 2..5");
  const auto j = load_json(dir + "/reference.json").at(std::to_string(n));
  return finish(n, PiPoly::from_json(j.at("pipoly")), digits, {"stored value", "quoted decimal " + j.at("decimal").get<std::string>()});
}

FitReport fit_framework(const std::vector<GMonomial>& basis, const OmegaOracle& oracle,
                        const std::vector<FitSample>& samples, const LocalOperator& target, unsigned digits) {
  FitReport r;
  if (basis.empty()) return r;
  const std::size_t cols = basis.size();
  for (const auto& s : samples) {
    if (static_cast<int>(s.lambdas.size()) != target.n) throw ConfigError("sample needs one λ per operator site");
    const SpectralState st = dominant_state(s.md, digits);
    const Expectation e = direct_expectation(target, s.lambdas, st, digits);
    if (!e.exact) throw SingularSystem("direct expectation is not rational for a sample; exact fit impossible");
    std::vector<Rational> row;
    for (const auto& g : basis) row.push_back(oracle(g, s));
    r.system.push_back(std::move(row));
    r.rhs.push_back(*e.exact);
  }
  // Reduced row echelon form of [A | b].
  auto a = r.system;
  auto b = r.rhs;
  const std::size_t rows = a.size();
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < rows; ++c) {
    std::size_t p = row;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[row]);
    std::swap(b[p], b[row]);
    const Rational inv = Rational(1) / a[row][c];
    for (auto& x : a[row]) x *= inv;
    b[row] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == row || a[i][c] == 0) continue;
      const Rational f = a[i][c];
      for (std::size_t k = 0; k < cols; ++k) a[i][k] -= f * a[row][k];
      b[i] -= f * b[row];
    }
    pivots.push_back(c);
    ++row;
  }
  r.rank = pivots.size();
  for (std::size_t i = row; i < rows; ++i)
    if (b[i] != 0)
      throw SingularSystem("inconsistent system: residual " + to_string(b[i]) + " in row " + std::to_string(i) +
                           " (rank " + std::to_string(r.rank) + " of " + std::to_string(cols) + ")");
  if (r.rank < cols)
    throw SingularSystem("rank " + std::to_string(r.rank) + " < " + std::to_string(cols) + " unknowns from " +
                         std::to_string(rows) + " samples");
  r.coefficients.assign(cols, Rational(0));
  for (std::size_t i = 0; i < row; ++i) r.coefficients[pivots[i]] = b[i];
  return r;
}

BigFloat entropy(const QMatrix& d, unsigned digits) {
  if (d.rows() != d.cols() || d.rows() == 0) throw NotADensityMatrix("density matrix must be square and nonempty");
  if (!(d == d.transpose())) throw NotADensityMatrix("density matrix must be symmetric");
  if (d.trace() != 1) throw NotADensityMatrix("trace is " + to_string(d.trace()) + ", not 1");
  const unsigned work = digits + 15;
  PrecisionScope scope(work);
  const Mpfr tiny = boost::multiprecision::pow(Mpfr(10), -static_cast<int>(digits + 5));
  Mpfr s = 0;
  for (const auto& [factor, mult] : squarefree_factorization(charpoly(d))) {
    for (const auto& z : approximate_roots(factor)) {
      if (std::abs(z.imag()) > 1e-9L) throw NotADensityMatrix("non-real eigenvalue");
      Mpfr x = refine_real_root(factor, Mpfr(static_cast<double>(z.real())));
      if (x < -tiny) throw NotADensityMatrix("negative eigenvalue " + round_half_even(x, 10));
      if (x <= tiny) continue;
      s -= mult * x * boost::multiprecision::log(x);
    }
  }
  if (boost::multiprecision::abs(s) <= tiny) s = 0;
  return BigFloat{s, digits};
}

}  // namespace s1fc
