#include "s1fc/correlator.hpp"
#include "s1fc/lattice.hpp"
#include "s1fc/matsubara.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

using namespace s1fc;
using nlohmann::json;

namespace {

struct RunConfig {
  std::string command;
  std::string check;
  std::string matsubara;
  std::string op = "ss:2";
  std::string lambdas;
  std::string directions = "0,1,3";
  std::string route = "appendix";
  std::string matrix;
  std::string word;
  std::string strategy = "first";
  std::string out;
  unsigned digits = 50;
  int n = 2;
  std::uint64_t seed = 0;
};

std::vector<Rational> parse_list(const std::string& s) {
  std::vector<Rational> r;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) r.push_back(parse_rational(item));
  return r;
}

MatsubaraData load_matsubara(const RunConfig& c) {
  if (c.matsubara.empty()) throw ConfigError("--matsubara is required");
  std::ifstream in(c.matsubara);
  if (!in) throw ConfigError("cannot open Matsubara data: " + c.matsubara);
  return MatsubaraData::from_json(json::parse(in));
}

Rational random_point(std::mt19937_64& g) {
  std::uniform_int_distribution<long> num(-60, 60), den(1, 13);
  return Rational(num(g), den(g));
}

std::vector<Rational> lambdas_or_random(const RunConfig& c, int count, std::mt19937_64& g) {
  if (!c.lambdas.empty()) {
    auto l = parse_list(c.lambdas);
    if (static_cast<int>(l.size()) != count)
      throw ConfigError("--lambdas needs " + std::to_string(count) + " values");
    return l;
  }
  std::vector<Rational> l;
  for (int i = 0; i < count; ++i) l.push_back(random_point(g));
  return l;
}

json rational_list(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

json run_check(const RunConfig& c, std::ostream& table) {
  std::mt19937_64 g(c.seed);
  json r{{"command", "check"}, {"check", c.check}};
  bool ok = true;
  if (c.check == "yang-baxter") {
    json points = json::array();
    for (int k = 0; k < 20; ++k) {
      Rational z = random_point(g), e = random_point(g);
      bool pass = check_yang_baxter_s1(z, e);
      ok = ok && pass;
      points.push_back({{"zeta", to_string(z)}, {"eta", to_string(e)}, {"ok", pass}});
    }
    QMatrix p9 = permutation(3);
    p9 *= Rational(2);
    const bool r0 = r_s1(0) == p9;
    ok = ok && r0;
    r["points"] = points;
    r["r0_is_2P"] = r0;
    table << "yang-baxter: 20 points, R(0) = 2P: " << (r0 ? "yes" : "no") << "\n";
  } else if (c.check == "fusion") {
    if (c.n < 1 || c.n > 2) throw ConfigError("fusion check supports --n 1 or 2");
    MatsubaraData md = load_matsubara(c);
    auto l = lambdas_or_random(c, c.n, g);
    ok = check_fusion(l, md);
    r["lambdas"] = rational_list(l);
    table << "fusion n=" << c.n << " on L=" << md.length() << "\n";
  } else if (c.check == "commute") {
    MatsubaraData md = load_matsubara(c);
    auto l = lambdas_or_random(c, 2, g);
    ok = check_commute(md, l[0], l[1]);
    r["lambdas"] = rational_list(l);
    table << "commute at " << to_string(l[0]) << ", " << to_string(l[1]) << "\n";
  } else if (c.check == "eigenrelation") {
    MatsubaraData md = load_matsubara(c);
    auto l = lambdas_or_random(c, 3, g);
    ok = check_eigen_relation(md, l);
    r["lambdas"] = rational_list(l);
    json dets = json::array();
    for (const auto& x : l) dets.push_back(to_string(quantum_determinant(x, md)));
    r["quantum_determinant"] = dets;
    table << "eigenvalue relation on L=" << md.length() << "\n";
  } else {
    throw ConfigError("unknown check: " + c.check + " (yang-baxter | fusion | commute | eigenrelation)");
  }
  r["ok"] = ok;
  table << (ok ? "ok" : "FAILED") << "\n";
  return r;
}

json run_direct(const RunConfig& c, std::ostream& table) {
  MatsubaraData md = load_matsubara(c);
  LocalOperator o = LocalOperator::parse(c.op);
  std::mt19937_64 g(c.seed);
  auto l = lambdas_or_random(c, o.n, g);
  SpectralState st = dominant_state(md, c.digits);
  Expectation e = direct_expectation(o, l, st, c.digits);
  json r{{"command", "direct"},
         {"matsubara", md.to_json()},
         {"lambdas", rational_list(l)},
         {"method", st.method},
         {"decimal", e.value.decimal(std::min(c.digits, 40u))}};
  r["exact"] = e.exact ? json(to_string(*e.exact)) : json(nullptr);
  table << "⟨O⟩ = " << (e.exact ? to_string(*e.exact) : e.value.decimal(20)) << " (" << st.method << ")\n";
  return r;
}

json run_correlator(const RunConfig& c, std::ostream& table) {
  CorrelatorOptions o;
  o.digits = c.digits;
  o.directions = parse_list(c.directions);
  if (c.route == "modes") o.route = Route::Modes;
  else if (c.route != "appendix") throw ConfigError("--route must be appendix or modes");
  CorrelatorResult r = correlator(c.n, o);
  table << "n=" << r.n << ": " << r.exact.str() << " = " << r.decimal.decimal(10) << "\n";
  json j = r.to_json();
  j["command"] = "correlator";
  j["route"] = c.route;
  return j;
}

json run_reference(const RunConfig& c, std::ostream& table) {
  CorrelatorResult r = reference_values(c.n, c.digits);
  table << "n=" << r.n << ": " << r.exact.str() << " = " << r.decimal.decimal(10) << "\n";
  json j = r.to_json();
  j["command"] = "reference";
  return j;
}

json run_entropy(const RunConfig& c, std::ostream& table) {
  if (c.matrix.empty()) throw ConfigError("--matrix is required");
  std::ifstream in(c.matrix);
  if (!in) throw ConfigError("cannot open matrix: " + c.matrix);
  json m = json::parse(in);
  std::vector<std::vector<std::string>> rows;
  for (const auto& row : m) {
    std::vector<std::string> r;
    for (const auto& e : row) r.push_back(e.is_string() ? e.get<std::string>() : e.dump());
    rows.push_back(std::move(r));
  }
  BigFloat s = entropy(parse_qmatrix(rows), c.digits);
  table << "s = " << s.decimal(20) << "\n";
  return {{"command", "entropy"}, {"entropy", s.decimal(std::min(c.digits, 40u))}};
}

json run_normal_order(const RunConfig& c, std::ostream& table) {
  ParsedWord pw = parse_word(c.word);
  if (pw.modes) throw ConfigError("normal-order takes a word in spectral variables");
  OrderingStrategy s;
  s.seed = c.seed;
  if (c.strategy == "last") s.pivot = OrderingStrategy::Pivot::Last;
  else if (c.strategy == "random") s.pivot = OrderingStrategy::Pivot::Random;
  else if (c.strategy != "first") throw ConfigError("--strategy must be first, last or random");
  NormalForm nf = normal_order(pw.word, s);
  json terms = json::array();
  for (const auto& [w, coef] : nf.terms())
    terms.push_back({{"word", word_str(w, false, pw.variables)}, {"coefficient", coef.str(pw.variables)}});
  table << nf.str(pw.variables) << "\n";
  return {{"command", "normal-order"}, {"input", c.word}, {"normal_form", nf.str(pw.variables)}, {"terms", terms}};
}

int emit(const json& j, const RunConfig& c) {
  const std::string text = j.dump(2) + "\n";
  if (c.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(c.out);
    if (!f) {
      std::cerr << "cannot write " << c.out << "\n";
      return 2;
    }
    f << text;
  }
  return 0;
}

template <class E>
json failure(const char* type, const E& e) {
  return {{"ok", false}, {"error", type}, {"message", e.what()}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"s1fc: correlation functions of the integrable spin-1 chain"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig c;
  app.add_option("--digits", c.digits, "working precision (decimal digits)")->capture_default_str();
  app.add_option("--out", c.out, "write JSON here instead of stdout");
  app.add_option("--seed", c.seed, "seed for randomized checks")->capture_default_str();

  auto* check = app.add_subcommand("check", "exact lattice identities");
  check->add_option("what", c.check, "yang-baxter | fusion | commute | eigenrelation")->required();
  check->add_option("--n", c.n, "number of fused auxiliary spaces")->capture_default_str();
  check->add_option("--matsubara", c.matsubara, "Matsubara data JSON");
  check->add_option("--lambdas", c.lambdas, "comma-separated spectral parameters");

  auto* direct = app.add_subcommand("direct", "direct Matsubara expectation value");
  direct->add_option("--matsubara", c.matsubara, "Matsubara data JSON")->required();
  direct->add_option("--op", c.op, "id:n | ss:n | JSON matrix | file")->capture_default_str();
  direct->add_option("--lambdas", c.lambdas, "comma-separated spectral parameters");

  auto* corr = app.add_subcommand("correlator", "zero-temperature ⟨Σ S^a_1 S^a_n⟩");
  corr->add_option("--n", c.n, "2 or 3")->required();
  corr->add_option("--directions", c.directions, "scaling ray a1,a2,a3")->capture_default_str();
  corr->add_option("--route", c.route, "appendix | modes")->capture_default_str();

  auto* ref = app.add_subcommand("reference", "stored exact values");
  ref->add_option("--n", c.n, "2..5")->required();

  auto* ent = app.add_subcommand("entropy", "von Neumann entropy of a density matrix");
  ent->add_option("--matrix", c.matrix, "JSON matrix of rationals")->required();

  auto* no = app.add_subcommand("normal-order", "normal form of a plain product of currents");
  no->add_option("--word", c.word, "e.g. \"j+(x) j-(y) j0(z)\"")->required();
  no->add_option("--strategy", c.strategy, "first | last | random")->capture_default_str();

  CLI11_PARSE(app, argc, argv);
  c.command = app.get_subcommands().front()->get_name();

  json result;
  int code = 0;
  try {
    if (c.digits < 10) throw ConfigError("--digits must be at least 10");
    if (c.command == "check") result = run_check(c, std::cerr);
    else if (c.command == "direct") result = run_direct(c, std::cerr);
    else if (c.command == "correlator") result = run_correlator(c, std::cerr);
    else if (c.command == "reference") result = run_reference(c, std::cerr);
    else if (c.command == "entropy") result = run_entropy(c, std::cerr);
    else result = run_normal_order(c, std::cerr);
    if (result.contains("ok") && !result["ok"].get<bool>()) code = 1;
  } catch (const ConfigError& e) {
    result = failure("ConfigError", e);
    code = 2;
  } catch (const CalibrationFailure& e) {
    result = failure("CalibrationFailure", e);
    code = 1;
  } catch (const SingularLimit& e) {
    result = failure("SingularLimit", e);
    code = 1;
  } catch (const DirectionDependence& e) {
    result = failure("DirectionDependence", e);
    code = 1;
  } catch (const ResidualOmega& e) {
    result = failure("ResidualOmega", e);
    code = 1;
  } catch (const DegenerateDominantEigenvalue& e) {
    result = failure("DegenerateDominantEigenvalue", e);
    code = 1;
  } catch (const DimensionTooLarge& e) {
    result = failure("DimensionTooLarge", e);
    code = 1;
  } catch (const NotADensityMatrix& e) {
    result = failure("NotADensityMatrix", e);
    code = 1;
  } catch (const ParseError& e) {
    result = failure("ParseError", e);
    code = 2;
  } catch (const std::exception& e) {
    result = failure("Error", e);
    code = 1;
  }
  if (code != 0) std::cerr << "error: " << result.value("message", std::string("invariant violated")) << "\n";
  const int w = emit(result, c);
  return code ? code : w;
}
