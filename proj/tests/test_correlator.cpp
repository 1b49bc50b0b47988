#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "s1fc/correlator.hpp"

#include <boost/multiprecision/mpfr.hpp>

using namespace s1fc;

namespace {

RationalFunction x01() { return RationalFunction::var(0) - RationalFunction::var(1); }

OmegaExpr p2(int i, int j) { return OmegaExpr::p(i, j) * OmegaExpr::p(i, j); }

MatsubaraData md(std::vector<int> spins, std::vector<Rational> tau) {
  MatsubaraData m;
  m.spin2 = std::move(spins);
  m.tau = std::move(tau);
  return m;
}

QMatrix diag(const std::vector<Rational>& d) {
  QMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

}  // namespace

TEST_CASE("g-monomial text") {
  GMonomial m = parse_gmonomial("g13(l1) g31(l2) g22(l3)");
  REQUIRE(m.size() == 3);
  CHECK(m[1].a == 3);
  CHECK(m[1].b == 1);
  CHECK(m[2].site == 2);
  CHECK(gmonomial_str(m) == "g13(l1) g31(l2) g22(l3)");
  CHECK(parse_gmonomial("").empty());
  CHECK_THROWS_AS(parse_gmonomial("g13(l1) g31(l1)"), ParseError);
  CHECK_THROWS_AS(parse_gmonomial("g13(x)"), ParseError);
  CHECK_THROWS_AS(g_word(parse_gmonomial("g11(l1)")), UncalibratedSign);
  CHECK_THROWS_AS(g_plain_expectation(parse_gmonomial("g23(l1) g32(l2)")), UncalibratedSign);
}

TEST_CASE("coefficient tables") {
  const GCoefficientTable t2 = appendix_table(2);
  REQUIRE(t2.entries.size() == 3);
  const RationalFunction mu = RationalFunction::var(1) - RationalFunction::var(0);
  CHECK(t2.entries[1].first == parse_gmonomial("g12(l1) g21(l2)"));
  CHECK(t2.entries[1].second == mu * mu - RationalFunction(4));
  CHECK(t2.entries[0].second.eval({0, 0}) == Rational(-34, 3));
  // Shift invariance of every coefficient.
  for (const auto& [m, c] : t2.entries) CHECK(c.eval({Rational(1, 3), 2}) == c.eval({Rational(4, 3), 3}));

  const GCoefficientTable t3 = appendix_table(3);
  REQUIRE(t3.entries.size() == 11);
  CHECK(t3.entries[0].second.eval({0, 0, 0}) == -478);
  const RationalFunction m1 = RationalFunction::var(1) - RationalFunction::var(0);
  const RationalFunction m2 = RationalFunction::var(2) - RationalFunction::var(0);
  const RationalFunction d = m1 - m2, four(4);
  const RationalFunction last = RationalFunction(-4) * (m1 * m1 - four) * (d * d - four) * (m2 * m2 - four) *
                                (RationalFunction(-12) + m1 * m1 - m1 * m2 + m2 * m2) /
                                (RationalFunction(45) * m1 * d * m2);
  CHECK(t3.entries[10].first == parse_gmonomial("g13(l1) g31(l2) g22(l3)"));
  CHECK(t3.entries[10].second == last);
  for (const auto& [m, c] : t3.entries)
    CHECK(c.eval({Rational(1, 3), 2, Rational(-7, 5)}) == c.eval({Rational(4, 3), 3, Rational(-2, 5)}));
  CHECK_THROWS_AS(appendix_table(4), ConfigError);
}

TEST_CASE("fat expansion") {
  CHECK(fat_expansion({1, 2, 0}).size() == 2);
  CHECK(fat_expansion({2, 1, 0}).size() == 2);
  CHECK(fat_expansion({1, 3, 0}).size() == 1);
  CHECK(fat_expansion({3, 1, 0})[0].size() == 2);
  auto j0 = fat_expansion({2, 2, 4});
  REQUIRE(j0.size() == 2);
  CHECK(j0[0][0].b != j0[0][1].b);
  CHECK(j0[1][0].b != j0[1][1].b);
}

TEST_CASE("two-point expectations") {
  CHECK(g_expectation_zeroT({}) == OmegaExpr(1));
  CHECK(g_expectation_zeroT(parse_gmonomial("g12(l1) g21(l2)")).is_zero());
  const RationalFunction x = x01();
  CHECK(g_expectation_zeroT(parse_gmonomial("g13(l1) g31(l2)")) ==
        OmegaExpr(-4) * p2(0, 1) + OmegaExpr(RationalFunction(1) / (x * x)));
  // Single currents have zero expectation.
  for (const char* g : {"g22(l1)", "g13(l1)", "g12(l1)"}) CHECK(g_expectation_zeroT(parse_gmonomial(g)).is_zero());
}

TEST_CASE("fat determinant multilinearity") {
  // b*(λ0) b*(λ1) c*(λ2) c*(λ3): sum of shifted determinants = determinant of summed entries.
  auto summed = [](int c, int b) {
    OmegaExpr s;
    for (int r : {1, -1})
      for (int q : {1, -1}) s += omega_tilde(c, r, b, q);
    return s;
  };
  std::vector<std::vector<OmegaExpr>> m = {{summed(2, 0), summed(2, 1)}, {summed(3, 0), summed(3, 1)}};
  OmegaExpr expected = OmegaExpr(-16) * determinant(m);
  OmegaExpr plain = g_plain_expectation(parse_gmonomial("g12(l1) g12(l2) g21(l3) g21(l4)"));
  CHECK(omega_reduce(plain - expected).is_zero());
}

TEST_CASE("omega cancellation for every table monomial") {
  for (int n : {2, 3})
    for (const auto& [m, c] : appendix_table(n).entries) {
      INFO(gmonomial_str(m));
      CHECK_NOTHROW(g_expectation_zeroT(m));
      CHECK(!g_expectation_zeroT(m).contains(Atom::Type::Omega));
    }
}

TEST_CASE("normal-ordered expectations are regular") {
  for (const char* w : {"j+(a) j-(b)", "j0(a) j0(b)", "j+(a) j-(b) j0(c)", "b*(a) c*(b) j0(c)", "j0(a) j+(b) j-(c)"}) {
    INFO(w);
    OmegaExpr e = assert_omega_cancellation(current_expectation(parse_word(w).word));
    PiSeries s = expand_homogeneous(e, {Rational(2), Rational(-1), Rational(5)}, 1);
    CHECK(s.valuation() >= 0);
  }
  // Double poles 2/x² and -1/x² fix the relative normalization of the sl2 components.
  OmegaExpr jj = current_expectation({{Kind::JZero, 0}, {Kind::JZero, 1}});
  OmegaExpr pm = current_expectation({{Kind::JPlus, 0}, {Kind::JMinus, 1}});
  CHECK(jj == OmegaExpr(-2) * pm);
  CHECK(homogeneous_limit(jj, {{0, 1}, {2, -3}}) == PiPoly::pi2_power(1, Rational(2, 3)));
}

TEST_CASE("graded symmetry of normal-ordered expectations") {
  const Letter jp{Kind::JPlus, 0}, jm{Kind::JMinus, 1}, j0{Kind::JZero, 2};
  CHECK(current_expectation({jp, jm, j0}) == current_expectation({j0, jm, jp}));
  const Letter b0{Kind::BStar, 0}, b1{Kind::BStar, 1}, m2{Kind::JMinus, 2};
  CHECK(current_expectation({b0, b1, m2}) == -current_expectation({b1, b0, m2}));
  CHECK(current_expectation({b0, b0, m2}).is_zero());
}

TEST_CASE("homogeneous coefficients") {
  const RationalFunction x = x01();
  OmegaExpr f = OmegaExpr(x * x) * p2(0, 1);  // 1/4 + π²x²/12 + π⁴x⁴/60 + …
  CHECK(homogeneous_coefficient(f, {0, 0}) == PiPoly(Rational(1, 4)));
  CHECK(homogeneous_coefficient(f, {1, 1}) == PiPoly::pi2_power(1, Rational(-1, 6)));
  CHECK(homogeneous_coefficient(f, {4, 0}) == PiPoly::pi2_power(2, Rational(1, 60)));
  CHECK(homogeneous_coefficient(f, {2, 2}) == PiPoly::pi2_power(2, Rational(6, 60)));
  CHECK(homogeneous_coefficient(f, {1, 0}).is_zero());
  CHECK_THROWS_AS(homogeneous_coefficient(p2(0, 1), {0, 0}), SingularExtraction);
}

TEST_CASE("mode expectations") {
  auto mode = [](const char* w) { return mode_expectation(parse_word(w).word); };
  CHECK(mode("j+_1 j-_1") == PiPoly::pi2_power(1, Rational(-1, 3)));
  CHECK(mode("j+_2 j-_4") == PiPoly::pi2_power(3, Rational(8, 189)));
  CHECK(mode("j+_5 j-_1") == PiPoly::pi2_power(3, Rational(-2, 189)));
  CHECK(mode("j+_3 j-_3") == PiPoly::pi2_power(3, Rational(-12, 189)));
  CHECK(mode("j+_3 j-_1") - mode("j+_2 j-_2") == PiPoly::pi2_power(2, Rational(-1, 5)));
  CHECK(mode("j+_3 j0_2 j-_1") == PiPoly::pi2_power(3, Rational(82, 945)));
  CHECK(mode("b*_1 c*_1").is_zero());
  // Charge conservation.
  CHECK(mode("j+_1 j+_2").is_zero());
}

TEST_CASE("n=2 correlator on both routes") {
  CorrelatorResult a = correlator(2);
  CHECK(a.exact == PiPoly::pi2_power(1, Rational(8, 9)) + PiPoly(Rational(-34, 3)));
  CHECK(a.decimal.decimal(10) == "-2.560351643");
  CHECK(a.exact == reference_values(2).exact);
  CHECK(a.exact.degree() == 1);
  CorrelatorResult b = correlator(2, {.route = Route::Modes});
  CHECK(b.exact == a.exact);
  CorrelatorOptions o;
  o.directions = {Rational(5, 2), Rational(-3)};
  o.check_directions = {{7, 1}};
  CHECK(correlator(2, o).exact == a.exact);
  o.parallel = false;
  CHECK(correlator(2, o).exact == a.exact);
  o.directions = {1, 1};
  CHECK_THROWS_AS(correlator(2, o), ConfigError);
}

TEST_CASE("n=3 correlator from the mode decomposition") {
  CorrelatorOptions o;
  o.route = Route::Modes;
  CorrelatorResult r = correlator(3, o);
  CHECK(r.exact == reference_values(3).exact);
  CHECK(r.decimal.decimal(10) == "1.283223553");
  CHECK(r.exact.degree() == 3);
  o.parallel = false;
  CHECK(correlator(3, o).exact == r.exact);
}

TEST_CASE("result json is deterministic") {
  CHECK(correlator(2).to_json().dump() == correlator(2).to_json().dump());
  auto j = correlator(2).to_json();
  CHECK(j["pipoly"] == "8/9·π² − 34/3");
  CHECK(j["decimal"] == "-2.560351643");
}

TEST_CASE("reference values") {
  CHECK(reference_values(4).decimal.decimal(10) == "-1.083843468");
  CHECK(reference_values(5).decimal.decimal(10) == "0.8330261734");
  CHECK(reference_values(4).exact.degree() == 6);
  CHECK(reference_values(5).exact.degree() == 10);
  CHECK_THROWS_AS(reference_values(6), ConfigError);
}

TEST_CASE("fit framework: plant and recover") {
  const LocalOperator ss = build_ss_operator(2);
  const std::vector<GMonomial> basis{parse_gmonomial(""), parse_gmonomial("g13(l1) g31(l2)")};
  OmegaOracle oracle = [&](const GMonomial& g, const FitSample& s) -> Rational {
    if (g.empty()) return 1;
    return *direct_expectation(ss, s.lambdas, dominant_state(s.md, 30), 30).exact;
  };
  std::vector<FitSample> samples{{md({1}, {0}), {0, Rational(1, 7)}},
                                 {md({1, 1}, {0, Rational(1, 3)}), {Rational(1, 5), Rational(-2, 7)}},
                                 {md({2, 2}, {0, Rational(1, 3)}), {0, Rational(1, 7)}}};
  LocalOperator target = ss;
  target.m *= Rational(-5, 2);
  target.m += LocalOperator::identity(2).m * Rational(3);
  FitReport r = fit_framework(basis, oracle, samples, target, 30);
  CHECK(r.rank == 2);
  REQUIRE(r.coefficients.size() == 2);
  CHECK(r.coefficients[0] == 3);
  CHECK(r.coefficients[1] == Rational(-5, 2));
}

TEST_CASE("fit framework: degenerate inputs") {
  const LocalOperator ss = build_ss_operator(2);
  std::vector<FitSample> samples{{md({1}, {0}), {0, Rational(1, 7)}},
                                 {md({1, 1}, {0, Rational(1, 3)}), {Rational(1, 5), Rational(-2, 7)}}};
  FitReport empty = fit_framework({}, {}, samples, ss, 30);
  CHECK(empty.system.empty());
  CHECK(empty.coefficients.empty());
  OmegaOracle constant = [](const GMonomial& g, const FitSample&) { return g.empty() ? Rational(1) : Rational(7); };
  CHECK_THROWS_AS(fit_framework({parse_gmonomial(""), parse_gmonomial("g13(l1) g31(l2)")}, constant, samples, ss, 30),
                  SingularSystem);
  CHECK_THROWS_AS(fit_framework({parse_gmonomial("")}, constant, samples, ss, 30), SingularSystem);
}

TEST_CASE("entropy") {
  using boost::multiprecision::log;
  PrecisionScope p(60);
  std::vector<Rational> u(9, Rational(1, 9));
  CHECK(agree_to_digits(entropy(diag(u), 50).value, log(Mpfr(9)), 45));
  QMatrix pure(3, 3);
  pure(1, 1) = 1;
  CHECK(entropy(pure, 50).value == 0);
  CHECK(agree_to_digits(entropy(diag({Rational(1, 2), Rational(1, 2), 0, 0}), 50).value, log(Mpfr(2)), 45));
  // Rotated pure state [[1/2,1/2],[1/2,1/2]].
  QMatrix r(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r(i, j) = Rational(1, 2);
  CHECK(boost::multiprecision::abs(entropy(r, 50).value) < Mpfr("1e-45"));
  CHECK_THROWS_AS(entropy(diag({Rational(3, 2), Rational(-1, 2)})), NotADensityMatrix);
  CHECK_THROWS_AS(entropy(diag({Rational(1, 2), Rational(1, 3)})), NotADensityMatrix);
  QMatrix asym(2, 2);
  asym(0, 0) = asym(1, 1) = Rational(1, 2);
  asym(0, 1) = Rational(1, 4);
  CHECK_THROWS_AS(entropy(asym), NotADensityMatrix);
}
