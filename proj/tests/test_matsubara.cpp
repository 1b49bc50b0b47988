#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "s1fc/matsubara.hpp"

#include <cstdlib>
#include <random>

using namespace s1fc;

namespace {

MatsubaraData md(std::vector<int> s2, std::vector<Rational> tau) { return MatsubaraData{std::move(s2), std::move(tau)}; }

Rational rnd(std::mt19937_64& g) {
  std::uniform_int_distribution<long> n(-9, 9), d(1, 7);
  return Rational(n(g), d(g));
}

UPoly linear_power(const Rational& root, int k) {
  UPoly p{Rational(1)};
  for (int i = 0; i < k; ++i) p = upoly_mul(p, {-root, Rational(1)});
  return p;
}

// exp(a x) for nilpotent x.
QMatrix exp_nilpotent(const QMatrix& x, const Rational& a) {
  QMatrix term = QMatrix::identity(x.rows()), sum = term;
  for (int k = 1; k < 10; ++k) {
    term = term * x * (a / k);
    if (term.is_zero()) break;
    sum += term;
  }
  return sum;
}

LocalOperator random_operator(int n, std::mt19937_64& g) {
  LocalOperator o = LocalOperator::identity(n);
  for (std::size_t i = 0; i < o.m.rows(); ++i)
    for (std::size_t j = 0; j < o.m.cols(); ++j) o.m(i, j) = rnd(g);
  return o;
}

}  // namespace

TEST_CASE("charpoly agrees with Faddeev-LeVerrier") {
  std::mt19937_64 g(31);
  for (int n : {1, 2, 5, 9}) {
    QMatrix a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = (g() % 3 == 0) ? Rational(0) : rnd(g);
    CHECK(charpoly(a) == charpoly_leverrier(a));
  }
  QMatrix z(4, 4);
  z(0, 1) = 1;
  CHECK(charpoly(z) == linear_power(0, 4));
}

TEST_CASE("squarefree factorization") {
  UPoly p = upoly_mul(upoly_mul(linear_power(1, 3), linear_power(-2, 2)), linear_power(5, 1));
  auto f = squarefree_factorization(p);
  REQUIRE(f.size() == 3);
  CHECK(f[0].second == 1);
  CHECK(f[0].first == linear_power(5, 1));
  CHECK(f[1].second == 2);
  CHECK(f[1].first == linear_power(-2, 1));
  CHECK(f[2].second == 3);
  CHECK(f[2].first == linear_power(1, 1));
}

TEST_CASE("root helpers") {
  CHECK(decimal_to_rational("-1.25e-2") == Rational(-1, 80));
  CHECK(decimal_to_rational("3") == 3);
  PrecisionScope s(60);
  UPoly p = upoly_mul(linear_power(Rational(-4, 3), 1), {Rational(-2), Rational(0), Rational(1)});
  auto r = approximate_roots(p);
  CHECK(r.size() == 3);
  Mpfr x = refine_real_root(p, Mpfr(-1.33));
  CHECK(rational_root_near(p, x, 50) == Rational(-4, 3));
  Mpfr y = refine_real_root(p, Mpfr(1.41));
  CHECK(!rational_root_near(p, y, 50));
  CHECK(abs(y * y - 2) < Mpfr("1e-55"));
}

TEST_CASE("ss operator") {
  LocalOperator ss = build_ss_operator(2);
  // ½h⊗h + e⊗f + f⊗e = 2 S·S: spin 2, 1, 0 give 2, -2, -4.
  UPoly expect = upoly_mul(upoly_mul(linear_power(2, 5), linear_power(-2, 3)), linear_power(-4, 1));
  CHECK(charpoly_leverrier(ss.m) == expect);
  CHECK(ss.m.trace() == 0);
  CHECK(ss.m(0, 0) == 2);
  CHECK(ss.sl2_invariant());
  CHECK(build_ss_operator(3).m.trace() == 0);
  CHECK(build_ss_operator(3).sl2_invariant());
  CHECK(LocalOperator::parse("ss:2").m == ss.m);
  CHECK(LocalOperator::parse("id:1").m == QMatrix::identity(3));
  CHECK_THROWS_AS(LocalOperator::parse("[[\"1\",\"0\"],[\"0\",\"1\"]]"), ConfigError);
}

TEST_CASE("dominant state: scalar chains") {
  SpectralState a = dominant_state(md({1}, {0}), 50);
  CHECK(a.method == "scalar");
  CHECK(*a.eigenvalue_exact == 1);
  SpectralState b = dominant_state(md({2}, {0}), 50);
  CHECK(b.method == "scalar");
  CHECK(*b.eigenvalue_exact == 1);
}

TEST_CASE("dominant state: two spin-1/2 sites") {
  MatsubaraData m = md({1, 1}, {0, Rational(1, 3)});
  SpectralState s = dominant_state(m, 50);
  // T(0) = -1/3 + P: triplet 2/3, singlet -4/3.
  REQUIRE(s.exact());
  CHECK(*s.eigenvalue_exact == Rational(-4, 3));
  CHECK(s.right_exact[0] == 0);
  CHECK(s.right_exact[3] == 0);
  CHECK(s.right_exact[1] == -s.right_exact[2]);
  QMatrix t = transfer(0, m);
  for (std::size_t i = 0; i < 4; ++i) {
    Rational r(0), l(0);
    for (std::size_t j = 0; j < 4; ++j) {
      r += t(i, j) * s.right_exact[j];
      l += s.left_exact[j] * t(j, i);
    }
    CHECK(r == *s.eigenvalue_exact * s.right_exact[i]);
    CHECK(l == *s.eigenvalue_exact * s.left_exact[i]);
  }
}

TEST_CASE("dominant state: algebraic eigenpair") {
  SpectralState s = dominant_state(md({1, 1, 1, 1}, {0, 6, Rational(-3, 4), Rational(3, 2)}), 50);
  CHECK(s.method == "algebraic");
  PrecisionScope p(80);
  CHECK(s.residual() < Mpfr("1e-60"));
  UPoly cp = charpoly(transfer(0, s.md));
  CHECK(abs(upoly_eval(cp, s.eigenvalue)) < Mpfr("1e-55"));
}

TEST_CASE("dominant state: degeneracies and cap") {
  CHECK_THROWS_AS(dominant_state(md({1, 1}, {0, 0}), 30), DegenerateDominantEigenvalue);
  // No singlet in 1/2 (x) 1: every eigenvalue is an sl2 multiplet.
  CHECK_THROWS_AS(dominant_state(md({1, 2}, {0, Rational(1, 4)}), 30), DegenerateDominantEigenvalue);
  setenv("S1FC_MAX_DIM", "3", 1);
  CHECK_THROWS_AS(dominant_state(md({1, 1}, {0, Rational(1, 3)}), 30), DimensionTooLarge);
  unsetenv("S1FC_MAX_DIM");
  CHECK(max_dimension() == 6561);
}

TEST_CASE("direct expectation: identity and linearity") {
  std::mt19937_64 g(32);
  SpectralState s = dominant_state(md({1, 1}, {0, Rational(1, 3)}), 50);
  std::vector<Rational> ls{Rational(1, 5), Rational(-2, 7)};
  CHECK(*direct_expectation(LocalOperator::identity(2), ls, s, 50).exact == 1);
  LocalOperator o = random_operator(2, g), o2 = o;
  o2.m *= Rational(2);
  CHECK(*direct_expectation(o2, ls, s, 50).exact == 2 * *direct_expectation(o, ls, s, 50).exact);
}

TEST_CASE("direct expectation matches the brute-force trace") {
  LocalOperator ss = build_ss_operator(2);
  SpectralState one = dominant_state(md({1}, {0}), 50);
  std::vector<Rational> ls{Rational(0), Rational(1, 7)};
  auto a = direct_expectation(ss, ls, one, 50), b = direct_expectation_bruteforce(ss, ls, one, 50);
  REQUIRE(a.exact);
  CHECK(*a.exact == *b.exact);

  std::mt19937_64 g(33);
  SpectralState two = dominant_state(md({1, 1}, {0, Rational(1, 3)}), 50);
  for (int i = 0; i < 3; ++i) {
    LocalOperator o = random_operator(2, g);
    std::vector<Rational> l2{rnd(g), rnd(g)};
    CHECK(*direct_expectation(o, l2, two, 50).exact == *direct_expectation_bruteforce(o, l2, two, 50).exact);
  }
  SpectralState s11 = dominant_state(md({2, 2}, {0, Rational(1, 3)}), 50);
  CHECK(*direct_expectation(ss, ls, s11, 50).exact == *direct_expectation_bruteforce(ss, ls, s11, 50).exact);

  SpectralState alg = dominant_state(md({1, 1, 1, 1}, {0, 6, Rational(-3, 4), Rational(3, 2)}), 50);
  auto c = direct_expectation(ss, {Rational(1, 3), Rational(-1, 5)}, alg, 50);
  auto d = direct_expectation_bruteforce(ss, {Rational(1, 3), Rational(-1, 5)}, alg, 50);
  CHECK(!c.exact);
  CHECK(agree_to_digits(c.value.value, d.value.value, 40));
}

TEST_CASE("direct expectation: shift invariance") {
  MatsubaraData m = md({1, 1}, {0, Rational(1, 3)});
  Rational c(1, 10);
  MatsubaraData shifted = md({1, 1}, {c, Rational(1, 3) + c});
  LocalOperator ss = build_ss_operator(2);
  std::vector<Rational> ls{Rational(2, 5), Rational(-1, 3)}, ls2{ls[0] + c, ls[1] + c};
  auto a = direct_expectation(ss, ls, dominant_state(m, 50), 50);
  auto b = direct_expectation(ss, ls2, dominant_state(shifted, 50), 50);
  CHECK(*a.exact == *b.exact);
}

TEST_CASE("direct expectation: global rotation invariance") {
  std::mt19937_64 g(34);
  SpectralState s = dominant_state(md({1, 1}, {0, Rational(1, 3)}), 50);
  Sl2Rep r = sl2_rep(2);
  QMatrix g1 = exp_nilpotent(r.e, Rational(2, 3)) * exp_nilpotent(r.f, Rational(-1, 4));
  QMatrix g1inv = exp_nilpotent(r.f, Rational(1, 4)) * exp_nilpotent(r.e, Rational(-2, 3));
  REQUIRE(g1 * g1inv == QMatrix::identity(3));
  QMatrix gg = kron(g1, g1), gginv = kron(g1inv, g1inv);
  std::vector<Rational> ls{Rational(1, 6), Rational(3, 4)};
  for (LocalOperator o : {build_ss_operator(2), random_operator(2, g)}) {
    LocalOperator rot{2, gg * o.m * gginv};
    CHECK(*direct_expectation(o, ls, s, 50).exact == *direct_expectation(rot, ls, s, 50).exact);
  }
}
