#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "s1fc/bigfloat.hpp"
#include "s1fc/laurent.hpp"
#include "s1fc/pipoly.hpp"
#include "s1fc/rational_function.hpp"

#include <random>

using namespace s1fc;

namespace {

Rational random_rational(std::mt19937_64& g) {
  std::uniform_int_distribution<long> n(-1000, 1000), d(1, 97);
  return Rational(n(g), d(g));
}

PiPoly random_pipoly(std::mt19937_64& g) {
  PiPoly p;
  std::uniform_int_distribution<int> k(0, 4);
  for (int i = 0; i < 3; ++i) p += PiPoly::pi2_power(k(g), random_rational(g));
  return p;
}

// Bernoulli numbers from sum_{k<=m} C(m+1,k) B_k = 0.
std::vector<Rational> bernoulli(int n) {
  std::vector<Rational> b(n + 1);
  b[0] = 1;
  for (int m = 1; m <= n; ++m) {
    Rational s(0), binom(1);
    for (int k = 0; k < m; ++k) {
      s += binom * b[k];
      binom = binom * (m + 1 - k) / (k + 1);
    }
    b[m] = -s / (m + 1);
  }
  return b;
}

}  // namespace

TEST_CASE("rational parsing and formatting") {
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(parse_rational(" -7 ") == Rational(-7));
  CHECK(to_string(Rational(-10, 4)) == "-5/2");
  CHECK(to_string(Rational(3)) == "3");
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("x"));
}

TEST_CASE("rational field axioms") {
  std::mt19937_64 g(11);
  for (int i = 0; i < 200; ++i) {
    Rational a = random_rational(g), b = random_rational(g), c = random_rational(g);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    if (a != 0) CHECK(a * (Rational(1) / a) == 1);
  }
}

TEST_CASE("pipoly ring axioms") {
  std::mt19937_64 g(12);
  for (int i = 0; i < 100; ++i) {
    PiPoly a = random_pipoly(g), b = random_pipoly(g), c = random_pipoly(g);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a - a).is_zero());
  }
}

TEST_CASE("pipoly formatting and json") {
  PiPoly p = PiPoly::pi2_power(1, Rational(8, 9)) + PiPoly(Rational(-34, 3));
  CHECK(p.str() == "8/9·π² − 34/3");
  CHECK(p.degree() == 1);
  CHECK(PiPoly::from_json(p.to_json()) == p);
  CHECK(PiPoly().degree() == -1);
  CHECK_THROWS(PiPoly::from_json(nlohmann::json::parse(R"([{"power":3,"value":"1"}])")));
}

TEST_CASE("pipoly_eval") {
  PiPoly n2 = PiPoly::pi2_power(1, Rational(8, 9)) + PiPoly(Rational(-34, 3));
  CHECK(pipoly_eval(n2, 10).decimal(10) == "-2.560351643");
  CHECK(pipoly_eval(PiPoly(), 10).decimal(10) == "0");
  CHECK_THROWS(pipoly_eval(n2, 5));
}

TEST_CASE("pipoly_eval is stable under extra precision") {
  std::mt19937_64 g(13);
  for (int i = 0; i < 20; ++i) {
    PiPoly p = random_pipoly(g);
    for (unsigned d : {10u, 30u, 60u}) {
      BigFloat a = pipoly_eval(p, d), b = pipoly_eval(p, d + 20);
      CHECK(agree_to_digits(a.value, b.value, d - 2));
    }
  }
}

TEST_CASE("round half even") {
  PrecisionScope s(50);
  CHECK(round_half_even(Mpfr("0.125"), 2) == "0.12");
  CHECK(round_half_even(Mpfr("0.135"), 2) == "0.14");
  CHECK(round_half_even(Mpfr("9.9996"), 4) == "10.00");
  CHECK(round_half_even(Mpfr("-1.083843468449"), 10) == "-1.083843468");
}

TEST_CASE("laurent identity and inverse") {
  RationalSeries inv_t = RationalSeries::monomial(1, -1, kExactOrder);
  RationalSeries t = RationalSeries::monomial(1, 1, kExactOrder);
  RationalSeries one = inv_t * t;
  CHECK(one.coeff(0) == 1);
  CHECK(one.valuation() == 0);

  RationalSeries a = RationalSeries::from_coeffs(1, {1, 1}, 12);  // t + t^2
  RationalSeries ai = a.inverse();
  CHECK(ai.order() == 10);
  for (int e = -1; e < ai.order(); ++e) CHECK(ai.coeff(e) == ((e + 1) % 2 == 0 ? 1 : -1));
  RationalSeries prod = a * ai;
  CHECK(prod.coeff(0) == 1);
  for (int e = 1; e < prod.order(); ++e) CHECK(prod.coeff(e) == 0);

  CHECK_THROWS_AS(RationalSeries(5).inverse(), InvertAtZeroLeading);
}

TEST_CASE("laurent a * inverse(a) == 1 for random series") {
  std::mt19937_64 g(14);
  for (int i = 0; i < 30; ++i) {
    std::vector<PiPoly> c;
    c.push_back(PiPoly(random_rational(g) + (i % 2 ? 1 : 0)));
    if (c[0].is_zero()) c[0] = PiPoly(1);
    for (int k = 0; k < 6; ++k) c.push_back(random_pipoly(g));
    int low = static_cast<int>(g() % 5) - 2;
    PiSeries a = PiSeries::from_coeffs(low, c, low + 7);
    PiSeries p = a * a.inverse();
    CHECK(p.coeff(0) == PiPoly(1));
    for (int e = 1; e < p.order(); ++e) CHECK(p.coeff(e).is_zero());
  }
}

TEST_CASE("p series against the Bernoulli expansion") {
  const int order = 12;
  PiSeries p = p_series(1, order);
  auto b = bernoulli(order + 2);
  Rational fact(1);
  for (int k = 0; 2 * k - 1 < order; ++k) {
    if (k > 0) fact *= Rational((2 * k - 1) * (2 * k));
    // π y / sin(π y) = sum (-1)^(k+1) (2^(2k) - 2) B_2k (π y)^(2k) / (2k)!
    Rational c = (pow(Rational(2), 2 * k) - 2) * b[2 * k] / fact;
    if (k % 2 == 0) c = -c;
    CHECK(p.coeff(2 * k - 1) == PiPoly::pi2_power(k, c / 2));
  }
  CHECK(p.coeff(1) == PiPoly::pi2_power(1, Rational(1, 12)));
  CHECK(p.coeff(3) == PiPoly::pi2_power(2, Rational(7, 720)));
  // Scaling: p(c t) has coefficients c^(2k-1).
  PiSeries p3 = p_series(3, order);
  CHECK(p3.coeff(-1) == PiPoly(Rational(1, 6)));
  CHECK(p3.coeff(1) == PiPoly::pi2_power(1, Rational(3, 12)));
}

TEST_CASE("multivariate polynomials") {
  Poly x = Poly::var(0), y = Poly::var(1);
  Poly p = (x - y) * (x + y * Rational(2));
  CHECK(p.eval({Rational(3), Rational(1)}) == 10);
  auto q = p.divide_exact(x - y);
  REQUIRE(q);
  CHECK(*q == x + y * Rational(2));
  CHECK(!p.divide_exact(x + y));
  CHECK(p.along_ray({Rational(1), Rational(2)}) == std::vector<Rational>{0, 0, -5});
}

TEST_CASE("rational functions") {
  std::vector<std::string> names{"mu1", "mu2"};
  auto f = parse_rational_function("2*(17 - 6*mu1^2 + mu1^4)/(3*(mu1^2-1))", names);
  CHECK(f.eval({Rational(0), Rational(0)}) == Rational(-34, 3));
  auto g = parse_rational_function("1/(mu1-mu2) - 1/(mu1-mu2)", names);
  CHECK(g.is_zero());
  auto h = parse_rational_function("(mu1^2-mu2^2)/(mu1-mu2)", names);
  CHECK(h.is_polynomial());
  CHECK(h == parse_rational_function("mu1+mu2", names));
  auto k = parse_rational_function("1/(mu1*(mu1-mu2)^2) + 3/mu2", names);
  std::mt19937_64 gen(15);
  for (int i = 0; i < 20; ++i) {
    Rational a = random_rational(gen), b = random_rational(gen);
    if (a == 0 || b == 0 || a == b) continue;
    CHECK(k.eval({a, b}) == Rational(1) / (a * (a - b) * (a - b)) + Rational(3) / b);
  }
  CHECK_THROWS(parse_rational_function("mu3", names));
  CHECK_THROWS(parse_rational_function("1/(mu1-mu1)", names));
}

TEST_CASE("rational function along a ray") {
  std::vector<std::string> names{"mu1", "mu2"};
  auto f = parse_rational_function("(mu1^2-4)/(mu1*(mu1-mu2))", names);
  // mu1 = t, mu2 = 3t: (t^2 - 4)/(-2 t^2) = 2/t^2 - 1/2
  RationalSeries s = f.along_ray({Rational(1), Rational(3)}, 4);
  CHECK(s.coeff(-2) == 2);
  CHECK(s.coeff(-1) == 0);
  CHECK(s.coeff(0) == Rational(-1, 2));
  CHECK(s.coeff(3) == 0);
}
