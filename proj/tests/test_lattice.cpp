#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "s1fc/lattice.hpp"

#include <cmath>
#include <random>

using namespace s1fc;

namespace {

Rational rnd(std::mt19937_64& g) {
  std::uniform_int_distribution<long> n(-40, 40), d(1, 13);
  return Rational(n(g), d(g));
}

MatsubaraData md(std::vector<int> s2, std::vector<Rational> tau) { return MatsubaraData{std::move(s2), std::move(tau)}; }

}  // namespace

TEST_CASE("spin-1 R matrix entries") {
  CHECK(r_s1(1)(0, 0) == 6);
  CHECK(r_s1(2)(2, 4) == 8);
  CHECK(r_s1(0) == permutation(3) * Rational(2));
}

TEST_CASE("sl2 representations") {
  for (int s2 = 1; s2 <= 4; ++s2) {
    Sl2Rep r = sl2_rep(s2);
    CHECK(commutator(r.e, r.f) == r.h);
    CHECK(commutator(r.h, r.e) == r.e * Rational(2));
    CHECK(commutator(r.h, r.f) == r.f * Rational(-2));
  }
  Sl2Rep s1 = sl2_rep(2);
  CHECK(s1.e(0, 1) == 2);
  CHECK(s1.e(1, 2) == 1);
  CHECK(s1.f(1, 0) == 1);
  CHECK(s1.f(2, 1) == 2);
  CHECK(s1.h(0, 0) == 2);
}

TEST_CASE("spin-1/2 Lax is u + P") {
  Rational u(3, 7);
  CHECK(lax(1, 1, u) == QMatrix::identity(4) * u + permutation(2));
}

TEST_CASE("Yang-Baxter for the spin-1 R") {
  CHECK(check_yang_baxter_s1(Rational(1, 3), Rational(2, 5)));
  CHECK(check_yang_baxter_s1(0, 0));
  std::mt19937_64 g(21);
  for (int i = 0; i < 5; ++i) CHECK(check_yang_baxter_s1(rnd(g), rnd(g)));
  CHECK_THROWS_AS(check_yang_baxter(r_s1(1), r_s1(1), r_s1(1), {3, 3}), DimensionMismatch);
}

TEST_CASE("mixed RLL with the spin-1 R") {
  CHECK(check_mixed_rll(Rational(2, 7), Rational(-1, 3)));
  std::mt19937_64 g(22);
  for (int i = 0; i < 5; ++i) CHECK(check_mixed_rll(rnd(g), rnd(g)));
}

TEST_CASE("fusion projector") {
  CHECK(fusion_w() * fusion_v() == QMatrix::identity(3));
  for (int n = 1; n <= 3; ++n) {
    QMatrix p = fusion_projector(n);
    CHECK(p * p == p);
    CHECK(p.trace() == Rational(static_cast<long>(std::pow(3, n))));
  }
}

TEST_CASE("fusion identity") {
  CHECK(check_fusion({Rational(1, 3)}, md({1}, {0})));
  CHECK(check_fusion({Rational(2, 7), Rational(-3, 5)}, md({1, 2}, {0, Rational(1, 4)})));
  std::mt19937_64 g(23);
  for (int i = 0; i < 3; ++i) {
    CHECK(check_fusion({rnd(g)}, md({2, 1}, {rnd(g), rnd(g)})));
    CHECK(check_fusion({rnd(g), rnd(g)}, md({1}, {rnd(g)})));
  }
}

TEST_CASE("fused Lax on a spin-1 site is the spin-1 R up to a scalar") {
  for (Rational l : {Rational(1, 3), Rational(-5, 2), Rational(7, 4)}) {
    QMatrix f = fused_monodromy(l, md({2}, {0})).full();
    QMatrix r = r_s1(l);
    Rational c = f(0, 0) / r(0, 0);
    CHECK(f == r * c);
  }
}

TEST_CASE("transfer matrices commute") {
  std::mt19937_64 g(24);
  CHECK(check_commute(md({1, 1}, {0, Rational(1, 5)}), Rational(1, 3), Rational(-2, 7)));
  CHECK(check_commute(md({1, 2, 1}, {0, Rational(1, 4), Rational(-2, 3)}), rnd(g), rnd(g)));
  CHECK(check_commute(md({2, 2}, {rnd(g), rnd(g)}), rnd(g), rnd(g)));
}

TEST_CASE("quantum determinant and eigenvalue relation") {
  MatsubaraData one = md({1}, {0});
  CHECK(check_eigen_relation(one, {Rational(1, 3), Rational(5, 7), Rational(9, 2)}));
  std::mt19937_64 g(25);
  std::vector<Rational> ls;
  for (int i = 0; i < 5; ++i) ls.push_back(rnd(g));
  CHECK(check_eigen_relation(md({1, 1}, {0, Rational(1, 5)}), ls));
  CHECK(check_eigen_relation(md({1, 2}, {0, Rational(1, 4)}), ls));
  // Single spin-1/2 site: T(u) = 2u + 1 (scalar), so Δ is explicit.
  Rational l(5, 7);
  CHECK(transfer(l, one) == QMatrix::identity(2) * (2 * l + 1));
}

TEST_CASE("Matsubara data json") {
  auto j = nlohmann::json::parse(R"({"L":2,"spins":["1/2","1"],"tau":["0","1/4"]})");
  MatsubaraData m = MatsubaraData::from_json(j);
  CHECK(m.dimension() == 6);
  CHECK(m.spin2 == std::vector<int>{1, 2});
  CHECK(MatsubaraData::from_json(m.to_json()).tau == m.tau);
  CHECK_THROWS_AS(MatsubaraData::from_json(nlohmann::json::parse(R"({"L":1,"spins":["1/3"],"tau":["0"]})")),
                  ConfigError);
  CHECK_THROWS_AS(MatsubaraData::from_json(nlohmann::json::parse(R"({"L":2,"spins":["1/2"],"tau":["0"]})")),
                  ConfigError);
}
