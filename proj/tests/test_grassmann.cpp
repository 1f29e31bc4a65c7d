#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sgf/grassmann.hpp"

using namespace sgf;

namespace {

GrassmannElement gen(int n, int i) { return GrassmannElement::generator(n, i); }
GrassmannElement scalar(int n, cd c) { return GrassmannElement(n, c); }

}  // namespace

TEST_CASE("products") {
  auto e = gen(2, 0), es = gen(2, 1);
  CHECK((e * e).max_abs_diff(scalar(2, 0.0)) == 0.0);
  auto a = gen(4, 0), b = gen(4, 2);
  CHECK((a * b).max_abs_diff(-(b * a)) == 0.0);
  auto lhs = (scalar(2, 1.0) + e) * (scalar(2, 1.0) + es);
  auto rhs = scalar(2, 1.0) + e + es + e * es;
  CHECK(lhs.max_abs_diff(rhs) == 0.0);
  CHECK_THROWS_AS(gen(2, 0) * gen(4, 0), ValidationError);
}

TEST_CASE("anticommutation of every generator pair") {
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      auto s = gen(8, i) * gen(8, j) + gen(8, j) * gen(8, i);
      CHECK(s.max_abs_diff(scalar(8, 0.0)) == 0.0);
    }
}

TEST_CASE("associativity on random elements") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 30; ++t) {
    auto a = random_element(8, t % 2 == 0, rng), b = random_element(8, t % 3 == 0, rng),
         c = random_element(8, true, rng);
    CHECK(((a * b) * c).max_abs_diff(a * (b * c)) < 1e-13);
  }
}

TEST_CASE("exponential") {
  auto e = gen(2, 0), es = gen(2, 1);
  CHECK(gexp(scalar(2, 0.0)).max_abs_diff(scalar(2, 1.0)) == 0.0);
  CHECK(gexp(e * es).max_abs_diff(scalar(2, 1.0) + e * es) < 1e-15);
  cd c{0.4, -1.1};
  CHECK(gexp(scalar(2, c) + e * es).max_abs_diff(std::exp(c) * (scalar(2, 1.0) + e * es)) < 1e-14);
}

TEST_CASE("Berezin integration") {
  auto e = gen(2, 0), es = gen(2, 1);
  CHECK(berezin_integrate(e, {0}).body() == cd{1.0});
  CHECK(berezin_integrate(scalar(2, 1.0), {0}).body() == cd{0.0});
  // ordering convention fixed by the Gaussian U(1/1) identity
  CHECK(berezin_integrate(e * es, {0, 1}).body() == cd{-1.0});
  CHECK(berezin_integrate(es * e, {0, 1}).body() == cd{1.0});
  CHECK_THROWS_AS(berezin_integrate(e, {0, 0}), ValidationError);
}

TEST_CASE("Berezin linearity and total derivatives") {
  std::mt19937_64 rng(5);
  cd al{0.3, 1.2}, be{-0.7, 0.1};
  for (int t = 0; t < 10; ++t) {
    auto a = random_element(6, true, rng), b = random_element(6, false, rng);
    auto l = berezin_integrate(al * a + be * b, {0, 1, 2, 3, 4, 5});
    auto r = al * berezin_integrate(a, {0, 1, 2, 3, 4, 5}) + be * berezin_integrate(b, {0, 1, 2, 3, 4, 5});
    CHECK(l.max_abs_diff(r) < 1e-15);
    for (int g = 0; g < 6; ++g) {
      auto d = gderiv(a, g);
      CHECK(std::abs(berezin_integrate(d, {0, 1, 2, 3, 4, 5}).body()) == 0.0);
    }
  }
}

TEST_CASE("supertrace") {
  auto m = GrassmannMatrix::diagonal({2.0}, {0.5}, 2);
  CHECK(str(m).body() == cd{1.5});
  // Str(kappa rho) = k1 rho1 - k2 rho2
  GrassmannMatrix rho(1, 1, 2);
  rho(0, 0) = scalar(2, 0.7);
  rho(0, 1) = gen(2, 1);
  rho(1, 0) = gen(2, 0);
  rho(1, 1) = scalar(2, -0.4);
  cd k1{0.3, -0.5}, k2{-0.2, 0.0};
  auto kap = GrassmannMatrix::diagonal({k1}, {k2}, 2);
  CHECK(str(kap * rho).max_abs_diff(scalar(2, k1 * 0.7 - k2 * -0.4)) < 1e-15);
  std::mt19937_64 rng(7);
  for (auto [k1d, k2d] : {std::pair{1, 1}, {2, 1}, {2, 2}}) {
    auto A = random_even_supermatrix(k1d, k2d, 4, rng), B = random_even_supermatrix(k1d, k2d, 4, rng);
    CHECK(A.grading_ok());
    CHECK(str(A * B).max_abs_diff(str(B * A)) < 1e-14);
  }
}

TEST_CASE("superdeterminant") {
  CHECK(sdet(GrassmannMatrix::identity(2, 2, 4)).max_abs_diff(scalar(4, 1.0)) < 1e-15);
  CHECK(sdet(GrassmannMatrix::diagonal({3.0}, {2.0}, 2)).max_abs_diff(scalar(2, 1.5)) < 1e-15);
  CHECK_THROWS_AS(sdet(GrassmannMatrix::diagonal({3.0}, {0.0}, 2)), SingularityError);
  std::mt19937_64 rng(11);
  for (auto [k1, k2] : {std::pair{1, 1}, {2, 2}}) {
    for (int t = 0; t < 5; ++t) {
      auto A = random_even_supermatrix(k1, k2, 4, rng, 0.3) + GrassmannMatrix::identity(k1, k2, 4);
      auto B = random_even_supermatrix(k1, k2, 4, rng, 0.3) + GrassmannMatrix::identity(k1, k2, 4);
      CHECK(sdet(A * B).max_abs_diff(sdet(A) * sdet(B)) < 1e-12);
    }
  }
}

TEST_CASE("sdet of exp equals exp of str") {
  std::mt19937_64 rng(13);
  for (auto [k1, k2] : {std::pair{1, 1}, {2, 1}, {1, 2}, {2, 2}}) {
    auto m = random_even_supermatrix(k1, k2, 8, rng, 0.3);
    CHECK(sdet(gmatrix_exp(m)).max_abs_diff(gexp(str(m))) < 1e-11);
  }
}

TEST_CASE("conjugation is an involution up to parity") {
  auto e = gen(2, 0), es = gen(2, 1);
  CHECK(e.conj().max_abs_diff(es) == 0.0);
  CHECK(es.conj().max_abs_diff(-e) == 0.0);
  std::mt19937_64 rng(17);
  auto a = random_element(4, true, rng), b = random_element(4, true, rng);
  CHECK((a * b).conj().max_abs_diff(a.conj() * b.conj()) < 1e-15);
}
