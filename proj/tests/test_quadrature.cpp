#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sgf/quadrature.hpp"

using namespace sgf;

TEST_CASE("Gaussian integrals") {
  QuadResult g = integrate_1d([](double x) { return cd(std::exp(-0.5 * x * x)); });
  CHECK(std::abs(g.value - std::sqrt(two_pi)) < 1e-12);
  CHECK(g.error <= 1e-9 * std::sqrt(two_pi));
  // error estimate is conservative on a smooth oscillatory integrand
  QuadResult o = integrate_1d([](double x) { return std::exp(-0.5 * x * x + I * 1.5 * x); });
  double exact = std::sqrt(two_pi) * std::exp(-1.125);
  CHECK(std::abs(o.value - exact) <= std::max(o.error, 1e-14));
  CHECK(std::abs(o.value - exact) < 1e-12);
  QuadratureSpec half;
  half.domain = Domain::half_line;
  CHECK(std::abs(integrate_1d([](double x) { return cd(std::exp(-x)); }, {1e-12, 1e-15, Domain::half_line, 1, 0, 0, 1.0, 40}).value - 1.0) < 1e-12);
  half.sign = -1;
  CHECK(std::abs(integrate_1d([](double x) { return cd(x * x * std::exp(-0.5 * x * x)); }, half).value -
                 std::sqrt(two_pi) / 2) < 1e-11);
}

TEST_CASE("tolerance halving") {
  auto f = [](double x) { return cd(1.0 / (1.0 + x * x)); };
  double exact = 2 * std::atan(4.0);
  for (double tol : {1e-6, 5e-7, 1e-10, 5e-11}) {
    QuadResult r = integrate_interval(f, -4, 4, tol, 1e-16);
    CHECK(std::abs(r.value - exact) <= tol * exact * 10);
  }
  QuadResult a = integrate_interval(f, -4, 4, 1e-8, 1e-16), b = integrate_interval(f, -4, 4, 5e-9, 1e-16);
  CHECK(std::abs(a.value - b.value) < 1e-8 * exact);
}

TEST_CASE("truncation widths") {
  auto f = [](double x) { return std::exp(-0.5 * x * x + I * 0.3 * x) * (1.0 + x * x); };
  QuadratureSpec s12, s16;
  s16.n_widths = 16;
  CHECK(std::abs(integrate_1d(f, s12).value - integrate_1d(f, s16).value) < 1e-12);
}

TEST_CASE("polar and product rules") {
  QuadResult p = integrate_polar([](double r, double) { return cd(r * std::exp(-r * r)); });
  CHECK(std::abs(p.value - std::numbers::pi) < 1e-10);
  QuadratureSpec s;
  QuadResult q = integrate_2d([](double x, double y) { return cd(std::exp(-0.5 * (x * x + y * y))); }, s, s);
  CHECK(std::abs(q.value - two_pi) < 1e-10);
}

TEST_CASE("failure modes") {
  CHECK_THROWS_AS(integrate_interval([](double) { return cd(1.0); }, 0, 1, 0.0, 1e-14), ValidationError);
  auto spike = [](double x) { return cd(1.0 / std::sqrt(std::abs(x) + 1e-300)); };
  CHECK_THROWS_AS(integrate_interval(spike, -1, 1, 1e-14, 1e-16, 20), NumericalError);
  CHECK(integrate_interval(spike, 2, 2, 1e-10, 1e-14).value == cd{0.0});
}

TEST_CASE("exponential polynomials") {
  ExpPoly p{{1.0, cd(0.2, 0.1), -0.3}, cd(-0.5), cd(0.4, -0.2)};
  for (int n = 0; n <= 5; ++n) {
    ExpPoly d = exp_poly_diff(p, n);
    for (double x : {-0.7, 0.0, 1.3}) {
      // composition of derivatives
      CHECK(std::abs(exp_poly_diff(d, 1)(x) - exp_poly_diff(p, n + 1)(x)) < 1e-12);
      if (n <= 4) {
        // h / 4 must stay above the roundoff floor of the fourth order stencil
        FdResult fd = fd_derivative([&](double t) { return p(t); }, x, n, 0.1);
        CHECK(std::abs(fd.value - d(x)) < 1e-6 * std::max(1.0, std::abs(d(x))));
      }
    }
  }
  std::vector<cd> t = exp_poly_taylor(p, 4, 0.3);
  for (int j = 0; j <= 4; ++j) CHECK(std::abs(t[j] - exp_poly_diff(p, j)(0.3)) < 1e-14);
  ExpPoly q{{0.5, 1.0}, cd(-0.25), cd(0.0, 1.0)};
  CHECK(std::abs((p * q)(0.8) - p(0.8) * q(0.8)) < 1e-14);
  CHECK(std::abs(p.scaled(I)(0.8) - I * p(0.8)) < 1e-15);
}

TEST_CASE("finite differences") {
  auto s = [](double x) { return cd(std::sin(x)); };
  CHECK(std::abs(fd_derivative(s, 0.4, 1, 1e-2).value - std::cos(0.4)) < 1e-10);
  CHECK(std::abs(fd_derivative(s, 0.4, 3, 1e-2).value + std::cos(0.4)) < 1e-7);
  CHECK(fd_derivative(s, 0.4, 0, 1e-2).value == s(0.4));
  CHECK_THROWS_AS(fd_derivative(s, 0.0, 7, 1e-2), ValidationError);
}
