#pragma once

#include <functional>
#include <vector>

#include "sgf/common.hpp"

namespace sgf {

enum class Domain { full_line, half_line, interval };

struct QuadratureSpec {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  Domain domain = Domain::full_line;
  int sign = 1;          // direction of a half line
  double lo = 0, hi = 0; // only for Domain::interval
  double width = 1.0;    // damping width of the integrand
  double n_widths = 12.0;
  int max_intervals = 4000;
};

struct QuadResult {
  cd value;
  double error = 0;
  int evaluations = 0;
};

using Fn1 = std::function<cd(double)>;
using Fn2 = std::function<cd(double, double)>;

QuadResult integrate_interval(const Fn1& g, double a, double b, double rel_tol,
                              double abs_tol, int max_intervals = 4000);

QuadResult integrate_1d(const Fn1& g, const QuadratureSpec& spec = {});

// outer variable x, inner y; g(x, y)
QuadResult integrate_2d(const Fn2& g, const QuadratureSpec& outer,
                        const QuadratureSpec& inner);

// h(r, theta) must already contain the Jacobian r
QuadResult integrate_polar(const Fn2& h, double radius = 12.0, double rel_tol = 1e-10,
                           double abs_tol = 1e-13);

// p(x) exp(a x^2 + b x), closed under differentiation
struct ExpPoly {
  std::vector<cd> poly{cd{1.0}};
  cd a{0.0};
  cd b{0.0};

  cd operator()(cd x) const;
  ExpPoly derivative() const;
  ExpPoly operator*(const ExpPoly& o) const;
  ExpPoly scaled(cd c) const;
};

ExpPoly exp_poly_diff(const ExpPoly& p, int n);

// derivatives p^{(j)}(x0) for j = 0..n
std::vector<cd> exp_poly_taylor(const ExpPoly& p, int n, cd x0 = 0.0);

struct FdResult {
  cd value;
  double error = 0;
};

// central stencil with three Richardson levels h, h/2, h/4
FdResult fd_derivative(const std::function<cd(double)>& g, double x, int n, double h);

}  // namespace sgf
