#include "sgf/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

namespace sgf {

namespace {

// Gauss-Kronrod 7-15 nodes on [-1, 1]
constexpr double xk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                          0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                          0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                          0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double wk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                          0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                          0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                          0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                          0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b;
  cd value;
  double error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk15(const Fn1& g, double a, double b) {
  double c = 0.5 * (a + b), h = 0.5 * (b - a);
  cd fc = g(c);
  cd kron = fc * wk[7];
  cd gauss = fc * wg[3];
  for (int j = 0; j < 7; ++j) {
    cd f1 = g(c - h * xk[j]);
    cd f2 = g(c + h * xk[j]);
    kron += wk[j] * (f1 + f2);
    if (j % 2 == 1) gauss += wg[j / 2] * (f1 + f2);
  }
  kron *= h;
  gauss *= h;
  return {a, b, kron, std::abs(kron - gauss)};
}

}  // namespace

QuadResult integrate_interval(const Fn1& g, double a, double b, double rel_tol, double abs_tol,
                              int max_intervals) {
  if (!(rel_tol > 0) || !(abs_tol > 0)) throw ValidationError("quadrature tolerances must be positive");
  if (a == b) return {cd{0.0}, 0.0, 0};
  std::priority_queue<Segment> heap;
  Segment s0 = gk15(g, a, b);
  heap.push(s0);
  cd total = s0.value;
  double err = s0.error;
  int evals = 15, n = 1;
  auto resum = [&] {
    // running sums lose accuracy after a large early estimate
    std::priority_queue<Segment> keep;
    total = 0.0;
    err = 0.0;
    while (!heap.empty()) {
      total += heap.top().value;
      err += heap.top().error;
      keep.push(heap.top());
      heap.pop();
    }
    heap.swap(keep);
  };
  auto target = [&] { return std::max(abs_tol, rel_tol * std::abs(total)); };
  for (;;) {
    while (!(err <= target())) {
      if (n >= max_intervals) {
        std::ostringstream m;
        m << "adaptive quadrature did not converge on [" << a << ", " << b << "]: achieved error " << err
          << " after " << n << " intervals";
        throw NumericalError(m.str(), err);
      }
      Segment s = heap.top();
      heap.pop();
      double mid = 0.5 * (s.a + s.b);
      if (mid <= s.a || mid >= s.b) {
        // no room left to bisect; accept the segment as is
        heap.push({s.a, s.b, s.value, 0.0});
        err -= s.error;
        continue;
      }
      Segment l = gk15(g, s.a, mid), r = gk15(g, mid, s.b);
      evals += 30;
      ++n;
      total += l.value + r.value - s.value;
      err += l.error + r.error - s.error;
      heap.push(l);
      heap.push(r);
    }
    resum();
    if (err <= target()) break;
  }
  return {total, err, evals};
}

QuadResult integrate_1d(const Fn1& g, const QuadratureSpec& spec) {
  double span = spec.n_widths * spec.width;
  switch (spec.domain) {
    case Domain::full_line:
      return integrate_interval(g, -span, span, spec.rel_tol, spec.abs_tol, spec.max_intervals);
    case Domain::half_line:
      if (spec.sign >= 0) return integrate_interval(g, 0.0, span, spec.rel_tol, spec.abs_tol, spec.max_intervals);
      return integrate_interval(g, -span, 0.0, spec.rel_tol, spec.abs_tol, spec.max_intervals);
    case Domain::interval:
      return integrate_interval(g, spec.lo, spec.hi, spec.rel_tol, spec.abs_tol, spec.max_intervals);
  }
  return {};
}

QuadResult integrate_2d(const Fn2& g, const QuadratureSpec& outer, const QuadratureSpec& inner) {
  int evals = 0;
  double inner_err = 0;
  auto slice = [&](double x) {
    QuadResult r = integrate_1d([&](double y) { return g(x, y); }, inner);
    evals += r.evaluations;
    inner_err = std::max(inner_err, r.error);
    return r.value;
  };
  QuadResult r = integrate_1d(slice, outer);
  double span = (outer.domain == Domain::interval) ? (outer.hi - outer.lo)
                                                   : outer.n_widths * outer.width * 2;
  r.error += inner_err * span;
  r.evaluations = evals;
  return r;
}

QuadResult integrate_polar(const Fn2& h, double radius, double rel_tol, double abs_tol) {
  QuadratureSpec outer;
  outer.domain = Domain::interval;
  outer.lo = 0;
  outer.hi = two_pi;
  outer.rel_tol = rel_tol;
  outer.abs_tol = abs_tol;
  QuadratureSpec inner;
  inner.domain = Domain::interval;
  inner.lo = 0;
  inner.hi = radius;
  inner.rel_tol = rel_tol * 0.1;
  inner.abs_tol = abs_tol * 0.1;
  return integrate_2d([&](double th, double r) { return h(r, th); }, outer, inner);
}

cd ExpPoly::operator()(cd x) const {
  cd p{0.0};
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) p = p * x + *it;
  return p * std::exp(a * x * x + b * x);
}

ExpPoly ExpPoly::derivative() const {
  ExpPoly d;
  d.a = a;
  d.b = b;
  d.poly.assign(poly.size() + 1, cd{0.0});
  for (size_t k = 1; k < poly.size(); ++k) d.poly[k - 1] += double(k) * poly[k];
  for (size_t k = 0; k < poly.size(); ++k) {
    d.poly[k] += b * poly[k];
    d.poly[k + 1] += 2.0 * a * poly[k];
  }
  return d;
}

ExpPoly ExpPoly::operator*(const ExpPoly& o) const {
  ExpPoly r;
  r.a = a + o.a;
  r.b = b + o.b;
  r.poly.assign(poly.size() + o.poly.size() - 1, cd{0.0});
  for (size_t i = 0; i < poly.size(); ++i)
    for (size_t j = 0; j < o.poly.size(); ++j) r.poly[i + j] += poly[i] * o.poly[j];
  return r;
}

ExpPoly ExpPoly::scaled(cd c) const {
  ExpPoly r = *this;
  for (auto& x : r.poly) x *= c;
  return r;
}

ExpPoly exp_poly_diff(const ExpPoly& p, int n) {
  ExpPoly r = p;
  for (int k = 0; k < n; ++k) r = r.derivative();
  return r;
}

std::vector<cd> exp_poly_taylor(const ExpPoly& p, int n, cd x0) {
  std::vector<cd> out;
  ExpPoly r = p;
  for (int k = 0; k <= n; ++k) {
    out.push_back(r(x0));
    r = r.derivative();
  }
  return out;
}

FdResult fd_derivative(const std::function<cd(double)>& g, double x, int n, double h) {
  if (n < 0 || n > 6) throw ValidationError("fd_derivative supports orders 0..6");
  if (n == 0) return {g(x), 0.0};
  auto stencil = [&](double step) {
    cd s{0.0};
    for (int k = 0; k <= n; ++k) s += sign_pow(k) * binomial(n, k) * g(x + (0.5 * n - k) * step);
    return s / std::pow(step, n);
  };
  cd t0 = stencil(h), t1 = stencil(h / 2), t2 = stencil(h / 4);
  cd r0 = (4.0 * t1 - t0) / 3.0, r1 = (4.0 * t2 - t1) / 3.0;
  cd best = (16.0 * r1 - r0) / 15.0;
  return {best, std::abs(best - r1)};
}

}  // namespace sgf
