#include "sgf/superfns.hpp"

#include <cmath>

#include "sgf/detkernels.hpp"
#include "sgf/distdet.hpp"
#include "sgf/grassmann.hpp"

namespace sgf {

void check_psi(double psi) {
  if (!(psi > 0 && psi < std::numbers::pi)) throw ValidationError("Wick angle psi must lie in ]0, pi[");
}

std::vector<cd> SuperEigenPoint::fermionic() const {
  std::vector<cd> w;
  for (double x : r2) w.push_back(std::exp(I * psi) * x);
  return w;
}

ChiValue chi(cd x) { return {x, std::abs(x) <= tol_equal ? 0 : 1}; }

FactorizedSuperFn gaussian_superfn(double scale) {
  return {ExpPoly{{cd{1.0}}, cd{-scale}, cd{0.0}}, ExpPoly{{cd{1.0}}, cd{scale}, cd{0.0}}};
}

cd sqrt_berezinian_r(const SuperEigenPoint& r) {
  std::vector<cd> x(r.r1.begin(), r.r1.end());
  return sqrt_berezinian(x, r.fermionic());
}

cd phi_prefactor(int k1, int k2) {
  int e = ((k2 - k1) * (k2 - k1) - (k1 + k2)) / 2;
  cd ipi = std::pow(I * std::numbers::pi, e);
  return sign_pow((k1 + k2) * (k1 + k2 - 1) / 2) * ipi / std::pow(2.0, k1 * k2);
}

namespace {

std::vector<std::vector<int>> permutations(int n) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  std::vector<std::vector<int>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace

cd phi_plane_wave(const SuperEigenPoint& r, const SourceKappa& kappa, PhiForm form) {
  check_psi(r.psi);
  int k1 = r.k1(), k2 = r.k2();
  if (kappa.k1() != k1 || kappa.k2() != k2) throw ValidationError("eigenvalue and source dimensions differ");
  if (k1 < k2) throw ValidationError("phi needs k1 >= k2");
  if (k1 + k2 > 6) throw ResourceError("permutation sums are limited to k1 + k2 <= 6");
  cd ep = std::exp(I * r.psi);
  cd sbk = sqrt_berezinian(kappa.bos, kappa.ferm);
  cd sbr = sqrt_berezinian_r(r);
  if (std::abs(sbk) <= tol_equal || std::abs(sbr) <= tol_equal)
    throw SingularityError("square-root Berezinian vanishes");
  int e = ((k2 - k1) * (k2 - k1) - (k1 + k2)) / 2;
  cd ipi = std::pow(I * std::numbers::pi, e);
  double norm = std::pow(2.0, k1 * k2) * factorial(k1) * factorial(k2);
  if (form == PhiForm::factorized) {
    double chis = 1;
    for (cd a : kappa.bos)
      for (cd b : kappa.ferm) chis *= chi_v(a - b);
    Eigen::MatrixXcd m1(k1, k1), m2(k2, k2);
    for (int a = 0; a < k1; ++a)
      for (int b = 0; b < k1; ++b) m1(a, b) = std::exp(-I * kappa.bos[a] * r.r1[b]);
    for (int a = 0; a < k2; ++a)
      for (int b = 0; b < k2; ++b) m2(a, b) = std::exp(I * ep * kappa.ferm[a] * r.r2[b]);
    cd pre = sign_pow(k2 * (k2 - 1) / 2 + k1 * k2) * ipi / norm;
    return pre * chis * det(m1) * det(m2) / (sbk * sbr);
  }
  cd pre = sign_pow((k1 + k2) * (k1 + k2 - 1) / 2) * ipi / norm;
  cd sum{0.0};
  auto p1s = permutations(k1), p2s = permutations(k2);
  for (const auto& w1 : p1s)
    for (const auto& w2 : p2s) {
      Eigen::MatrixXcd m(k1, k1);
      for (int b = 0; b < k1; ++b) {
        double x = r.r1[w1[b]];
        for (int a = 0; a < k2; ++a) {
          double y = r.r2[w2[a]];
          m(a, b) = std::exp(-I * kappa.bos[b] * x + I * ep * kappa.ferm[a] * y) / (x - ep * y) *
                    chi_v(kappa.bos[b] - kappa.ferm[a]);
        }
        for (int a = 0; a < k1 - k2; ++a) m(k2 + a, b) = std::pow(x, a) * std::exp(-I * kappa.bos[b] * x);
      }
      sum += det(m);
    }
  return pre * sum / (sbk * sbr * sbr);
}

namespace {

QuadratureSpec line_spec() {
  QuadratureSpec q;
  q.domain = Domain::full_line;
  q.rel_tol = 1e-11;
  q.abs_tol = 1e-15;
  return q;
}

// int int g1(x) g2(e^{i psi} y) exp(-i kb x + i e^{i psi} ka y) / (x - e^{i psi} y) dx dy
cd phi_hat_smooth(const FactorizedSuperFn& F, cd kb, cd ka, double psi) {
  cd ep = std::exp(I * psi);
  auto h = [&](double rad, double th) {
    double c = std::cos(th), s = std::sin(th);
    double x = rad * c, y = rad * s;
    return F.g1(x) * F.g2(ep * y) * std::exp(-I * kb * x + I * ep * ka * y) / (c - ep * s);
  };
  return integrate_polar(h, 12.0, 1e-11, 1e-15).value;
}

}  // namespace

PhiHatResult phi_hat_action(const FactorizedSuperFn& F, const SourceKappa& kappa, double psi) {
  check_psi(psi);
  int k1 = kappa.k1(), k2 = kappa.k2();
  if (k1 < k2) throw ValidationError("phi-hat needs k1 >= k2");
  if (k1 + k2 > 6) throw ResourceError("determinant expansion limited to k1 + k2 <= 6");
  cd ep = std::exp(I * psi);
  cd f0 = F.g1(0.0) * F.g2(0.0);
  std::vector<DistDetEntry> cells(size_t(k1) * k1);
  for (int a = 0; a < k2; ++a) {
    for (int b = 0; b < k1; ++b) {
      cd diff = kappa.bos[b] - kappa.ferm[a];
      // row a carries the factor prod_c (kappa_c1 - kappa_a2) taken from 1/sqrt Ber
      cd rest{1.0};
      for (int c = 0; c < k1; ++c)
        if (c != b) rest *= kappa.bos[c] - kappa.ferm[a];
      DistDetEntry& e = cells[size_t(a) * k1 + b];
      e.consumes = {b, k1 + a};
      e.parts.push_back({EntryKind::delta_pair, -two_pi * f0 * rest});
      if (chi_v(diff)) e.parts.push_back({EntryKind::smooth, rest * diff * ep * phi_hat_smooth(F, kappa.bos[b], kappa.ferm[a], psi)});
    }
  }
  for (int a = 0; a < k1 - k2; ++a)
    for (int b = 0; b < k1; ++b) {
      cd kb = kappa.bos[b];
      QuadResult q = integrate_1d([&](double x) { return std::pow(x, a) * std::exp(-I * kb * x) * F.g1(x); }, line_spec());
      DistDetEntry& e = cells[size_t(k2 + a) * k1 + b];
      e.consumes = {b};
      e.parts.push_back({EntryKind::plane_wave, q.value});
    }
  DistDetResult d = dist_det(cells, k1, k1 + k2);
  cd den = vandermonde(kappa.bos) * vandermonde(kappa.ferm);
  if (std::abs(den) <= tol_equal) throw SingularityError("coinciding sources within one block");
  cd pre = phi_prefactor(k1, k2) / den;
  return {pre * d.value, pre * d.delta_free, d.terms};
}

namespace {

struct U11 {
  GrassmannMatrix rho{1, 1, 2};
  cd a, w;
  GrassmannElement shift;  // nilpotent eigenvalue shift
};

U11 make_u11(double a, double b, double psi) {
  U11 u;
  cd ph = std::exp(0.5 * I * psi);
  u.a = a;
  u.w = std::exp(I * psi) * b;
  u.rho(0, 0) = GrassmannElement(2, a);
  u.rho(0, 1) = GrassmannElement::generator(2, 1) * ph;
  u.rho(1, 0) = GrassmannElement::generator(2, 0) * ph;
  u.rho(1, 1) = GrassmannElement(2, u.w);
  GrassmannElement s2 = str(u.rho * u.rho);
  GrassmannElement st = (s2 - GrassmannElement(2, u.a * u.a - u.w * u.w)) * cd{0.5};
  u.shift = st * (1.0 / (u.a - u.w));
  return u;
}

GrassmannElement source_phase(const U11& u, cd k1, cd k2) {
  GrassmannMatrix kap = GrassmannMatrix::diagonal({k1}, {k2}, 2);
  return gexp(str(kap * u.rho) * (-I));
}

cd berezin_body(const GrassmannElement& x) { return berezin_integrate(x, {0, 1}).body(); }

template <class Body>
QuadResult u11_polar(Body body, double rel_tol) {
  auto h = [&](double rad, double th) { return rad * body(rad * std::cos(th), rad * std::sin(th)) / two_pi; };
  return integrate_polar(h, 12.0, rel_tol, 1e-15);
}

}  // namespace

QuadResult grassmann_u11_integral(const FactorizedSuperFn& F, cd k1, cd k2, double psi, double rel_tol) {
  check_psi(psi);
  ExpPoly d1 = F.g1.derivative(), d2 = F.g2.derivative();
  auto body = [&](double a, double b) {
    U11 u = make_u11(a, b, psi);
    cd v = F.g1(u.a) * F.g2(u.w);
    cd dv = d1(u.a) * F.g2(u.w) + F.g1(u.a) * d2(u.w);
    GrassmannElement Frho = GrassmannElement(2, v) + u.shift * dv;
    // measure phases e^{i psi} db and e^{-i psi} d eta d eta* cancel
    return berezin_body(source_phase(u, k1, k2) * Frho);
  };
  return u11_polar(body, rel_tol);
}

QuadResult grassmann_u11_gaussian(cd k1, cd k2, double psi, double rel_tol) {
  check_psi(psi);
  auto body = [&](double a, double b) {
    U11 u = make_u11(a, b, psi);
    GrassmannElement g = gexp(str(u.rho * u.rho) * cd{-0.5});
    return berezin_body(source_phase(u, k1, k2) * g);
  };
  return u11_polar(body, rel_tol);
}

cd gaussian_u11_rhs(cd k1, cd k2) {
  auto h = [&](double r, double th) {
    double s1 = r * std::cos(th), s2 = r * std::sin(th);
    // r / (s1 - i s2) = e^{i theta}
    return std::exp(-0.5 * r * r + I * s1 * k1 + s2 * k2) * std::exp(I * th);
  };
  cd j = integrate_polar(h, 14.0, 1e-12, 1e-15).value;
  return 1.0 - (k1 - k2) / (two_pi * I) * j;
}

GaussianU11Report check_gaussian_u11(cd k1, cd k2, cd constant_ref) {
  GaussianU11Report r;
  r.lhs = grassmann_u11_gaussian(-k1, -k2).value;
  r.rhs = gaussian_u11_rhs(k1, k2);
  r.constant = r.lhs / r.rhs;
  r.diff = std::abs(r.lhs / constant_ref - r.rhs);
  return r;
}

namespace {

cd d_dx(const SuperFn11& F, cd x, cd w, int n, double h) {
  return fd_derivative([&](double t) { return F(x + t, w); }, 0.0, n, h).value;
}

// derivative along the fermionic radial coordinate r2, w = e^{i psi} r2
cd d_dr2(const SuperFn11& F, cd x, cd w, double psi, int n, double h) {
  cd ep = std::exp(I * psi);
  return fd_derivative([&](double t) { return F(x, w + ep * t); }, 0.0, n, h).value;
}

}  // namespace

cd d_operator_apply(const SuperFn11& F, const SuperEigenPoint& r, DForm form, double h) {
  check_psi(r.psi);
  if (r.k1() == 1 && r.k2() == 0) return F(r.r1[0], 0.0);
  if (r.k1() != 1 || r.k2() != 1) throw ValidationError("D operator is implemented for k1 k2 <= 1");
  cd x = r.r1[0];
  cd em = std::exp(-I * r.psi);
  cd w = std::exp(I * r.psi) * r.r2[0];
  if (std::abs(x - w) <= tol_equal) throw SingularityError("Vandermonde denominator vanishes");
  SuperFn11 G = [&](cd a, cd b) { return F(a, b) / (a - b); };
  switch (form) {
    case DForm::compact:
      return (d_dx(G, x, w, 1, h) + em * d_dr2(G, x, w, r.psi, 1, h)) / two_pi;
    case DForm::sum: {
      cd e2 = em * em;
      cd sf = d_dx(F, x, w, 2, h) - e2 * d_dr2(F, x, w, r.psi, 2, h);
      cd sg = d_dx(G, x, w, 2, h) - e2 * d_dr2(G, x, w, r.psi, 2, h);
      return (sf - (x - w) * sg) / (2.0 * two_pi);
    }
    case DForm::grassmann: {
      U11 u = make_u11(r.r1[0], r.r2[0], r.psi);
      cd dv = d_dx(F, x, w, 1, h) + em * d_dr2(F, x, w, r.psi, 1, h);
      GrassmannElement Frho = GrassmannElement(2, F(x, w)) + u.shift * dv;
      // d[eta] = e^{-i psi} d eta d eta* / (2 pi)
      return em * berezin_body(Frho) / two_pi;
    }
  }
  return 0.0;
}

LaplaceReport laplace_sqrtber(const std::vector<cd>& bos, const std::vector<cd>& ferm, double h) {
  if (bos.size() != ferm.size()) throw ValidationError("Laplacian check needs an l/l argument");
  LaplaceReport rep;
  auto second = [&](bool boson, size_t j) {
    return fd_derivative(
               [&](double t) {
                 std::vector<cd> b = bos, f = ferm;
                 (boson ? b[j] : f[j]) += t;
                 return sqrt_berezinian(b, f);
               },
               0.0, 2, h)
        .value;
  };
  for (size_t j = 0; j < bos.size(); ++j) {
    cd d = second(true, j);
    rep.residual += d;
    rep.scale = std::max(rep.scale, std::abs(d));
  }
  for (size_t j = 0; j < ferm.size(); ++j) {
    cd d = second(false, j);
    rep.residual -= d;
    rep.scale = std::max(rep.scale, std::abs(d));
  }
  return rep;
}

CommutatorReport commutator_identity_check(cd kb1, cd ka2, double r1, double r2, double psi) {
  check_psi(psi);
  cd ep = std::exp(I * psi), em = std::exp(-I * psi);
  cd E = std::exp(-I * kb1 * r1 + I * ep * ka2 * r2);
  // [d1 + e^{-i psi} d2, E] g = (d1 E + e^{-i psi} d2 E) g; the exponent is linear, so
  // each derivative pulls down its coefficient
  cd lhs = (-I * kb1) * E + em * (I * ep * ka2) * E;
  cd rhs = -I * (kb1 - ka2) * E * chi_v(kb1 - ka2);
  return {lhs, rhs, std::abs(lhs - rhs)};
}

cd cauchy_constant(int k1, int k2) { return sign_pow(k1) * std::pow(2.0, 2 - k1 - k2) * I; }

CauchyReport cauchy_reduction_check(const FactorizedSuperFn& F, cd kappa, double psi) {
  CauchyReport r;
  r.integral = grassmann_u11_integral(F, kappa, kappa, psi, 1e-10).value;
  cd fine = grassmann_u11_integral(F, kappa, kappa, psi, 1e-12).value;
  r.reduced = F(0.0, 0.0);
  r.ratio = fine / r.reduced;
  r.refinement_change = std::abs(fine - r.integral) / std::abs(r.reduced);
  return r;
}

}  // namespace sgf
