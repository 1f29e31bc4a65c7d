#include "sgf/susyreps.hpp"

#include <cmath>

#include "sgf/detkernels.hpp"
#include "sgf/grassmann.hpp"
#include "sgf/quadrature.hpp"

namespace sgf {

cd tail_series_direct(cd x, int N) {
  if (N < 0) throw ValidationError("series start must be non-negative");
  cd term{1.0};
  for (int n = 1; n <= N; ++n) term *= x / double(n);
  // compensated summation of the tail
  cd sum{0.0}, comp{0.0};
  for (int n = N; n < N + 2000; ++n) {
    cd y = term - comp;
    cd t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    if (std::abs(term) <= 1e-18 * std::abs(sum) && double(n) > std::abs(x)) break;
    term *= x / double(n + 1);
  }
  return sum;
}

cd tail_series_subtract(cd x, int N) {
  cd partial{0.0}, term{1.0};
  for (int n = 0; n < N; ++n) {
    partial += term;
    term *= x / double(n + 1);
  }
  return std::exp(x) - partial;
}

cd tail_series(cd x, int N) { return std::abs(x) <= double(N) ? tail_series_direct(x, N) : tail_series_subtract(x, N); }

namespace {

QuadratureSpec half_line() {
  QuadratureSpec q;
  q.domain = Domain::half_line;
  q.sign = 1;
  q.rel_tol = 1e-11;
  q.abs_tol = 1e-15;
  return q;
}

// d^m/dw^m [ X(w) / (r - w) ] at w = 0 times r^{m+1}, from the Taylor data of X
cd pole_derivative_scaled(const std::vector<cd>& X, int m, double r) {
  cd s{0.0};
  for (int j = 0; j <= m; ++j) s += binomial(m, j) * X[j] * factorial(m - j) * std::pow(r, j);
  return s;
}

// truncation of the r1 half line from the decay of P
QuadratureSpec decay_spec(const ExpPoly& P) {
  QuadratureSpec q = half_line();
  if (P.a.real() < 0) return q;
  if (P.a.real() == 0 && P.b.real() < 0) {
    q.width = 1.0 / -P.b.real();
    q.n_widths = 50;
    return q;
  }
  throw ValidationError("the superfunction must decay along the positive bosonic axis");
}

// the boundary functional shared by the Ingham-Siegel action and the bracket path of Z_{1/1}
cd boundary_functional(const ExpPoly& P, const ExpPoly& G, int N, cd extra) {
  if (N < 1) throw ValidationError("N must be at least 1");
  int m = N - 1;
  std::vector<cd> Gt = exp_poly_taylor(G, N + 1, 0.0);
  std::vector<cd> Gt1(Gt.begin() + 1, Gt.end());
  ExpPoly dP = P.derivative();
  auto g = [&](double r) {
    // r^N d_w^m[...] = r^{N-m-1} * (scaled pole derivatives) = scaled pole derivatives
    cd a = pole_derivative_scaled(Gt, m, r);
    cd b = pole_derivative_scaled(Gt1, m, r);
    cd v = dP(r) * a + P(r) * b - P(r) * Gt[m + 1] * std::pow(r, N - 1);
    if (extra != cd{0.0}) v += extra * P(r) * a;
    return v;
  };
  return -integrate_1d(g, decay_spec(P)).value / factorial(m);
}

void require_exppoly(const EnsembleSpec& ens) {
  if (!ens.has_exppoly) throw ValidationError("superspace routes need f and 1/f in closed ExpPoly form");
}

void require_gaussian(const EnsembleSpec& ens) {
  require_exppoly(ens);
  const ExpPoly& f = ens.f_form;
  if (f.poly.size() != 1 || f.poly[0] != cd{1.0} || f.a != cd{-0.5} || f.b != cd{0.0})
    throw ValidationError("only the Gaussian characteristic function is built in for this route");
}

void require_lower(cd k1) {
  if (!(k1.imag() < 0)) throw ValidationError("superspace formulas need Im kappa_1 < 0");
}

ExpPoly shifted(const ExpPoly& p, cd db) {
  ExpPoly q = p;
  q.b += db;
  return q;
}

}  // namespace

cd ingham_siegel_action(const FactorizedSuperFn& F, int N, int k) {
  if (k != 1) throw ValidationError("the Ingham-Siegel action is implemented for k = 1 only");
  return boundary_functional(F.g1, F.g2, N, 0.0);
}

cd ingham_siegel_fd(const FactorizedSuperFn& F, int N, double h) {
  if (N < 1) throw ValidationError("N must be at least 1");
  int m = N - 1;
  ExpPoly d1 = F.g1.derivative(), d2 = F.g2.derivative();
  auto g = [&](double r) {
    auto brace = [&](cd w) { return (d1(r) * F.g2(w) + F.g1(r) * d2(w)) / (r - w) - F.g1(r) * d2(w) / r; };
    // derivatives along the imaginary w axis stay clear of the pole at w = r
    double step = std::min(h, 0.5 * r);
    cd d = fd_derivative([&](double t) { return brace(I * t); }, 0.0, m, step).value * ipow(-m);
    return std::pow(r, N) * d;
  };
  // stencil roundoff grows like eps / h^{N-1}
  QuadratureSpec q = half_line();
  q.rel_tol = 1e-7;
  q.abs_tol = 1e-9;
  return -integrate_1d(g, q).value / factorial(m);
}

cd z11_integral_term(const EnsembleSpec& ens, int N, cd k1, cd k2) {
  require_exppoly(ens);
  require_lower(k1);
  std::vector<cd> G = exp_poly_taylor(shifted(ens.inv_f_form, I * k2), N - 1, 0.0);
  cd s{0.0};
  for (int j = 0; j < N; ++j) s += G[j] / factorial(j) * half_line_moment(ens, j, k1, 1);
  return -I * s;
}

cd z11_superspace(const EnsembleSpec& ens, int N, cd k1, cd k2, Z11Path path) {
  require_exppoly(ens);
  require_lower(k1);
  if (N < 1) throw ValidationError("N must be at least 1");
  if (path == Z11Path::efetov_wegner) return 1.0 + (k1 - k2) * z11_integral_term(ens, N, k1, k2);
  ExpPoly P = shifted(ens.f_form, -I * k1);
  ExpPoly G = shifted(ens.inv_f_form, I * k2);
  return boundary_functional(P, G, N, I * (k1 - k2));
}

cd efetov_wegner_z2(const EnsembleSpec& ens, int N, cd k1, cd k2) {
  require_exppoly(ens);
  require_lower(k1);
  return boundary_functional(shifted(ens.f_form, -I * k1), shifted(ens.inv_f_form, I * k2), N, 0.0);
}

double vol_unitary(int N) {
  if (N < 1) throw ValidationError("N must be at least 1");
  double v = 1;
  for (int j = 1; j <= N; ++j) v *= 2 * std::pow(std::numbers::pi, j) / factorial(j - 1);
  return v;
}

cd hs_constant(int N, int k1, int k2) {
  int d = N + k2 - k1;
  if (d < 1) throw ValidationError("the constant needs N + k2 - k1 >= 1");
  double pi = std::numbers::pi;
  cd c = sign_pow(k2 * (k2 + 2 * N - 1) / 2) * std::pow(I, N * (k2 - k1)) * std::pow(pi, N * (k2 - k1) + k2) *
         std::pow(2.0, k2 * k1 + k2 - k1) / std::pow(factorial(d - 1), k2);
  return c * vol_unitary(N) / vol_unitary(d);
}

cd z11_hubbard_stratonovich_grassmann(const EnsembleSpec& ens, int N, cd k1, cd k2, double psi) {
  require_gaussian(ens);
  require_lower(k1);
  check_psi(psi);
  if (N < 1) throw ValidationError("N must be at least 1");
  cd ph = std::exp(0.5 * I * psi), ep = std::exp(I * psi);
  GrassmannElement eta = GrassmannElement::generator(2, 0), etas = GrassmannElement::generator(2, 1);
  GrassmannMatrix kap = GrassmannMatrix::diagonal({k1}, {k2}, 2);
  auto q = [&](double r1, cd w) {
    GrassmannMatrix rho(1, 1, 2);
    rho(0, 0) = GrassmannElement(2, r1);
    rho(0, 1) = etas * ph;
    rho(1, 0) = eta * ph;
    rho(1, 1) = GrassmannElement(2, w) + eta * etas * (ep / r1);
    GrassmannElement phi = gexp(str(rho * rho) * cd{-0.5});
    GrassmannElement e = gexp(str(kap * rho) * (-I));
    return berezin_integrate(phi * e, {0, 1}).body();
  };
  const int M = 32;
  int m = N - 1;
  auto g = [&](double r1) {
    // m-th w derivative at 0 by the trapezoidal Cauchy integral on the unit circle
    cd d{0.0};
    for (int j = 0; j < M; ++j) {
      double th = two_pi * j / M;
      d += q(r1, std::exp(I * th)) * std::exp(-I * double(m) * th);
    }
    d *= factorial(m) / M;
    return std::pow(r1, N) * sign_pow(m) * d;
  };
  cd integral = integrate_1d(g, half_line()).value;
  // delta e^{-i psi}, e^{i psi} dr2 and e^{-i psi} d eta d eta* leave one e^{-i psi}; 1/(2 pi) per pair
  return hs_constant(N, 1, 1) * std::exp(-I * psi) * integral / two_pi;
}

cd FourierGaussian::operator()(const std::vector<double>& s_bos, const std::vector<double>& s_ferm) const {
  if (int(s_bos.size()) != k || int(s_ferm.size()) != k) throw ValidationError("need k bosonic and k fermionic values");
  double q = 0;
  for (double s : s_bos) q += s * s;
  for (double s : s_ferm) q += s * s;
  return constant * std::exp(-0.5 * q);
}

FourierGaussian fourier_superext_gaussian(int k) {
  if (k < 1) throw ValidationError("k must be at least 1");
  return {k, std::pow(2.0, 2 * k * (k - 1)) * cauchy_constant(k, k)};
}

cd fourier_superext_oracle(double s1, double s2, double psi) {
  return grassmann_u11_gaussian(s1, std::exp(-I * psi) * s2, psi).value;
}

namespace {

void check_square_kappa(const SourceKappa& kappa) {
  if (kappa.k1() != kappa.k2()) throw ValidationError("superspace formulas need k1 = k2");
  if (kappa.k1() < 1) throw ValidationError("k must be at least 1");
  if (kappa.k1() > 2) throw ResourceError("superspace formulas limited to k <= 2");
  for (cd b : kappa.bos) require_lower(b);
  for (size_t j = 0; j < kappa.bos.size(); ++j)
    if (kappa.L.size() != kappa.bos.size() || kappa.L[j] != sign_L(kappa.bos[j]))
      throw ValidationError("L_j must equal -sign(Im kappa_j1)");
}

void check_ambiguity(const SourceKappa& kappa) {
  if (kappa.k1() < 2) return;
  for (cd b : kappa.bos)
    for (cd f : kappa.ferm)
      if (!chi(b - f).value) throw ValidationError("coinciding sources across blocks are ambiguous for k >= 2");
}

cd block_denominator(const SourceKappa& kappa) {
  cd den = vandermonde(kappa.bos) * vandermonde(kappa.ferm);
  if (std::abs(den) <= tol_equal) throw SingularityError("coinciding sources within one block");
  return den;
}

// prod over the other bosonic entries of (kappa_c1 - kappa_a2)
cd row_rest(const SourceKappa& kappa, int a, int b) {
  cd r{1.0};
  for (int c = 0; c < kappa.k1(); ++c)
    if (c != b) r *= kappa.bos[c] - kappa.ferm[a];
  return r;
}

cd kernel_J(int N, cd kb, cd ka) {
  // e^{-i psi} = -i at psi = pi/2
  auto h = [&](double r, double th) {
    double c = std::cos(th), s = std::sin(th);
    double s1 = r * c, s2 = r * s;
    return std::exp(-0.5 * r * r) * double(N) * std::pow(-I * s2 - ka, N - 1) /
           (two_pi * I * std::pow(s1 - kb, N + 1) * (c + I * s));
  };
  return integrate_polar(h, 14.0, 1e-11, 1e-15).value;
}

}  // namespace

SusyResult generating_function_susy(const EnsembleSpec& ens, const SourceKappa& kappa, SusyConstant constant) {
  require_gaussian(ens);
  check_square_kappa(kappa);
  check_ambiguity(kappa);
  int k = kappa.k1(), N = ens.N;
  std::vector<DistDetEntry> cells(size_t(k) * k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      cd kb = kappa.bos[b], ka = kappa.ferm[a];
      cd rest = row_rest(kappa, a, b);
      DistDetEntry& e = cells[size_t(a) * k + b];
      e.consumes = {b, k + a};
      e.parts.push_back({EntryKind::delta_pair, I * std::pow(ka / kb, N) * rest});
      if (chi(kb - ka).value) e.parts.push_back({EntryKind::smooth, (kb - ka) * rest * kernel_J(N, kb, ka)});
    }
  DistDetResult d = dist_det(cells, k, 2 * k);
  cd A = constant == SusyConstant::normalized ? std::pow(-I, k) * sign_pow(k * (k - 1) / 2)
                                              : std::pow(2.0, k * (k - 1)) * cauchy_constant(k, k);
  cd pre = A / block_denominator(kappa);
  return {pre * d.value, pre * d.delta_free, d.terms};
}

SusyResult generating_function_no_field(const EnsembleSpec& ens, const SourceKappa& kappa) {
  require_exppoly(ens);
  check_square_kappa(kappa);
  int k = kappa.k1(), N = ens.N;
  std::vector<DistDetEntry> cells(size_t(k) * k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      cd kb = kappa.bos[b], ka = kappa.ferm[a];
      cd rest = row_rest(kappa, a, b);
      DistDetEntry& e = cells[size_t(a) * k + b];
      e.consumes = {b, k + a};
      e.parts.push_back({EntryKind::delta_pair, rest});
      if (chi(kb - ka).value) e.parts.push_back({EntryKind::smooth, (kb - ka) * rest * z11_integral_term(ens, N, kb, ka)});
    }
  DistDetResult d = dist_det(cells, k, 2 * k);
  cd pre = sign_pow(k * (k - 1) / 2) / block_denominator(kappa);
  return {pre * d.value, pre * d.delta_free, d.terms};
}

SusyResult generating_function_external(const EnsembleSpec& ens, const SourceKappa& kappa, const ExternalField& field,
                                        FieldSign sign) {
  require_exppoly(ens);
  check_square_kappa(kappa);
  int k = kappa.k1(), N = ens.N;
  if (int(field.E0.size()) != N) throw ValidationError("E0 needs exactly N eigenvalues");
  if (field.alpha == 0.0) return generating_function_no_field(ens, kappa);
  std::vector<cd> x;
  for (double e : field.E0) x.push_back(field.alpha * e);
  for (int a = 0; a < N; ++a)
    for (int b = a + 1; b < N; ++b)
      if (std::abs(x[a] - x[b]) <= tol_equal) throw ValidationError("E0 entries must be pairwise distinct");
  int n = k + N;
  if (factorial(n) > double(dist_det_budget)) throw ResourceError("(k + N)! exceeds the expansion budget");
  std::vector<DistDetEntry> cells(size_t(n) * n);
  auto cell = [&](int i, int j) -> DistDetEntry& { return cells[size_t(i) * n + j]; };
  for (int a = 0; a < k; ++a) {
    cd ka = kappa.ferm[a];
    cd scale{1.0};
    double chis = 1;
    for (cd kb : kappa.bos) {
      scale *= kb - ka;
      chis *= chi_v(kb - ka);
    }
    for (int b = 0; b < k; ++b) {
      cd kb = kappa.bos[b];
      cd rest = row_rest(kappa, a, b);
      DistDetEntry& e = cell(a, b);
      e.consumes = {b, k + a};
      e.parts.push_back({EntryKind::delta_pair, rest});
      if (chi(kb - ka).value) e.parts.push_back({EntryKind::smooth, (kb - ka) * rest * z11_integral_term(ens, N, kb, ka)});
    }
    std::vector<cd> G = exp_poly_taylor(shifted(ens.inv_f_form, I * ka), N - 1, 0.0);
    for (int b = 0; b < N; ++b) {
      DistDetEntry& e = cell(a, k + b);
      e.consumes = {k + a};
      e.parts.push_back({EntryKind::delta_derivative_row, scale * chis * ipow(b) * G[b]});
    }
  }
  double s = sign == FieldSign::standard ? 1.0 : -1.0;
  for (int a = 0; a < N; ++a) {
    for (int b = 0; b < k; ++b) {
      cd kb = kappa.bos[b];
      double chis = 1;
      for (cd kf : kappa.ferm) chis *= chi_v(kb - kf);
      cd xa = I * x[a];
      auto g = [&](double r) { return std::exp(-I * kb * r) * ens.f(r) * tail_series(xa * r, N); };
      DistDetEntry& e = cell(k + a, b);
      e.consumes = {b};
      e.parts.push_back({EntryKind::series_column, s * I * chis * integrate_1d(g, half_line()).value});
    }
    for (int b = 0; b < N; ++b) {
      DistDetEntry& e = cell(k + a, k + b);
      e.parts.push_back({EntryKind::vandermonde, std::pow(-x[a], b)});
    }
  }
  DistDetResult d = dist_det(cells, n, 2 * k);
  cd pre = sign_pow(k * (k - 1) / 2) / (vandermonde(x) * block_denominator(kappa));
  return {pre * d.value, pre * d.delta_free, d.terms};
}

}  // namespace sgf
