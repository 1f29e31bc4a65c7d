#include "sgf/detkernels.hpp"

#include <cmath>
#include <sstream>

#include "sgf/quadrature.hpp"

namespace sgf {

cd vandermonde(const std::vector<cd>& x) {
  cd v{1.0};
  for (size_t a = 0; a < x.size(); ++a)
    for (size_t b = a + 1; b < x.size(); ++b) v *= x[a] - x[b];
  return v;
}

cd det(const Eigen::MatrixXcd& m) {
  if (m.rows() == 0) return 1.0;
  return m.partialPivLu().determinant();
}

cd sqrt_berezinian(const std::vector<cd>& bos, const std::vector<cd>& ferm, BerForm form) {
  int p = int(bos.size()), q = int(ferm.size());
  if (p < q) throw ValidationError("sqrt_berezinian needs p >= q");
  for (cd b : bos)
    for (cd f : ferm)
      if (std::abs(b - f) <= tol_equal) throw SingularityError("bosonic and fermionic arguments coincide");
  if (form == BerForm::ratio) {
    cd den{1.0};
    for (cd b : bos)
      for (cd f : ferm) den *= b - f;
    return vandermonde(bos) * vandermonde(ferm) / den;
  }
  Eigen::MatrixXcd m(p, p);
  for (int a = 0; a < q; ++a)
    for (int c = 0; c < p; ++c) {
      cd w = form == BerForm::mixed ? std::pow(bos[c], p - q) * std::pow(ferm[a], q - p) : cd{1.0};
      m(a, c) = w / (bos[c] - ferm[a]);
    }
  for (int a = 0; a < p - q; ++a)
    for (int c = 0; c < p; ++c) m(q + a, c) = std::pow(bos[c], a);
  return sign_pow(p * (p - 1) / 2) * det(m);
}

MomentMatrix moment_matrix(const EnsembleSpec& ens, int d) {
  if (d < 0) throw ValidationError("moment matrix dimension must be non-negative");
  MomentMatrix M{d, Eigen::MatrixXcd::Zero(d, d)};
  std::vector<cd> fd(d);
  for (int n = 0; n < d; ++n) fd[n] = ens.f_deriv(0.0, n);
  for (int a = 1; a <= d; ++a)
    for (int b = 1; b <= a; ++b)
      M.m(a - 1, b - 1) = ipow(-(a - 1)) * binomial(a - 1, b - 1) * factorial(b - 1) * fd[a - b];
  return M;
}

Eigen::VectorXcd moment_solve(const MomentMatrix& M, const Eigen::VectorXcd& c) {
  Eigen::VectorXcd x(M.d);
  for (int i = 0; i < M.d; ++i) {
    cd s = c[i];
    for (int j = 0; j < i; ++j) s -= M.m(i, j) * x[j];
    if (std::abs(M.m(i, i)) == 0.0) throw SingularityError("moment matrix has a zero diagonal entry");
    x[i] = s / M.m(i, i);
  }
  return x;
}

cd half_line_moment(const EnsembleSpec& ens, int m, cd kappa, int L) {
  QuadratureSpec q;
  q.domain = Domain::half_line;
  q.sign = L;
  auto g = [&](double E) { return ens.f(E) * std::pow(E, m) * std::exp(-I * kappa * E); };
  return integrate_1d(g, q).value;
}

namespace {

cd kernel_sum(const EnsembleSpec& ens, int d, cd k_a1, int L, cd k_b2) {
  if (d == 0) return 0.0;
  MomentMatrix M = moment_matrix(ens, d);
  Eigen::VectorXcd c(d);
  for (int n = 0; n < d; ++n) c[n] = std::pow(k_b2, n);
  Eigen::VectorXcd x = moment_solve(M, c);
  cd s{0.0};
  for (int m = 0; m < d; ++m) s += half_line_moment(ens, m, k_a1, L) * x[m];
  return -I * double(L) * s;
}

void check_L(cd k, int L) {
  if (sign_L(k) != L) throw ValidationError("L must equal -sign(Im kappa)");
}

}  // namespace

cd kernel_K(const EnsembleSpec& ens, int d, cd k_a1, int L, cd k_b2) {
  check_L(k_a1, L);
  if (d < 0) throw ValidationError("kernel order must be non-negative");
  if (std::abs(k_a1 - k_b2) <= tol_equal) throw SingularityError("kernel pole at coinciding arguments");
  return 1.0 / (k_a1 - k_b2) + kernel_sum(ens, d, k_a1, L, k_b2);
}

cd z_one_zero(const EnsembleSpec& ens, int N, cd kappa, int L) {
  check_L(kappa, L);
  if (N < 1) throw ValidationError("N must be at least 1");
  return -I * double(L) * half_line_moment(ens, N - 1, kappa, L);
}

cd z_one_zero_normalized(const EnsembleSpec& ens, int N, cd kappa, int L) {
  return z_one_zero(ens, N, kappa, L) / (ipow(N - 1) * factorial(N - 1));
}

cd z_one_one(const EnsembleSpec& ens, int N, cd k1, int L, cd k2) {
  check_L(k1, L);
  if (N < 1) throw ValidationError("N must be at least 1");
  return 1.0 + (k1 - k2) * kernel_sum(ens, N, k1, L, k2);
}

namespace {

void validate_det_request(const EnsembleSpec& ens, const SourceKappa& kappa, int Nt) {
  int N = ens.N, k1 = kappa.k1(), k2 = kappa.k2();
  if (!(k2 <= k1 && k1 <= N)) throw ValidationError("the determinantal formula requires k2 <= k1 <= N");
  int d = N + k2 - k1;
  if (Nt < d || Nt > N) {
    std::ostringstream m;
    m << "kernel order must lie in {" << d << ", ..., " << N << "}";
    throw ValidationError(m.str());
  }
  for (int j = 0; j < k1; ++j) {
    if (kappa.L.size() != size_t(k1) || sign_L(kappa.bos[j]) != kappa.L[j])
      throw ValidationError("L_j must equal -sign(Im kappa_j1)");
  }
}

}  // namespace

cd generating_function_det(const EnsembleSpec& ens, const SourceKappa& kappa, int Nt, DetVariant variant) {
  int N = ens.N, k1 = kappa.k1(), k2 = kappa.k2();
  int d = N + k2 - k1;
  if (Nt < 0) Nt = d;
  validate_det_request(ens, kappa, Nt);
  cd sb = sqrt_berezinian(kappa.bos, kappa.ferm);
  if (std::abs(sb) <= tol_equal) throw SingularityError("square-root Berezinian vanishes: coinciding sources");
  Eigen::MatrixXcd A(k1, k1);
  for (int a = 0; a < k1; ++a) {
    for (int b = 0; b < k2; ++b) A(a, b) = kernel_K(ens, Nt, kappa.bos[a], kappa.L[a], kappa.ferm[b]);
    for (int j = 0; j < k1 - k2; ++j) {
      int b = d + 1 + j;
      A(a, k2 + j) = variant == DetVariant::raw ? z_one_zero(ens, b, kappa.bos[a], kappa.L[a])
                                                    : z_one_zero_normalized(ens, b, kappa.bos[a], kappa.L[a]);
    }
  }
  int p = k1 - k2;
  int e = k2 * (k2 + 1) / 2 + k2 * k1;
  if (variant == DetVariant::normalized) e += p * (p - 1) / 2;
  return sign_pow(e) * det(A) / sb;
}

CalibrationReport calibrate_det(const EnsembleSpec& ens, const SourceKappa& kappa, const MCEstimate& mc) {
  CalibrationReport r;
  r.normalized = generating_function_det(ens, kappa, -1, DetVariant::normalized);
  r.raw = generating_function_det(ens, kappa, -1, DetVariant::raw);
  r.ratio = r.raw / r.normalized;
  double se = std::max(mc.stderr, 1e-300);
  r.sigma_normalized = std::abs(r.normalized - mc.mean) / se;
  r.sigma_raw = std::abs(r.raw - mc.mean) / se;
  r.raw_consistent = r.sigma_raw < 3.0;
  return r;
}

cd hciz_closed_form(const std::vector<double>& E, const std::vector<double>& Et) {
  if (E.size() != Et.size() || E.empty()) throw ValidationError("HCIZ needs two eigenvalue lists of equal length");
  int N = int(E.size());
  for (int a = 0; a < N; ++a)
    for (int b = a + 1; b < N; ++b)
      if (std::abs(E[a] - E[b]) <= tol_equal || std::abs(Et[a] - Et[b]) <= tol_equal)
        throw SingularityError("coinciding eigenvalues in the HCIZ closed form");
  Eigen::MatrixXcd m(N, N);
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) m(a, b) = std::exp(-I * E[a] * Et[b]);
  cd pre{1.0};
  for (int j = 1; j <= N; ++j) pre *= ipow(j - 1) * factorial(j - 1);
  std::vector<cd> e(E.begin(), E.end()), et(Et.begin(), Et.end());
  return pre * det(m) / (vandermonde(et) * vandermonde(e));
}

}  // namespace sgf
