#include "sgf/ensembles.hpp"

#include <cmath>
#include <omp.h>

namespace sgf {

std::function<cd(double)> gue_char_factor() {
  return [](double x) { return cd{std::exp(-0.5 * x * x)}; };
}

EnsembleSpec gue_ensemble(int N) {
  if (N < 1) throw ValidationError("matrix dimension N must be at least 1");
  EnsembleSpec e;
  e.N = N;
  e.name = "gue";
  e.f = gue_char_factor();
  e.has_exppoly = true;
  e.f_form = ExpPoly{{cd{1.0}}, cd{-0.5}, cd{0.0}};
  e.inv_f_form = ExpPoly{{cd{1.0}}, cd{0.5}, cd{0.0}};
  ExpPoly g = e.f_form;
  e.f_deriv = [g](double x, int n) { return exp_poly_diff(g, n)(cd{x}); };
  e.sampler = [](int n, Rng& rng) { return sample_gue(n, rng); };
  return e;
}

int sign_L(cd kappa_bos) {
  if (kappa_bos.imag() == 0.0) throw ValidationError("bosonic source needs a nonzero imaginary part");
  return kappa_bos.imag() < 0 ? 1 : -1;
}

SourceKappa make_kappa(std::vector<cd> bos, std::vector<cd> ferm) {
  SourceKappa k;
  for (cd b : bos) k.L.push_back(sign_L(b));
  k.bos = std::move(bos);
  k.ferm = std::move(ferm);
  return k;
}

namespace {

void check_kappa(const SourceKappa& k) {
  if (k.L.size() != k.bos.size()) throw ValidationError("one sign L per bosonic source is required");
  for (size_t j = 0; j < k.bos.size(); ++j)
    if (sign_L(k.bos[j]) != k.L[j]) throw ValidationError("L_j must equal -sign(Im kappa_j1)");
}

}  // namespace

Eigen::MatrixXcd sample_gue(int N, Rng& rng) {
  std::normal_distribution<double> diag(0.0, 1.0), off(0.0, std::sqrt(0.5));
  Eigen::MatrixXcd h(N, N);
  for (int i = 0; i < N; ++i) {
    h(i, i) = diag(rng);
    for (int j = i + 1; j < N; ++j) {
      double re = off(rng), im = off(rng);
      h(i, j) = cd{re, im};
      h(j, i) = cd{re, -im};
    }
  }
  return h;
}

Eigen::MatrixXcd sample_haar_unitary(int N, Rng& rng) {
  std::normal_distribution<double> g(0.0, std::sqrt(0.5));
  Eigen::MatrixXcd z(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) z(i, j) = cd{g(rng), g(rng)};
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  Eigen::MatrixXcd r = qr.matrixQR();
  for (int j = 0; j < N; ++j) {
    cd d = r(j, j);
    q.col(j) *= (std::abs(d) > 0 ? d / std::abs(d) : cd{1.0});
  }
  return q;
}

uint64_t chunk_seed(uint64_t seed, int64_t chunk) {
  uint64_t z = seed + 0x9E3779B97F4A7C15ull * uint64_t(chunk + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

namespace {

struct Moments {
  double n = 0, mr = 0, mi = 0, m2r = 0, m2i = 0;

  void push(cd x) {
    n += 1;
    double dr = x.real() - mr, di = x.imag() - mi;
    mr += dr / n;
    mi += di / n;
    m2r += dr * (x.real() - mr);
    m2i += di * (x.imag() - mi);
  }

  void merge(const Moments& o) {
    if (o.n == 0) return;
    if (n == 0) {
      *this = o;
      return;
    }
    double t = n + o.n;
    double dr = o.mr - mr, di = o.mi - mi;
    mr += dr * o.n / t;
    mi += di * o.n / t;
    m2r += o.m2r + dr * dr * n * o.n / t;
    m2i += o.m2i + di * di * n * o.n / t;
    n = t;
  }
};

}  // namespace

std::vector<MCEstimate> mc_run(int n_out, int64_t n_samples, uint64_t seed, const DrawFn& draw, bool parallel) {
  if (n_samples < 2) throw ValidationError("Monte Carlo needs at least two samples");
  int64_t n_chunks = (n_samples + mc_chunk - 1) / mc_chunk;
  std::vector<Moments> per_chunk(size_t(n_chunks) * n_out);
  auto run_chunk = [&](int64_t c) {
    Rng rng(chunk_seed(seed, c));
    int64_t lo = c * mc_chunk, hi = std::min(n_samples, lo + mc_chunk);
    std::vector<cd> out(n_out);
    Moments* m = &per_chunk[size_t(c) * n_out];
    for (int64_t s = lo; s < hi; ++s) {
      draw(rng, out.data());
      for (int j = 0; j < n_out; ++j) m[j].push(out[j]);
    }
  };
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (int64_t c = 0; c < n_chunks; ++c) run_chunk(c);
  } else {
    for (int64_t c = 0; c < n_chunks; ++c) run_chunk(c);
  }
  std::vector<MCEstimate> res(n_out);
  for (int j = 0; j < n_out; ++j) {
    Moments tot;
    for (int64_t c = 0; c < n_chunks; ++c) tot.merge(per_chunk[size_t(c) * n_out + j]);
    MCEstimate& e = res[j];
    e.mean = cd{tot.mr, tot.mi};
    e.stderr_re = std::sqrt(tot.m2r / (tot.n - 1) / tot.n);
    e.stderr_im = std::sqrt(tot.m2i / (tot.n - 1) / tot.n);
    e.stderr = std::hypot(e.stderr_re, e.stderr_im);
    e.n_samples = n_samples;
    e.seed = seed;
  }
  return res;
}

cd char_poly_ratio(const Eigen::VectorXd& eig, const SourceKappa& kappa) {
  cd r{1.0};
  for (int j = 0; j < kappa.k1(); ++j) {
    bool paired = j < kappa.k2();
    if (paired && kappa.ferm[j] == kappa.bos[j]) continue;
    for (int a = 0; a < eig.size(); ++a) {
      cd num = paired ? cd{eig[a]} - kappa.ferm[j] : cd{1.0};
      r *= num / (cd{eig[a]} - kappa.bos[j]);
    }
  }
  for (int j = kappa.k1(); j < kappa.k2(); ++j)
    for (int a = 0; a < eig.size(); ++a) r *= cd{eig[a]} - kappa.ferm[j];
  return r;
}

std::vector<MCEstimate> mc_generating_function_multi(const EnsembleSpec& ens, const std::vector<SourceKappa>& kappas,
                                                     int64_t n_samples, uint64_t seed, bool parallel) {
  for (const auto& k : kappas) check_kappa(k);
  int N = ens.N;
  DrawFn draw = [&](Rng& rng, cd* out) {
    Eigen::MatrixXcd h = ens.sampler(N, rng);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    for (size_t j = 0; j < kappas.size(); ++j) out[j] = char_poly_ratio(es.eigenvalues(), kappas[j]);
  };
  return mc_run(int(kappas.size()), n_samples, seed, draw, parallel);
}

MCEstimate mc_generating_function(const EnsembleSpec& ens, const SourceKappa& kappa, int64_t n_samples,
                                  uint64_t seed, bool parallel) {
  return mc_generating_function_multi(ens, {kappa}, n_samples, seed, parallel)[0];
}

MCEstimate mc_external_field(const EnsembleSpec& ens, const SourceKappa& kappa, const ExternalField& field,
                             int64_t n_samples, uint64_t seed, bool parallel) {
  check_kappa(kappa);
  int N = ens.N;
  if (int(field.E0.size()) != N) throw ValidationError("E0 needs exactly N eigenvalues");
  // H0 can be taken diagonal: the ensemble is invariant under unitary conjugation
  DrawFn draw = [&](Rng& rng, cd* out) {
    Eigen::MatrixXcd h = ens.sampler(N, rng);
    for (int a = 0; a < N; ++a) h(a, a) += field.alpha * field.E0[a];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    out[0] = char_poly_ratio(es.eigenvalues(), kappa);
  };
  return mc_run(1, n_samples, seed, draw, parallel)[0];
}

MCEstimate mc_hciz(const std::vector<double>& E, const std::vector<double>& Et, int64_t n_samples, uint64_t seed,
                   bool parallel) {
  if (E.size() != Et.size() || E.empty()) throw ValidationError("HCIZ needs two eigenvalue lists of equal length");
  int N = int(E.size());
  DrawFn draw = [&](Rng& rng, cd* out) {
    Eigen::MatrixXcd u = sample_haar_unitary(N, rng);
    double t = 0;
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b) t += E[a] * std::norm(u(a, b)) * Et[b];
    out[0] = std::exp(-I * t);
  };
  return mc_run(1, n_samples, seed, draw, parallel)[0];
}

}  // namespace sgf
