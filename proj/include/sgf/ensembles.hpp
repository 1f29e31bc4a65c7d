#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "sgf/common.hpp"
#include "sgf/quadrature.hpp"

namespace sgf {

using Rng = std::mt19937_64;

struct EnsembleSpec {
  int N = 1;
  std::string name;
  std::function<cd(double)> f;
  std::function<cd(double, int)> f_deriv;  // n-th derivative at x
  std::function<Eigen::MatrixXcd(int, Rng&)> sampler;
  // f and 1/f as p(x) exp(a x^2 + b x) when available
  bool has_exppoly = false;
  ExpPoly f_form;
  ExpPoly inv_f_form;
};

EnsembleSpec gue_ensemble(int N);

// f(x) = exp(-x^2/2)
std::function<cd(double)> gue_char_factor();

struct SourceKappa {
  std::vector<cd> bos;
  std::vector<cd> ferm;
  std::vector<int> L;

  int k1() const { return int(bos.size()); }
  int k2() const { return int(ferm.size()); }
};

// fills L_j = -sign(Im kappa_j1); rejects real bosonic entries
SourceKappa make_kappa(std::vector<cd> bos, std::vector<cd> ferm);
int sign_L(cd kappa_bos);

struct ExternalField {
  double alpha = 0;
  std::vector<double> E0;
};

struct MCEstimate {
  cd mean;
  double stderr_re = 0, stderr_im = 0;
  double stderr = 0;  // hypot of the componentwise errors
  int64_t n_samples = 0;
  uint64_t seed = 0;
};

inline constexpr int64_t mc_chunk = 4096;

Eigen::MatrixXcd sample_gue(int N, Rng& rng);
Eigen::MatrixXcd sample_haar_unitary(int N, Rng& rng);

uint64_t chunk_seed(uint64_t seed, int64_t chunk);

// Generic estimator: draw(rng, out) writes n_out samples per call. Chunks of
// mc_chunk draws get their own stream; chunk statistics merge in chunk order,
// so the parallel and serial paths agree bit for bit.
using DrawFn = std::function<void(Rng&, cd*)>;
std::vector<MCEstimate> mc_run(int n_out, int64_t n_samples, uint64_t seed, const DrawFn& draw,
                               bool parallel = true);

MCEstimate mc_generating_function(const EnsembleSpec& ens, const SourceKappa& kappa, int64_t n_samples,
                                  uint64_t seed, bool parallel = true);
// several kappa points from the same matrix draws
std::vector<MCEstimate> mc_generating_function_multi(const EnsembleSpec& ens,
                                                     const std::vector<SourceKappa>& kappas,
                                                     int64_t n_samples, uint64_t seed, bool parallel = true);
MCEstimate mc_external_field(const EnsembleSpec& ens, const SourceKappa& kappa, const ExternalField& field,
                             int64_t n_samples, uint64_t seed, bool parallel = true);
MCEstimate mc_hciz(const std::vector<double>& E, const std::vector<double>& Et, int64_t n_samples,
                   uint64_t seed, bool parallel = true);

// prod det(H - k_j2) / prod det(H - k_j1) from the eigenvalues of H
cd char_poly_ratio(const Eigen::VectorXd& eig, const SourceKappa& kappa);

}  // namespace sgf
