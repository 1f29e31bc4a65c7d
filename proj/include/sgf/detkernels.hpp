#pragma once

#include <Eigen/Dense>
#include <vector>

#include "sgf/common.hpp"
#include "sgf/ensembles.hpp"

namespace sgf {

enum class BerForm { ratio, mixed, cauchy_vdm };

// prod_{a<b}(x_a - x_b)
cd vandermonde(const std::vector<cd>& x);
cd det(const Eigen::MatrixXcd& m);

cd sqrt_berezinian(const std::vector<cd>& bos, const std::vector<cd>& ferm, BerForm form = BerForm::ratio);

struct MomentMatrix {
  int d = 0;
  Eigen::MatrixXcd m;
};

MomentMatrix moment_matrix(const EnsembleSpec& ens, int d);

// x with M x = c, forward substitution
Eigen::VectorXcd moment_solve(const MomentMatrix& M, const Eigen::VectorXcd& c);

// int f(E) E^m exp(-i kappa E) Theta(L E) dE
cd half_line_moment(const EnsembleSpec& ens, int m, cd kappa, int L);

cd kernel_K(const EnsembleSpec& ens, int d, cd k_a1, int L, cd k_b2);

// -iL int f E^{N-1} e^{-i kappa E} Theta(L E) dE
cd z_one_zero(const EnsembleSpec& ens, int N, cd kappa, int L);
// the same divided by i^{N-1} (N-1)!, i.e. the average of 1/det(H - kappa) over N x N matrices
cd z_one_zero_normalized(const EnsembleSpec& ens, int N, cd kappa, int L);

// (k1 - k2) K^{(N)}, written so that k1 = k2 gives exactly 1
cd z_one_one(const EnsembleSpec& ens, int N, cd k1, int L, cd k2);

enum class DetVariant { normalized, raw };

// Ñ = -1 selects d = N + k2 - k1
cd generating_function_det(const EnsembleSpec& ens, const SourceKappa& kappa, int Nt = -1,
                           DetVariant variant = DetVariant::normalized);

struct CalibrationReport {
  cd normalized, raw;
  cd ratio;  // raw / normalized
  double sigma_normalized = 0, sigma_raw = 0;  // distance to the Monte Carlo mean in stderr
  bool raw_consistent = false;
};

CalibrationReport calibrate_det(const EnsembleSpec& ens, const SourceKappa& kappa, const MCEstimate& mc);

cd hciz_closed_form(const std::vector<double>& E, const std::vector<double>& Et);

}  // namespace sgf
