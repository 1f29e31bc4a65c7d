#pragma once

#include <functional>
#include <vector>

#include "sgf/common.hpp"
#include "sgf/distdet.hpp"
#include "sgf/ensembles.hpp"
#include "sgf/superfns.hpp"

namespace sgf {

// sum_{n >= N} x^n / n!
cd tail_series(cd x, int N);
cd tail_series_direct(cd x, int N);
cd tail_series_subtract(cd x, int N);

// int F(r) I_1^{(N)}(r) d[r] through the boundary functional
//   -1/(N-1)! int_0^inf r1^N d_w^{N-1} [ (d1 + dw) F / (r1 - w) - dw F / r1 ]_{w=0} dr1
// with the w derivatives done exactly on ExpPoly factors. Only k = 1.
cd ingham_siegel_action(const FactorizedSuperFn& F, int N, int k = 1);
// same functional with the w derivatives replaced by a finite-difference stencil
cd ingham_siegel_fd(const FactorizedSuperFn& F, int N, double h = 1e-3);

enum class Z11Path { efetov_wegner, bracket };

// efetov_wegner: 1 + (k1 - k2) T with the boundary constant split off;
// bracket: the boundary operator integrated in one piece
cd z11_superspace(const EnsembleSpec& ens, int N, cd k1, cd k2, Z11Path path = Z11Path::efetov_wegner);

// the boundary part of the bracket path alone; equals 1 for any kappa
cd efetov_wegner_z2(const EnsembleSpec& ens, int N, cd k1, cd k2);

// T(k1, k2) with Z_{1/1} = 1 + (k1 - k2) T
cd z11_integral_term(const EnsembleSpec& ens, int N, cd k1, cd k2);

cd z11_hubbard_stratonovich_grassmann(const EnsembleSpec& ens, int N, cd k1, cd k2, double psi = default_psi);

double vol_unitary(int N);
// constant of the Hubbard-Stratonovich representation for f(0) = 1
cd hs_constant(int N, int k1, int k2);

struct FourierGaussian {
  int k = 1;
  cd constant;  // 2^{2k(k-1)} c_k
  // s_bos, s_ferm are the radial eigenvalue coordinates of sigma
  cd operator()(const std::vector<double>& s_bos, const std::vector<double>& s_ferm) const;
};

FourierGaussian fourier_superext_gaussian(int k);
// Grassmann engine + quadrature value at sigma = diag(s1, e^{-i psi} s2), k = 1
cd fourier_superext_oracle(double s1, double s2, double psi = default_psi);

enum class SusyConstant { normalized, raw };

struct SusyResult {
  cd value;
  cd delta_free;  // Efetov-Wegner (delta) parts dropped
  int64_t terms = 0;
};

SusyResult generating_function_susy(const EnsembleSpec& ens, const SourceKappa& kappa,
                                    SusyConstant constant = SusyConstant::normalized);

// determinant form in the absence of an external field
SusyResult generating_function_no_field(const EnsembleSpec& ens, const SourceKappa& kappa);

enum class FieldSign { standard, flipped };

SusyResult generating_function_external(const EnsembleSpec& ens, const SourceKappa& kappa,
                                        const ExternalField& field, FieldSign sign = FieldSign::standard);

}  // namespace sgf
