#pragma once

#include <functional>
#include <vector>

#include "sgf/common.hpp"
#include "sgf/ensembles.hpp"
#include "sgf/quadrature.hpp"

namespace sgf {

struct SuperEigenPoint {
  std::vector<double> r1;  // bosonic eigenvalues
  std::vector<double> r2;  // fermionic radial coordinates, eigenvalue e^{i psi} r2
  double psi = default_psi;

  int k1() const { return int(r1.size()); }
  int k2() const { return int(r2.size()); }
  std::vector<cd> fermionic() const;
};

void check_psi(double psi);

struct ChiValue {
  cd arg;
  int value;
};

ChiValue chi(cd x);
inline double chi_v(cd x) { return chi(x).value; }

// Rotation invariant superfunction prod_a g1(x_a) prod_b g2(w_b) of bosonic
// eigenvalues x and fermionic eigenvalues w (Wick rotated, w = e^{i psi} r2).
struct FactorizedSuperFn {
  ExpPoly g1;
  ExpPoly g2;

  cd operator()(cd x, cd w) const { return g1(x) * g2(w); }
};

// exp(-Str r^2 / 2)
FactorizedSuperFn gaussian_superfn(double scale = 0.5);

cd sqrt_berezinian_r(const SuperEigenPoint& r);

enum class PhiForm { permutation_sum, factorized };

// supermatrix Bessel function phi_{k1/k2}(-i r, kappa) without boundary terms
cd phi_plane_wave(const SuperEigenPoint& r, const SourceKappa& kappa, PhiForm form = PhiForm::permutation_sum);

// k1! k2! pref / sqrt Ber(kappa) as used by the distributions phi and phi-hat
cd phi_prefactor(int k1, int k2);

struct PhiHatResult {
  cd value;
  cd delta_free;  // the same with the boundary (delta) blocks removed
  int64_t terms = 0;
};

// int Ber(r) phi-hat(-i r, kappa) F(r) d[r] for factorizing F
PhiHatResult phi_hat_action(const FactorizedSuperFn& F, const SourceKappa& kappa, double psi = default_psi);

// Grassmann evaluation on 1/1 supermatrices:
//   int exp(-i Str kappa rho) F(rho) d[rho]
// with rho = [[a, e^{i psi/2} eta*], [e^{i psi/2} eta, e^{i psi} b]],
// d[rho] = da e^{i psi} db e^{-i psi} d eta d eta* / (2 pi).
QuadResult grassmann_u11_integral(const FactorizedSuperFn& F, cd k1, cd k2, double psi = default_psi,
                                  double rel_tol = 1e-11);
// same with F = exp(-Str rho^2 / 2) expanded entirely inside the Grassmann engine
QuadResult grassmann_u11_gaussian(cd k1, cd k2, double psi = default_psi, double rel_tol = 1e-11);

struct GaussianU11Report {
  cd lhs, rhs;
  cd constant;  // lhs / rhs
  double diff = 0;  // |lhs / constant_ref - rhs|
};

// Gaussian U(1/1) identity; constant_ref is the pinned proportionality constant
GaussianU11Report check_gaussian_u11(cd k1, cd k2, cd constant_ref);
cd gaussian_u11_rhs(cd k1, cd k2);

enum class DForm { compact, sum, grassmann };

// D_r F(r) for k1 k2 <= 1; F given as an analytic function of (x, w)
using SuperFn11 = std::function<cd(cd, cd)>;
cd d_operator_apply(const SuperFn11& F, const SuperEigenPoint& r, DForm form, double h = 1e-2);

struct LaplaceReport {
  cd residual;
  double scale = 0;  // largest constituent second derivative
};

// Str d^2/d kappa^2 of sqrt Ber_{l/l}, kappa = (bos..., ferm...)
LaplaceReport laplace_sqrtber(const std::vector<cd>& bos, const std::vector<cd>& ferm, double h = 1e-2);

struct CommutatorReport {
  cd lhs, rhs;
  double max_dev = 0;
};

CommutatorReport commutator_identity_check(cd kb1, cd ka2, double r1, double r2, double psi = default_psi);

struct CauchyReport {
  cd integral;
  cd reduced;  // F(0)
  cd ratio;
  double refinement_change = 0;  // change of the ratio under a tighter quadrature
};

CauchyReport cauchy_reduction_check(const FactorizedSuperFn& F, cd kappa = 0.0, double psi = default_psi);

// (-1)^{k1} 2^{2-k1-k2} i
cd cauchy_constant(int k1, int k2);

}  // namespace sgf
