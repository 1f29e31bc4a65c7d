#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "sgf/common.hpp"

namespace sgf {

// Element of the Grassmann algebra over n_gen generators. Generators come in
// pairs (eta, eta*) with indices (2m, 2m+1). Monomials are bitmasks with the
// generators in ascending order.
class GrassmannElement {
 public:
  static constexpr int max_generators = 12;

  GrassmannElement() : GrassmannElement(0) {}
  explicit GrassmannElement(int n_gen, cd scalar = 0.0);

  static GrassmannElement generator(int n_gen, int index);

  int n_gen() const { return n_gen_; }
  cd coeff(uint32_t mask) const { return c_[mask]; }
  void set_coeff(uint32_t mask, cd v) { c_[mask] = v; }
  cd body() const { return c_[0]; }
  GrassmannElement soul() const;
  bool is_even() const;
  bool is_odd() const;
  bool is_scalar() const;
  double max_abs_diff(const GrassmannElement& o) const;

  GrassmannElement operator+(const GrassmannElement& o) const;
  GrassmannElement operator-(const GrassmannElement& o) const;
  GrassmannElement operator-() const;
  GrassmannElement operator*(const GrassmannElement& o) const;
  GrassmannElement operator*(cd s) const;
  GrassmannElement& operator+=(const GrassmannElement& o);

  // involution: eta -> eta*, eta* -> -eta, coefficients conjugated, (ab)* = a* b*
  GrassmannElement conj() const;

  const std::vector<cd>& coeffs() const { return c_; }

 private:
  int n_gen_;
  std::vector<cd> c_;
};

GrassmannElement operator*(cd s, const GrassmannElement& a);

// sign of moving the generators of b past those of a into canonical order
int reorder_sign(uint32_t a, uint32_t b);

GrassmannElement gmul(const GrassmannElement& a, const GrassmannElement& b);
GrassmannElement gexp(const GrassmannElement& a);
// f(body + soul) from the Taylor data derivs[k] = f^{(k)}(body)
GrassmannElement gapply(const GrassmannElement& a, const std::vector<cd>& derivs);
GrassmannElement ginv(const GrassmannElement& a);

// innermost first: order[0] is integrated first
GrassmannElement berezin_integrate(const GrassmannElement& a, const std::vector<int>& order);

// left derivative with respect to one generator
GrassmannElement gderiv(const GrassmannElement& a, int index);

class GrassmannMatrix {
 public:
  GrassmannMatrix(int k1, int k2, int n_gen);

  int k1() const { return k1_; }
  int k2() const { return k2_; }
  int dim() const { return k1_ + k2_; }
  int n_gen() const { return n_gen_; }

  GrassmannElement& operator()(int i, int j) { return e_[i * dim() + j]; }
  const GrassmannElement& operator()(int i, int j) const { return e_[i * dim() + j]; }

  bool grading_ok() const;

  GrassmannMatrix operator*(const GrassmannMatrix& o) const;
  GrassmannMatrix operator+(const GrassmannMatrix& o) const;
  GrassmannMatrix operator*(cd s) const;
  GrassmannMatrix adjoint() const;

  static GrassmannMatrix identity(int k1, int k2, int n_gen);
  static GrassmannMatrix diagonal(const std::vector<cd>& bos, const std::vector<cd>& ferm, int n_gen);

 private:
  int k1_, k2_, n_gen_;
  std::vector<GrassmannElement> e_;
};

GrassmannElement str(const GrassmannMatrix& m);
GrassmannElement sdet(const GrassmannMatrix& m);
GrassmannMatrix gmatrix_exp(const GrassmannMatrix& m);

// random element with only even (or only odd) monomials, coefficients of size <= scale
GrassmannElement random_element(int n_gen, bool even, std::mt19937_64& rng, double scale = 0.5);
GrassmannMatrix random_even_supermatrix(int k1, int k2, int n_gen, std::mt19937_64& rng, double scale = 0.5);

// determinant and inverse of a square block of even elements
GrassmannElement even_det(std::vector<GrassmannElement> a, int n);
std::vector<GrassmannElement> even_inverse(std::vector<GrassmannElement> a, int n);

}  // namespace sgf
