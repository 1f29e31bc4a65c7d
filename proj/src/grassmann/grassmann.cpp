#include "sgf/grassmann.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>

namespace sgf {

namespace {

void check_same(const GrassmannElement& a, const GrassmannElement& b) {
  if (a.n_gen() != b.n_gen()) throw ValidationError("Grassmann elements over different generator sets");
}

}  // namespace

GrassmannElement::GrassmannElement(int n_gen, cd scalar) : n_gen_(n_gen) {
  if (n_gen < 0 || n_gen > max_generators) throw ValidationError("generator count out of range 0..12");
  c_.assign(size_t(1) << n_gen, cd{0.0});
  c_[0] = scalar;
}

GrassmannElement GrassmannElement::generator(int n_gen, int index) {
  if (index < 0 || index >= n_gen) throw ValidationError("generator index out of range");
  GrassmannElement g(n_gen);
  g.c_[uint32_t(1) << index] = 1.0;
  return g;
}

GrassmannElement GrassmannElement::soul() const {
  GrassmannElement s = *this;
  s.c_[0] = 0.0;
  return s;
}

bool GrassmannElement::is_even() const {
  for (uint32_t m = 0; m < c_.size(); ++m)
    if (std::popcount(m) % 2 == 1 && c_[m] != cd{0.0}) return false;
  return true;
}

bool GrassmannElement::is_odd() const {
  for (uint32_t m = 0; m < c_.size(); ++m)
    if (std::popcount(m) % 2 == 0 && c_[m] != cd{0.0}) return false;
  return true;
}

bool GrassmannElement::is_scalar() const {
  for (uint32_t m = 1; m < c_.size(); ++m)
    if (c_[m] != cd{0.0}) return false;
  return true;
}

double GrassmannElement::max_abs_diff(const GrassmannElement& o) const {
  check_same(*this, o);
  double d = 0;
  for (size_t m = 0; m < c_.size(); ++m) d = std::max(d, std::abs(c_[m] - o.c_[m]));
  return d;
}

GrassmannElement GrassmannElement::operator+(const GrassmannElement& o) const {
  check_same(*this, o);
  GrassmannElement r = *this;
  for (size_t m = 0; m < c_.size(); ++m) r.c_[m] += o.c_[m];
  return r;
}

GrassmannElement& GrassmannElement::operator+=(const GrassmannElement& o) {
  check_same(*this, o);
  for (size_t m = 0; m < c_.size(); ++m) c_[m] += o.c_[m];
  return *this;
}

GrassmannElement GrassmannElement::operator-(const GrassmannElement& o) const {
  check_same(*this, o);
  GrassmannElement r = *this;
  for (size_t m = 0; m < c_.size(); ++m) r.c_[m] -= o.c_[m];
  return r;
}

GrassmannElement GrassmannElement::operator-() const { return *this * cd{-1.0}; }

GrassmannElement GrassmannElement::operator*(cd s) const {
  GrassmannElement r = *this;
  for (auto& x : r.c_) x *= s;
  return r;
}

GrassmannElement operator*(cd s, const GrassmannElement& a) { return a * s; }

int reorder_sign(uint32_t a, uint32_t b) {
  int swaps = 0;
  while (b) {
    int j = std::countr_zero(b);
    b &= b - 1;
    uint32_t above = (j >= 31) ? 0u : ~((uint32_t(1) << (j + 1)) - 1);
    swaps += std::popcount(a & above);
  }
  return (swaps % 2) ? -1 : 1;
}

GrassmannElement GrassmannElement::operator*(const GrassmannElement& o) const {
  check_same(*this, o);
  GrassmannElement r(n_gen_);
  std::vector<uint32_t> nb;
  for (uint32_t m = 0; m < o.c_.size(); ++m)
    if (o.c_[m] != cd{0.0}) nb.push_back(m);
  for (uint32_t ma = 0; ma < c_.size(); ++ma) {
    if (c_[ma] == cd{0.0}) continue;
    for (uint32_t mb : nb) {
      if (ma & mb) continue;
      r.c_[ma | mb] += double(reorder_sign(ma, mb)) * c_[ma] * o.c_[mb];
    }
  }
  return r;
}

GrassmannElement gmul(const GrassmannElement& a, const GrassmannElement& b) { return a * b; }

GrassmannElement GrassmannElement::conj() const {
  GrassmannElement r(n_gen_);
  for (uint32_t m = 0; m < c_.size(); ++m) {
    if (c_[m] == cd{0.0}) continue;
    GrassmannElement term(n_gen_, std::conj(c_[m]));
    for (int i = 0; i < n_gen_; ++i) {
      if (!(m >> i & 1u)) continue;
      int partner = i ^ 1;
      if (partner >= n_gen_) throw ValidationError("conjugation needs paired generators");
      cd s = (i % 2 == 0) ? cd{1.0} : cd{-1.0};
      term = term * (GrassmannElement::generator(n_gen_, partner) * s);
    }
    r += term;
  }
  return r;
}

namespace {

GrassmannElement series(const GrassmannElement& nil, const std::vector<cd>& derivs) {
  int n = nil.n_gen();
  GrassmannElement out(n, derivs.empty() ? cd{0.0} : derivs[0]);
  GrassmannElement power(n, 1.0);
  double fact = 1;
  for (int k = 1;; ++k) {
    power = power * nil;
    if (power.is_scalar() && power.body() == cd{0.0}) break;
    if (k >= int(derivs.size()))
      throw ValidationError("not enough Taylor coefficients for the nilpotent part");
    fact *= k;
    out += power * (derivs[k] / fact);
  }
  return out;
}

}  // namespace

GrassmannElement gexp(const GrassmannElement& a) {
  cd e = std::exp(a.body());
  std::vector<cd> d(a.n_gen() + 2, e);
  return series(a.soul(), d);
}

GrassmannElement gapply(const GrassmannElement& a, const std::vector<cd>& derivs) {
  return series(a.soul(), derivs);
}

GrassmannElement ginv(const GrassmannElement& a) {
  cd b = a.body();
  if (std::abs(b) == 0.0) throw SingularityError("Grassmann element with zero body is not invertible");
  std::vector<cd> d(a.n_gen() + 2);
  cd p = 1.0 / b;
  for (size_t k = 0; k < d.size(); ++k) {
    d[k] = p * factorial(int(k)) * sign_pow(int(k));
    p /= b;
  }
  return series(a.soul(), d);
}

GrassmannElement berezin_integrate(const GrassmannElement& a, const std::vector<int>& order) {
  std::set<int> seen;
  for (int g : order) {
    if (g < 0 || g >= a.n_gen()) throw ValidationError("Berezin integration over an unknown generator");
    if (!seen.insert(g).second) throw ValidationError("repeated generator in Berezin integration order");
  }
  GrassmannElement cur = a;
  for (int g : order) {
    GrassmannElement next(a.n_gen());
    uint32_t bit = uint32_t(1) << g;
    uint32_t above = ~((bit << 1) - 1);
    for (uint32_t m = 0; m < cur.coeffs().size(); ++m) {
      cd c = cur.coeff(m);
      if (!(m & bit) || c == cd{0.0}) continue;
      double s = (std::popcount(m & above) % 2) ? -1.0 : 1.0;
      next.set_coeff(m & ~bit, next.coeff(m & ~bit) + s * c);
    }
    cur = next;
  }
  return cur;
}

GrassmannElement gderiv(const GrassmannElement& a, int index) {
  if (index < 0 || index >= a.n_gen()) throw ValidationError("derivative with respect to an unknown generator");
  GrassmannElement r(a.n_gen());
  uint32_t bit = uint32_t(1) << index;
  for (uint32_t m = 0; m < a.coeffs().size(); ++m) {
    cd c = a.coeff(m);
    if (!(m & bit) || c == cd{0.0}) continue;
    double s = (std::popcount(m & (bit - 1)) % 2) ? -1.0 : 1.0;
    r.set_coeff(m & ~bit, s * c);
  }
  return r;
}

GrassmannMatrix::GrassmannMatrix(int k1, int k2, int n_gen) : k1_(k1), k2_(k2), n_gen_(n_gen) {
  if (k1 < 0 || k2 < 0) throw ValidationError("negative supermatrix dimension");
  e_.assign(size_t(dim()) * dim(), GrassmannElement(n_gen));
}

bool GrassmannMatrix::grading_ok() const {
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j) {
      bool diag = (i < k1_) == (j < k1_);
      if (diag && !(*this)(i, j).is_even()) return false;
      if (!diag && !(*this)(i, j).is_odd()) return false;
    }
  return true;
}

GrassmannMatrix GrassmannMatrix::operator*(const GrassmannMatrix& o) const {
  if (k1_ != o.k1_ || k2_ != o.k2_ || n_gen_ != o.n_gen_) throw ValidationError("supermatrix shape mismatch");
  GrassmannMatrix r(k1_, k2_, n_gen_);
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j)
      for (int k = 0; k < dim(); ++k) r(i, j) += (*this)(i, k) * o(k, j);
  return r;
}

GrassmannMatrix GrassmannMatrix::operator+(const GrassmannMatrix& o) const {
  if (k1_ != o.k1_ || k2_ != o.k2_ || n_gen_ != o.n_gen_) throw ValidationError("supermatrix shape mismatch");
  GrassmannMatrix r = *this;
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
  return r;
}

GrassmannMatrix GrassmannMatrix::operator*(cd s) const {
  GrassmannMatrix r = *this;
  for (auto& x : r.e_) x = x * s;
  return r;
}

GrassmannMatrix GrassmannMatrix::adjoint() const {
  GrassmannMatrix r(k1_, k2_, n_gen_);
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j) r(i, j) = (*this)(j, i).conj();
  return r;
}

GrassmannMatrix GrassmannMatrix::identity(int k1, int k2, int n_gen) {
  GrassmannMatrix r(k1, k2, n_gen);
  for (int i = 0; i < k1 + k2; ++i) r(i, i) = GrassmannElement(n_gen, 1.0);
  return r;
}

GrassmannMatrix GrassmannMatrix::diagonal(const std::vector<cd>& bos, const std::vector<cd>& ferm, int n_gen) {
  GrassmannMatrix r(int(bos.size()), int(ferm.size()), n_gen);
  for (size_t i = 0; i < bos.size(); ++i) r(int(i), int(i)) = GrassmannElement(n_gen, bos[i]);
  for (size_t i = 0; i < ferm.size(); ++i) {
    int k = int(bos.size() + i);
    r(k, k) = GrassmannElement(n_gen, ferm[i]);
  }
  return r;
}

GrassmannElement str(const GrassmannMatrix& m) {
  GrassmannElement s(m.n_gen());
  for (int a = 0; a < m.k1(); ++a) s += m(a, a);
  for (int b = 0; b < m.k2(); ++b) s = s - m(m.k1() + b, m.k1() + b);
  return s;
}

GrassmannElement even_det(std::vector<GrassmannElement> a, int n) {
  if (n == 0) return GrassmannElement(0, 1.0);
  int ng = a[0].n_gen();
  GrassmannElement det(ng, 1.0);
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(a[r * n + c].body()) > std::abs(a[piv * n + c].body())) piv = r;
    if (std::abs(a[piv * n + c].body()) < 1e-300) {
      // body of the pivot column vanishes: expand the remaining block by permutations
      int m = n - c;
      if (m > 6) throw SingularityError("singular even block");
      std::vector<int> p(m);
      for (int i = 0; i < m; ++i) p[i] = i;
      GrassmannElement s(ng);
      do {
        int inv = 0;
        for (int i = 0; i < m; ++i)
          for (int j = i + 1; j < m; ++j) inv += p[i] > p[j];
        GrassmannElement t(ng, sign_pow(inv));
        for (int i = 0; i < m; ++i) t = t * a[(c + i) * n + c + p[i]];
        s += t;
      } while (std::next_permutation(p.begin(), p.end()));
      return det * s;
    }
    if (piv != c) {
      for (int j = 0; j < n; ++j) std::swap(a[c * n + j], a[piv * n + j]);
      det = -det;
    }
    GrassmannElement pinv = ginv(a[c * n + c]);
    det = det * a[c * n + c];
    for (int r = c + 1; r < n; ++r) {
      GrassmannElement f = a[r * n + c] * pinv;
      for (int j = c; j < n; ++j) a[r * n + j] = a[r * n + j] - f * a[c * n + j];
    }
  }
  return det;
}

std::vector<GrassmannElement> even_inverse(std::vector<GrassmannElement> a, int n) {
  if (n == 0) return {};
  int ng = a[0].n_gen();
  std::vector<GrassmannElement> inv(size_t(n) * n, GrassmannElement(ng));
  for (int i = 0; i < n; ++i) inv[i * n + i] = GrassmannElement(ng, 1.0);
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(a[r * n + c].body()) > std::abs(a[piv * n + c].body())) piv = r;
    if (std::abs(a[piv * n + c].body()) < 1e-300) throw SingularityError("singular even block");
    for (int j = 0; j < n; ++j) {
      std::swap(a[c * n + j], a[piv * n + j]);
      std::swap(inv[c * n + j], inv[piv * n + j]);
    }
    GrassmannElement pinv = ginv(a[c * n + c]);
    for (int j = 0; j < n; ++j) {
      a[c * n + j] = pinv * a[c * n + j];
      inv[c * n + j] = pinv * inv[c * n + j];
    }
    for (int r = 0; r < n; ++r) {
      if (r == c) continue;
      GrassmannElement f = a[r * n + c];
      for (int j = 0; j < n; ++j) {
        a[r * n + j] = a[r * n + j] - f * a[c * n + j];
        inv[r * n + j] = inv[r * n + j] - f * inv[c * n + j];
      }
    }
  }
  return inv;
}

GrassmannElement sdet(const GrassmannMatrix& m) {
  int k1 = m.k1(), k2 = m.k2(), ng = m.n_gen();
  std::vector<GrassmannElement> D(size_t(k2) * k2, GrassmannElement(ng));
  for (int i = 0; i < k2; ++i)
    for (int j = 0; j < k2; ++j) D[i * k2 + j] = m(k1 + i, k1 + j);
  if (k2 > 0) {
    // numeric part of the Fermion-Fermion block must be invertible
    std::vector<GrassmannElement> Db(D.size(), GrassmannElement(ng));
    for (size_t i = 0; i < D.size(); ++i) Db[i] = GrassmannElement(ng, D[i].body());
    if (std::abs(even_det(Db, k2).body()) < 1e-14) throw SingularityError("singular Fermion-Fermion block in sdet");
  }
  auto Dinv = even_inverse(D, k2);
  std::vector<GrassmannElement> A(size_t(k1) * k1, GrassmannElement(ng));
  for (int i = 0; i < k1; ++i)
    for (int j = 0; j < k1; ++j) {
      GrassmannElement s = m(i, j);
      for (int p = 0; p < k2; ++p)
        for (int q = 0; q < k2; ++q) s = s - m(i, k1 + p) * Dinv[p * k2 + q] * m(k1 + q, j);
      A[i * k1 + j] = s;
    }
  GrassmannElement num = k1 > 0 ? even_det(A, k1) : GrassmannElement(ng, 1.0);
  if (k2 == 0) return num;
  return num * ginv(even_det(D, k2));
}

GrassmannMatrix gmatrix_exp(const GrassmannMatrix& m) {
  double nrm = 0;
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) nrm = std::max(nrm, std::abs(m(i, j).body()));
  int s = nrm > 0.25 ? int(std::ceil(std::log2(nrm / 0.25))) : 0;
  GrassmannMatrix x = m * cd{std::ldexp(1.0, -s)};
  GrassmannMatrix result = GrassmannMatrix::identity(m.k1(), m.k2(), m.n_gen());
  GrassmannMatrix term = result;
  for (int k = 1; k <= 30 + m.n_gen(); ++k) {
    term = term * x * cd{1.0 / k};
    result = result + term;
  }
  for (int k = 0; k < s; ++k) result = result * result;
  return result;
}

GrassmannElement random_element(int n_gen, bool even, std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  GrassmannElement a(n_gen);
  for (uint32_t m = 0; m < (1u << n_gen); ++m)
    if ((std::popcount(m) % 2 == 0) == even) a.set_coeff(m, {u(rng), u(rng)});
  return a;
}

GrassmannMatrix random_even_supermatrix(int k1, int k2, int n_gen, std::mt19937_64& rng, double scale) {
  GrassmannMatrix m(k1, k2, n_gen);
  for (int i = 0; i < k1 + k2; ++i)
    for (int j = 0; j < k1 + k2; ++j) m(i, j) = random_element(n_gen, (i < k1) == (j < k1), rng, scale);
  return m;
}

}  // namespace sgf
