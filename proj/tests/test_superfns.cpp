#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>
#include <random>

#include "sgf/detkernels.hpp"
#include "sgf/distdet.hpp"
#include "sgf/superfns.hpp"

using namespace sgf;

namespace {

double rel(cd a, cd b) { return std::abs(a - b) / std::abs(b); }

std::vector<double> distinct_reals(int n, std::mt19937_64& rng, double sep) {
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  std::vector<double> out;
  while (int(out.size()) < n) {
    double z = u(rng);
    bool ok = true;
    for (double w : out) ok = ok && std::abs(z - w) >= sep;
    if (ok) out.push_back(z);
  }
  return out;
}

SourceKappa random_kappa(int k1, int k2, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  std::vector<cd> bos, ferm;
  for (int j = 0; j < k1; ++j) bos.emplace_back(u(rng), -0.5 - 0.1 * j);
  for (int j = 0; j < k2; ++j) ferm.emplace_back(u(rng), 0.2 * j);
  return make_kappa(bos, ferm);
}

}  // namespace

TEST_CASE("chi") {
  CHECK(chi(0.0).value == 0);
  CHECK(chi(1e-15).value == 0);
  CHECK(chi({0.3, -0.5}).value == 1);
  CHECK(chi({0.3, -0.5}).arg == cd(0.3, -0.5));
}

TEST_CASE("Wick angle validation") {
  CHECK_NOTHROW(check_psi(default_psi));
  CHECK_THROWS_AS(check_psi(0.0), ValidationError);
  CHECK_THROWS_AS(check_psi(std::numbers::pi), ValidationError);
}

TEST_CASE("plane wave Bessel function") {
  std::mt19937_64 rng(1);
  // no fermionic sector: a pure plane wave times a constant
  SourceKappa k10 = make_kappa({{0.4, -0.5}}, {});
  cd c0 = phi_plane_wave({{0.3}, {}, default_psi}, k10) / std::exp(-I * k10.bos[0] * 0.3);
  for (double r : {-1.0, 0.2, 1.7}) {
    cd c = phi_plane_wave({{r}, {}, default_psi}, k10) / std::exp(-I * k10.bos[0] * r);
    CHECK(std::abs(c - c0) < 1e-14);
  }
  for (auto [k1, k2] : {std::pair{1, 1}, {2, 1}, {2, 2}, {3, 1}, {2, 0}}) {
    for (int t = 0; t < 50; ++t) {
      SourceKappa k = random_kappa(k1, k2, rng);
      std::vector<double> all = distinct_reals(k1 + k2, rng, 0.1);
      SuperEigenPoint r{{all.begin(), all.begin() + k1}, {all.begin() + k1, all.end()}, default_psi};
      CHECK(rel(phi_plane_wave(r, k, PhiForm::factorized), phi_plane_wave(r, k)) < 1e-10);
    }
  }
}

TEST_CASE("Bessel function action") {
  FactorizedSuperFn F = gaussian_superfn();
  SourceKappa k{{cd(0.7, 0.0)}, {cd(0.2, 0.0)}, {1}};
  CHECK(rel(phi_hat_action(F, k).value, grassmann_u11_integral(F, 0.7, 0.2).value) < 1e-6);
  std::mt19937_64 rng(2);
  for (int t = 0; t < 5; ++t) {
    SourceKappa kk = random_kappa(1, 1, rng);
    CHECK(rel(phi_hat_action(F, kk).value, grassmann_u11_integral(F, kk.bos[0], kk.ferm[0]).value) < 1e-8);
  }
  // boundary limit
  cd kb{0.3, -0.5};
  CHECK(std::abs(I * phi_hat_action(F, make_kappa({kb}, {kb + 1e-4})).value - 1.0) < 1e-3);
  // linearity in F
  FactorizedSuperFn G{ExpPoly{{1.0, 0.5}, -0.5, 0.0}, F.g2};
  FactorizedSuperFn H{ExpPoly{{cd(2.0, 1.0), 0.5}, -0.5, 0.0}, F.g2};
  cd a = phi_hat_action(F, make_kappa({kb}, {-0.2})).value;
  cd b = phi_hat_action(G, make_kappa({kb}, {-0.2})).value;
  cd h = phi_hat_action(H, make_kappa({kb}, {-0.2})).value;
  // H = (1 + i) F + G on the bosonic side
  CHECK(rel(h, (1.0 + I) * a + b) < 1e-9);
  // ordinary Fourier transform when there is no fermionic block
  SourceKappa k10 = make_kappa({kb}, {});
  cd direct = integrate_1d([&](double r) { return phi_plane_wave({{r}, {}, default_psi}, k10) * F.g1(r); }).value;
  CHECK(rel(phi_hat_action(F, k10).value, direct) < 1e-9);
}

TEST_CASE("Gaussian U(1/1) identity") {
  for (auto [k1, k2] : {std::pair{cd(0.5), cd(-0.3)}, {cd(0.0), cd(1.0)}, {cd(0.3, -0.5), cd(-0.2)}}) {
    GaussianU11Report r = check_gaussian_u11(k1, k2, -I);
    CHECK(std::abs(r.constant + I) < 1e-8);
    CHECK(r.diff < 1e-8);
  }
  GaussianU11Report same = check_gaussian_u11(0.4, 0.4, -I);
  CHECK(same.rhs == cd{1.0});
  CHECK(std::abs(same.lhs / -I - 1.0) < 1e-8);
}

TEST_CASE("D operator") {
  SuperFn11 F = [](cd x, cd w) { return std::exp(-0.5 * (x * x - w * w)); };
  CHECK(d_operator_apply(F, {{0.7}, {}, default_psi}, DForm::compact) == F(0.7, 0.0));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int t = 0; t < 50; ++t) {
    SuperEigenPoint r{{u(rng)}, {u(rng)}, default_psi};
    if (std::abs(r.r1[0] - r.fermionic()[0]) < 0.1) continue;
    cd c = d_operator_apply(F, r, DForm::compact);
    CHECK(rel(d_operator_apply(F, r, DForm::sum), c) < 1e-6);
    CHECK(rel(d_operator_apply(F, r, DForm::grassmann), c) < 1e-5);
  }
  CHECK_THROWS_AS(d_operator_apply(F, {{0.1, 0.2}, {0.3}, default_psi}, DForm::compact), ValidationError);
}

TEST_CASE("supertrace Laplacian of the Berezinian") {
  LaplaceReport l1 = laplace_sqrtber({{0.3, -0.5}}, {{-0.4, 0.2}});
  CHECK(std::abs(l1.residual) < 1e-6 * l1.scale);
  LaplaceReport l2 = laplace_sqrtber({{0.6, -1.0}}, {{-0.8, 0.4}});
  CHECK(std::abs(l2.residual) < 1e-6 * l2.scale);
  CHECK(std::abs(sqrt_berezinian({{0.6, -1.0}}, {{-0.8, 0.4}}) - 0.5 * sqrt_berezinian({{0.3, -0.5}}, {{-0.4, 0.2}})) <
        1e-15);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int t = 0; t < 20; ++t) {
    std::vector<cd> z;
    while (z.size() < 4) {
      cd c{u(rng), u(rng)};
      bool ok = true;
      for (cd w : z) ok = ok && std::abs(c - w) >= 0.5;
      if (ok) z.push_back(c);
    }
    LaplaceReport r = laplace_sqrtber({z[0], z[1]}, {z[2], z[3]});
    CHECK(std::abs(r.residual) < 1e-4 * r.scale);
  }
}

TEST_CASE("commutator identity") {
  CommutatorReport same = commutator_identity_check({0.3, -0.5}, {0.3, -0.5}, 0.4, 0.9);
  CHECK(same.lhs == cd{0.0});
  CHECK(same.rhs == cd{0.0});
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2, 2);
  for (double psi : {default_psi, std::numbers::pi / 3}) {
    for (int t = 0; t < 10; ++t) {
      CommutatorReport r = commutator_identity_check(1.0, 0.0, u(rng), u(rng), psi);
      CHECK(r.max_dev < 1e-12 * std::max(1.0, std::abs(r.rhs)));
    }
  }
}

TEST_CASE("Cauchy-like reduction") {
  cd c = cauchy_constant(1, 1);
  CHECK(std::abs(c + I) < 1e-15);
  CauchyReport g = cauchy_reduction_check(gaussian_superfn());
  CHECK(std::abs(g.ratio - c) < 1e-8);
  CHECK(g.refinement_change < 1e-8);
  CauchyReport d = cauchy_reduction_check(gaussian_superfn(1.0));
  CHECK(std::abs(d.ratio - c) < 1e-8);
  CauchyReport s = cauchy_reduction_check(gaussian_superfn(), 0.4);
  CHECK(std::abs(s.ratio - c) < 1e-8);
}

TEST_CASE("distributional determinant bookkeeping") {
  // 2x2: delta pair cells consume both variables of their row and column
  std::vector<DistDetEntry> cells(4);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      DistDetEntry& e = cells[a * 2 + b];
      e.consumes = {b, 2 + a};
      e.parts.push_back({EntryKind::delta_pair, cd(1.0 + a, b)});
      e.parts.push_back({EntryKind::smooth, cd(0.5 * (a + 1), -0.25 * b)});
    }
  DistDetResult r = dist_det(cells, 2, 4);
  Eigen::MatrixXcd m(2, 2);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) m(a, b) = cells[a * 2 + b].value();
  CHECK(std::abs(r.value - det(m)) < 1e-14);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) m(a, b) = cells[a * 2 + b].value_without_deltas();
  CHECK(std::abs(r.delta_free - det(m)) < 1e-14);
  CHECK(r.terms == 2);
  // a variable consumed twice in one term is a structural error
  std::vector<DistDetEntry> bad(4);
  for (auto& e : bad) {
    e.consumes = {0};
    e.parts.push_back({EntryKind::delta_pair, 1.0});
  }
  CHECK_THROWS_AS(dist_det(bad, 2, 4), VerificationError);
  std::vector<DistDetEntry> big(49);
  for (auto& e : big) e.parts.push_back({EntryKind::smooth, 1.0});
  CHECK_THROWS_AS(dist_det(big, 7, 0), ResourceError);
}
