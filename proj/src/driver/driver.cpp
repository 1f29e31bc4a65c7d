#include "sgf/driver.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include "sgf/detkernels.hpp"
#include "sgf/ensembles.hpp"
#include "sgf/grassmann.hpp"
#include "sgf/superfns.hpp"
#include "sgf/susyreps.hpp"

namespace sgf {

namespace {

template <class E>
E parse_enum(const std::string& s, std::initializer_list<std::pair<const char*, E>> table, const char* what) {
  for (auto& [name, v] : table)
    if (s == name) return v;
  throw ValidationError(std::string("unknown ") + what + ": " + s);
}

const std::initializer_list<std::pair<const char*, Task>> task_names = {
    {"generating_function", Task::generating_function}, {"external_field", Task::external_field},
    {"hciz", Task::hciz}, {"bessel_check", Task::bessel_check}, {"identity_suite", Task::identity_suite}};
const std::initializer_list<std::pair<const char*, Method>> method_names = {
    {"mc", Method::mc}, {"det", Method::det}, {"susy", Method::susy}, {"all", Method::all}};
const std::initializer_list<std::pair<const char*, Suite>> suite_names = {
    {"berezinian", Suite::berezinian},       {"grassmann", Suite::grassmann},
    {"bessel", Suite::bessel},               {"efetov_wegner", Suite::efetov_wegner},
    {"ingham_siegel", Suite::ingham_siegel}, {"external_field", Suite::external_field},
    {"all", Suite::all}};

template <class E>
std::string name_of(E v, std::initializer_list<std::pair<const char*, E>> table) {
  for (auto& [name, e] : table)
    if (e == v) return name;
  return "?";
}

Report cjson(cd z) { return Report{{"re", z.real()}, {"im", z.imag()}}; }

bool uses_mc(Method m) { return m == Method::mc || m == Method::all; }
bool uses(Method m, Method route) { return m == route || m == Method::all; }

double rel_diff(cd a, cd ref) { return std::abs(a - ref) / std::max(std::abs(ref), 1e-300); }

double sigma_dist(const MCEstimate& mc, cd ref) {
  return std::abs(mc.mean - ref) / std::max(mc.stderr, 1e-12);
}

class Checks {
 public:
  explicit Checks(double scale) : scale_(scale) {}
  void add(const std::string& name, double metric, double tol) {
    if (!std::isfinite(metric)) metric = 1e300;
    double t = tol * scale_;
    list_.push_back({{"name", name}, {"value", metric}, {"tolerance", t}, {"pass", metric < t}});
  }
  Report& list() { return list_; }

 private:
  double scale_;
  Report list_ = Report::array();
};

std::vector<cd> random_points(int n, std::mt19937_64& rng, double sep, double im_lo, double im_hi,
                              const std::vector<cd>& avoid = {}) {
  std::uniform_real_distribution<double> re(-1.5, 1.5), im(im_lo, im_hi);
  std::vector<cd> out;
  while (int(out.size()) < n) {
    cd z{re(rng), im(rng)};
    bool ok = true;
    for (cd w : out) ok = ok && std::abs(z - w) >= sep;
    for (cd w : avoid) ok = ok && std::abs(z - w) >= sep;
    if (ok) out.push_back(z);
  }
  return out;
}

SourceKappa random_kappa(int k1, int k2, std::mt19937_64& rng, double sep = 0.3) {
  std::vector<cd> bos = random_points(k1, rng, sep, -0.5, -0.5);
  std::vector<cd> ferm = random_points(k2, rng, sep, 0.0, 0.0, bos);
  return make_kappa(bos, ferm);
}

void suite_berezinian(Checks& c, std::mt19937_64& rng) {
  for (auto [p, q] : {std::pair{1, 1}, {2, 1}, {2, 2}, {3, 2}}) {
    double worst = 0, swap = 0;
    for (int draw = 0; draw < 200; ++draw) {
      std::vector<cd> all = random_points(p + q, rng, 0.1, -1.0, 1.0);
      std::vector<cd> bos(all.begin(), all.begin() + p), ferm(all.begin() + p, all.end());
      cd r = sqrt_berezinian(bos, ferm, BerForm::ratio);
      worst = std::max({worst, rel_diff(sqrt_berezinian(bos, ferm, BerForm::mixed), r),
                        rel_diff(sqrt_berezinian(bos, ferm, BerForm::cauchy_vdm), r)});
      if (p > 1) {
        std::swap(bos[0], bos[1]);
        swap = std::max(swap, rel_diff(-sqrt_berezinian(bos, ferm, BerForm::ratio), r));
      }
    }
    std::string tag = "_" + std::to_string(p) + "_" + std::to_string(q);
    c.add("sqrt_berezinian_forms" + tag, worst, 1e-10);
    if (p > 1) c.add("sqrt_berezinian_swap" + tag, swap, 1e-12);
  }
}

void suite_grassmann(Checks& c, std::mt19937_64& rng) {
  double assoc = 0, anti = 0;
  for (int t = 0; t < 20; ++t) {
    GrassmannElement a = random_element(6, t % 2 == 0, rng), b = random_element(6, true, rng),
                     d = random_element(6, t % 3 == 0, rng);
    assoc = std::max(assoc, ((a * b) * d).max_abs_diff(a * (b * d)));
  }
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      GrassmannElement gi = GrassmannElement::generator(8, i), gj = GrassmannElement::generator(8, j);
      anti = std::max(anti, (gi * gj + gj * gi).max_abs_diff(GrassmannElement(8)));
    }
  c.add("associativity", assoc, 1e-13);
  c.add("anticommutation", anti, 1e-300);
  double sd = 0;
  for (auto [k1, k2] : {std::pair{1, 1}, {2, 1}, {1, 2}}) {
    GrassmannMatrix m = random_even_supermatrix(k1, k2, 4, rng, 0.4);
    sd = std::max(sd, sdet(gmatrix_exp(m)).max_abs_diff(gexp(str(m))));
  }
  c.add("sdet_exp_equals_exp_str", sd, 1e-11);
  double spread = 0, diff = 0;
  for (int t = 0; t < 5; ++t) {
    SourceKappa k = random_kappa(1, 1, rng);
    GaussianU11Report r = check_gaussian_u11(k.bos[0], k.ferm[0], -I);
    spread = std::max(spread, std::abs(r.constant + I));
    diff = std::max(diff, r.diff);
  }
  c.add("gaussian_u11_constant", spread, 1e-8);
  c.add("gaussian_u11_identity", diff, 1e-8);
  cd kap{0.3, -0.5};
  c.add("gaussian_u11_coincidence", std::abs(check_gaussian_u11(kap, kap, -I).lhs / -I - 1.0), 1e-8);
}

void suite_bessel(Checks& c, std::mt19937_64& rng) {
  FactorizedSuperFn F = gaussian_superfn();
  double route = 0;
  for (int t = 0; t < 3; ++t) {
    SourceKappa k = random_kappa(1, 1, rng);
    cd g = grassmann_u11_integral(F, k.bos[0], k.ferm[0]).value;
    route = std::max(route, rel_diff(phi_hat_action(F, k).value, g));
  }
  c.add("phi_hat_vs_grassmann", route, 1e-8);
  cd kb{0.3, -0.5};
  c.add("phi_hat_coincidence_limit",
        std::abs(I * phi_hat_action(F, make_kappa({kb}, {kb + 1e-4})).value - F(0.0, 0.0)), 1e-3);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (auto [k1, k2] : {std::pair{1, 1}, {2, 1}, {2, 2}}) {
    double worst = 0;
    for (int t = 0; t < 50; ++t) {
      SourceKappa k = random_kappa(k1, k2, rng, 0.1);
      SuperEigenPoint r;
      for (cd z : random_points(k1 + k2, rng, 0.1, 0.0, 0.0)) {
        if (int(r.r1.size()) < k1)
          r.r1.push_back(z.real());
        else
          r.r2.push_back(z.real());
      }
      worst = std::max(worst, rel_diff(phi_plane_wave(r, k, PhiForm::factorized), phi_plane_wave(r, k)));
    }
    c.add("phi_forms_" + std::to_string(k1) + "_" + std::to_string(k2), worst, 1e-10);
  }
  SuperFn11 G = [](cd x, cd w) { return std::exp(-0.5 * (x * x - w * w)) * (1.0 + 0.3 * x); };
  double dsum = 0, dgr = 0;
  for (int t = 0; t < 10; ++t) {
    SuperEigenPoint r{{u(rng)}, {u(rng)}, default_psi};
    if (std::abs(r.r1[0] - r.fermionic()[0]) < 0.2) continue;
    cd base = d_operator_apply(G, r, DForm::compact);
    dsum = std::max(dsum, rel_diff(d_operator_apply(G, r, DForm::sum), base));
    dgr = std::max(dgr, rel_diff(d_operator_apply(G, r, DForm::grassmann), base));
  }
  c.add("d_operator_sum_vs_compact", dsum, 1e-6);
  c.add("d_operator_grassmann_vs_compact", dgr, 1e-5);
  for (int l : {1, 2}) {
    double worst = 0;
    for (int t = 0; t < 5; ++t) {
      std::vector<cd> pts = random_points(2 * l, rng, 0.3, -1.0, 1.0);
      LaplaceReport lr = laplace_sqrtber({pts.begin(), pts.begin() + l}, {pts.begin() + l, pts.end()});
      worst = std::max(worst, std::abs(lr.residual) / lr.scale);
    }
    c.add("laplace_sqrtber_" + std::to_string(l), worst, 1e-4);
  }
  CommutatorReport cr = commutator_identity_check({0.3, -0.5}, -0.2, 0.7, -0.4);
  c.add("commutator_identity", cr.max_dev, 1e-10);
  CauchyReport ch = cauchy_reduction_check(F);
  c.add("cauchy_reduction", std::abs(ch.ratio - cauchy_constant(1, 1)), 1e-8);
}

void suite_efetov_wegner(Checks& c, std::mt19937_64&) {
  cd k1{0.3, -0.5}, k2{-0.2, 0.0};
  for (int N = 1; N <= 4; ++N) {
    EnsembleSpec ens = gue_ensemble(N);
    std::string n = "_N" + std::to_string(N);
    c.add("z2" + n, std::abs(efetov_wegner_z2(ens, N, k1, k2) - 1.0), 1e-8);
    c.add("det_coincidence" + n, std::abs(z_one_one(ens, N, k1, 1, k1) - 1.0), 1e-10);
    c.add("susy_coincidence" + n, std::abs(generating_function_susy(ens, make_kappa({k1}, {k1})).value - 1.0),
          1e-8);
    c.add("superspace_coincidence" + n, std::abs(z11_superspace(ens, N, k1, k1) - 1.0), 1e-12);
  }
  EnsembleSpec e3 = gue_ensemble(3);
  SourceKappa kk = make_kappa({k1, {-0.4, -0.5}}, {k1, {-0.4, -0.5}});
  MCEstimate mc = mc_generating_function(e3, kk, 1000, 7);
  c.add("mc_coincidence_k2", std::abs(mc.mean - 1.0) + mc.stderr, 1e-300);
  c.add("hs_coincidence", std::abs(z11_hubbard_stratonovich_grassmann(gue_ensemble(2), 2, k1, k1) - 1.0), 1e-8);
}

void suite_ingham_siegel(Checks& c, std::mt19937_64&) {
  FactorizedSuperFn gauss = gaussian_superfn();
  FactorizedSuperFn damped{ExpPoly{{1.0}, 0.0, -0.3}, ExpPoly{{1.0}, 0.0, 0.3}};
  for (int N = 1; N <= 4; ++N) {
    std::string n = "_N" + std::to_string(N);
    c.add("ingham_siegel_gaussian" + n, std::abs(ingham_siegel_action(gauss, N) - 1.0), 1e-8);
    c.add("ingham_siegel_damped" + n, std::abs(ingham_siegel_action(damped, N) - 1.0), 1e-8);
  }
  FactorizedSuperFn poly{ExpPoly{{1.0, 0.0, 1.0}, -0.5, 0.0}, gauss.g2};
  c.add("ingham_siegel_vs_stencil_N3", std::abs(ingham_siegel_action(poly, 3) - ingham_siegel_fd(poly, 3)), 1e-6);
}

void suite_external_field(Checks& c, std::mt19937_64&) {
  SourceKappa k = make_kappa({{0.3, -0.5}}, {-0.2});
  for (int N : {2, 3}) {
    EnsembleSpec ens = gue_ensemble(N);
    std::vector<double> E0 = N == 2 ? std::vector<double>{1, -1} : std::vector<double>{1, -1, 0.4};
    std::string n = "_N" + std::to_string(N);
    cd ext0 = generating_function_external(ens, k, {0.0, E0}).value;
    c.add("alpha0_vs_no_field" + n, std::abs(ext0 - generating_function_no_field(ens, k).value), 1e-6);
    c.add("alpha0_vs_susy" + n, std::abs(ext0 - generating_function_susy(ens, k).value), 1e-6);
    SourceKappa kc = make_kappa(k.bos, k.bos);
    c.add("field_coincidence" + n, std::abs(generating_function_external(ens, kc, {0.5, E0}).value - 1.0), 1e-6);
  }
  EnsembleSpec e2 = gue_ensemble(2);
  ExternalField fld{0.5, {1, -1}};
  MCEstimate mc = mc_external_field(e2, k, fld, 100000, 11);
  c.add("field_vs_mc_N2", sigma_dist(mc, generating_function_external(e2, k, fld).value), 3.0);
  double tail = 0;
  for (int N = 1; N <= 4; ++N)
    for (cd x : {cd{20, 0}, cd{-20, 0}, cd{0, 20}, cd{3, -4}, cd{-0.5, 0.2}, cd{12, 12}})
      if (std::abs(x) <= 20)
        tail = std::max(tail, std::abs(tail_series_direct(x, N) - tail_series_subtract(x, N)) /
                                  std::exp(std::abs(x)));
  c.add("tail_series_forms", tail, 1e-14);
}

void run_suite(Suite s, Checks& c, uint64_t seed) {
  std::mt19937_64 rng(seed);
  switch (s) {
    case Suite::berezinian: suite_berezinian(c, rng); break;
    case Suite::grassmann: suite_grassmann(c, rng); break;
    case Suite::bessel: suite_bessel(c, rng); break;
    case Suite::efetov_wegner: suite_efetov_wegner(c, rng); break;
    case Suite::ingham_siegel: suite_ingham_siegel(c, rng); break;
    case Suite::external_field: suite_external_field(c, rng); break;
    case Suite::all:
      for (Suite t : {Suite::berezinian, Suite::grassmann, Suite::bessel, Suite::efetov_wegner, Suite::ingham_siegel,
                      Suite::external_field})
        run_suite(t, c, seed);
      break;
  }
}

bool checks_pass(const Report& checks) {
  for (auto& ch : checks)
    if (!(ch["value"].get<double>() < ch["tolerance"].get<double>())) return false;
  return true;
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

Task parse_task(const std::string& s) { return parse_enum(s, task_names, "task"); }
Method parse_method(const std::string& s) { return parse_enum(s, method_names, "method"); }
Suite parse_suite(const std::string& s) { return parse_enum(s, suite_names, "suite"); }
std::string to_string(Task t) { return name_of(t, task_names); }
std::string to_string(Method m) { return name_of(m, method_names); }
std::string to_string(Suite s) { return name_of(s, suite_names); }

std::vector<cd> parse_complex_list(const std::string& s) {
  std::vector<cd> out;
  if (s.empty()) return out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ';')) {
    std::vector<double> parts = parse_real_list(item);
    if (parts.size() == 1)
      out.emplace_back(parts[0], 0.0);
    else if (parts.size() == 2)
      out.emplace_back(parts[0], parts[1]);
    else
      throw ValidationError("complex entries are 're' or 're,im': " + item);
  }
  return out;
}

std::vector<double> parse_real_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t pos = 0;
      out.push_back(std::stod(item, &pos));
      if (item.find_first_not_of(" \t", pos) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ValidationError("not a number: '" + item + "'");
    }
  }
  return out;
}

void validate(const ComputeRequest& q) {
  if (q.N < 1) throw ValidationError("N must be at least 1");
  if (q.n_samples < 1) throw ValidationError("n_samples must be positive");
  if (!(q.tol.route_rel > 0) || !(q.tol.mc_sigma > 0)) throw ValidationError("tolerances must be positive");
  if (uses_mc(q.method) && q.task != Task::bessel_check && q.task != Task::identity_suite && !q.seed)
    throw ValidationError("a seed is required whenever the method includes mc");
  switch (q.task) {
    case Task::generating_function:
    case Task::external_field:
    case Task::bessel_check:
      if (!(q.k2 <= q.k1 && q.k1 <= q.N)) throw ValidationError("the source dimensions need k2 <= k1 <= N");
      if (int(q.kappa_bos.size()) != q.k1 || int(q.kappa_ferm.size()) != q.k2)
        throw ValidationError("need k1 bosonic and k2 fermionic source entries");
      for (cd b : q.kappa_bos)
        if (b.imag() == 0) throw ValidationError("bosonic source entries need a nonzero imaginary part");
      break;
    default:
      break;
  }
  if (q.task == Task::external_field) {
    if (q.k1 != q.k2) throw ValidationError("the external field route needs k1 = k2");
    if (int(q.e0.size()) != q.N) throw ValidationError("e0 needs exactly N entries");
    if (q.alpha != 0)
      for (size_t a = 0; a < q.e0.size(); ++a)
        for (size_t b = a + 1; b < q.e0.size(); ++b)
          if (std::abs(q.e0[a] - q.e0[b]) <= tol_equal) throw ValidationError("e0 entries must be pairwise distinct");
  }
  if (q.task == Task::hciz && (int(q.e0.size()) != q.N || int(q.et.size()) != q.N))
    throw ValidationError("hciz needs N entries in both e0 and et");
  if (q.task == Task::bessel_check && q.method == Method::mc)
    throw ValidationError("bessel_check has no Monte Carlo route");
  check_psi(q.psi);
}

Report run_compute(const ComputeRequest& q) {
  validate(q);
  auto t0 = std::chrono::steady_clock::now();
  Report r;
  r["schema_version"] = schema_version;
  r["task"] = to_string(q.task);
  r["method"] = to_string(q.method);
  Report p;
  p["N"] = q.N;
  p["k1"] = q.k1;
  p["k2"] = q.k2;
  p["kappa_bos"] = Report::array();
  for (cd b : q.kappa_bos) p["kappa_bos"].push_back({{"re", b.real()}, {"im", b.imag()}, {"L", sign_L(b)}});
  p["kappa_ferm"] = Report::array();
  for (cd f : q.kappa_ferm) p["kappa_ferm"].push_back(cjson(f));
  p["psi"] = q.psi;
  p["alpha"] = q.alpha;
  p["e0"] = q.e0;
  if (q.task == Task::hciz) p["et"] = q.et;
  p["n_samples"] = q.n_samples;
  p["seed"] = q.seed ? Report(*q.seed) : Report(nullptr);
  p["tolerances"] = {{"route_rel", q.tol.route_rel}, {"mc_sigma", q.tol.mc_sigma}};
  r["params"] = p;

  std::optional<MCEstimate> mc;
  std::optional<cd> det_v, susy_v;
  Report checks = Report::array();
  bool has_checks = false;
  uint64_t seed = q.seed.value_or(0);
  EnsembleSpec ens = gue_ensemble(q.N);
  switch (q.task) {
    case Task::generating_function: {
      SourceKappa k = make_kappa(q.kappa_bos, q.kappa_ferm);
      bool susy_ok = q.k1 == q.k2 && q.k1 <= 2;
      if (q.method == Method::susy && !susy_ok)
        throw ValidationError("the superspace route needs k1 = k2 <= 2");
      if (uses_mc(q.method)) mc = mc_generating_function(ens, k, q.n_samples, seed);
      if (uses(q.method, Method::det)) det_v = generating_function_det(ens, k);
      if (uses(q.method, Method::susy) && susy_ok) susy_v = generating_function_susy(ens, k).value;
      break;
    }
    case Task::external_field: {
      SourceKappa k = make_kappa(q.kappa_bos, q.kappa_ferm);
      ExternalField fld{q.alpha, q.e0};
      if (q.method == Method::det && q.alpha != 0)
        throw ValidationError("the eigenvalue route covers the external field only at alpha = 0");
      if (uses_mc(q.method)) mc = mc_external_field(ens, k, fld, q.n_samples, seed);
      if (uses(q.method, Method::det) && q.alpha == 0) det_v = generating_function_det(ens, k);
      if (uses(q.method, Method::susy)) susy_v = generating_function_external(ens, k, fld).value;
      break;
    }
    case Task::hciz: {
      if (q.method == Method::susy) throw ValidationError("hciz has no superspace route");
      if (uses_mc(q.method)) mc = mc_hciz(q.e0, q.et, q.n_samples, seed);
      if (uses(q.method, Method::det)) det_v = hciz_closed_form(q.e0, q.et);
      break;
    }
    case Task::bessel_check: {
      SourceKappa k = make_kappa(q.kappa_bos, q.kappa_ferm);
      FactorizedSuperFn F = gaussian_superfn();
      if (uses(q.method, Method::det)) det_v = phi_hat_action(F, k, q.psi).value;
      if (uses(q.method, Method::susy)) {
        if (q.k1 != 1 || q.k2 != 1) throw ValidationError("the Grassmann route of bessel_check needs k1 = k2 = 1");
        susy_v = grassmann_u11_integral(F, k.bos[0], k.ferm[0], q.psi).value;
      }
      break;
    }
    case Task::identity_suite: {
      Checks c(1.0);
      run_suite(Suite::all, c, q.seed.value_or(VerifyOptions{}.seed));
      checks = c.list();
      has_checks = true;
      break;
    }
  }

  Report res;
  res["mc"] = mc ? Report{{"re", mc->mean.real()}, {"im", mc->mean.imag()}, {"stderr", mc->stderr}} : Report(nullptr);
  res["det"] = det_v ? cjson(*det_v) : Report(nullptr);
  res["susy"] = susy_v ? cjson(*susy_v) : Report(nullptr);
  r["results"] = res;
  Report d;
  d["det_vs_susy"] = det_v && susy_v ? Report(rel_diff(*susy_v, *det_v)) : Report(nullptr);
  d["mc_sigma_det"] = mc && det_v ? Report(sigma_dist(*mc, *det_v)) : Report(nullptr);
  d["mc_sigma_susy"] = mc && susy_v ? Report(sigma_dist(*mc, *susy_v)) : Report(nullptr);
  r["diffs"] = d;
  if (has_checks) r["checks"] = checks;
  r["pass"] = recheck(r);
  r["runtime_ms"] = ms_since(t0);
  r["version"] = tool_version;
  return r;
}

Report run_verify(Suite suite, const VerifyOptions& opts) {
  auto t0 = std::chrono::steady_clock::now();
  Checks c(opts.tol_scale);
  run_suite(suite, c, opts.seed);
  Report r;
  r["schema_version"] = schema_version;
  r["task"] = "verify";
  r["suite"] = to_string(suite);
  r["seed"] = opts.seed;
  r["checks"] = c.list();
  r["pass"] = recheck(r);
  r["runtime_ms"] = ms_since(t0);
  r["version"] = tool_version;
  return r;
}

bool recheck(const Report& r) {
  bool ok = true;
  if (r.contains("checks")) ok = checks_pass(r["checks"]);
  if (r.contains("diffs")) {
    const Report& d = r["diffs"];
    const Report& t = r["params"]["tolerances"];
    if (!d["det_vs_susy"].is_null()) ok = ok && d["det_vs_susy"].get<double>() < t["route_rel"].get<double>();
    for (const char* key : {"mc_sigma_det", "mc_sigma_susy"})
      if (!d[key].is_null()) ok = ok && d[key].get<double>() < t["mc_sigma"].get<double>();
  }
  return ok;
}

std::string payload(const Report& r) {
  Report c = r;
  c.erase("runtime_ms");
  return c.dump();
}

Status report_status(const Report& r) { return r["pass"].get<bool>() ? Status::ok : Status::verification; }

std::filesystem::path write_report(const Report& r, const std::filesystem::path& out_dir) {
  std::time_t now = std::time(nullptr);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y%m%dT%H%M%SZ", std::gmtime(&now));
  uint64_t seed = 0;
  if (r.contains("seed") && r["seed"].is_number()) seed = r["seed"].get<uint64_t>();
  if (r.contains("params") && r["params"]["seed"].is_number()) seed = r["params"]["seed"].get<uint64_t>();
  std::string base = std::string(stamp) + "_seed" + std::to_string(seed);
  std::filesystem::path dir = out_dir / base;
  for (int n = 2; std::filesystem::exists(dir); ++n) dir = out_dir / (base + "_" + std::to_string(n));
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "report.json") << r.dump(2) << "\n";
  std::ofstream(out_dir / "latest") << dir.filename().string() << "\n";
  return dir / "report.json";
}

}  // namespace sgf
