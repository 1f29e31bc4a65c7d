#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "sgf/driver.hpp"

using namespace sgf;

int main(int argc, char** argv) {
  CLI::App app{"Generating functions of invariant random matrix ensembles by Monte Carlo, determinantal and superspace routes"};
  app.set_config("--config", "", "key = value file; command line flags take precedence");
  app.require_subcommand(1);

  ComputeRequest req;
  std::string task = "generating_function", method = "all", kb, kf, e0, et, out = "out";
  std::optional<uint64_t> seed;
  auto* compute = app.add_subcommand("compute", "evaluate one quantity by the selected routes");
  compute->add_option("--task", task, "generating_function|external_field|hciz|bessel_check|identity_suite");
  compute->add_option("--method", method, "mc|det|susy|all");
  compute->add_option("--N", req.N, "matrix dimension");
  compute->add_option("--k1", req.k1);
  compute->add_option("--k2", req.k2);
  compute->add_option("--kappa-bos", kb, "\"re,im;re,im;...\"");
  compute->add_option("--kappa-ferm", kf, "\"re;re,im;...\"");
  compute->add_option("--psi", req.psi);
  compute->add_option("--alpha", req.alpha);
  compute->add_option("--e0", e0, "comma separated eigenvalues of the external field");
  compute->add_option("--et", et, "second eigenvalue set for hciz");
  compute->add_option("--samples", req.n_samples);
  compute->add_option("--seed", seed);
  compute->add_option("--route-tol", req.tol.route_rel, "relative tolerance between det and susy");
  compute->add_option("--mc-sigma", req.tol.mc_sigma, "allowed Monte Carlo distance in standard errors");
  compute->add_option("--out", out);

  std::string suite = "all";
  VerifyOptions vopts;
  auto* verify = app.add_subcommand("verify", "run an identity battery");
  verify->add_option("--suite", suite, "berezinian|grassmann|bessel|efetov_wegner|ingham_siegel|external_field|all");
  verify->add_option("--seed", vopts.seed);
  verify->add_option("--tol-scale", vopts.tol_scale)->group("");
  verify->add_option("--out", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // help and version keep code 0; any malformed input is a validation error
    int rc = app.exit(e);
    return rc == 0 ? 0 : int(Status::validation);
  }

  try {
    Report r;
    if (*compute) {
      req.task = parse_task(task);
      req.method = parse_method(method);
      req.kappa_bos = parse_complex_list(kb);
      req.kappa_ferm = parse_complex_list(kf);
      if (!e0.empty()) req.e0 = parse_real_list(e0);
      if (!et.empty()) req.et = parse_real_list(et);
      req.seed = seed;
      r = run_compute(req);
    } else {
      r = run_verify(parse_suite(suite), vopts);
    }
    auto path = write_report(r, out);
    std::cout << r.dump(2) << "\n";
    std::cerr << "report: " << path.string() << "\n";
    return int(report_status(r));
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return int(e.status());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return int(Status::numerical);
  }
}
