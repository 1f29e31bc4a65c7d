#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "sgf/driver.hpp"

using namespace sgf;
namespace fs = std::filesystem;

namespace {

ComputeRequest gf_request() {
  ComputeRequest q;
  q.N = 2;
  q.kappa_bos = {{0.3, -0.5}};
  q.kappa_ferm = {-0.2};
  q.n_samples = 50000;
  q.seed = 7;
  return q;
}

fs::path scratch_dir(const std::string& name) {
  fs::path d = fs::temp_directory_path() / ("sgf_test_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

int run_cli(const std::string& args, const fs::path& out) {
  std::string cmd = std::string(SGF_CLI) + " " + args + " > " + (out / "stdout.json").string() + " 2> " +
                    (out / "stderr.txt").string();
  int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

}  // namespace

TEST_CASE("parsing") {
  CHECK(parse_task("hciz") == Task::hciz);
  CHECK(parse_method("all") == Method::all);
  CHECK(parse_suite("efetov_wegner") == Suite::efetov_wegner);
  CHECK(to_string(Suite::ingham_siegel) == "ingham_siegel");
  CHECK_THROWS_AS(parse_task("nope"), ValidationError);
  std::vector<cd> z = parse_complex_list("0.3,-0.5;-0.2");
  REQUIRE(z.size() == 2);
  CHECK(z[0] == cd(0.3, -0.5));
  CHECK(z[1] == cd(-0.2, 0.0));
  CHECK(parse_complex_list("").empty());
  CHECK_THROWS_AS(parse_complex_list("1,2,3"), ValidationError);
  CHECK_THROWS_AS(parse_real_list("1,x"), ValidationError);
  CHECK(parse_real_list("1,-1.5") == std::vector<double>{1.0, -1.5});
}

TEST_CASE("validation") {
  ComputeRequest q = gf_request();
  CHECK_NOTHROW(validate(q));
  ComputeRequest a = q;
  a.seed.reset();
  CHECK_THROWS_AS(validate(a), ValidationError);
  a = q;
  a.k1 = 3;
  CHECK_THROWS_AS(validate(a), ValidationError);
  a = q;
  a.kappa_bos = {0.3};
  CHECK_THROWS_AS(validate(a), ValidationError);
  a = q;
  a.psi = 0.0;
  CHECK_THROWS_AS(validate(a), ValidationError);
  a = q;
  a.task = Task::external_field;
  a.alpha = 0.5;
  a.e0 = {1.0, 1.0};
  CHECK_THROWS_AS(validate(a), ValidationError);
  a = q;
  a.task = Task::hciz;
  a.e0 = {1, 2};
  CHECK_THROWS_AS(validate(a), ValidationError);
  a = q;
  a.tol.mc_sigma = 0;
  CHECK_THROWS_AS(validate(a), ValidationError);
}

TEST_CASE("compute report") {
  Report r = run_compute(gf_request());
  std::vector<std::string> keys;
  for (auto& [k, v] : r.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"schema_version", "task", "method", "params", "results", "diffs", "pass",
                                         "runtime_ms", "version"});
  CHECK(r["pass"].get<bool>());
  CHECK(r["params"]["kappa_bos"][0]["L"] == 1);
  CHECK(r["diffs"]["det_vs_susy"].get<double>() < 1e-6);
  CHECK(r["diffs"]["mc_sigma_det"].get<double>() < 3);
  CHECK(std::abs(r["results"]["det"]["re"].get<double>() - 0.457250483773107) < 1e-10);
  CHECK(recheck(r));
  CHECK(report_status(r) == Status::ok);
  // a tightened tolerance flips the pass flag when rechecked
  Report t = r;
  t["params"]["tolerances"]["mc_sigma"] = 1e-9;
  CHECK_FALSE(recheck(t));
  t["pass"] = recheck(t);
  CHECK(report_status(t) == Status::verification);
}

TEST_CASE("reproducibility") {
  ComputeRequest q = gf_request();
  CHECK(payload(run_compute(q)) == payload(run_compute(q)));
  ComputeRequest p = q;
  p.seed = 8;
  CHECK(payload(run_compute(q)) != payload(run_compute(p)));
  ComputeRequest h;
  h.task = Task::hciz;
  h.e0 = {1, 2};
  h.et = {0.5, -0.3};
  h.seed = 3;
  h.n_samples = 20000;
  Report hr = run_compute(h);
  CHECK(hr["params"].contains("et"));
  CHECK(hr["results"]["susy"].is_null());
  CHECK(payload(hr) == payload(run_compute(h)));
}

TEST_CASE("other tasks") {
  ComputeRequest b;
  b.task = Task::bessel_check;
  b.method = Method::all;
  b.N = 1;
  b.kappa_bos = {{0.3, -0.5}};
  b.kappa_ferm = {-0.2};
  Report br = run_compute(b);
  CHECK(br["pass"].get<bool>());
  ComputeRequest e = gf_request();
  e.task = Task::external_field;
  e.alpha = 0.5;
  e.e0 = {1.0, -1.0};
  e.method = Method::det;
  CHECK_THROWS_AS(run_compute(e), ValidationError);
  e.method = Method::all;
  Report er = run_compute(e);
  CHECK(er["results"]["det"].is_null());
  CHECK(er["diffs"]["mc_sigma_susy"].get<double>() < 3);
}

TEST_CASE("verify suites") {
  Report r = run_verify(Suite::berezinian);
  CHECK(r["pass"].get<bool>());
  CHECK(r["checks"].size() > 0);
  for (auto& c : r["checks"]) CHECK(c["value"].get<double>() < c["tolerance"].get<double>());
  CHECK(payload(r) == payload(run_verify(Suite::berezinian)));
  Report forced = run_verify(Suite::grassmann, {0.0, 20240917});
  CHECK_FALSE(forced["pass"].get<bool>());
  CHECK(report_status(forced) == Status::verification);
}

TEST_CASE("report files") {
  fs::path d = scratch_dir("files");
  Report r = run_compute(gf_request());
  fs::path p1 = write_report(r, d), p2 = write_report(r, d);
  CHECK(fs::exists(p1));
  CHECK(p1 != p2);
  CHECK(p1.parent_path().filename().string().find("_seed7") != std::string::npos);
  std::ifstream latest(d / "latest");
  std::string name;
  latest >> name;
  CHECK(name == p2.parent_path().filename().string());
  Report back = Report::parse(std::ifstream(p1));
  CHECK(payload(back) == payload(r));
  fs::remove_all(d);
}

TEST_CASE("command line exit codes") {
  fs::path d = scratch_dir("cli");
  std::string out = " --out " + (d / "runs").string();
  CHECK(run_cli("compute --task generating_function --method all --N 2 --kappa-bos 0.3,-0.5 --kappa-ferm -0.2 "
                "--samples 20000 --seed 1" + out, d) == 0);
  Report r = Report::parse(std::ifstream(d / "stdout.json"));
  CHECK(r["task"] == "generating_function");
  CHECK(fs::exists(d / "runs" / "latest"));
  CHECK(run_cli("compute --task generating_function --method mc --N 2 --kappa-bos 0.3,-0.5 --kappa-ferm -0.2" + out,
                d) == 1);
  CHECK(run_cli("compute --task generating_function --N 1 --k1 2 --kappa-bos 0.3,-0.5;0.1,-0.5 --kappa-ferm -0.2" +
                    out,
                d) != 0);
  CHECK(run_cli("verify --suite berezinian --tol-scale 0" + out, d) == 2);
  CHECK(run_cli("compute --no-such-flag" + out, d) == 1);
  CHECK(run_cli("--help", d) == 0);
  std::ofstream(d / "c.ini") << "[compute]\ntask=hciz\nmethod=det\nN=2\ne0=\"1,2\"\net=\"0.5,-0.3\"\n";
  CHECK(run_cli("--config " + (d / "c.ini").string() + " compute" + out, d) == 0);
  Report c = Report::parse(std::ifstream(d / "stdout.json"));
  CHECK(c["task"] == "hciz");
  CHECK(std::abs(c["results"]["det"]["re"].get<double>() - 0.930064) < 1e-6);
  fs::remove_all(d);
}
