#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sgf/common.hpp"

namespace sgf {

inline constexpr const char* tool_version = "0.1.0";
inline constexpr int schema_version = 1;

using Report = nlohmann::ordered_json;

enum class Task { generating_function, external_field, hciz, bessel_check, identity_suite };
enum class Method { mc, det, susy, all };
enum class Suite { berezinian, grassmann, bessel, efetov_wegner, ingham_siegel, external_field, all };

struct Tolerances {
  double route_rel = 1e-6;  // |det - susy| / |det|
  double mc_sigma = 3.0;    // |mc - x| / stderr
};

struct ComputeRequest {
  Task task = Task::generating_function;
  Method method = Method::all;
  int N = 2;
  int k1 = 1, k2 = 1;
  std::vector<cd> kappa_bos, kappa_ferm;
  double psi = default_psi;
  double alpha = 0;
  std::vector<double> e0;
  std::vector<double> et;  // second eigenvalue set, hciz only
  int64_t n_samples = 100000;
  std::optional<uint64_t> seed;
  Tolerances tol;
};

struct VerifyOptions {
  // multiplies every tolerance; 0 forces failures (test hook)
  double tol_scale = 1.0;
  uint64_t seed = 20240917;
};

Task parse_task(const std::string& s);
Method parse_method(const std::string& s);
Suite parse_suite(const std::string& s);
std::string to_string(Task t);
std::string to_string(Method m);
std::string to_string(Suite s);

// "re,im;re,im;..." with "re" alone meaning a real entry
std::vector<cd> parse_complex_list(const std::string& s);
std::vector<double> parse_real_list(const std::string& s);

void validate(const ComputeRequest& req);

Report run_compute(const ComputeRequest& req);
Report run_verify(Suite suite, const VerifyOptions& opts = {});

// recomputes the pass flag from the numbers stored in the report
bool recheck(const Report& r);
// the serialized report without the runtime field
std::string payload(const Report& r);
Status report_status(const Report& r);

// writes <out>/<timestamp>_seed<seed>/report.json and updates <out>/latest
std::filesystem::path write_report(const Report& r, const std::filesystem::path& out_dir);

}  // namespace sgf
