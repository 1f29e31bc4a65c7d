#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sgf {

using cd = std::complex<double>;

inline constexpr double tol_equal = 1e-12;
inline constexpr double default_psi = std::numbers::pi / 2;
inline constexpr cd I{0.0, 1.0};
inline constexpr double two_pi = 2 * std::numbers::pi;

// exit codes of the driver
enum class Status : int { ok = 0, validation = 1, verification = 2, numerical = 3 };

class Error : public std::runtime_error {
 public:
  Error(const std::string& what, Status s) : std::runtime_error(what), status_(s) {}
  Status status() const { return status_; }

 private:
  Status status_;
};

struct ValidationError : Error {
  explicit ValidationError(const std::string& w) : Error(w, Status::validation) {}
};

struct VerificationError : Error {
  explicit VerificationError(const std::string& w) : Error(w, Status::verification) {}
};

struct NumericalError : Error {
  NumericalError(const std::string& w, double achieved = 0.0)
      : Error(w, Status::numerical), achieved_error(achieved) {}
  double achieved_error;
};

struct SingularityError : Error {
  explicit SingularityError(const std::string& w) : Error(w, Status::numerical) {}
};

struct ResourceError : Error {
  explicit ResourceError(const std::string& w) : Error(w, Status::numerical) {}
};

inline cd ipow(int n) {
  static const cd t[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return t[((n % 4) + 4) % 4];
}

inline double factorial(int n) {
  double r = 1;
  for (int j = 2; j <= n; ++j) r *= j;
  return r;
}

inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  double r = 1;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

inline double sign_pow(int n) { return (n % 2 == 0) ? 1.0 : -1.0; }

}  // namespace sgf
