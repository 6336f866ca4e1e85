#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace corona {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

// A point of the closed polydisk, one coordinate per variable.
using Point = std::vector<cplx>;

// Selects the OpenMP kernel or its serial reference. Both produce bitwise
// identical results: per-node values are written to separate slots and all
// reductions are ordered.
enum class Exec { serial, parallel };

// Thrown when FF* is too close to singular for the requested operation.
class SingularGramError : public std::runtime_error {
 public:
  SingularGramError(const std::string& what, double lambda_min)
      : std::runtime_error(what), lambda_min_(lambda_min) {}
  double lambda_min() const noexcept { return lambda_min_; }

 private:
  double lambda_min_;
};

inline constexpr double kEuler = std::numbers::e;
inline constexpr double kPi = std::numbers::pi;

// sqrt(1 + e^2) + sqrt(e) + sqrt(2) e, the one-variable functional constant.
inline const double kCoronaC =
    std::sqrt(1.0 + kEuler * kEuler) + std::sqrt(kEuler) + std::sqrt(2.0) * kEuler;
// 2 sqrt(e) + 2 sqrt(2) e, the earlier constant it is compared against.
inline const double kTrentC = 2.0 * std::sqrt(kEuler) + 2.0 * std::sqrt(2.0) * kEuler;

}  // namespace corona
