#pragma once

#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "corona/matpoly.hpp"
#include "corona/types.hpp"

namespace corona {

inline constexpr double kInfP = std::numeric_limits<double>::infinity();

// Corona data F (r x m), right-hand side g (r x 1), certified lower bound
// delta_sq for lambda_min(FF*) and the exponent p (kInfP for p = infinity).
struct CoronaInstance {
  std::string name;
  MatPoly F;
  MatPoly g;
  double delta_sq = 0.0;
  double p = 2.0;

  std::size_t nvars() const noexcept { return F.nvars(); }
  Eigen::Index r() const noexcept { return F.rows(); }
  Eigen::Index m() const noexcept { return F.cols(); }
  void validate() const;
};

// F(z) F(z)*, symmetrized.
CMat gram(const MatPoly& F, std::span<const cplx> z);

// Smallest and largest eigenvalue of a Hermitian matrix.
double lambda_min(const CMat& hermitian);
double lambda_max(const CMat& hermitian);

struct DeltaRange {
  double delta_sq = 0.0;  // min over the closed polydisk of lambda_min(FF*)
  double sup_sq = 0.0;    // max of lambda_max(FF*)
  Point argmin;
  Point argmax;
  int final_density = 0;
  bool converged = false;  // relative change < 1e-4 under grid doubling
};

// Grid estimate of the corona constants over the closed polydisk, refined by
// doubling the density and polishing the extremal points with a local
// pattern search. Throws SingularGramError when lambda_min < 1e-12.
DeltaRange delta_range(const MatPoly& F, int grid_density, Exec exec = Exec::parallel);

// Sample points of the closed disk: radii i/(radial-1)*rmax (0 included),
// angles 2 pi k/angular.
std::vector<cplx> disk_grid(int radial, int angular, double rmax = 1.0);
// Tensor product of one-variable grids.
std::vector<Point> polydisk_grid(std::size_t nvars, const std::vector<cplx>& axis);

// Everything needed pointwise for the corona algebra in one variable.
struct Frame {
  CMat F, Fp;        // F(z), dF/dz_var(z)
  CMat G, Ginv;      // FF* and its inverse
  CMat Phi;          // F*(FF*)^-1, m x r
  CMat Pi;           // I - Phi F, m x m
  double lambda_min = 0.0;
};

// Frame at z with derivative in variable `var`; `Fp_poly` must be F.dz(var).
// Throws SingularGramError if lambda_min(FF*) < delta_sq_check/2.
Frame frame_at(const MatPoly& F, const MatPoly& Fp_poly, std::span<const cplx> z,
               double delta_sq_check = 0.0);

// Phi(z) = F*(FF*)^-1. The guard rejects points with lambda_min < delta_sq_check/2.
CMat phi_map(const MatPoly& F, double delta_sq_check, std::span<const cplx> z);
// Pi(z) = I - F*(FF*)^-1 F.
CMat pi_map(const MatPoly& F, double delta_sq_check, std::span<const cplx> z);

// Closed forms in variable var:
//   d Pi      = -Phi F' Pi
//   dbar Phi  = Pi F'* (FF*)^-1
//   d dbar Phi = d Pi dbar Phi + (d Pi)* Phi F' Phi
CMat d_pi(const Frame& fr);
CMat dbar_phi(const Frame& fr);
CMat d_dbar_phi(const Frame& fr);

struct IdentityResiduals {
  double d_pi = 0.0;        // |d Pi (FD) - closed form|
  double dbar_phi = 0.0;    // |dbar Phi (FD) - closed form|
  double d_dbar_phi = 0.0;  // |d (closed dbar Phi) (FD) - closed form|
  double pi_d_pi = 0.0;     // |Pi d Pi|
  double d_pi_pi = 0.0;     // |(d Pi) Pi - d Pi|
  double dbar_pi_pi = 0.0;  // |(dbar Pi) Pi|
  double pi_dbar_pi = 0.0;  // |Pi dbar Pi - dbar Pi|
  double h_step = 0.0;
  std::size_t points = 0;

  double max() const;
  void merge_max(const IdentityResiduals& other);
};

// Finite-difference residuals of the derivative identities at z, in variable
// var. Frobenius norms; fourth-order central differences (+-h, +-2h).
IdentityResiduals check_identities(const MatPoly& F, std::span<const cplx> z, double h_step = 1e-5,
                                   std::size_t var = 0);

// Maximum of check_identities over points and over every variable.
IdentityResiduals check_identities_grid(const MatPoly& F, const std::vector<Point>& points,
                                        double h_step = 1e-5, Exec exec = Exec::parallel);

}  // namespace corona
