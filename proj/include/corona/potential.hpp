#pragma once

#include <functional>
#include <span>

#include "corona/pointwise.hpp"

namespace corona {

// |d/dt det A(t) - det A(t) tr(A(t)^-1 A'(t))| with central differences of
// step h for both d/dt det A and A'. Throws SingularGramError if A(t) is
// singular.
double det_derivative_check(const std::function<CMat(double)>& A, double t, double h = 1e-5);

struct Potentials {
  double phi = 0.0;     // log(delta^-2r det FF*)
  double lambda = 0.0;  // tr (FF*)^-1
  double psi = 0.0;     // lambda + phi / delta^2
};

// log det of a Hermitian positive definite matrix via Cholesky.
double log_det_hpd(const CMat& G);

Potentials potentials_at(const MatPoly& F, double delta_sq, std::span<const cplx> z);

// Normalized Laplacians (d dbar in one variable) from the frame at a point.
//   phi:    tr[(FF*)^-1 F' Pi F'*]
//   lambda: tr[Phi* F'* (FF*)^-1 F' Phi] - tr[(FF*)^-1 F' Pi F'* (FF*)^-1]
double laplacian_phi(const Frame& fr);
double laplacian_lambda(const Frame& fr);
double laplacian_psi(const Frame& fr, double delta_sq);
double laplacian_phi(const MatPoly& F, std::span<const cplx> z, std::size_t var = 0);

// K = r log(1/delta^2), L = 2 K / delta^2.
double potential_K(Eigen::Index r, double delta_sq);
double potential_L(Eigen::Index r, double delta_sq);

struct PotentialReport {
  double K = 0.0;
  double L = 0.0;
  double min_phi = 0.0, max_phi = 0.0;
  double min_psi = 0.0, max_psi = 0.0;
  double worst_gap_phi = 0.0;  // min of lap phi - |d Pi|^2
  double worst_gap_psi = 0.0;  // min of lap psi - |Phi F' Phi|^2
  std::size_t points = 0;
  bool hypothesis_ok = false;  // delta^2 <= 1/e; otherwise informational
  bool passed = false;
};

// Sweep over the closed polydisk grid disk_grid(density/2 + 1, density)^n;
// Laplacian gaps are taken per variable.
PotentialReport verify_potentials(const CoronaInstance& inst, int grid_density,
                                  Exec exec = Exec::parallel);

}  // namespace corona
