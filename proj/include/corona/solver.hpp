#pragma once

#include <stdexcept>
#include <vector>

#include "corona/matpoly.hpp"
#include "corona/pointwise.hpp"
#include "corona/quad.hpp"

namespace corona {

// Raised when delta_sq > 1/e, outside the range where the bounds are stated.
class HypothesisError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// n = 1:             (C/delta^{r+1}) log(1/delta^{2r}) + 1/delta
// n >= 2, p != 2:    n C C(p)^n times the same log term, + 1/delta
// n >= 2, p = 2:     sqrt(n) C times the log term, + 1/delta
// with C = kCoronaC and C(p) = 1/sin(pi/p).
double corona_bound(double p, Eigen::Index r, double delta_sq, std::size_t n);
// The n = 1 bound with another functional constant in place of kCoronaC.
double disk_bound_with_constant(double constant, Eigen::Index r, double delta_sq);

struct SolveResult {
  MatPoly f;                   // m x 1, degree <= truncation per variable
  double residual_l2 = 0.0;    // |Ff - g|_2, exact on coefficients
  double norm_p = 0.0;         // boundary p-norm of f
  double norm_2 = 0.0;         // coefficient l2 norm of f
  double p = 2.0;
  int truncation = 0;
  bool feasible = false;       // residual_l2 < 1e-9
  bool converged = true;       // IRLS only
  int iterations = 0;          // IRLS only
  double normal_residual = 0.0;  // |f - P_row f|, zero for the minimal-norm solution
  std::vector<double> objective_history;  // IRLS: mean |f|^p per accepted step
};

// deg(g) + deg(F) + 8, the maximum over variables.
int default_truncation(const CoronaInstance& inst);

// Minimal-l2 f of degree <= N per variable with Ff = g on every coefficient,
// via a complete orthogonal decomposition of the block (multilevel) Toeplitz
// constraint matrix, rank threshold 1e-10 times the largest pivot.
SolveResult least_norm_solve(const CoronaInstance& inst, int N, Exec exec = Exec::parallel);

// Minimizes the boundary p-norm (3(N+1) torus points per variable) over the
// same affine solution set by iteratively reweighted least squares from the
// minimal-l2 solution. Weight floor 1e-8; steps are backtracked so the
// objective never increases. Requires 1 < p < inf.
SolveResult hp_least_norm(const CoronaInstance& inst, int N, double p, int iterations = 100,
                          Exec exec = Exec::parallel);

struct F0Baseline {
  double sup_ratio = 0.0;   // sup |Phi g| / |g| over the sample points
  double l2_norm = 0.0;     // boundary L2 norm of Phi g
  double g_l2 = 0.0;
  double bound = 0.0;       // |g|_2 / delta
  bool passed = false;      // l2_norm <= bound and sup_ratio <= 1/delta (+1e-10)
};

// f0 = Phi g sampled on the disk nodes and circle of Q (n = 1) or the torus
// product of the circle nodes (n >= 2).
F0Baseline f0_baseline(const CoronaInstance& inst, const DiskQuadrature& Q);

struct BoundReport {
  double p = 2.0;
  Eigen::Index r = 0;
  std::size_t n = 0;
  double delta_sq = 0.0;
  bool hypothesis_ok = false;  // delta_sq <= 1/e
  double bound_value = 0.0;    // NaN when the hypothesis fails
  double trent_bound = 0.0;    // n = 1, p = 2 only; NaN otherwise
  double g_norm = 0.0;         // boundary p-norm of g
  double achieved_norm = 0.0;
  bool evaluated = false;      // hypothesis holds and 1 < p < inf
  bool passed = false;         // achieved_norm <= bound_value * g_norm
  double constant_C = kCoronaC;
  double trent_C = kTrentC;
  SolveResult solve;
};

// Least-norm solve (IRLS for p != 2), truncation doubled up to 4 times while
// infeasible; N <= 0 selects default_truncation. For p = 1 and p = inf only
// the bound is evaluated.
BoundReport solve_and_report(const CoronaInstance& inst, int N, double p, Exec exec = Exec::parallel);

}  // namespace corona
