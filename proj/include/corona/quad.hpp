#pragma once

#include <functional>
#include <vector>

#include "corona/matpoly.hpp"
#include "corona/pointwise.hpp"

namespace corona {

// Nodes and weights for dmu = (2/pi) log(1/|z|) dx dy on the disk (total
// mass 1) and for normalized arc length dm on the circle.
struct DiskQuadrature {
  std::vector<cplx> nodes;
  std::vector<double> weights;
  std::vector<cplx> circle_nodes;
  std::vector<double> circle_weights;
  std::vector<double> radii;           // radial nodes
  std::vector<double> radial_weights;  // sum to 1
  int radial_count = 0;
  int angular_count = 0;
};

// Gauss rule in x = |z|^2 for the weight log(1/x) on (0, 1), composed with
// angular_count equispaced angles. Exact for |z|^{2k}, k < 2 radial_count.
DiskQuadrature make_quadrature(int radial_count, int angular_count);

// Gauss nodes and weights for log(1/x) dx on (0, 1).
std::pair<std::vector<double>, std::vector<double>> gauss_log_rule(int n);

// Sum of w_i f(z_i) over disk nodes, ordered pairwise reduction.
double integrate_disk(const DiskQuadrature& Q, const std::function<double(cplx)>& f,
                      Exec exec = Exec::parallel);
cplx integrate_disk_c(const DiskQuadrature& Q, const std::function<cplx(cplx)>& f,
                      Exec exec = Exec::parallel);
double integrate_circle(const DiskQuadrature& Q, const std::function<double(cplx)>& f);
cplx integrate_circle_c(const DiskQuadrature& Q, const std::function<cplx(cplx)>& f);

// |int_T u dm - u(0) - int_D lap u dmu|, lap = d dbar.
double green_residual(const std::function<double(cplx)>& u, const std::function<double(cplx)>& lap_u,
                      const DiskQuadrature& Q);

// |int_D |g'|^2 dmu - (|g|_2^2 - |g(0)|^2)| for a one-variable column g.
double littlewood_paley_residual(const MatPoly& g, const DiskQuadrature& Q);

struct EmbeddingReport {
  double lhs = 0.0;
  double rhs = 0.0;    // bound times the normalizing norm
  double ratio = 0.0;  // lhs / normalizing norm
  double bound = 0.0;
  bool passed = false;
};

// ratio = int lap_phi |f|^2 dmu / (phi_sup |f|_2^2); passes iff ratio <= e + 1e-6.
EmbeddingReport carleson_ratio(const std::function<double(cplx)>& lap_phi, double phi_sup,
                               const MatPoly& f, const DiskQuadrature& Q);

// How dbar xi = (dbar Pi) h + Pi dbar h is formed.
enum class DbarMode { finite_difference, closed_form };

// With xi = Pi h and phi the log-det potential:
//   first:  int lap_phi |xi|^2 dmu <= e K e^K |xi|_2^2
//   second: int |dbar xi|^2 dmu    <= (1 + e K e^K) |xi|_2^2
// Throws std::invalid_argument if h(0) != 0.
std::pair<EmbeddingReport, EmbeddingReport> xi_embedding_check(
    const CoronaInstance& inst, const AntiAnalyticPoly& h, const DiskQuadrature& Q,
    DbarMode mode = DbarMode::finite_difference, Exec exec = Exec::parallel);

struct FunctionalSplit {
  cplx boundary;  // int_T <Phi g, h> dm
  cplx I, II, III;
  double xi_norm = 0.0;  // |Pi h|_2 on the circle
  cplx area() const { return I + II + III; }
};

// One-variable functional: I = int <Phi F' Phi g, (d Pi) xi>, II = int
// <dbar Phi g', xi>, III = int <dbar Phi g, dbar xi> against dmu.
FunctionalSplit functional_L(const CoronaInstance& inst, const AntiAnalyticPoly& h,
                             const DiskQuadrature& Q, DbarMode mode = DbarMode::finite_difference,
                             Exec exec = Exec::parallel);

// Same split for polynomial data already restricted to one variable.
FunctionalSplit functional_L(const MatPoly& F, const MatPoly& g, const AntiAnalyticPoly& h,
                             const DiskQuadrature& Q, DbarMode mode, Exec exec);

// (C / delta^{r+1}) log(1/delta^{2r}) with C = sqrt(1+e^2) + sqrt e + sqrt 2 e.
double functional_bound(Eigen::Index r, double delta_sq);

// Bidisk: L_j(xi) = average over the circle in the other variable of the
// one-variable area functional in z_j; also returns the torus boundary pairing.
struct SliceFunctionals {
  cplx L1, L2;
  cplx boundary;
};
SliceFunctionals bidisk_functionals(const CoronaInstance& inst, const AntiAnalyticPoly& h,
                                    const DiskQuadrature& Q, DbarMode mode = DbarMode::closed_form,
                                    Exec exec = Exec::parallel);

}  // namespace corona
