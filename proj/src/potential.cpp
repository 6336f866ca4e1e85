#include "corona/potential.hpp"

#include <algorithm>
#include <cmath>

#include "corona/parallel.hpp"

namespace corona {

double det_derivative_check(const std::function<CMat(double)>& A, double t, double h) {
  const CMat a = A(t);
  Eigen::PartialPivLU<CMat> lu(a);
  const cplx det = lu.determinant();
  if (std::abs(det) < 1e-300) throw SingularGramError("det_derivative_check: singular A(t)", 0.0);
  const CMat ap = (A(t + h) - A(t - h)) / (2.0 * h);
  const cplx ddet_fd = (A(t + h).determinant() - A(t - h).determinant()) / (2.0 * h);
  const cplx formula = det * lu.solve(ap).trace();
  return std::abs(ddet_fd - formula);
}

double log_det_hpd(const CMat& G) {
  Eigen::LLT<CMat> llt(0.5 * (G + G.adjoint()));
  if (llt.info() != Eigen::Success) {
    throw SingularGramError("log_det_hpd: matrix not positive definite", lambda_min(G));
  }
  double s = 0.0;
  for (Eigen::Index i = 0; i < G.rows(); ++i) s += std::log(llt.matrixL()(i, i).real());
  return 2.0 * s;
}

Potentials potentials_at(const MatPoly& F, double delta_sq, std::span<const cplx> z) {
  const CMat G = gram(F, z);
  Potentials out;
  out.phi = log_det_hpd(G) - static_cast<double>(F.rows()) * std::log(delta_sq);
  Eigen::LLT<CMat> llt(G);
  out.lambda = llt.solve(CMat::Identity(G.rows(), G.cols())).trace().real();
  out.psi = out.lambda + out.phi / delta_sq;
  return out;
}

double laplacian_phi(const Frame& fr) {
  return (fr.Ginv * fr.Fp * fr.Pi * fr.Fp.adjoint()).trace().real();
}

double laplacian_lambda(const Frame& fr) {
  const CMat A = fr.Fp * fr.Phi;
  const double first = (A.adjoint() * fr.Ginv * A).trace().real();
  const double second = (fr.Ginv * fr.Fp * fr.Pi * fr.Fp.adjoint() * fr.Ginv).trace().real();
  return first - second;
}

double laplacian_psi(const Frame& fr, double delta_sq) {
  return laplacian_lambda(fr) + laplacian_phi(fr) / delta_sq;
}

double laplacian_phi(const MatPoly& F, std::span<const cplx> z, std::size_t var) {
  return laplacian_phi(frame_at(F, F.dz(var), z));
}

double potential_K(Eigen::Index r, double delta_sq) {
  return static_cast<double>(r) * std::log(1.0 / delta_sq);
}

double potential_L(Eigen::Index r, double delta_sq) { return 2.0 * potential_K(r, delta_sq) / delta_sq; }

PotentialReport verify_potentials(const CoronaInstance& inst, int grid_density, Exec exec) {
  const MatPoly& F = inst.F;
  const double d2 = inst.delta_sq;
  const auto points = polydisk_grid(F.nvars(), disk_grid(grid_density / 2 + 1, grid_density));
  std::vector<MatPoly> dF;
  for (std::size_t v = 0; v < F.nvars(); ++v) dF.push_back(F.dz(v));

  struct Sample {
    double phi, psi, gap_phi, gap_psi;
  };
  const auto samples = map_indices<Sample>(points.size(), exec, [&](std::size_t i) {
    const Potentials pot = potentials_at(F, d2, points[i]);
    Sample s{pot.phi, pot.psi, 1e300, 1e300};
    for (std::size_t v = 0; v < F.nvars(); ++v) {
      const Frame fr = frame_at(F, dF[v], points[i]);
      const double dpi = d_pi(fr).operatorNorm();
      const double pfp = (fr.Phi * fr.Fp * fr.Phi).operatorNorm();
      s.gap_phi = std::min(s.gap_phi, laplacian_phi(fr) - dpi * dpi);
      s.gap_psi = std::min(s.gap_psi, laplacian_psi(fr, d2) - pfp * pfp);
    }
    return s;
  });

  PotentialReport rep;
  rep.K = potential_K(F.rows(), d2);
  rep.L = potential_L(F.rows(), d2);
  rep.points = points.size();
  rep.hypothesis_ok = d2 <= 1.0 / kEuler;
  rep.min_phi = rep.min_psi = rep.worst_gap_phi = rep.worst_gap_psi = 1e300;
  rep.max_phi = rep.max_psi = -1e300;
  for (const auto& s : samples) {
    rep.min_phi = std::min(rep.min_phi, s.phi);
    rep.max_phi = std::max(rep.max_phi, s.phi);
    rep.min_psi = std::min(rep.min_psi, s.psi);
    rep.max_psi = std::max(rep.max_psi, s.psi);
    rep.worst_gap_phi = std::min(rep.worst_gap_phi, s.gap_phi);
    rep.worst_gap_psi = std::min(rep.worst_gap_psi, s.gap_psi);
  }
  constexpr double tol = 1e-8;
  rep.passed = rep.worst_gap_phi >= -tol && rep.worst_gap_psi >= -tol && rep.min_phi >= -tol &&
               rep.max_phi <= rep.K + tol && rep.min_psi >= -tol && rep.max_psi <= rep.L + tol;
  return rep;
}

}  // namespace corona
