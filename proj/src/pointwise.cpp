#include "corona/pointwise.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "corona/parallel.hpp"

namespace corona {

void CoronaInstance::validate() const {
  if (F.nvars() == 0) throw std::invalid_argument("instance: F is empty");
  if (g.nvars() != F.nvars()) throw std::invalid_argument("instance: g and F differ in nvars");
  if (g.rows() != F.rows()) throw std::invalid_argument("instance: g must have as many rows as F");
  if (g.cols() != 1) throw std::invalid_argument("instance: g must be a column");
  if (!(delta_sq > 0.0 && delta_sq <= 1.0)) throw std::invalid_argument("instance: delta_sq outside (0, 1]");
  if (!(p >= 1.0)) throw std::invalid_argument("instance: p must be >= 1 or inf");
}

CMat gram(const MatPoly& F, std::span<const cplx> z) {
  const CMat v = F.eval(z);
  CMat G = v * v.adjoint();
  return 0.5 * (G + G.adjoint());
}

double lambda_min(const CMat& hermitian) {
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitian, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double lambda_max(const CMat& hermitian) {
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitian, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(es.eigenvalues().size() - 1);
}

std::vector<cplx> disk_grid(int radial, int angular, double rmax) {
  if (radial < 2 || angular < 1) throw std::invalid_argument("disk_grid: need radial >= 2, angular >= 1");
  std::vector<cplx> out;
  out.push_back(0.0);
  for (int i = 1; i < radial; ++i) {
    const double rho = rmax * i / (radial - 1);
    for (int k = 0; k < angular; ++k) out.push_back(std::polar(rho, 2.0 * kPi * k / angular));
  }
  return out;
}

std::vector<Point> polydisk_grid(std::size_t nvars, const std::vector<cplx>& axis) {
  std::vector<Point> out;
  std::size_t total = 1;
  for (std::size_t v = 0; v < nvars; ++v) total *= axis.size();
  out.reserve(total);
  std::vector<std::size_t> idx(nvars, 0);
  for (std::size_t t = 0; t < total; ++t) {
    Point z(nvars);
    for (std::size_t v = 0; v < nvars; ++v) z[v] = axis[idx[v]];
    out.push_back(std::move(z));
    for (std::size_t v = nvars; v-- > 0;) {
      if (++idx[v] < axis.size()) break;
      idx[v] = 0;
    }
  }
  return out;
}

namespace {

// Coordinate pattern search over the closed polydisk; minimizes f.
std::pair<Point, double> polish(const std::function<double(const Point&)>& f, Point z, double step) {
  double best = f(z);
  const cplx dirs[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  int evals = 0;
  while (step > 1e-10 && evals < 4000) {
    bool improved = false;
    for (std::size_t v = 0; v < z.size(); ++v) {
      for (const cplx d : dirs) {
        Point t = z;
        t[v] += step * d;
        if (std::abs(t[v]) > 1.0) t[v] /= std::abs(t[v]);
        const double val = f(t);
        ++evals;
        if (val < best) {
          best = val;
          z = std::move(t);
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return {z, best};
}

struct Extremes {
  double lo, hi;
  Point argmin, argmax;
};

Extremes sweep(const MatPoly& F, int density, Exec exec) {
  const auto axis = disk_grid(density / 2 + 1, density);
  const auto points = polydisk_grid(F.nvars(), axis);
  struct Pair {
    double lo = 0.0, hi = 0.0;
  };
  const auto vals = map_indices<Pair>(points.size(), exec, [&](std::size_t i) {
    Eigen::SelfAdjointEigenSolver<CMat> es(gram(F, points[i]), Eigen::EigenvaluesOnly);
    return Pair{es.eigenvalues()(0), es.eigenvalues()(es.eigenvalues().size() - 1)};
  });
  std::size_t imin = 0, imax = 0;
  for (std::size_t i = 1; i < vals.size(); ++i) {
    if (vals[i].lo < vals[imin].lo) imin = i;
    if (vals[i].hi > vals[imax].hi) imax = i;
  }
  const double step = 1.0 / density;
  auto [zmin, lo] = polish([&](const Point& z) { return lambda_min(gram(F, z)); }, points[imin], step);
  auto [zmax, neg_hi] =
      polish([&](const Point& z) { return -lambda_max(gram(F, z)); }, points[imax], step);
  return {lo, -neg_hi, std::move(zmin), std::move(zmax)};
}

}  // namespace

DeltaRange delta_range(const MatPoly& F, int grid_density, Exec exec) {
  if (grid_density < 8) throw std::invalid_argument("delta_range: grid_density must be >= 8");
  constexpr double kMaxPoints = 4e5;
  DeltaRange out;
  bool have_prev = false;
  for (int d = grid_density;; d *= 2) {
    const Extremes e = sweep(F, d, exec);
    if (e.lo < 1e-12) {
      throw SingularGramError("corona condition fails: FF* numerically singular", e.lo);
    }
    const bool stable = have_prev && std::abs(e.lo - out.delta_sq) <= 1e-4 * out.delta_sq &&
                        std::abs(e.hi - out.sup_sq) <= 1e-4 * out.sup_sq;
    out.delta_sq = e.lo;
    out.sup_sq = e.hi;
    out.argmin = e.argmin;
    out.argmax = e.argmax;
    out.final_density = d;
    if (stable) {
      out.converged = true;
      break;
    }
    have_prev = true;
    const double next_points = std::pow((d + 1.0) * (2.0 * d), static_cast<double>(F.nvars()));
    if (next_points > kMaxPoints) break;
  }
  return out;
}

Frame frame_at(const MatPoly& F, const MatPoly& Fp_poly, std::span<const cplx> z,
               double delta_sq_check) {
  Frame fr;
  fr.F = F.eval(z);
  fr.Fp = Fp_poly.eval(z);
  fr.G = fr.F * fr.F.adjoint();
  fr.G = 0.5 * (fr.G + fr.G.adjoint());
  fr.lambda_min = lambda_min(fr.G);
  if (fr.lambda_min < std::max(0.5 * delta_sq_check, 1e-14)) {
    throw SingularGramError("FF* below the guard at the evaluation point", fr.lambda_min);
  }
  Eigen::LLT<CMat> llt(fr.G);
  fr.Ginv = llt.solve(CMat::Identity(fr.G.rows(), fr.G.cols()));
  fr.Ginv = 0.5 * (fr.Ginv + fr.Ginv.adjoint());
  fr.Phi = fr.F.adjoint() * fr.Ginv;
  fr.Pi = CMat::Identity(F.cols(), F.cols()) - fr.Phi * fr.F;
  fr.Pi = 0.5 * (fr.Pi + fr.Pi.adjoint());
  return fr;
}

namespace {

Frame frame_no_derivative(const MatPoly& F, double delta_sq_check, std::span<const cplx> z) {
  return frame_at(F, MatPoly::zero(F.rows(), F.cols(), F.nvars()), z, delta_sq_check);
}

}  // namespace

CMat phi_map(const MatPoly& F, double delta_sq_check, std::span<const cplx> z) {
  return frame_no_derivative(F, delta_sq_check, z).Phi;
}

CMat pi_map(const MatPoly& F, double delta_sq_check, std::span<const cplx> z) {
  return frame_no_derivative(F, delta_sq_check, z).Pi;
}

CMat d_pi(const Frame& fr) { return -fr.Phi * fr.Fp * fr.Pi; }

CMat dbar_phi(const Frame& fr) { return fr.Pi * fr.Fp.adjoint() * fr.Ginv; }

CMat d_dbar_phi(const Frame& fr) {
  const CMat dP = d_pi(fr);
  return dP * dbar_phi(fr) + dP.adjoint() * fr.Phi * fr.Fp * fr.Phi;
}

double IdentityResiduals::max() const {
  return std::max({d_pi, dbar_phi, d_dbar_phi, pi_d_pi, d_pi_pi, dbar_pi_pi, pi_dbar_pi});
}

void IdentityResiduals::merge_max(const IdentityResiduals& o) {
  d_pi = std::max(d_pi, o.d_pi);
  dbar_phi = std::max(dbar_phi, o.dbar_phi);
  d_dbar_phi = std::max(d_dbar_phi, o.d_dbar_phi);
  pi_d_pi = std::max(pi_d_pi, o.pi_d_pi);
  d_pi_pi = std::max(d_pi_pi, o.d_pi_pi);
  dbar_pi_pi = std::max(dbar_pi_pi, o.dbar_pi_pi);
  pi_dbar_pi = std::max(pi_dbar_pi, o.pi_dbar_pi);
  h_step = std::max(h_step, o.h_step);
  points += o.points;
}

namespace {

IdentityResiduals identities_at(const MatPoly& F, const MatPoly& Fp, std::span<const cplx> z,
                                double h, std::size_t var) {
  // Pi, Phi and closed-form dbar Phi at +-h, +-2h along x and y; the
  // fourth-order central stencil keeps truncation error at O(h^4).
  const cplx dirs[2] = {{1.0, 0.0}, {0.0, 1.0}};
  const double steps[4] = {2.0 * h, h, -h, -2.0 * h};
  CMat Pi_s[8], Phi_s[8], dbPhi_s[8];
  Point zp(z.begin(), z.end());
  for (int d = 0; d < 2; ++d) {
    for (int k = 0; k < 4; ++k) {
      zp[var] = z[var] + steps[k] * dirs[d];
      const Frame f = frame_at(F, Fp, zp);
      Pi_s[4 * d + k] = f.Pi;
      Phi_s[4 * d + k] = f.Phi;
      dbPhi_s[4 * d + k] = dbar_phi(f);
    }
  }
  const cplx i(0.0, 1.0);
  // Differences first: exact for constant data, less cancellation otherwise.
  auto stencil = [&](const CMat* v) -> CMat { return (8.0 * (v[1] - v[2]) - (v[0] - v[3])) / (12.0 * h); };
  auto wirt = [&](const CMat* v, bool conj) -> CMat {
    const CMat dx = stencil(v);
    const CMat dy = stencil(v + 4);
    return conj ? CMat(0.5 * (dx + i * dy)) : CMat(0.5 * (dx - i * dy));
  };
  const Frame fr = frame_at(F, Fp, z);
  const CMat dPi_fd = wirt(Pi_s, false);
  const CMat dbPi_fd = wirt(Pi_s, true);
  const CMat dbPhi_fd = wirt(Phi_s, true);
  const CMat ddbPhi_fd = wirt(dbPhi_s, false);

  IdentityResiduals r;
  r.h_step = h;
  r.points = 1;
  r.d_pi = (dPi_fd - d_pi(fr)).norm();
  r.dbar_phi = (dbPhi_fd - dbar_phi(fr)).norm();
  r.d_dbar_phi = (ddbPhi_fd - d_dbar_phi(fr)).norm();
  r.pi_d_pi = (fr.Pi * dPi_fd).norm();
  r.d_pi_pi = (dPi_fd * fr.Pi - dPi_fd).norm();
  r.dbar_pi_pi = (dbPi_fd * fr.Pi).norm();
  r.pi_dbar_pi = (fr.Pi * dbPi_fd - dbPi_fd).norm();
  return r;
}

void check_step_and_point(std::span<const cplx> z, double h, std::size_t var, std::size_t nvars) {
  if (h < 1e-9) throw std::invalid_argument("check_identities: step underflow (h < 1e-9)");
  if (var >= nvars) throw std::out_of_range("check_identities: variable index out of range");
  if (z.size() != nvars) throw std::invalid_argument("check_identities: point dimension mismatch");
  for (const cplx c : z) {
    if (std::abs(c) > 1.0 - 2.0 * h + 1e-15) {
      throw std::invalid_argument("check_identities: point too close to the boundary");
    }
  }
}

}  // namespace

IdentityResiduals check_identities(const MatPoly& F, std::span<const cplx> z, double h_step,
                                   std::size_t var) {
  check_step_and_point(z, h_step, var, F.nvars());
  return identities_at(F, F.dz(var), z, h_step, var);
}

IdentityResiduals check_identities_grid(const MatPoly& F, const std::vector<Point>& points,
                                        double h_step, Exec exec) {
  IdentityResiduals total;
  total.h_step = h_step;
  for (std::size_t var = 0; var < F.nvars(); ++var) {
    const MatPoly Fp = F.dz(var);
    for (const auto& z : points) check_step_and_point(z, h_step, var, F.nvars());
    const auto per_point = map_indices<IdentityResiduals>(
        points.size(), exec, [&](std::size_t i) { return identities_at(F, Fp, points[i], h_step, var); });
    for (const auto& r : per_point) total.merge_max(r);
  }
  total.points = points.size();
  return total;
}

}  // namespace corona
