#include "corona/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "corona/fourier.hpp"
#include "corona/hardy.hpp"
#include "corona/parallel.hpp"

namespace corona {

double disk_bound_with_constant(double constant, Eigen::Index r, double delta_sq) {
  if (!(delta_sq > 0.0)) throw std::invalid_argument("corona_bound: delta_sq must be positive");
  if (delta_sq > 1.0 / kEuler) throw HypothesisError("corona_bound: delta_sq > 1/e");
  const double rr = static_cast<double>(r);
  const double delta = std::sqrt(delta_sq);
  return constant / std::pow(delta, rr + 1.0) * rr * std::log(1.0 / delta_sq) + 1.0 / delta;
}

double corona_bound(double p, Eigen::Index r, double delta_sq, std::size_t n) {
  if (n < 1) throw std::invalid_argument("corona_bound: n must be positive");
  if (r < 1) throw std::invalid_argument("corona_bound: r must be positive");
  if (n == 1) {
    if (!(p >= 1.0)) throw std::invalid_argument("corona_bound: p must be >= 1");
    return disk_bound_with_constant(kCoronaC, r, delta_sq);
  }
  if (!(p > 1.0) || std::isinf(p)) throw std::invalid_argument("corona_bound: need 1 < p < inf for n >= 2");
  const double nn = static_cast<double>(n);
  const double factor = p == 2.0 ? std::sqrt(nn) : nn * std::pow(riesz_constant(p), nn);
  return disk_bound_with_constant(factor * kCoronaC, r, delta_sq);
}

namespace {

std::vector<int> limits(std::size_t n, int v) { return std::vector<int>(n, v); }

// Per-variable degree of F.
std::vector<int> degrees(const MatPoly& P) {
  std::vector<int> d(P.nvars());
  for (std::size_t v = 0; v < P.nvars(); ++v) d[v] = P.degree(v);
  return d;
}

// Flat position of alpha in the box [0, lim_0] x ... x [0, lim_{n-1}], or -1.
long box_position(const MultiIndex& alpha, const std::vector<int>& lim) {
  long pos = 0;
  for (std::size_t v = 0; v < lim.size(); ++v) {
    if (alpha[v] < 0 || alpha[v] > lim[v]) return -1;
    pos = pos * (lim[v] + 1) + alpha[v];
  }
  return pos;
}

struct System {
  std::vector<MultiIndex> unknowns;  // alpha in [0, N]^n
  std::vector<int> out_limits;       // N + deg_v F
  CMat A;                            // rows (beta, i), cols (alpha, j)
  CVec b;
  bool g_fits = true;
};

System assemble(const CoronaInstance& inst, int N, Exec exec) {
  const std::size_t n = inst.nvars();
  const Eigen::Index r = inst.r(), m = inst.m();
  System s;
  s.unknowns = box_indices(n, N);
  const std::vector<int> dF = degrees(inst.F);
  s.out_limits.resize(n);
  for (std::size_t v = 0; v < n; ++v) s.out_limits[v] = N + dF[v];
  const std::vector<MultiIndex> outputs = box_indices(s.out_limits);
  s.A = CMat::Zero(r * static_cast<Eigen::Index>(outputs.size()), m * static_cast<Eigen::Index>(s.unknowns.size()));
  // Column block alpha receives F_gamma at row block alpha + gamma.
  for_each_index(s.unknowns.size(), exec, [&](std::size_t a) {
    for (const auto& [gamma, c] : inst.F.terms()) {
      const long row = box_position(s.unknowns[a] + gamma, s.out_limits);
      s.A.block(row * r, static_cast<Eigen::Index>(a) * m, r, m) = c;
    }
  });
  s.b = CVec::Zero(s.A.rows());
  for (const auto& [beta, c] : inst.g.terms()) {
    const long row = box_position(beta, s.out_limits);
    if (row < 0) {
      s.g_fits = false;
      continue;
    }
    s.b.segment(row * r, r) = c.col(0);
  }
  return s;
}

MatPoly to_poly(const CVec& x, const std::vector<MultiIndex>& unknowns, Eigen::Index m) {
  MatPoly::Terms t;
  for (std::size_t a = 0; a < unknowns.size(); ++a) {
    t.emplace(unknowns[a], x.segment(static_cast<Eigen::Index>(a) * m, m));
  }
  return MatPoly(m, 1, unknowns.empty() ? 1 : unknowns[0].size(), std::move(t));
}

// Values of the monomials z^alpha at the torus points, one row per point.
CMat monomial_matrix(const std::vector<MultiIndex>& unknowns, std::size_t n, int side) {
  const GridField geometry{n, side, 1, {}};
  const std::size_t pts = geometry.points();
  CMat M(static_cast<Eigen::Index>(pts), static_cast<Eigen::Index>(unknowns.size()));
  for (std::size_t j = 0; j < pts; ++j) {
    const Point z = geometry.point(j);
    for (std::size_t a = 0; a < unknowns.size(); ++a) {
      cplx v = 1.0;
      for (std::size_t k = 0; k < n; ++k) v *= std::pow(z[k], unknowns[a][k]);
      M(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(a)) = v;
    }
  }
  return M;
}

// Point values f(z_j) as rows, from the stacked coefficient vector.
CMat point_values(const CMat& M, const CVec& x, Eigen::Index m) {
  const Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> C(
      x.data(), M.cols(), m);
  return M * C;
}

double mean_pow(const CMat& vals, double p) {
  std::vector<double> v(static_cast<std::size_t>(vals.rows()));
  for (Eigen::Index j = 0; j < vals.rows(); ++j) v[j] = std::pow(vals.row(j).norm(), p);
  return pairwise_sum(v) / static_cast<double>(v.size());
}

int boundary_side(int N) { return 3 * (N + 1); }

struct Solved {
  System sys;
  CVec x;
  double rank_threshold = 0.0;
};

Solved solve_min_norm(const CoronaInstance& inst, int N, Exec exec) {
  inst.validate();
  if (N < 0) throw std::invalid_argument("least_norm_solve: truncation must be >= 0");
  Solved s{assemble(inst, N, exec), {}, 0.0};
  Eigen::CompleteOrthogonalDecomposition<CMat> cod(s.sys.A);
  cod.setThreshold(1e-10);
  s.x = cod.solve(s.sys.b);
  return s;
}

void fill_common(SolveResult& res, const Solved& s, const CoronaInstance& inst, int N) {
  res.truncation = N;
  res.f = to_poly(s.x, s.sys.unknowns, inst.m());
  res.residual_l2 = s.sys.g_fits ? (s.sys.A * s.x - s.sys.b).norm() : std::numeric_limits<double>::infinity();
  res.feasible = res.residual_l2 < 1e-9;
  res.norm_2 = s.x.norm();
}

}  // namespace

int default_truncation(const CoronaInstance& inst) {
  return inst.g.max_degree() + inst.F.max_degree() + 8;
}

SolveResult least_norm_solve(const CoronaInstance& inst, int N, Exec exec) {
  if (N < inst.g.max_degree()) throw std::invalid_argument("least_norm_solve: N < deg g");
  const Solved s = solve_min_norm(inst, N, exec);
  SolveResult res;
  fill_common(res, s, inst, N);
  res.p = 2.0;
  res.norm_p = res.norm_2;
  // The row-space projection of x is the minimal-norm solution of A y = A x.
  Eigen::CompleteOrthogonalDecomposition<CMat> cod(s.sys.A);
  cod.setThreshold(1e-10);
  res.normal_residual = (s.x - cod.solve(CVec(s.sys.A * s.x))).norm();
  return res;
}

SolveResult hp_least_norm(const CoronaInstance& inst, int N, double p, int iterations, Exec exec) {
  if (!(p > 1.0) || std::isinf(p)) throw std::invalid_argument("hp_least_norm: need 1 < p < inf");
  if (N < inst.g.max_degree()) throw std::invalid_argument("hp_least_norm: N < deg g");
  const Solved s = solve_min_norm(inst, N, exec);
  const Eigen::Index m = inst.m();
  SolveResult res;
  fill_common(res, s, inst, N);
  res.p = p;
  const CMat M = monomial_matrix(s.sys.unknowns, inst.nvars(), boundary_side(N));
  auto objective = [&](const CVec& x) { return mean_pow(point_values(M, x, m), p); };

  // Null space of the constraint matrix from a full SVD.
  Eigen::BDCSVD<CMat> svd(s.sys.A, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > 1e-10 * smax) ++rank;
  const CMat Z = svd.matrixV().rightCols(s.sys.A.cols() - rank);

  CVec x = s.x;
  double J = objective(x);
  res.objective_history.push_back(J);
  res.converged = p == 2.0 || Z.cols() == 0;
  if (!res.converged) {
    // E Z: point values of each null-space direction, stacked (point, component).
    const Eigen::Index pts = M.rows();
    CMat EZ(pts * m, Z.cols());
    for_each_index(static_cast<std::size_t>(Z.cols()), exec, [&](std::size_t k) {
      const CMat v = point_values(M, Z.col(static_cast<Eigen::Index>(k)), m);
      for (Eigen::Index j = 0; j < pts; ++j) EZ.block(j * m, k, m, 1) = v.row(j).transpose();
    });
    for (int it = 1; it <= iterations; ++it) {
      res.iterations = it;
      const CMat vals = point_values(M, x, m);
      CMat WEZ = EZ;
      CVec Wf(pts * m);
      for (Eigen::Index j = 0; j < pts; ++j) {
        const double w = std::sqrt(std::pow(std::max(vals.row(j).norm(), 1e-8), p - 2.0));
        WEZ.middleRows(j * m, m) *= w;
        Wf.segment(j * m, m) = w * vals.row(j).transpose();
      }
      // Weighted least squares for the correction along the null space.
      const CVec dy = -WEZ.colPivHouseholderQr().solve(Wf);
      const CVec step = Z * dy;
      double t = 1.0;
      bool accepted = false;
      for (int ls = 0; ls < 30; ++ls, t *= 0.5) {
        const CVec trial = x + t * step;
        const double Jt = objective(trial);
        if (Jt <= J) {
          const double rel = (J - Jt) / std::max(J, 1e-300);
          x = trial;
          J = Jt;
          res.objective_history.push_back(J);
          accepted = true;
          if (rel < 1e-12) res.converged = true;
          break;
        }
      }
      if (!accepted) res.converged = true;
      if (res.converged) break;
    }
  }
  Solved out = s;
  out.x = x;
  fill_common(res, out, inst, N);
  res.norm_p = std::pow(J, 1.0 / p);
  return res;
}

F0Baseline f0_baseline(const CoronaInstance& inst, const DiskQuadrature& Q) {
  inst.validate();
  const std::size_t n = inst.nvars();
  F0Baseline out;
  std::vector<Point> interior, boundary;
  if (n == 1) {
    for (cplx z : Q.nodes) interior.push_back({z});
    for (cplx z : Q.circle_nodes) boundary.push_back({z});
  } else {
    boundary = polydisk_grid(n, Q.circle_nodes);
  }
  auto ratio = [&](const Point& z, double& f0sq, double& gsq) {
    const CVec g = inst.g.eval(z);
    const CVec f0 = phi_map(inst.F, 0.0, z) * g;
    f0sq = f0.squaredNorm();
    gsq = g.squaredNorm();
    return gsq > 0.0 ? std::sqrt(f0sq / gsq) : 0.0;
  };
  std::vector<double> f0s(boundary.size()), gs(boundary.size());
  for (std::size_t j = 0; j < boundary.size(); ++j) {
    out.sup_ratio = std::max(out.sup_ratio, ratio(boundary[j], f0s[j], gs[j]));
  }
  for (const Point& z : interior) {
    double a = 0.0, b = 0.0;
    out.sup_ratio = std::max(out.sup_ratio, ratio(z, a, b));
  }
  // Every circle weight is 1/A, so the torus mean is the plain average.
  const double count = static_cast<double>(boundary.size());
  out.l2_norm = std::sqrt(pairwise_sum(f0s) / count);
  out.g_l2 = std::sqrt(pairwise_sum(gs) / count);
  const double inv_delta = 1.0 / std::sqrt(inst.delta_sq);
  out.bound = out.g_l2 * inv_delta;
  out.passed = out.l2_norm <= out.bound + 1e-10 && out.sup_ratio <= inv_delta + 1e-10;
  return out;
}

BoundReport solve_and_report(const CoronaInstance& inst, int N, double p, Exec exec) {
  inst.validate();
  BoundReport rep;
  rep.p = p;
  rep.r = inst.r();
  rep.n = inst.nvars();
  rep.delta_sq = inst.delta_sq;
  rep.hypothesis_ok = inst.delta_sq <= 1.0 / kEuler;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  rep.bound_value = rep.hypothesis_ok ? corona_bound(p, rep.r, inst.delta_sq, rep.n) : nan;
  rep.trent_bound = rep.hypothesis_ok && rep.n == 1 && p == 2.0
                        ? disk_bound_with_constant(kTrentC, rep.r, inst.delta_sq)
                        : nan;
  const bool solvable = p > 1.0 && !std::isinf(p);
  int trunc = N > 0 ? N : default_truncation(inst);
  for (int attempt = 0; attempt < 5; ++attempt, trunc *= 2) {
    rep.solve = solvable && p != 2.0 ? hp_least_norm(inst, trunc, p, 100, exec) : least_norm_solve(inst, trunc, exec);
    if (rep.solve.feasible) break;
  }
  if (solvable) {
    const CMat M = monomial_matrix(box_indices(rep.n, inst.g.max_degree()), rep.n, boundary_side(rep.solve.truncation));
    CVec gx = CVec::Zero(M.cols() * rep.r);
    const auto gidx = box_indices(rep.n, inst.g.max_degree());
    for (std::size_t a = 0; a < gidx.size(); ++a) {
      gx.segment(static_cast<Eigen::Index>(a) * rep.r, rep.r) = inst.g.coeff(gidx[a]).col(0);
    }
    rep.g_norm = p == 2.0 ? inst.g.coeff_norm() : std::pow(mean_pow(point_values(M, gx, rep.r), p), 1.0 / p);
    rep.achieved_norm = rep.solve.norm_p;
  }
  rep.evaluated = rep.hypothesis_ok && solvable && rep.solve.feasible;
  rep.passed = rep.evaluated && rep.achieved_norm <= rep.bound_value * rep.g_norm;
  return rep;
}

}  // namespace corona
