#include "corona/quad.hpp"

#include <cmath>

#include "corona/parallel.hpp"
#include "corona/potential.hpp"

namespace corona {

namespace {

// Gauss-Legendre on [-1, 1] by Golub-Welsch.
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    J(k, k - 1) = J(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  std::vector<double> x(n), w(n);
  for (int i = 0; i < n; ++i) {
    x[i] = es.eigenvalues()(i);
    w[i] = 2.0 * es.eigenvectors()(0, i) * es.eigenvectors()(0, i);
  }
  return {x, w};
}

// Discretization of log(1/x) dx on (0, 1): x = exp(-s), weight s exp(-s) ds,
// composite Gauss-Legendre on geometrically graded panels of [0, 40].
std::pair<std::vector<double>, std::vector<double>> log_weight_base_rule() {
  constexpr int kPerPanel = 40;
  constexpr double kSmax = 40.0;
  std::vector<double> edges{0.0};
  for (int k = 16; k >= 0; --k) edges.push_back(kSmax * std::ldexp(1.0, -k));
  const auto [gx, gw] = gauss_legendre(kPerPanel);
  std::vector<double> x, w;
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    const double a = edges[p], b = edges[p + 1];
    for (int i = 0; i < kPerPanel; ++i) {
      const double s = 0.5 * (a + b) + 0.5 * (b - a) * gx[i];
      x.push_back(std::exp(-s));
      w.push_back(0.5 * (b - a) * gw[i] * s * std::exp(-s));
    }
  }
  return {x, w};
}

}  // namespace

std::pair<std::vector<double>, std::vector<double>> gauss_log_rule(int n) {
  if (n < 1) throw std::invalid_argument("gauss_log_rule: n must be positive");
  const auto [bx, bw] = log_weight_base_rule();
  const std::size_t M = bx.size();
  // Discretized Stieltjes procedure with orthonormal recurrences.
  double mass = 0.0;
  for (double v : bw) mass += v;
  std::vector<double> q_prev(M, 0.0), q(M, 1.0 / std::sqrt(mass)), next(M);
  std::vector<double> alpha(n), beta(n, 0.0);
  double b_prev = 0.0;
  for (int k = 0; k < n; ++k) {
    double a = 0.0;
    for (std::size_t i = 0; i < M; ++i) a += bw[i] * bx[i] * q[i] * q[i];
    alpha[k] = a;
    if (k + 1 == n) break;
    double norm2 = 0.0;
    for (std::size_t i = 0; i < M; ++i) {
      next[i] = (bx[i] - a) * q[i] - b_prev * q_prev[i];
      norm2 += bw[i] * next[i] * next[i];
    }
    const double b = std::sqrt(norm2);
    beta[k + 1] = b;
    for (std::size_t i = 0; i < M; ++i) {
      q_prev[i] = q[i];
      q[i] = next[i] / b;
    }
    b_prev = b;
  }
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) J(k, k) = alpha[k];
  for (int k = 1; k < n; ++k) J(k, k - 1) = J(k - 1, k) = beta[k];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  std::vector<double> x(n), w(n);
  for (int i = 0; i < n; ++i) {
    x[i] = es.eigenvalues()(i);
    // Exact total mass of log(1/x) dx on (0, 1) is 1.
    w[i] = es.eigenvectors()(0, i) * es.eigenvectors()(0, i);
  }
  return {x, w};
}

DiskQuadrature make_quadrature(int radial_count, int angular_count) {
  if (radial_count < 16 || angular_count < 32) {
    throw std::invalid_argument("make_quadrature: need radial_count >= 16, angular_count >= 32");
  }
  DiskQuadrature Q;
  Q.radial_count = radial_count;
  Q.angular_count = angular_count;
  const auto [x, w] = gauss_log_rule(radial_count);
  for (int j = 0; j < radial_count; ++j) {
    Q.radii.push_back(std::sqrt(x[j]));
    Q.radial_weights.push_back(w[j]);
  }
  for (int k = 0; k < angular_count; ++k) {
    const cplx u = std::polar(1.0, 2.0 * kPi * k / angular_count);
    Q.circle_nodes.push_back(u);
    Q.circle_weights.push_back(1.0 / angular_count);
  }
  for (int j = 0; j < radial_count; ++j) {
    for (int k = 0; k < angular_count; ++k) {
      Q.nodes.push_back(Q.radii[j] * Q.circle_nodes[k]);
      Q.weights.push_back(Q.radial_weights[j] / angular_count);
    }
  }
  return Q;
}

double integrate_disk(const DiskQuadrature& Q, const std::function<double(cplx)>& f, Exec exec) {
  const auto vals = map_indices<double>(Q.nodes.size(), exec,
                                        [&](std::size_t i) { return Q.weights[i] * f(Q.nodes[i]); });
  return pairwise_sum(vals);
}

cplx integrate_disk_c(const DiskQuadrature& Q, const std::function<cplx(cplx)>& f, Exec exec) {
  const auto vals = map_indices<cplx>(Q.nodes.size(), exec,
                                      [&](std::size_t i) { return Q.weights[i] * f(Q.nodes[i]); });
  return pairwise_sum(vals);
}

double integrate_circle(const DiskQuadrature& Q, const std::function<double(cplx)>& f) {
  std::vector<double> vals(Q.circle_nodes.size());
  for (std::size_t k = 0; k < vals.size(); ++k) vals[k] = Q.circle_weights[k] * f(Q.circle_nodes[k]);
  return pairwise_sum(vals);
}

cplx integrate_circle_c(const DiskQuadrature& Q, const std::function<cplx(cplx)>& f) {
  std::vector<cplx> vals(Q.circle_nodes.size());
  for (std::size_t k = 0; k < vals.size(); ++k) vals[k] = Q.circle_weights[k] * f(Q.circle_nodes[k]);
  return pairwise_sum(vals);
}

double green_residual(const std::function<double(cplx)>& u, const std::function<double(cplx)>& lap_u,
                      const DiskQuadrature& Q) {
  return std::abs(integrate_circle(Q, u) - u(0.0) - integrate_disk(Q, lap_u, Exec::serial));
}

namespace {

void require_one_variable(std::size_t nvars, const char* what) {
  if (nvars != 1) throw std::invalid_argument(std::string(what) + ": one-variable data required");
}

double column_norm_sq(const MatPoly& f, cplx z) {
  const Point p{z};
  return f.eval(p).squaredNorm();
}

}  // namespace

double littlewood_paley_residual(const MatPoly& g, const DiskQuadrature& Q) {
  require_one_variable(g.nvars(), "littlewood_paley_residual");
  const MatPoly gp = g.dz(0);
  const double area = integrate_disk(Q, [&](cplx z) { return column_norm_sq(gp, z); }, Exec::serial);
  const double boundary = integrate_circle(Q, [&](cplx z) { return column_norm_sq(g, z); });
  return std::abs(area - (boundary - column_norm_sq(g, 0.0)));
}

EmbeddingReport carleson_ratio(const std::function<double(cplx)>& lap_phi, double phi_sup,
                               const MatPoly& f, const DiskQuadrature& Q) {
  require_one_variable(f.nvars(), "carleson_ratio");
  if (!(phi_sup > 0.0)) throw std::invalid_argument("carleson_ratio: sup of phi must be positive");
  const double f2 = f.coeff_norm() * f.coeff_norm();
  if (f2 == 0.0) throw std::invalid_argument("carleson_ratio: f is zero");
  EmbeddingReport rep;
  rep.lhs = integrate_disk(Q, [&](cplx z) { return lap_phi(z) * column_norm_sq(f, z); }, Exec::serial);
  rep.ratio = rep.lhs / (phi_sup * f2);
  rep.bound = kEuler;
  rep.rhs = kEuler * phi_sup * f2;
  rep.passed = rep.ratio <= kEuler + 1e-6;
  return rep;
}

namespace {

// dbar Pi at z: either the closed form (d Pi)* or central differences.
CMat dbar_pi_at(const MatPoly& F, const Frame& fr, cplx z, DbarMode mode) {
  if (mode == DbarMode::closed_form) return d_pi(fr).adjoint();
  constexpr double h = 1e-5;
  auto P = [&](cplx w) {
    const Point p{w};
    return pi_map(F, 0.0, p);
  };
  const CMat dx = (P(z + h) - P(z - h)) / (2.0 * h);
  const CMat dy = (P(z + cplx(0, h)) - P(z - cplx(0, h))) / (2.0 * h);
  return 0.5 * (dx + cplx(0, 1) * dy);
}

void require_vanishing(const AntiAnalyticPoly& h) {
  if (!h.vanishes_at_origin(1e-14)) throw std::invalid_argument("h(0) must vanish");
}

double xi_norm_sq(const MatPoly& F, const AntiAnalyticPoly& h, const DiskQuadrature& Q) {
  return integrate_circle(Q, [&](cplx z) {
    const Point p{z};
    return (pi_map(F, 0.0, p) * h.eval(p)).squaredNorm();
  });
}

struct Split {
  cplx I, II, III;
  Split& operator+=(const Split& o) {
    I += o.I;
    II += o.II;
    III += o.III;
    return *this;
  }
  Split operator+(const Split& o) const {
    Split s = *this;
    s += o;
    return s;
  }
};

}  // namespace

std::pair<EmbeddingReport, EmbeddingReport> xi_embedding_check(const CoronaInstance& inst,
                                                               const AntiAnalyticPoly& h,
                                                               const DiskQuadrature& Q, DbarMode mode,
                                                               Exec exec) {
  require_one_variable(inst.nvars(), "xi_embedding_check");
  require_vanishing(h);
  const MatPoly& F = inst.F;
  const MatPoly Fp = F.dz(0);
  struct Pair {
    double a = 0.0, b = 0.0;
    Pair& operator+=(const Pair& o) {
      a += o.a;
      b += o.b;
      return *this;
    }
    Pair operator+(const Pair& o) const { return {a + o.a, b + o.b}; }
  };
  const auto vals = map_indices<Pair>(Q.nodes.size(), exec, [&](std::size_t i) {
    const cplx z = Q.nodes[i];
    const Point p{z};
    const Frame fr = frame_at(F, Fp, p);
    const CVec hz = h.eval(p);
    const CVec xi = fr.Pi * hz;
    const CVec dbxi = dbar_pi_at(F, fr, z, mode) * hz + fr.Pi * h.dbar(p, 0);
    return Pair{Q.weights[i] * laplacian_phi(fr) * xi.squaredNorm(), Q.weights[i] * dbxi.squaredNorm()};
  });
  const Pair total = pairwise_sum(vals);
  const double xi2 = xi_norm_sq(F, h, Q);
  const double K = static_cast<double>(inst.r()) * std::log(1.0 / inst.delta_sq);
  const double eKeK = kEuler * K * std::exp(K);

  EmbeddingReport first, second;
  first.lhs = total.a;
  first.bound = eKeK;
  first.rhs = eKeK * xi2;
  second.lhs = total.b;
  second.bound = 1.0 + eKeK;
  second.rhs = (1.0 + eKeK) * xi2;
  for (EmbeddingReport* r : {&first, &second}) {
    r->ratio = xi2 > 0.0 ? r->lhs / xi2 : 0.0;
    r->passed = r->ratio <= r->bound + 1e-6;
  }
  return {first, second};
}

FunctionalSplit functional_L(const MatPoly& F, const MatPoly& g, const AntiAnalyticPoly& h,
                             const DiskQuadrature& Q, DbarMode mode, Exec exec) {
  require_one_variable(F.nvars(), "functional_L");
  require_vanishing(h);
  const MatPoly Fp = F.dz(0);
  const MatPoly gp = g.dz(0);
  const auto vals = map_indices<Split>(Q.nodes.size(), exec, [&](std::size_t i) {
    const cplx z = Q.nodes[i];
    const Point p{z};
    const Frame fr = frame_at(F, Fp, p);
    const CVec gz = g.eval(p);
    const CVec gpz = gp.eval(p);
    const CVec hz = h.eval(p);
    const CVec xi = fr.Pi * hz;
    const CVec dbxi = dbar_pi_at(F, fr, z, mode) * hz + fr.Pi * h.dbar(p, 0);
    const CMat dbPhi = dbar_phi(fr);
    const CVec a = fr.Phi * fr.Fp * fr.Phi * gz;
    const CVec b = d_pi(fr) * xi;
    const double w = Q.weights[i];
    // <a, b> = sum a_i conj(b_i) = b.dot(a) in Eigen.
    return Split{w * b.dot(a), w * xi.dot(CVec(dbPhi * gpz)), w * dbxi.dot(CVec(dbPhi * gz))};
  });
  const Split s = pairwise_sum(vals);
  FunctionalSplit out;
  out.I = s.I;
  out.II = s.II;
  out.III = s.III;
  out.boundary = integrate_circle_c(Q, [&](cplx z) {
    const Point p{z};
    return h.eval(p).dot(CVec(phi_map(F, 0.0, p) * g.eval(p)));
  });
  out.xi_norm = std::sqrt(xi_norm_sq(F, h, Q));
  return out;
}

FunctionalSplit functional_L(const CoronaInstance& inst, const AntiAnalyticPoly& h,
                             const DiskQuadrature& Q, DbarMode mode, Exec exec) {
  return functional_L(inst.F, inst.g, h, Q, mode, exec);
}

double functional_bound(Eigen::Index r, double delta_sq) {
  const double delta = std::sqrt(delta_sq);
  return kCoronaC / std::pow(delta, static_cast<double>(r + 1)) *
         (static_cast<double>(r) * std::log(1.0 / delta_sq));
}

SliceFunctionals bidisk_functionals(const CoronaInstance& inst, const AntiAnalyticPoly& h,
                                    const DiskQuadrature& Q, DbarMode mode, Exec exec) {
  if (inst.nvars() != 2) throw std::invalid_argument("bidisk_functionals: two variables required");
  const std::size_t A = Q.circle_nodes.size();
  // Slice s in variable var: freeze the other coordinate at circle node s.
  auto slice_value = [&](std::size_t var, std::size_t s) {
    Point z(2, 0.0);
    z[1 - var] = Q.circle_nodes[s];
    const MatPoly F1 = inst.F.restrict_to(var, z);
    const MatPoly g1 = inst.g.restrict_to(var, z);
    const AntiAnalyticPoly h1 = h.restrict_to(var, z);
    return Q.circle_weights[s] * functional_L(F1, g1, h1, Q, mode, Exec::serial).area();
  };
  SliceFunctionals out;
  out.L1 = pairwise_sum(map_indices<cplx>(A, exec, [&](std::size_t s) { return slice_value(0, s); }));
  out.L2 = pairwise_sum(map_indices<cplx>(A, exec, [&](std::size_t s) { return slice_value(1, s); }));
  const auto rows = map_indices<cplx>(A, exec, [&](std::size_t a) {
    std::vector<cplx> row(A);
    for (std::size_t b = 0; b < A; ++b) {
      const Point p{Q.circle_nodes[a], Q.circle_nodes[b]};
      row[b] = Q.circle_weights[a] * Q.circle_weights[b] *
               h.eval(p).dot(CVec(phi_map(inst.F, 0.0, p) * inst.g.eval(p)));
    }
    return pairwise_sum(row);
  });
  out.boundary = pairwise_sum(rows);
  return out;
}

}  // namespace corona
