#pragma once

#include <cstdint>
#include <vector>

#include "corona/fourier.hpp"
#include "corona/matpoly.hpp"

namespace corona {

enum class Side { analytic, anti_analytic };

// Keeps coefficients with index_var >= 0 (analytic) or index_var < 0.
FourierTensor riesz_project(const FourierTensor& x, std::size_t var, Side side);
// Coefficients with every index >= 0, i.e. the H^2 part.
FourierTensor h2_part(const FourierTensor& x);

// Splits h in (H^2)^perp as h_1 + ... + h_n with h_k = (I - P_k) P_{k-1} ... P_1 h,
// P_k the analytic mask in variable k. Throws std::invalid_argument unless
// every coefficient with all indices >= 0 is exactly zero.
std::vector<FourierTensor> decompose_hperp(const FourierTensor& h);

// Pi(z) sampled on the torus grid matching a band; applying it is pointwise
// multiplication on the grid, an orthogonal projection on coefficients.
class PiField {
 public:
  PiField(const MatPoly& F, int band, Exec exec = Exec::parallel);

  int band() const noexcept { return band_; }
  std::size_t nvars() const noexcept { return nvars_; }
  Eigen::Index dim() const noexcept { return dim_; }
  const CMat& at(std::size_t flat) const { return pi_[flat]; }

  FourierTensor apply(const FourierTensor& x, Exec exec = Exec::parallel) const;
  // |Pi x - x|_2.
  double invariance_residual(const FourierTensor& x, Exec exec = Exec::parallel) const;

 private:
  int band_;
  std::size_t nvars_;
  Eigen::Index dim_;
  std::vector<CMat> pi_;
};

struct ProjectionResult {
  FourierTensor value;
  int iterations = 0;
  bool converged = false;
  double last_change = 0.0;
};

// Alternating projections x <- Pi M_var x, stopped when successive iterates
// differ by less than tol; or conjugate gradients on I - Pi M_var Pi (same
// limit, far fewer sweeps when the subspaces meet at a small angle), stopped
// when the residual drops below max(1e-2 tol, 1e-13) max(1, |xi|).
enum class ProjectionMethod { alternating, conjugate_gradient };

// P_{Q_var} xi for Q_j = H^2_j cap Pi L^2. Throws if xi is not Pi-invariant
// to 1e-8.
ProjectionResult project_Qj(const FourierTensor& xi, const PiField& Pi, std::size_t var,
                            int max_iter = 500, double tol = 1e-6, Exec exec = Exec::parallel,
                            ProjectionMethod method = ProjectionMethod::conjugate_gradient);
ProjectionResult project_Qj(const FourierTensor& xi, const MatPoly& F, std::size_t var,
                            int max_iter = 500, double tol = 1e-6, Exec exec = Exec::parallel,
                            ProjectionMethod method = ProjectionMethod::conjugate_gradient);

// 1/sin(pi/q).
double riesz_constant(double q);

// (mean over an oversampled torus grid of |x|^q)^{1/q}; q = inf gives the max.
// With oversample 2 the grid has 4 band + 2 points per variable, which makes
// the q = 2 and q = 4 norms exact.
double lq_norm(const FourierTensor& x, double q, int oversample = 2);

struct KDecomposition {
  std::vector<FourierTensor> parts;  // xi_1 .. xi_n
  FourierTensor remainder;           // xi^n = P_{Q_n} ... P_{Q_1} xi
  double xi_norm_sq = 0.0;
  double parts_norm_sq = 0.0;        // sum |xi_j|^2
  double pythagoras_gap = 0.0;       // |xi_norm_sq - parts_norm_sq|
  double reconstruction_error = 0.0; // |sum xi_j - xi|
  bool converged = true;             // every projection converged
  bool remainder_small = true;       // |xi^n| < n tol
  int iterations = 0;
  double q = 2.0;
  double xi_q_norm = 0.0;
  std::vector<double> part_q_norms;
  bool q_bound_ok = true;            // |xi_j|_q <= C(q)^j |xi|_q + 1e-4
};

// xi_1 = P_{K_1} xi, xi^1 = P_{Q_1} xi, then the same split of xi^1 in the
// next variable, and so on.
KDecomposition decompose_K(const FourierTensor& xi, const PiField& Pi, double q = 2.0,
                           int max_iter = 500, double tol = 1e-6, Exec exec = Exec::parallel,
                           ProjectionMethod method = ProjectionMethod::conjugate_gradient);

struct OuterFunction {
  std::vector<cplx> boundary_samples;  // at exp(2 pi i j / N)
  std::vector<cplx> analytic_coeffs;   // DFT of the samples, index 0..N-1
  double log_mean = 0.0;               // mean of log modulus

  cplx value_at_zero() const { return std::exp(cplx(log_mean)); }
  // Evaluates sum_{k < N/2} c_k z^k inside the disk.
  cplx eval(cplx z) const;
};

// exp(u + i u~) with u = log modulus and u~ its harmonic conjugate (u~(0) = 0),
// via the one-sided Fourier multiplier. Throws if a sample is <= 0.
OuterFunction outer_function(const std::vector<double>& modulus);
// Boundary samples of the outer function with modulus^s.
std::vector<cplx> outer_power(const std::vector<double>& modulus, double s);

struct MultiplierReport {
  CMat g_tilde, xi_tilde;       // N x dim samples
  double p = 2.0, q = 2.0;
  double g_p = 0.0;             // |g|_p
  double xi_q = 0.0;            // |xi|_q
  double g_tilde_2 = 0.0;
  double xi_tilde_2 = 0.0;
  double identity_residual = 0.0;  // | |g~|_2 - |g|_p^{p/2} | (or the xi form for p > 2)
  double holder_slack = 0.0;       // bound minus the bounded norm, >= 0 when it holds
  double pairing_residual = 0.0;   // |mean <g~, xi~> - mean <g, xi>|
};

// Outer-multiplier transforms of boundary samples (rows = sample points):
//   1 <= p < 2:  g~ = g_out^{p/2-1} g,        xi~ = conj(g_out)^{1-p/2} xi
//   2 < p < inf: xi~ = xi_out^{q/2-1} xi,     g~ = conj(xi_out)^{1-q/2} g
//   p = inf:     xi~ = xi_out^{-1/2} xi,      g~ = conj(xi_out)^{1/2} g
// with g_out the outer function of |g| and 1/p + 1/q = 1.
MultiplierReport hp_multiplier_pair(const CMat& g, const CMat& xi, double p);

// (mean |row|^p)^{1/p} of N x dim samples; p = inf gives the max.
double sample_lp_norm(const CMat& samples, double p);

struct RieszEstimate {
  double value = 0.0;   // best ratio |P+ x|_p / |x|_p found
  double bound = 0.0;   // 1/sin(pi/p)
  int starts = 0;
};

// Lower estimate of the L^p norm of the Riesz projection on trigonometric
// polynomials of degree <= band: random Gaussian trials and a deterministic
// kernel family, each refined by gradient ascent on log(|P+ x|_p/|x|_p).
RieszEstimate riesz_norm_empirical(double p, int band, int trials, std::uint64_t seed,
                                   int ascent_steps = 300);

}  // namespace corona
