#pragma once

#include <span>
#include <vector>

#include "corona/matpoly.hpp"
#include "corona/types.hpp"

namespace corona {

// Truncated Fourier coefficients of a C^dim-valued function on the torus T^n,
// indices -band..band in each variable. Layout: component-major, then the
// multi-index flattened with variable 0 slowest.
class FourierTensor {
 public:
  FourierTensor() = default;
  FourierTensor(std::size_t nvars, int band, Eigen::Index dim);

  std::size_t nvars() const noexcept { return nvars_; }
  int band() const noexcept { return band_; }
  Eigen::Index dim() const noexcept { return dim_; }
  int side() const noexcept { return 2 * band_ + 1; }
  std::size_t points() const noexcept { return points_; }

  std::size_t flat(std::span<const int> k) const;
  std::vector<int> index(std::size_t flat) const;

  cplx& operator()(std::size_t flat, Eigen::Index comp) { return data_[comp * points_ + flat]; }
  cplx operator()(std::size_t flat, Eigen::Index comp) const { return data_[comp * points_ + flat]; }
  // Zero outside the band.
  cplx coeff(std::span<const int> k, Eigen::Index comp) const;
  void set(std::span<const int> k, Eigen::Index comp, cplx value);

  std::vector<cplx>& data() noexcept { return data_; }
  const std::vector<cplx>& data() const noexcept { return data_; }

  double squared_norm() const;
  double norm() const;

  FourierTensor& operator+=(const FourierTensor& o);
  FourierTensor& operator-=(const FourierTensor& o);
  FourierTensor& operator*=(cplx s);
  friend FourierTensor operator+(FourierTensor a, const FourierTensor& b) { return a += b; }
  friend FourierTensor operator-(FourierTensor a, const FourierTensor& b) { return a -= b; }
  friend FourierTensor operator*(cplx s, FourierTensor a) { return a *= s; }

  // Coefficients of sum_alpha c_alpha z^alpha (index +alpha) or of
  // sum_alpha c_alpha conj(z)^alpha (index -alpha).
  static FourierTensor from_analytic(const MatPoly& column, int band);
  static FourierTensor from_anti_analytic(const AntiAnalyticPoly& h, int band);

 private:
  void check_same_shape(const FourierTensor& o) const;

  std::size_t nvars_ = 0;
  int band_ = 0;
  Eigen::Index dim_ = 0;
  std::size_t points_ = 0;
  std::vector<cplx> data_;
};

// <a, b> = sum a conj(b) over all coefficients; equals the torus L2 pairing.
cplx inner(const FourierTensor& a, const FourierTensor& b);

// Samples on the uniform torus grid of `side` points per variable, same
// layout as FourierTensor. Point j has coordinates exp(2 pi i j_v / side).
struct GridField {
  std::size_t nvars = 0;
  int side = 0;
  Eigen::Index dim = 0;
  std::vector<cplx> data;

  std::size_t points() const;
  Point point(std::size_t flat) const;
  CVec value(std::size_t flat) const;
  void set_value(std::size_t flat, const CVec& v);
};

// Evaluates x on a grid with `side` points per variable (default 2 band + 1,
// where synthesis and analysis are inverse bijections; larger sides
// oversample).
GridField synthesize(const FourierTensor& x, int side = 0);
// Grid average against exp(-i k theta) for |k_v| <= band; requires
// side >= 2 band + 1.
FourierTensor analyze(const GridField& f, int band);

// Unnormalized 1-D DFTs: forward uses exp(-2 pi i jk/N), backward exp(+...).
std::vector<cplx> dft_forward(const std::vector<cplx>& in);
std::vector<cplx> dft_backward(const std::vector<cplx>& in);

}  // namespace corona
