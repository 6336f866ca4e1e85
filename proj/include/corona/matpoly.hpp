#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "corona/types.hpp"

namespace corona {

// Exponent vector of a monomial z_1^a_1 ... z_n^a_n.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> exponents);
  MultiIndex(std::initializer_list<int> exponents)
      : MultiIndex(std::vector<int>(exponents)) {}

  std::size_t size() const noexcept { return exps_.size(); }
  int operator[](std::size_t i) const { return exps_[i]; }
  const std::vector<int>& exponents() const noexcept { return exps_; }
  int total() const noexcept;

  auto operator<=>(const MultiIndex&) const = default;
  bool operator==(const MultiIndex&) const = default;

 private:
  std::vector<int> exps_;
};

MultiIndex operator+(const MultiIndex& a, const MultiIndex& b);

// Matrix-valued analytic polynomial in nvars complex variables, stored
// sparsely by multi-index. Values are immutable once constructed; the
// arithmetic below returns new polynomials.
class MatPoly {
 public:
  using Terms = std::map<MultiIndex, CMat>;

  MatPoly() = default;
  MatPoly(Eigen::Index rows, Eigen::Index cols, std::size_t nvars, Terms terms = {});

  static MatPoly constant(const CMat& value, std::size_t nvars);
  static MatPoly zero(Eigen::Index rows, Eigen::Index cols, std::size_t nvars);

  Eigen::Index rows() const noexcept { return rows_; }
  Eigen::Index cols() const noexcept { return cols_; }
  std::size_t nvars() const noexcept { return nvars_; }
  const Terms& terms() const noexcept { return terms_; }

  // Coefficient at alpha, or the zero matrix when absent.
  CMat coeff(const MultiIndex& alpha) const;

  // Highest exponent of variable `var` (0-based) over all terms; 0 for the
  // zero polynomial.
  int degree(std::size_t var) const;
  int max_degree() const;
  int total_degree() const;

  // Sum over terms of coeff(alpha) * z^alpha.
  CMat eval(std::span<const cplx> z) const;
  // Conjugate transpose of eval(z). F* is anti-analytic, so it only exists
  // as pointwise values.
  CMat adjoint_eval(std::span<const cplx> z) const;

  // Partial derivative in variable `var` (0-based).
  MatPoly dz(std::size_t var) const;

  // Freeze every variable except `var` at the coordinates of `z`; the result
  // is a one-variable polynomial in z_var (z[var] itself is ignored).
  MatPoly restrict_to(std::size_t var, std::span<const cplx> z) const;

  // Square root of the sum of squared coefficient moduli. For a column this
  // is the boundary L2 norm on the torus (Parseval).
  double coeff_norm() const;

  MatPoly operator+(const MatPoly& other) const;
  MatPoly operator-(const MatPoly& other) const;
  MatPoly operator*(cplx scale) const;

 private:
  void check_point(std::span<const cplx> z) const;

  Eigen::Index rows_ = 0;
  Eigen::Index cols_ = 0;
  std::size_t nvars_ = 0;
  Terms terms_;
};

// Coefficient convolution; eval(mul(P, Q), z) == eval(P, z) * eval(Q, z).
MatPoly mul(const MatPoly& p, const MatPoly& q);

// Vector function h(z) = sum_alpha c_alpha conj(z)^alpha, anti-analytic in
// every variable. Kept separate from MatPoly so analytic and anti-analytic
// objects never mix.
class AntiAnalyticPoly {
 public:
  AntiAnalyticPoly() = default;
  explicit AntiAnalyticPoly(MatPoly conjugate_symbol);

  const MatPoly& symbol() const noexcept { return symbol_; }
  std::size_t nvars() const noexcept { return symbol_.nvars(); }
  Eigen::Index dim() const noexcept { return symbol_.rows(); }

  CVec eval(std::span<const cplx> z) const;
  // d/d(conj z_var) h; the holomorphic derivative of h vanishes.
  CVec dbar(std::span<const cplx> z, std::size_t var) const;
  // True when the constant coefficient vanishes, i.e. h(0) = 0.
  bool vanishes_at_origin(double tol = 0.0) const;
  AntiAnalyticPoly restrict_to(std::size_t var, std::span<const cplx> z) const;

 private:
  MatPoly symbol_;
  std::vector<MatPoly> dsymbol_;
};

// All multi-indices in nvars variables with total degree <= degree, in
// lexicographic order.
std::vector<MultiIndex> monomials_up_to(std::size_t nvars, int degree);
// All multi-indices with every exponent <= degree (the box [0, degree]^n).
std::vector<MultiIndex> box_indices(std::size_t nvars, int degree);
std::vector<MultiIndex> box_indices(const std::vector<int>& limits);

}  // namespace corona
