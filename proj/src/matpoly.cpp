#include "corona/matpoly.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace corona {

MultiIndex::MultiIndex(std::vector<int> exponents) : exps_(std::move(exponents)) {
  for (int e : exps_) {
    if (e < 0) throw std::invalid_argument("MultiIndex: negative exponent");
  }
}

int MultiIndex::total() const noexcept { return std::accumulate(exps_.begin(), exps_.end(), 0); }

MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
  if (a.size() != b.size()) throw std::invalid_argument("MultiIndex: length mismatch");
  std::vector<int> e(a.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = a[i] + b[i];
  return MultiIndex(std::move(e));
}

MatPoly::MatPoly(Eigen::Index rows, Eigen::Index cols, std::size_t nvars, Terms terms)
    : rows_(rows), cols_(cols), nvars_(nvars), terms_(std::move(terms)) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("MatPoly: empty shape");
  if (nvars < 1) throw std::invalid_argument("MatPoly: nvars must be positive");
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->first.size() != nvars_) {
      throw std::invalid_argument("MatPoly: multi-index of length " +
                                  std::to_string(it->first.size()) + " in " +
                                  std::to_string(nvars_) + "-variable polynomial");
    }
    if (it->second.rows() != rows_ || it->second.cols() != cols_) {
      throw std::invalid_argument("MatPoly: coefficient shape mismatch");
    }
    if (it->second.isZero(0.0)) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
}

MatPoly MatPoly::constant(const CMat& value, std::size_t nvars) {
  Terms t;
  t.emplace(MultiIndex(std::vector<int>(nvars, 0)), value);
  return MatPoly(value.rows(), value.cols(), nvars, std::move(t));
}

MatPoly MatPoly::zero(Eigen::Index rows, Eigen::Index cols, std::size_t nvars) {
  return MatPoly(rows, cols, nvars);
}

CMat MatPoly::coeff(const MultiIndex& alpha) const {
  auto it = terms_.find(alpha);
  if (it == terms_.end()) return CMat::Zero(rows_, cols_);
  return it->second;
}

int MatPoly::degree(std::size_t var) const {
  if (var >= nvars_) throw std::out_of_range("MatPoly::degree: variable index out of range");
  int d = 0;
  for (const auto& [alpha, c] : terms_) d = std::max(d, alpha[var]);
  return d;
}

int MatPoly::max_degree() const {
  int d = 0;
  for (std::size_t v = 0; v < nvars_; ++v) d = std::max(d, degree(v));
  return d;
}

int MatPoly::total_degree() const {
  int d = 0;
  for (const auto& [alpha, c] : terms_) d = std::max(d, alpha.total());
  return d;
}

void MatPoly::check_point(std::span<const cplx> z) const {
  if (z.size() != nvars_) {
    throw std::invalid_argument("MatPoly: point has " + std::to_string(z.size()) +
                                " coordinates, polynomial has " + std::to_string(nvars_) +
                                " variables");
  }
}

CMat MatPoly::eval(std::span<const cplx> z) const {
  check_point(z);
  // Power table per variable, then one product per stored monomial.
  std::vector<std::vector<cplx>> powers(nvars_);
  for (std::size_t v = 0; v < nvars_; ++v) {
    const int d = degree(v);
    powers[v].resize(static_cast<std::size_t>(d) + 1);
    powers[v][0] = 1.0;
    for (int k = 1; k <= d; ++k) powers[v][k] = powers[v][k - 1] * z[v];
  }
  CMat out = CMat::Zero(rows_, cols_);
  for (const auto& [alpha, c] : terms_) {
    cplx m = 1.0;
    for (std::size_t v = 0; v < nvars_; ++v) m *= powers[v][alpha[v]];
    out.noalias() += m * c;
  }
  return out;
}

CMat MatPoly::adjoint_eval(std::span<const cplx> z) const { return eval(z).adjoint(); }

MatPoly MatPoly::dz(std::size_t var) const {
  if (var >= nvars_) throw std::out_of_range("MatPoly::dz: variable index out of range");
  Terms t;
  for (const auto& [alpha, c] : terms_) {
    if (alpha[var] == 0) continue;
    std::vector<int> e = alpha.exponents();
    const double k = e[var];
    e[var] -= 1;
    t.emplace(MultiIndex(std::move(e)), k * c);
  }
  return MatPoly(rows_, cols_, nvars_, std::move(t));
}

MatPoly MatPoly::restrict_to(std::size_t var, std::span<const cplx> z) const {
  check_point(z);
  if (var >= nvars_) throw std::out_of_range("MatPoly::restrict_to: variable index out of range");
  Terms t;
  for (const auto& [alpha, c] : terms_) {
    cplx m = 1.0;
    for (std::size_t v = 0; v < nvars_; ++v) {
      if (v != var) m *= std::pow(z[v], alpha[v]);
    }
    MultiIndex key({alpha[var]});
    auto [it, inserted] = t.try_emplace(key, CMat::Zero(rows_, cols_));
    it->second += m * c;
  }
  return MatPoly(rows_, cols_, 1, std::move(t));
}

double MatPoly::coeff_norm() const {
  double s = 0.0;
  for (const auto& [alpha, c] : terms_) s += c.squaredNorm();
  return std::sqrt(s);
}

MatPoly MatPoly::operator+(const MatPoly& other) const {
  if (other.rows_ != rows_ || other.cols_ != cols_ || other.nvars_ != nvars_) {
    throw std::invalid_argument("MatPoly::operator+: shape mismatch");
  }
  Terms t = terms_;
  for (const auto& [alpha, c] : other.terms_) {
    auto [it, inserted] = t.try_emplace(alpha, CMat::Zero(rows_, cols_));
    it->second += c;
  }
  return MatPoly(rows_, cols_, nvars_, std::move(t));
}

MatPoly MatPoly::operator-(const MatPoly& other) const { return *this + other * cplx(-1.0); }

MatPoly MatPoly::operator*(cplx scale) const {
  Terms t;
  for (const auto& [alpha, c] : terms_) t.emplace(alpha, scale * c);
  return MatPoly(rows_, cols_, nvars_, std::move(t));
}

MatPoly mul(const MatPoly& p, const MatPoly& q) {
  if (p.cols() != q.rows()) throw std::invalid_argument("mul: inner dimensions differ");
  if (p.nvars() != q.nvars()) throw std::invalid_argument("mul: variable counts differ");
  MatPoly::Terms t;
  for (const auto& [a, ca] : p.terms()) {
    for (const auto& [b, cb] : q.terms()) {
      auto [it, inserted] = t.try_emplace(a + b, CMat::Zero(p.rows(), q.cols()));
      it->second.noalias() += ca * cb;
    }
  }
  return MatPoly(p.rows(), q.cols(), p.nvars(), std::move(t));
}

namespace {

Point conj_point(std::span<const cplx> z) {
  Point w(z.begin(), z.end());
  for (auto& c : w) c = std::conj(c);
  return w;
}

}  // namespace

AntiAnalyticPoly::AntiAnalyticPoly(MatPoly conjugate_symbol) : symbol_(std::move(conjugate_symbol)) {
  if (symbol_.cols() != 1) throw std::invalid_argument("AntiAnalyticPoly: symbol must be a column");
  for (std::size_t v = 0; v < symbol_.nvars(); ++v) dsymbol_.push_back(symbol_.dz(v));
}

CVec AntiAnalyticPoly::eval(std::span<const cplx> z) const {
  const Point w = conj_point(z);
  return symbol_.eval(w);
}

CVec AntiAnalyticPoly::dbar(std::span<const cplx> z, std::size_t var) const {
  if (var >= dsymbol_.size()) throw std::out_of_range("AntiAnalyticPoly::dbar: variable out of range");
  const Point w = conj_point(z);
  return dsymbol_[var].eval(w);
}

bool AntiAnalyticPoly::vanishes_at_origin(double tol) const {
  const CMat c0 = symbol_.coeff(MultiIndex(std::vector<int>(symbol_.nvars(), 0)));
  return c0.norm() <= tol;
}

AntiAnalyticPoly AntiAnalyticPoly::restrict_to(std::size_t var, std::span<const cplx> z) const {
  const Point w = conj_point(z);
  return AntiAnalyticPoly(symbol_.restrict_to(var, w));
}

std::vector<MultiIndex> monomials_up_to(std::size_t nvars, int degree) {
  std::vector<MultiIndex> out;
  for (const auto& a : box_indices(nvars, degree)) {
    if (a.total() <= degree) out.push_back(a);
  }
  return out;
}

std::vector<MultiIndex> box_indices(std::size_t nvars, int degree) {
  return box_indices(std::vector<int>(nvars, degree));
}

std::vector<MultiIndex> box_indices(const std::vector<int>& limits) {
  std::vector<MultiIndex> out;
  std::vector<int> e(limits.size(), 0);
  if (limits.empty()) return out;
  for (int l : limits) {
    if (l < 0) return out;
  }
  while (true) {
    out.emplace_back(e);
    std::size_t v = limits.size();
    while (v > 0) {
      --v;
      if (e[v] < limits[v]) {
        ++e[v];
        break;
      }
      e[v] = 0;
      if (v == 0) return out;
    }
  }
}

}  // namespace corona
