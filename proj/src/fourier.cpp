#include "corona/fourier.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <numeric>
#include <tuple>

namespace corona {

namespace {

// Plans are created under a mutex (the FFTW planner is not thread-safe) and
// executed through the new-array interface, which is.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(int rank, int side, int howmany, int sign) {
    std::lock_guard lock(mutex_);
    const auto key = std::make_tuple(rank, side, howmany, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    std::vector<int> dims(rank, side);
    int total = 1;
    for (int d : dims) total *= d;
    std::vector<fftw_complex> in(static_cast<std::size_t>(total) * howmany);
    std::vector<fftw_complex> out(in.size());
    fftw_plan plan = fftw_plan_many_dft(rank, dims.data(), howmany, in.data(), nullptr, 1, total,
                                        out.data(), nullptr, 1, total, sign,
                                        FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (plan == nullptr) throw std::runtime_error("FFTW planning failed");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<int, int, int, int>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

void run(std::vector<cplx>& in, std::vector<cplx>& out, int rank, int side, int howmany, int sign) {
  fftw_plan plan = plan_cache().get(rank, side, howmany, sign);
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
}

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= b;
  return r;
}

// Position of frequency index k (|k| <= band) in a grid of `side` bins.
std::size_t bin(int k, int side) { return static_cast<std::size_t>((k % side + side) % side); }

}  // namespace

FourierTensor::FourierTensor(std::size_t nvars, int band, Eigen::Index dim)
    : nvars_(nvars), band_(band), dim_(dim) {
  if (nvars < 1 || band < 0 || dim < 1) throw std::invalid_argument("FourierTensor: bad shape");
  points_ = ipow(static_cast<std::size_t>(side()), nvars);
  data_.assign(points_ * static_cast<std::size_t>(dim), cplx(0.0));
}

std::size_t FourierTensor::flat(std::span<const int> k) const {
  if (k.size() != nvars_) throw std::invalid_argument("FourierTensor: index length mismatch");
  std::size_t f = 0;
  for (int kv : k) {
    if (kv < -band_ || kv > band_) throw std::out_of_range("FourierTensor: index outside band");
    f = f * static_cast<std::size_t>(side()) + static_cast<std::size_t>(kv + band_);
  }
  return f;
}

std::vector<int> FourierTensor::index(std::size_t f) const {
  std::vector<int> k(nvars_);
  for (std::size_t v = nvars_; v-- > 0;) {
    k[v] = static_cast<int>(f % static_cast<std::size_t>(side())) - band_;
    f /= static_cast<std::size_t>(side());
  }
  return k;
}

cplx FourierTensor::coeff(std::span<const int> k, Eigen::Index comp) const {
  for (int kv : k) {
    if (kv < -band_ || kv > band_) return 0.0;
  }
  return (*this)(flat(k), comp);
}

void FourierTensor::set(std::span<const int> k, Eigen::Index comp, cplx value) {
  (*this)(flat(k), comp) = value;
}

double FourierTensor::squared_norm() const {
  double s = 0.0;
  for (const cplx& c : data_) s += std::norm(c);
  return s;
}

double FourierTensor::norm() const { return std::sqrt(squared_norm()); }

void FourierTensor::check_same_shape(const FourierTensor& o) const {
  if (o.nvars_ != nvars_ || o.band_ != band_ || o.dim_ != dim_) {
    throw std::invalid_argument("FourierTensor: shape mismatch");
  }
}

FourierTensor& FourierTensor::operator+=(const FourierTensor& o) {
  check_same_shape(o);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

FourierTensor& FourierTensor::operator-=(const FourierTensor& o) {
  check_same_shape(o);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

FourierTensor& FourierTensor::operator*=(cplx s) {
  for (cplx& c : data_) c *= s;
  return *this;
}

FourierTensor FourierTensor::from_analytic(const MatPoly& column, int band) {
  if (column.cols() != 1) throw std::invalid_argument("from_analytic: column required");
  FourierTensor out(column.nvars(), band, column.rows());
  for (const auto& [alpha, c] : column.terms()) {
    const std::vector<int>& k = alpha.exponents();
    for (Eigen::Index i = 0; i < column.rows(); ++i) out.set(k, i, c(i, 0));
  }
  return out;
}

FourierTensor FourierTensor::from_anti_analytic(const AntiAnalyticPoly& h, int band) {
  FourierTensor out(h.nvars(), band, h.dim());
  for (const auto& [alpha, c] : h.symbol().terms()) {
    std::vector<int> k = alpha.exponents();
    for (int& kv : k) kv = -kv;
    for (Eigen::Index i = 0; i < h.dim(); ++i) out.set(k, i, c(i, 0));
  }
  return out;
}

cplx inner(const FourierTensor& a, const FourierTensor& b) {
  if (a.data().size() != b.data().size()) throw std::invalid_argument("inner: shape mismatch");
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) s += a.data()[i] * std::conj(b.data()[i]);
  return s;
}

std::size_t GridField::points() const { return ipow(static_cast<std::size_t>(side), nvars); }

Point GridField::point(std::size_t f) const {
  Point z(nvars);
  for (std::size_t v = nvars; v-- > 0;) {
    const auto j = static_cast<double>(f % static_cast<std::size_t>(side));
    z[v] = std::polar(1.0, 2.0 * kPi * j / side);
    f /= static_cast<std::size_t>(side);
  }
  return z;
}

CVec GridField::value(std::size_t f) const {
  const std::size_t n = points();
  CVec v(dim);
  for (Eigen::Index c = 0; c < dim; ++c) v(c) = data[c * n + f];
  return v;
}

void GridField::set_value(std::size_t f, const CVec& v) {
  const std::size_t n = points();
  for (Eigen::Index c = 0; c < dim; ++c) data[c * n + f] = v(c);
}

namespace {

// Maps a coefficient flat index to the flat index of its bin in a grid of
// `side` points per variable.
std::size_t coeff_to_bin(const FourierTensor& x, std::size_t f, int side) {
  const std::vector<int> k = x.index(f);
  std::size_t g = 0;
  for (int kv : k) g = g * static_cast<std::size_t>(side) + bin(kv, side);
  return g;
}

}  // namespace

GridField synthesize(const FourierTensor& x, int side) {
  if (side == 0) side = x.side();
  if (side < x.side()) throw std::invalid_argument("synthesize: grid coarser than the band");
  GridField out{x.nvars(), side, x.dim(), {}};
  const std::size_t n = out.points();
  std::vector<cplx> in(n * static_cast<std::size_t>(x.dim()), cplx(0.0));
  for (std::size_t f = 0; f < x.points(); ++f) {
    const std::size_t g = coeff_to_bin(x, f, side);
    for (Eigen::Index c = 0; c < x.dim(); ++c) in[c * n + g] = x(f, c);
  }
  out.data.resize(in.size());
  run(in, out.data, static_cast<int>(x.nvars()), side, static_cast<int>(x.dim()), FFTW_BACKWARD);
  return out;
}

FourierTensor analyze(const GridField& f, int band) {
  if (f.side < 2 * band + 1) throw std::invalid_argument("analyze: band exceeds grid resolution");
  const std::size_t n = f.points();
  std::vector<cplx> in = f.data;
  std::vector<cplx> out(in.size());
  run(in, out, static_cast<int>(f.nvars), f.side, static_cast<int>(f.dim), FFTW_FORWARD);
  FourierTensor x(f.nvars, band, f.dim);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t k = 0; k < x.points(); ++k) {
    const std::size_t g = coeff_to_bin(x, k, f.side);
    for (Eigen::Index c = 0; c < f.dim; ++c) x(k, c) = scale * out[c * n + g];
  }
  return x;
}

std::vector<cplx> dft_forward(const std::vector<cplx>& in) {
  std::vector<cplx> a = in, out(in.size());
  run(a, out, 1, static_cast<int>(in.size()), 1, FFTW_FORWARD);
  return out;
}

std::vector<cplx> dft_backward(const std::vector<cplx>& in) {
  std::vector<cplx> a = in, out(in.size());
  run(a, out, 1, static_cast<int>(in.size()), 1, FFTW_BACKWARD);
  return out;
}

}  // namespace corona
