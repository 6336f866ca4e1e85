#include "corona/generate.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace corona {

namespace {

CMat gaussian(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols, double scale) {
  std::normal_distribution<double> nd(0.0, 1.0);
  CMat out(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = nd(rng);
      const double im = nd(rng);
      out(i, j) = scale * cplx(re, im);
    }
  }
  return out;
}

}  // namespace

CoronaInstance generate_instance(const GenerateOptions& opt, Exec exec) {
  if (opt.cols <= opt.rows) throw std::invalid_argument("generate_instance: need cols > rows");
  if (opt.rows < 1 || opt.nvars < 1 || opt.degree < 0) throw std::invalid_argument("generate_instance: bad shape");
  if (!(opt.c > 0.0 && opt.c < 1.0)) throw std::invalid_argument("generate_instance: need 0 < c < 1");
  const Eigen::Index r = opt.rows, m = opt.cols;
  std::mt19937_64 rng(opt.seed);

  const std::vector<MultiIndex> monos = box_indices(opt.nvars, opt.degree);
  const double scale = 1.0 / std::sqrt(static_cast<double>(monos.size()));
  MatPoly::Terms t;
  for (const auto& alpha : monos) {
    CMat coef = CMat::Zero(r, m);
    if (!opt.zero_block) coef.rightCols(m - r) = gaussian(rng, r, m - r, scale);
    if (alpha.total() == 0) coef.leftCols(r) = opt.c * CMat::Identity(r, r);
    t.emplace(alpha, coef);
  }
  MatPoly F(r, m, opt.nvars, std::move(t));
  const DeltaRange raw = delta_range(F, opt.grid_density, exec);
  const double s = std::max(raw.sup_sq, 1.0);
  if (raw.sup_sq > 1.0) F = F * cplx(1.0 / std::sqrt(raw.sup_sq));
  const DeltaRange scaled = delta_range(F, opt.grid_density, exec);

  const int gdeg = opt.g_degree < 0 ? opt.degree : opt.g_degree;
  MatPoly::Terms gt;
  for (const auto& alpha : box_indices(opt.nvars, gdeg)) gt.emplace(alpha, gaussian(rng, r, 1, 1.0));
  MatPoly g(r, 1, opt.nvars, std::move(gt));
  g = g * cplx(1.0 / g.coeff_norm());

  CoronaInstance inst;
  std::ostringstream name;
  name << "gen-r" << r << "-m" << m << "-n" << opt.nvars << "-d" << opt.degree << "-s" << opt.seed;
  inst.name = name.str();
  inst.F = std::move(F);
  inst.g = std::move(g);
  inst.delta_sq = std::max(opt.c * opt.c / s, scaled.delta_sq * (1.0 - 1e-6));
  inst.p = opt.p;
  inst.validate();
  return inst;
}

}  // namespace corona
