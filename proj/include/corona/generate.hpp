#pragma once

#include <cstdint>

#include "corona/pointwise.hpp"

namespace corona {

struct GenerateOptions {
  Eigen::Index rows = 1;
  Eigen::Index cols = 2;
  std::size_t nvars = 1;
  int degree = 1;
  double c = 0.5;          // constant block c I_r
  std::uint64_t seed = 0;
  bool zero_block = false; // G = 0
  int g_degree = -1;       // defaults to degree
  double p = 2.0;
  int grid_density = 16;   // starting density for delta_range
};

// F0 = [c I_r | G(z)] with G Gaussian of degree <= degree per variable, each
// coefficient scaled by 1/sqrt(number of monomials); F = F0 / sqrt(s) when
// the grid supremum s of lambda_max(F0 F0*) exceeds 1. delta_sq is the
// larger of c^2 / max(s, 1) and (1 - 1e-6) times the refined grid minimum of
// lambda_min(FF*). g is Gaussian with |g|_2 = 1.
CoronaInstance generate_instance(const GenerateOptions& opt, Exec exec = Exec::parallel);

}  // namespace corona
