#include "corona/suite.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <random>

#include "corona/hardy.hpp"
#include "corona/parallel.hpp"
#include "corona/potential.hpp"
#include "corona/quad.hpp"
#include "corona/solver.hpp"

namespace corona {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

ReportRow row(const CoronaInstance& inst, std::string check, double value, std::string relation, double bound,
              bool applicable = true) {
  ReportRow r;
  r.instance = inst.name;
  r.check = std::move(check);
  r.value = value;
  r.relation = std::move(relation);
  r.bound = bound;
  if (!applicable) {
    r.verdict = Verdict::not_applicable;
  } else {
    const bool ok = r.relation == "<=" ? value <= bound : value >= bound;
    r.verdict = ok ? Verdict::pass : Verdict::fail;
  }
  return r;
}

template <class Fn>
std::vector<ReportRow> timed(Fn&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<ReportRow> rows = fn();
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  for (auto& r : rows) r.runtime_ms = ms / static_cast<double>(rows.empty() ? 1 : rows.size());
  return rows;
}

// Restriction of the instance to variable 0 with the other variables at 0.
CoronaInstance first_variable(const CoronaInstance& inst) {
  if (inst.nvars() == 1) return inst;
  const Point zero(inst.nvars(), 0.0);
  CoronaInstance out = inst;
  out.F = inst.F.restrict_to(0, zero);
  out.g = inst.g.restrict_to(0, zero);
  return out;
}

// Gaussian anti-analytic test vector with every exponent in [1, degree].
AntiAnalyticPoly random_h(std::uint64_t seed, Eigen::Index m, std::size_t nvars, int degree) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  MatPoly::Terms t;
  for (const auto& a : box_indices(nvars, degree - 1)) {
    std::vector<int> e = a.exponents();
    for (int& k : e) k += 1;
    CMat c(m, 1);
    for (Eigen::Index i = 0; i < m; ++i) {
      const double re = nd(rng);
      const double im = nd(rng);
      c(i, 0) = cplx(re, im);
    }
    t.emplace(MultiIndex(std::move(e)), c);
  }
  return AntiAnalyticPoly(MatPoly(m, 1, nvars, std::move(t)));
}

double effective_p(const CoronaInstance& inst, const SuiteOptions& opt) { return opt.p > 0.0 ? opt.p : inst.p; }

}  // namespace

std::vector<ReportRow> check_identities(const CoronaInstance& inst, const SuiteOptions& opt) {
  const double h = 1e-5;
  const std::vector<cplx> axis = disk_grid(opt.grid / 2 + 1, opt.grid, 1.0 - 3.0 * h);
  const IdentityResiduals res = check_identities_grid(inst.F, polydisk_grid(inst.nvars(), axis), h);
  return {row(inst, "identity_d_pi", res.d_pi, "<=", opt.tol),
          row(inst, "identity_dbar_phi", res.dbar_phi, "<=", opt.tol),
          row(inst, "identity_d_dbar_phi", res.d_dbar_phi, "<=", opt.tol),
          row(inst, "corollary_pi_d_pi", res.pi_d_pi, "<=", opt.tol),
          row(inst, "corollary_d_pi_pi", res.d_pi_pi, "<=", opt.tol),
          row(inst, "corollary_dbar_pi_pi", res.dbar_pi_pi, "<=", opt.tol),
          row(inst, "corollary_pi_dbar_pi", res.pi_dbar_pi, "<=", opt.tol)};
}

std::vector<ReportRow> check_potentials(const CoronaInstance& inst, const SuiteOptions& opt) {
  const PotentialReport rep = verify_potentials(inst, opt.grid);
  const bool ok = rep.hypothesis_ok;
  return {row(inst, "potential_gap_phi", rep.worst_gap_phi, ">=", -1e-8, ok),
          row(inst, "potential_gap_psi", rep.worst_gap_psi, ">=", -1e-8, ok),
          row(inst, "potential_phi_min", rep.min_phi, ">=", -1e-8, ok),
          row(inst, "potential_phi_max", rep.max_phi, "<=", rep.K + 1e-8, ok)};
}

std::vector<ReportRow> check_embedding(const CoronaInstance& inst, const SuiteOptions& opt) {
  const CoronaInstance one = first_variable(inst);
  const DiskQuadrature Q = make_quadrature(opt.radial, opt.angular);
  std::vector<ReportRow> rows;
  // Carleson embedding with phi the log-det potential and f = g.
  double phi_sup = 0.0;
  for (cplx z : Q.circle_nodes) {
    const Point p{z};
    phi_sup = std::max(phi_sup, potentials_at(one.F, one.delta_sq, p).phi);
  }
  for (cplx z : Q.nodes) {
    const Point p{z};
    phi_sup = std::max(phi_sup, potentials_at(one.F, one.delta_sq, p).phi);
  }
  if (phi_sup > 0.0) {
    const EmbeddingReport c = carleson_ratio(
        [&](cplx z) {
          const Point p{z};
          return laplacian_phi(one.F, p);
        },
        phi_sup, one.g, Q);
    rows.push_back(row(inst, "carleson_ratio", c.ratio, "<=", kEuler + 1e-6));
  }
  const AntiAnalyticPoly h = random_h(opt.seed, one.m(), 1, 2);
  const auto [first, second] = xi_embedding_check(one, h, Q, DbarMode::closed_form);
  rows.push_back(row(inst, "xi_embedding_lap_phi", first.ratio, "<=", first.bound + 1e-6));
  rows.push_back(row(inst, "xi_embedding_dbar", second.ratio, "<=", second.bound + 1e-6));
  return rows;
}

std::vector<ReportRow> check_functional(const CoronaInstance& inst, const SuiteOptions& opt) {
  const DiskQuadrature Q = make_quadrature(opt.radial, opt.angular);
  std::vector<ReportRow> rows;
  if (inst.nvars() == 2) {
    const DiskQuadrature Qb = make_quadrature(std::min(opt.radial, 48), std::min(opt.angular, 64));
    const AntiAnalyticPoly h = random_h(opt.seed, inst.m(), 2, 2);
    const SliceFunctionals s = bidisk_functionals(inst, h, Qb);
    rows.push_back(row(inst, "bidisk_L1_minus_L2", std::abs(s.L1 - s.L2), "<=", 1e-4));
    rows.push_back(row(inst, "bidisk_boundary_minus_L1", std::abs(s.boundary - s.L1), "<=", 1e-4));
    return rows;
  }
  const CoronaInstance one = first_variable(inst);
  const AntiAnalyticPoly h = random_h(opt.seed, one.m(), 1, 2);
  const FunctionalSplit f = functional_L(one, h, Q, DbarMode::closed_form);
  const double bound = functional_bound(one.r(), one.delta_sq);
  rows.push_back(row(inst, "functional_split", std::abs(f.boundary - f.area()), "<=", 1e-5));
  rows.push_back(row(inst, "functional_bound", std::abs(f.area()), "<=", bound * f.xi_norm));
  rows.push_back(row(inst, "functional_constant_vs_trent", kCoronaC, "<=", kTrentC));
  return rows;
}

std::vector<ReportRow> check_solve(const CoronaInstance& inst, const SuiteOptions& opt) {
  const double p = effective_p(inst, opt);
  const BoundReport rep = solve_and_report(inst, opt.trunc, p);
  std::vector<ReportRow> rows;
  rows.push_back(row(inst, "solve_residual", rep.solve.residual_l2, "<=", 1e-9));
  rows.push_back(row(inst, "solve_norm_vs_bound", rep.achieved_norm, "<=", rep.bound_value * rep.g_norm,
                     rep.evaluated));
  if (rep.n == 1 && p == 2.0) {
    rows.push_back(row(inst, "bound_vs_trent", rep.bound_value, "<=", rep.trent_bound, rep.hypothesis_ok));
  }
  if (!rep.hypothesis_ok) rows.push_back(row(inst, "hypothesis_delta_sq", inst.delta_sq, "<=", 1.0 / kEuler, false));
  return rows;
}

std::vector<ReportRow> check_decompose(const CoronaInstance& inst, const SuiteOptions& opt) {
  const std::size_t n = inst.nvars();
  const PiField Pi(inst.F, opt.band);
  // xi = Pi h with h in (H^2)^perp, normalized.
  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  FourierTensor h(n, opt.band, inst.m());
  const int hb = std::min(opt.band, 3);
  for (std::size_t f = 0; f < h.points(); ++f) {
    const auto k = h.index(f);
    bool inside = true, nonneg = true;
    for (int kv : k) {
      inside = inside && std::abs(kv) <= hb;
      nonneg = nonneg && kv >= 0;
    }
    if (!inside || nonneg) continue;
    for (Eigen::Index c = 0; c < h.dim(); ++c) {
      const double re = nd(rng);
      const double im = nd(rng);
      h(f, c) = cplx(re, im);
    }
  }
  const auto split = decompose_hperp(h);
  FourierTensor sum = split[0];
  for (std::size_t j = 1; j < split.size(); ++j) sum += split[j];
  std::vector<ReportRow> rows;
  rows.push_back(row(inst, "hperp_reconstruction", (sum - h).norm(), "<=", 0.0));

  FourierTensor xi = Pi.apply(h);
  xi *= cplx(1.0 / xi.norm());
  for (double q : {4.0 / 3.0, 4.0}) {
    const KDecomposition d = decompose_K(xi, Pi, q, 500, opt.tol);
    char tag[32];
    std::snprintf(tag, sizeof tag, "q%.4g", q);
    if (q == 4.0 / 3.0) {
      rows.push_back(row(inst, "decomposition_converged", d.converged ? 1.0 : 0.0, ">=", 1.0));
      rows.push_back(row(inst, "pythagoras_gap", d.pythagoras_gap, "<=", 1e-4));
      rows.push_back(row(inst, "decomposition_remainder", d.remainder.norm(), "<=",
                         static_cast<double>(n) * opt.tol));
    }
    for (std::size_t j = 0; j < n; ++j) {
      const double bound = std::pow(riesz_constant(q), static_cast<double>(j + 1)) * d.xi_q_norm + 1e-4;
      rows.push_back(row(inst, std::string("riesz_part_") + std::to_string(j + 1) + "_" + tag, d.part_q_norms[j],
                         "<=", bound));
    }
  }
  return rows;
}

std::vector<ReportRow> check_riesz(const SuiteOptions& opt) {
  const double p = opt.p > 0.0 ? opt.p : 4.0;
  const RieszEstimate e = riesz_norm_empirical(p, std::min(opt.band, 128), opt.trials, opt.seed);
  CoronaInstance none;
  none.name = "-";
  char name[48];
  std::snprintf(name, sizeof name, "riesz_norm_p%.4g", p);
  return {row(none, name, e.value, "<=", e.bound + 1e-6)};
}

std::vector<ReportRow> run_suite(const std::string& command, const std::vector<CoronaInstance>& instances,
                                 const SuiteOptions& opt) {
  using Check = std::vector<ReportRow> (*)(const CoronaInstance&, const SuiteOptions&);
  std::vector<Check> checks;
  if (command == "check-identities") {
    checks = {check_identities};
  } else if (command == "check-potentials") {
    checks = {check_potentials};
  } else if (command == "check-embedding") {
    checks = {check_embedding};
  } else if (command == "check-functional") {
    checks = {check_functional};
  } else if (command == "solve") {
    checks = {check_solve};
  } else if (command == "decompose") {
    checks = {check_decompose};
  } else if (command == "report") {
    checks = {check_identities, check_potentials, check_embedding, check_functional, check_solve};
  } else {
    throw std::invalid_argument("unknown command: " + command);
  }
  std::vector<std::vector<ReportRow>> per(instances.size());
  for_each_index(instances.size(), Exec::parallel, [&](std::size_t i) {
    for (Check c : checks) {
      auto rows = timed([&] { return c(instances[i], opt); });
      per[i].insert(per[i].end(), rows.begin(), rows.end());
    }
    if (command == "report" && instances[i].nvars() >= 2) {
      auto rows = timed([&] { return check_decompose(instances[i], opt); });
      per[i].insert(per[i].end(), rows.begin(), rows.end());
    }
  });
  std::vector<ReportRow> out;
  for (auto& v : per) out.insert(out.end(), v.begin(), v.end());
  return out;
}

namespace {

std::string number(double v) {
  if (std::isnan(v)) return "NA";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

void write_report(std::ostream& out, const std::vector<ReportRow>& rows, bool timing) {
  out << "instance\tcheck\tvalue\trelation\tbound\tpassed\truntime_ms\n";
  for (const auto& r : rows) {
    const char* verdict = r.verdict == Verdict::pass ? "PASS" : r.verdict == Verdict::fail ? "FAIL" : "NA";
    out << r.instance << '\t' << r.check << '\t' << number(r.value) << '\t' << r.relation << '\t'
        << number(r.bound) << '\t' << verdict << '\t' << (timing ? number(r.runtime_ms) : "NA") << '\n';
  }
}

bool all_passed(const std::vector<ReportRow>& rows) {
  for (const auto& r : rows) {
    if (r.verdict == Verdict::fail) return false;
  }
  return true;
}

}  // namespace corona
