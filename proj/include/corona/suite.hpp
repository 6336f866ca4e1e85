#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "corona/pointwise.hpp"

namespace corona {

enum class Verdict { pass, fail, not_applicable };

// One table row: value compared with bound by `relation` ("<=" or ">=").
struct ReportRow {
  std::string instance;
  std::string check;
  double value = 0.0;
  std::string relation = "<=";
  double bound = 0.0;
  Verdict verdict = Verdict::not_applicable;
  double runtime_ms = 0.0;
};

struct SuiteOptions {
  std::uint64_t seed = 0;
  double tol = 1e-6;         // identity residual and projection tolerance
  int grid = 32;             // density for identity and potential sweeps
  int radial = 128;          // disk quadrature
  int angular = 256;
  int band = 32;             // Fourier band for decompositions
  int trunc = 0;             // solver truncation; 0 selects the default
  double p = 0.0;            // 0 uses the instance's p
  int trials = 100;          // random Riesz trials
  bool timing = false;       // otherwise runtime_ms prints as NA
};

// Rows for a single check family on one instance.
std::vector<ReportRow> check_identities(const CoronaInstance& inst, const SuiteOptions& opt);
std::vector<ReportRow> check_potentials(const CoronaInstance& inst, const SuiteOptions& opt);
std::vector<ReportRow> check_embedding(const CoronaInstance& inst, const SuiteOptions& opt);
std::vector<ReportRow> check_functional(const CoronaInstance& inst, const SuiteOptions& opt);
std::vector<ReportRow> check_solve(const CoronaInstance& inst, const SuiteOptions& opt);
std::vector<ReportRow> check_decompose(const CoronaInstance& inst, const SuiteOptions& opt);
std::vector<ReportRow> check_riesz(const SuiteOptions& opt);

// Runs `command` (check-identities, check-potentials, check-embedding,
// check-functional, solve, decompose, report) over the instances, in parallel
// across instances, and returns the rows in input order.
std::vector<ReportRow> run_suite(const std::string& command, const std::vector<CoronaInstance>& instances,
                                 const SuiteOptions& opt);

// Tab-separated table with a header line.
void write_report(std::ostream& out, const std::vector<ReportRow>& rows, bool timing);

// True when no row failed.
bool all_passed(const std::vector<ReportRow>& rows);

}  // namespace corona
