#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "corona/generate.hpp"
#include "corona/instance_io.hpp"
#include "corona/suite.hpp"

using namespace corona;

namespace {

void add_common(CLI::App* sub, SuiteOptions& opt, std::string& output) {
  sub->add_option("--seed", opt.seed, "Random seed");
  sub->add_option("--tol", opt.tol, "Residual / projection tolerance");
  sub->add_option("--grid", opt.grid, "Grid density for pointwise sweeps");
  sub->add_option("--radial", opt.radial, "Radial nodes of the disk quadrature");
  sub->add_option("--angular", opt.angular, "Angular nodes of the disk quadrature");
  sub->add_option("--band", opt.band, "Fourier band");
  sub->add_option("--trunc", opt.trunc, "Solver truncation degree (0 = default)");
  sub->add_option("--p", opt.p, "Exponent p (default: instance value)");
  sub->add_option("--trials", opt.trials, "Random trials for the Riesz search");
  sub->add_flag("--timing", opt.timing, "Report runtimes instead of NA");
  sub->add_option("-o,--output", output, "Write the report to a file");
}

int emit(const std::vector<ReportRow>& rows, const SuiteOptions& opt, const std::string& output) {
  if (output.empty()) {
    write_report(std::cout, rows, opt.timing);
  } else {
    std::ofstream out(output);
    if (!out) throw std::runtime_error("cannot write " + output);
    write_report(out, rows, opt.timing);
  }
  return all_passed(rows) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks for the matrix corona problem on the disk and polydisk"};
  app.require_subcommand(1);

  GenerateOptions gen;
  std::string gen_out;
  auto* g = app.add_subcommand("gen", "Generate a random instance with certified delta^2");
  g->add_option("--rows", gen.rows, "r")->check(CLI::PositiveNumber);
  g->add_option("--cols", gen.cols, "m")->check(CLI::PositiveNumber);
  g->add_option("--nvars", gen.nvars, "Number of variables")->check(CLI::PositiveNumber);
  g->add_option("--degree", gen.degree, "Degree per variable of G")->check(CLI::NonNegativeNumber);
  g->add_option("--c", gen.c, "Constant block c, 0 < c < 1");
  g->add_option("--g-degree", gen.g_degree, "Degree of g (default: --degree)");
  g->add_option("--p", gen.p, "Exponent recorded in the instance");
  g->add_option("--seed", gen.seed, "Random seed");
  g->add_flag("--zero-block", gen.zero_block, "Use G = 0");
  g->add_option("-o,--output", gen_out, "Instance file")->required();

  const std::vector<std::string> commands{"check-identities", "check-potentials", "check-embedding",
                                          "check-functional", "solve",            "decompose",
                                          "report"};
  SuiteOptions opt;
  std::string output;
  std::vector<std::string> files;
  for (const auto& name : commands) {
    auto* sub = app.add_subcommand(name, "Run " + name + " on instance files");
    sub->add_option("--instance,instances", files, "Instance files")->required()->check(CLI::ExistingFile);
    add_common(sub, opt, output);
  }
  auto* riesz = app.add_subcommand("riesz", "Empirical L^p norm of the Riesz projection");
  add_common(riesz, opt, output);

  CLI11_PARSE(app, argc, argv);
  try {
    if (g->parsed()) {
      const CoronaInstance inst = generate_instance(gen);
      write_instance(gen_out, inst);
      std::cout << inst.name << "\tdelta_sq\t" << inst.delta_sq << '\n';
      return 0;
    }
    if (riesz->parsed()) return emit(check_riesz(opt), opt, output);
    for (const auto& name : commands) {
      if (!app.got_subcommand(name)) continue;
      std::vector<CoronaInstance> instances;
      for (const auto& f : files) instances.push_back(read_instance(f));
      return emit(run_suite(name, instances, opt), opt, output);
    }
  } catch (const std::exception& e) {
    std::cerr << "corona: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
