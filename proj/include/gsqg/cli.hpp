#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gsqg/functional.hpp"
#include "gsqg/io.hpp"
#include "gsqg/solver.hpp"

namespace gsqg::cli {

enum ExitCode : int {
  kOk = 0,
  kValidationFailed = 1,
  kConfigError = 2,
  kDivergence = 3,
  kIoError = 4,
};

/// "start:stop:count", linear or geometric spacing, endpoints included.
std::vector<double> parse_schedule(const std::string& spec, bool geometric);

struct RunConfig {
  functional::Mode mode = functional::Mode::corotating;
  double alpha = 1.0;
  double d = 1.0;
  int m = 2;
  std::string eps_spec = "0.005:0.05:10";
  bool geometric = false;
  solver::SolverConfig solver;  ///< schedule filled from eps_spec
  std::string out = "out";

  functional::PatchGeometry family() const;
  io::Json to_json() const;
};

/// Solves the branch, writes <out>/branch.json and <out>/patch_NNN.csv.
/// Returns an ExitCode.
int run_branch(const RunConfig& config, std::ostream& log, std::ostream& err);

/// Full command line entry point; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gsqg::cli
