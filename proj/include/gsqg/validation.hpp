#pragma once
// Acceptance checks: each criterion computes its quantities from the library
// and compares them with independent references (closed forms, adaptive
// quadrature, the direct velocity oracle, repeated CLI runs).

#include <functional>
#include <string>
#include <vector>

#include "gsqg/io.hpp"

namespace gsqg::validation {

struct CriterionResult {
  int id;
  std::string name;
  bool passed;
  std::string detail;
  io::Json metrics;
};

struct Options {
  /// Called as soon as each criterion finishes.
  std::function<void(const CriterionResult&)> on_result;
  /// Scratch directory for the determinism check (a temp dir when empty).
  std::string scratch_dir;
};

std::vector<CriterionResult> run_acceptance(const Options& options = {});

/// "PASS C<id> <name>: <detail>" or "FAIL ...".
std::string format_line(const CriterionResult& r);

io::Json to_json(const std::vector<CriterionResult>& results);

}  // namespace gsqg::validation
