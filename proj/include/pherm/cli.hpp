#pragma once

#include <iosfwd>
#include <optional>
#include <string>

namespace pherm {

struct RunConfig {
  std::string command;  // check | evd | pseudocirc | svd | signchar | perturb
  std::string input;
  std::string delta;  // perturbation polynomial for `perturb`
  int grid = 0;       // power of two; 0 = automatic
  double tol = 1e-8;
  int max_period = 0;  // 0 = landau(n) * den(A)
  std::optional<double> branch_angle;
  bool abs_singular_values = false;
  std::string out;  // result JSON; stdout when empty
  std::string csv;  // curve export
};

/// Runs one command. Result JSON goes to `out` (or config.out), errors as JSON
/// to `err`. Returns 0 on success, 1 on validation failure, 2 on numerical
/// failure.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses command-line arguments and runs.
int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace pherm
