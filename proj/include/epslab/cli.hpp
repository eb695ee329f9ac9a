#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "epslab/spaces.hpp"

namespace epslab {

enum ExitCode : int { kExitPass = 0, kExitCheckFailed = 1, kExitConfigError = 2 };

struct RunConfig {
  std::string command;
  double eps = 0.5;
  std::string norm = "lp:2";
  std::string norm_y;  ///< empty: same as the plan's X norm
  double tol = 1e-10;
  double check_tol = 1e-9;
  std::uint64_t seed = 0;
  Index blocks = 6;
  std::vector<std::string> r_min;  ///< "k=r" items
  Index horizon = 0;
  std::vector<Index> powers;
  double delta = 0.0;
  double probe = 0.0;
  std::size_t grid = 10'000;
  std::size_t random = 0;
  std::size_t eps_grid = 49;
  std::size_t deltas = 9;
  std::string plan_path;
  std::string vector_path;
  std::string targets_path;
  std::string out_path;
  std::string csv_path;
  std::string out_dir;
};

/// Executes one subcommand. Exit 0 iff all checks pass, 1 on a failed check, 2 on a config error.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses argv (program name first) and calls run().
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace epslab
