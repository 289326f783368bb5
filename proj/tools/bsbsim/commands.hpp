#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "bsbsim/config.hpp"

namespace bsbsim {

enum exit_code : int { ok = 0, config_failure = 1, data_failure = 2, internal_failure = 3 };

// Parses argv (without the program name) and runs one subcommand. Never throws.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// The `run` pipeline; returns the results CSV text that was also written under cfg.out.
std::string run_experiment(const experiment_config& cfg, std::ostream& log);

} // namespace bsbsim
