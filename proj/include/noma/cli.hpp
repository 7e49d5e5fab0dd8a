#pragma once

#include <ostream>
#include <string>

#include "noma/config.hpp"
#include "noma/experiments.hpp"

namespace noma {

// Runs one subcommand ({gain-distance, gain-index, outage, sumrate, all}),
// writing CSVs, the run manifest, and (optionally) SVG plots into out_dir.
// Returns a process exit status; failures are described on diag.
int run_command(const std::string& subcommand, const ExperimentSpec& spec,
                const std::string& out_dir, bool plot, std::ostream& diag);

int cli_main(int argc, const char* const* argv);

}  // namespace noma
