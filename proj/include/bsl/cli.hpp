#pragma once
#include <optional>
#include <string>

#include "bsl/config.hpp"

namespace bsl {

enum ExitCode { kExitOk = 0, kExitInvariant = 1, kExitConfig = 2 };

// output directory after the BSL_OUTPUT_DIR override; created if absent
std::string prepare_output_dir(const RunConfig& cfg);

int cmd_domain(const RunConfig& cfg);
int cmd_partition(const RunConfig& cfg);
int cmd_verify(const RunConfig& cfg);
int cmd_scan(const RunConfig& cfg);
int cmd_eigen(const RunConfig& cfg, double t);
int cmd_billiard(const RunConfig& cfg, int steps);

// parses argv and dispatches; maps exceptions onto exit codes
int run_cli(int argc, char** argv);

} // namespace bsl
