#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "srbm2d/errors.h"

namespace srbm2d {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int {
  kExitOk = 0,
  kExitInvalidInstance = 1,
  kExitParseError = 2,
  kExitImpossibleCase = 3,
  kExitConfigError = 4,
  kExitInfeasibleOracle = 5,
};

int exit_code_for(ErrorCode code);

/// Runs `srbm2d <command> --input FILE [options]`; args excludes argv[0].
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Shortest round-trip decimal for a double ("nan", "inf", "-inf" otherwise).
std::string format_double(double x);

}  // namespace srbm2d
