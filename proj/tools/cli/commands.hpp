#pragma once

#include "config.hpp"
#include "graphnls/error.hpp"

namespace graphnls::cli {

inline constexpr const char* version = "1.0.0";

enum Exit : int { ok = 0, usage = 1, inadmissible = 2, numerical = 3 };

int exit_code_for(ErrorCode code);

/// Runs one resolved command: writes manifest.json first, then the results,
/// or error.json on failure. Never throws.
int execute(const RunConfig& config);

/// Whole command line: parsing, layering, dispatch.
int run(int argc, char** argv);

}  // namespace graphnls::cli
