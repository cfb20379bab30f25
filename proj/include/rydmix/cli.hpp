#pragma once

#include <iosfwd>

#include "rydmix/config.hpp"

namespace rydmix::cli {

/// Runs one command and writes its CSV (or the validate report) to `out`.
/// Warnings and errors go to `diag`. Returns the process exit status.
int run(const RunConfig& config, std::ostream& out, std::ostream& diag);

/// Full command-line entry point: flags, config loading, output file.
int main(int argc, char** argv);

}  // namespace rydmix::cli
