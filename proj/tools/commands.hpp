#pragma once

#include <CLI11.hpp>

namespace gsg::cli {

// Adds every subcommand to `app`. Commands throw gsg::Error subclasses on
// failure; main maps them to exit codes.
void RegisterCommands(CLI::App& app);

// Exit status requested by the command that ran (0 unless a command
// finished with a non-convergence it reported itself).
int CommandStatus();

}  // namespace gsg::cli
