#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "gsg/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Security games with informants: evaluation, selection and solvers"};
  app.require_subcommand(1);
  gsg::cli::RegisterCommands(app);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const gsg::NonConvergenceError& e) {
    std::cerr << "error: " << e.what() << " (best residual " << e.best_residual() << ")\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return gsg::cli::CommandStatus();
}
