#include <string>
#include <vector>

#include "crewml/cli/run.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return crewml::cli::cli_main(args);
}
