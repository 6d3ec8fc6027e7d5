#include <iostream>
#include <string>
#include <vector>

#include "rootdatum_cli/commands.hpp"
#include "rootdatum_cli/datum_file.hpp"

int main(int argc, char** argv) {
  using namespace rootdatum::cli;
  Environment env;
  try {
    env = environment_from_process();
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, env, std::cout, std::cerr);
}
