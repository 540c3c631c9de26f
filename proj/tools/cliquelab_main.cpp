#include <iostream>
#include <vector>

#include "cliquelab/commands.hpp"
#include "cliquelab/config.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  cliquelab::ParsedArgs parsed = cliquelab::parse_config(args);
  if (parsed.show_help) {
    std::cout << parsed.help_text;
    return args.empty() ? 2 : 0;
  }
  if (!parsed.errors.empty()) {
    for (const auto& e : parsed.errors) std::cerr << "error: " << e << "\n";
    return 2;
  }
  try {
    return cliquelab::execute(parsed.config, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
