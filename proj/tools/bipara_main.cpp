#include <string>
#include <vector>

#include "bipara/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return bipara::run_cli(args);
}
