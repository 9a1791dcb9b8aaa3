#pragma once

#include <string>
#include <vector>

namespace bipara {

// Command-line driver, callable in-process so tests can exercise it.
// args excludes the program name. Exit codes: 0 success, 1 verification
// failure (the report is still emitted), 2 usage error, 3 I/O error.
int run_cli(const std::vector<std::string>& args);

}  // namespace bipara
