#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fractrend::cli {

// args excludes the program name. Reports go to `out` unless -o is given;
// failures print a single "error: <code>: <message>" line to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fractrend::cli
