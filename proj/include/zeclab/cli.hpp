#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace zeclab::cli {

// Dispatches the zeclab subcommands (graph, channel, code, search, bounds,
// certify, scenario).  JSON goes to `out`; diagnostics go to `err`.
// Exit codes: 0 success or pass, 1 verification failed, 2 invalid input,
// 3 search finished with evidence only.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace zeclab::cli
