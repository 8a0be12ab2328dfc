#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace propdec {

// Command dispatcher behind the propdec binary, callable in-process for
// tests. Exit status: 0 success / axiom satisfied, 1 axiom violated (witness
// printed), 2 usage or validation error.
int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace propdec
