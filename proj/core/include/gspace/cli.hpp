#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gspace {

// Command dispatch shared by the binary and the tests. Deterministic output
// for fixed arguments; exit codes 0 Verified/true, 1 Refuted/false,
// 2 Unknown, 3 malformed input.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace gspace
