#pragma once

#include <iostream>
#include <string>
#include <vector>

namespace ordmat {

// Batch front end. JSON result on `out`, human-readable summary on `err`.
// Exit status: 0 success/pass, 1 mathematical failure, 2 input error.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err);

} // namespace ordmat
