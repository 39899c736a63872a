#pragma once

#include <iosfwd>

namespace rootcalc {

// exit codes: 0 pass, 1 computation mismatch or failure, 2 usage error
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rootcalc
