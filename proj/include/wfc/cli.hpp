#pragma once

namespace wfc::cli {

// Exit codes: 0 success, 1 usage error, 2 precondition violation, 3 budget
// or overflow.
int run(int argc, char** argv);

}  // namespace wfc::cli
