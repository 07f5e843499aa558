#pragma once

namespace gtsat {

// Entry point behind the gtsat binary. Exit codes: 0 solved/success,
// 1 budget exhausted without a solution, 2 usage error, 3 input error.
int cli_main(int argc, const char* const* argv);

}  // namespace gtsat
