#pragma once

#include <ostream>

namespace polar::cli {

enum Exit : int {
    kOk = 0,
    kInvalidConfig = 2,
    kCapExceeded = 3,
    kVerificationFailed = 4,
    kFormulaMismatch = 5,
    kIoError = 6,
};

/// Runs the command line; JSON reports go to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace polar::cli
