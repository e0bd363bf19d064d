#pragma once

namespace sweep::cli {

/// Command-line front end. Exit codes: 0 success, 1 solver/verification
/// failure, 2 usage or document errors.
int run(int argc, const char* const* argv);

}  // namespace sweep::cli
