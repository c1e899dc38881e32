#pragma once

#include <string>
#include <vector>

namespace focklab::cli {

/// Experiment runner: subcommands ml-validate, hankel-ratio, compactness,
/// laplace-check, kernel-norms, fejer, project-check.
/// Exit codes: 0 pass, 1 usage/config, 2 invariant failure, 3 non-convergence.
int run(int argc, const char* const* argv);
int run(const std::vector<std::string>& args);

} // namespace focklab::cli
