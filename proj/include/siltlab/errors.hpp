#pragma once
// Error taxonomy mapped to process exit codes by the command line tool:
//   ConfigError       -> 2 (invalid configuration / regime gate)
//   ConvergenceError  -> 3 (numerical non-convergence)
//   InconclusiveError -> 4 (statistics too weak to decide)

#include <stdexcept>
#include <string>

namespace siltlab {

struct ConfigError : std::invalid_argument {
    explicit ConfigError(const std::string& m) : std::invalid_argument(m) {}
};

struct ConvergenceError : std::runtime_error {
    explicit ConvergenceError(const std::string& m) : std::runtime_error(m) {}
};

struct InconclusiveError : std::runtime_error {
    explicit InconclusiveError(const std::string& m) : std::runtime_error(m) {}
};

}  // namespace siltlab
