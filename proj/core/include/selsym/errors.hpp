#pragma once

#include <stdexcept>
#include <string>

namespace selsym {

enum class ErrorKind {
    BadReduction,
    NotInPN,
    HypothesisFailed,
    NormalizationMismatch,
    PrecisionLoss,
    NonIntegral,
    InconsistentRoot,
    BudgetExceeded,
    Config,
    Io,
    Internal,
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace selsym
