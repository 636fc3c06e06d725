#pragma once

#include <stdexcept>
#include <string>

namespace lifemodes {

/// Base for every numerical failure raised by the library. The CLI maps it to
/// exit code 2 and reports `kind()` in its error JSON.
class NumericalError : public std::runtime_error {
public:
    NumericalError(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define LIFEMODES_DEFINE_ERROR(Name)                                        \
    class Name : public NumericalError {                                    \
    public:                                                                 \
        explicit Name(const std::string& what) : NumericalError(#Name, what) {} \
    };

LIFEMODES_DEFINE_ERROR(ConvergenceFailure)
LIFEMODES_DEFINE_ERROR(SingularMatrix)
LIFEMODES_DEFINE_ERROR(DomainError)
LIFEMODES_DEFINE_ERROR(RangeError)
LIFEMODES_DEFINE_ERROR(DegenerateDominant)
LIFEMODES_DEFINE_ERROR(ZeroColumn)
LIFEMODES_DEFINE_ERROR(EmptyAlive)
LIFEMODES_DEFINE_ERROR(ImmortalChain)
LIFEMODES_DEFINE_ERROR(NoConvergence)
LIFEMODES_DEFINE_ERROR(ToleranceNotMet)

#undef LIFEMODES_DEFINE_ERROR

} // namespace lifemodes
