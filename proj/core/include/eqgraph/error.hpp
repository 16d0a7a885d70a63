#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace eqgraph
{
    enum class ErrorKind
    {
        ZeroCoefficient,
        NonzeroSum,
        TooShort,
        CoefficientOutOfRange,
        Overflow,
        TooManyVariables,
        LengthMismatch,
        ScaleExceeded,
        NotAHomomorphism,
        NotAWalk,
        PatternNotK3,
        ZeroSize,
        NotACycle,
        Truncated,
        NotSurjective,
        NotGenusTwo,
        PackingTooSmall,
        NoTriangles,
        RetryCapExceeded,
        BudgetExhausted,
        InvalidInput
    };

    auto to_string(ErrorKind kind) -> std::string_view;

    /// Every recoverable failure in the library is reported through this type.
    class Error : public std::runtime_error
    {
    public:
        Error(ErrorKind kind, const std::string & message) :
            std::runtime_error(std::string{to_string(kind)} + ": " + message),
            _kind(kind)
        {
        }

        [[nodiscard]] auto kind() const noexcept -> ErrorKind { return _kind; }

    private:
        ErrorKind _kind;
    };
}
