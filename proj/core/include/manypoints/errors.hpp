#ifndef MANYPOINTS_ERRORS_HPP
#define MANYPOINTS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace manypoints {

// Domain error codes. Anything not listed here is a plain logic_error
// (i.e. a bug, not a rejected input).
enum class Err {
    NotPrime,
    NotPrimePower,
    BudgetExceeded,
    DivisionByZero,
    CtxMismatch,
    SingularModel,
    UnsupportedShape,
    NonIntegerResult,
    NoSuchPlace,
    NonGenericPlace,
    CountMismatch,
    GenusTooSmall,
    SearchBudgetExceeded,
    NoCollision,
    NoRationalPoints,
    NoSplittingPair,
    InconsistentRamification,
    TooFewEntries,
    ParseError,
};

const char* err_name(Err e);

class DomainError : public std::runtime_error {
public:
    DomainError(Err code, std::string detail)
        : std::runtime_error(std::string(err_name(code)) + ": " + detail),
          code_(code), detail_(std::move(detail)) {}

    Err code() const { return code_; }
    const std::string& detail() const { return detail_; }

private:
    Err code_;
    std::string detail_;
};

[[noreturn]] inline void fail(Err code, std::string detail) {
    throw DomainError(code, std::move(detail));
}

} // namespace manypoints

#endif
