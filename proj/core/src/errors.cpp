#include "manypoints/errors.hpp"

namespace manypoints {

const char* err_name(Err e) {
    switch (e) {
        case Err::NotPrime: return "NotPrime";
        case Err::NotPrimePower: return "NotPrimePower";
        case Err::BudgetExceeded: return "BudgetExceeded";
        case Err::DivisionByZero: return "DivisionByZero";
        case Err::CtxMismatch: return "CtxMismatch";
        case Err::SingularModel: return "SingularModel";
        case Err::UnsupportedShape: return "UnsupportedShape";
        case Err::NonIntegerResult: return "NonIntegerResult";
        case Err::NoSuchPlace: return "NoSuchPlace";
        case Err::NonGenericPlace: return "NonGenericPlace";
        case Err::CountMismatch: return "CountMismatch";
        case Err::GenusTooSmall: return "GenusTooSmall";
        case Err::SearchBudgetExceeded: return "SearchBudgetExceeded";
        case Err::NoCollision: return "NoCollision";
        case Err::NoRationalPoints: return "NoRationalPoints";
        case Err::NoSplittingPair: return "NoSplittingPair";
        case Err::InconsistentRamification: return "InconsistentRamification";
        case Err::TooFewEntries: return "TooFewEntries";
        case Err::ParseError: return "ParseError";
    }
    return "UnknownError";
}

} // namespace manypoints
