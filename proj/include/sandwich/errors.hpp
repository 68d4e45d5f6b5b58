#pragma once

#include <stdexcept>
#include <string>

namespace sandwich {

// Common base so the CLI boundary can catch everything in one place.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ShapeError : Error { using Error::Error; };         // dimension mismatch
struct SingularError : Error { using Error::Error; };      // matrix not invertible
struct RankError : Error { using Error::Error; };          // full-rank precondition failed
struct PreconditionError : Error { using Error::Error; };  // violated operation hypothesis
struct GenerationError : Error { using Error::Error; };    // retry budget exhausted
struct ResourceError : Error { using Error::Error; };      // exhaustion/memory budget exceeded
struct ParseError : Error { using Error::Error; };         // file syntax, line-addressed
struct ValidationError : Error { using Error::Error; };    // scheme condition violated

} // namespace sandwich
