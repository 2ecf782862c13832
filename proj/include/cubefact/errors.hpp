#pragma once

#include <stdexcept>

namespace cubefact {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotAnEdgeError : Error { using Error::Error; };
struct DimensionMismatchError : Error { using Error::Error; };
struct SharedEdgeError : Error { using Error::Error; };
struct EscapingEdgeError : Error { using Error::Error; };
struct InvalidMatchingError : Error { using Error::Error; };
struct InvalidFactorizationError : Error { using Error::Error; };
struct NotSwitchableError : Error { using Error::Error; };
struct NotDirectionRespectingError : Error { using Error::Error; };
struct BlockTooLargeError : Error { using Error::Error; };
struct DimensionTooLargeError : Error { using Error::Error; };
struct UnsupportedDimensionError : Error { using Error::Error; };
struct OpenProblemError : Error { using Error::Error; };
struct PreconditionError : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct CheckpointMismatchError : Error { using Error::Error; };

}  // namespace cubefact
