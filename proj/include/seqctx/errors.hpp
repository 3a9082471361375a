#pragma once

#include <stdexcept>
#include <string>

namespace seqctx {

// Base class for all library errors. The CLI maps any Error to exit code 1.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ArityMismatch : Error {
    using Error::Error;
};
struct ArityTooLarge : Error {
    using Error::Error;
};
struct IndexOutOfRange : Error {
    using Error::Error;
};
struct ControlEqualsTarget : Error {
    using Error::Error;
};
struct DimensionMismatch : Error {
    using Error::Error;
};
struct DimensionTooLarge : Error {
    using Error::Error;
};
struct NotInCommutativeClass : Error {
    using Error::Error;
};
struct RationalizationFailure : Error {
    using Error::Error;
};
struct InfeasibleModel : Error {
    using Error::Error;
};
struct MissingContext : Error {
    using Error::Error;
};
struct InvalidModel : Error {
    using Error::Error;
};
struct InvalidPartition : Error {
    using Error::Error;
};
struct ParseError : Error {
    using Error::Error;
};

}  // namespace seqctx
