#pragma once

#include <stdexcept>
#include <string>

namespace riesz {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionMismatch : Error {
    DimensionMismatch(std::size_t a, std::size_t b)
        : Error("dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b)) {}
};

struct UndefinedSum : Error {
    using Error::Error;
};

struct UndefinedProduct : Error {
    using Error::Error;
};

struct NegativeScaleOnInfinite : Error {
    using Error::Error;
};

struct PreconditionViolated : Error {
    using Error::Error;
};

struct ShapeMismatch : Error {
    using Error::Error;
};

struct IndexError : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

struct UnknownLemma : Error {
    using Error::Error;
};

struct DepthTooLarge : Error {
    using Error::Error;
};

struct EmptyCheckpoints : Error {
    using Error::Error;
};

}  // namespace riesz
