#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace facet {

// Base class for all library errors. Subclasses map 1:1 onto the failure
// kinds named in the operation contracts so callers can catch selectively.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct EmptyTemplate : Error {
    explicit EmptyTemplate(const std::string& msg) : Error(msg) {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& msg) : Error(msg) {}
};

struct ZeroVector : Error {
    explicit ZeroVector(const std::string& msg) : Error(msg) {}
};

// File-format violation; `offset` is the byte position of the problem.
struct FormatError : Error {
    std::size_t offset;
    FormatError(const std::string& msg, std::size_t at)
        : Error(msg + " (byte offset " + std::to_string(at) + ")"), offset(at) {}
};

struct EmptyInput : Error {
    explicit EmptyInput(const std::string& msg) : Error(msg) {}
};

struct InvalidStop : Error {
    explicit InvalidStop(const std::string& msg) : Error(msg) {}
};

struct InvalidK : Error {
    explicit InvalidK(const std::string& msg) : Error(msg) {}
};

struct EmptySet : Error {
    explicit EmptySet(const std::string& msg) : Error(msg) {}
};

struct EmptyClass : Error {
    explicit EmptyClass(const std::string& msg) : Error(msg) {}
};

struct BadFeature : Error {
    explicit BadFeature(const std::string& msg) : Error(msg) {}
};

struct MissingLabel : Error {
    explicit MissingLabel(const std::string& msg) : Error(msg) {}
};

struct NoMatedProbes : Error {
    explicit NoMatedProbes(const std::string& msg) : Error(msg) {}
};

struct NotOpenSet : Error {
    explicit NotOpenSet(const std::string& msg) : Error(msg) {}
};

struct InvalidConfig : Error {
    explicit InvalidConfig(const std::string& msg) : Error(msg) {}
};

struct InvalidInput : Error {
    explicit InvalidInput(const std::string& msg) : Error(msg) {}
};

}  // namespace facet
