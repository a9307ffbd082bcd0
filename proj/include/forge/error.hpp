#pragma once

#include <stdexcept>
#include <string>

namespace forge {

// Base for all errors raised by the library. Specific conditions named in
// the module contracts get their own type so tests can catch them precisely.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct Underflow : Error {
    explicit Underflow(const std::string& what) : Error(what) {}
};

struct DivideByZero : Error {
    explicit DivideByZero(const std::string& what) : Error(what) {}
};

struct DuplicateBlockName : Error {
    explicit DuplicateBlockName(const std::string& name)
        : Error("duplicate block name: " + name) {}
};

struct ZeroWidth : Error {
    explicit ZeroWidth(const std::string& name)
        : Error("zero-width block: " + name) {}
};

struct BlockOverflow : Error {
    std::string block;
    explicit BlockOverflow(const std::string& name)
        : Error("value does not fit block: " + name), block(name) {}
};

struct UnknownBlock : Error {
    explicit UnknownBlock(const std::string& name)
        : Error("unknown block: " + name) {}
};

struct ShapeMismatch : Error {
    explicit ShapeMismatch(const std::string& what) : Error(what) {}
};

struct GuardExceeded : Error {
    explicit GuardExceeded(const std::string& what) : Error(what) {}
};

struct TooLarge : Error {
    explicit TooLarge(const std::string& what) : Error(what) {}
};

struct BadCompositionSum : Error {
    explicit BadCompositionSum(const std::string& what) : Error(what) {}
};

struct AllocationFailed : Error {
    explicit AllocationFailed(const std::string& what) : Error(what) {}
};

struct NotSatisfying : Error {
    explicit NotSatisfying(const std::string& what) : Error(what) {}
};

struct NotASpecialCaseEdge : Error {
    explicit NotASpecialCaseEdge(const std::string& what) : Error(what) {}
};

struct IndivisibleGroup : Error {
    explicit IndivisibleGroup(const std::string& what) : Error(what) {}
};

struct ReleaseDateExceedsM : Error {
    explicit ReleaseDateExceedsM(const std::string& what) : Error(what) {}
};

struct SchemaViolation : Error {
    std::string path;
    SchemaViolation(const std::string& json_path, const std::string& what)
        : Error("schema violation at " + json_path + ": " + what), path(json_path) {}
};

struct MalformedHeader : Error {
    explicit MalformedHeader(const std::string& what) : Error(what) {}
};

struct LiteralOutOfRange : Error {
    explicit LiteralOutOfRange(const std::string& what) : Error(what) {}
};

struct EmptyClause : Error {
    explicit EmptyClause(const std::string& what) : Error(what) {}
};

struct InvariantViolation : Error {
    explicit InvariantViolation(const std::string& what) : Error(what) {}
};

}  // namespace forge
