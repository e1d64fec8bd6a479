#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ohc {

enum class ErrorKind {
    SelfLoop,
    TwoCycle,
    DuplicateArc,
    OutOfRange,
    TooLarge,
    InvalidPath,
    EndpointsInDifferentClasses,
    DegenerateClassOrder,
    PartitionNotCovering,
    OverlappingClasses,
    InfeasibleA,
    Infeasible,
    HypothesisViolated,
    Parse,
    NoConnector,
    CapacityExhausted,
    VertexNotAbsorbable,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

/// Edge-list syntax or validity error; `line` is 1-based.
class ParseError : public Error {
public:
    ParseError(ErrorKind kind, std::size_t line, const std::string& what)
        : Error(kind, "line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

}  // namespace ohc
