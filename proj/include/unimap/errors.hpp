#pragma once

#include <stdexcept>
#include <string>

namespace unimap {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Source-location-aware parse failure for the map/recipe text formats.
class ParseError : public Error {
public:
    ParseError(int line, int column, const std::string& msg)
        : Error("parse error at " + std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
          line(line), column(column) {}
    int line;
    int column;
};

class DimensionMismatch : public Error {
public:
    explicit DimensionMismatch(const std::string& msg) : Error(msg) {}
};

// Raised when an exact evaluation path meets sin/cos/exp.
class InexactRequired : public Error {
public:
    explicit InexactRequired(const std::string& msg) : Error(msg) {}
};

// A phi node was evaluated/differentiated without an attached definition.
class MissingPhi : public Error {
public:
    explicit MissingPhi(const std::string& msg) : Error(msg) {}
};

// to_poly hit a node that has no polynomial form; names the node.
class NotPolynomial : public Error {
public:
    explicit NotPolynomial(const std::string& node) : Error("not polynomial: " + node), offending_node(node) {}
    std::string offending_node;
};

// Intermediate term count exceeded the configured cap.
class ResourceLimit : public Error {
public:
    explicit ResourceLimit(const std::string& msg) : Error(msg) {}
};

class NotStronglyNilpotent : public Error {
public:
    NotStronglyNilpotent(int stage, const std::string& msg)
        : Error("not strongly nilpotent (stage " + std::to_string(stage) + "): " + msg), stage(stage) {}
    int stage;
};

class PreconditionError : public Error {
public:
    explicit PreconditionError(const std::string& msg) : Error(msg) {}
};

// Dependence restriction of a recipe was violated (names the entry).
class DependenceViolation : public Error {
public:
    explicit DependenceViolation(const std::string& msg) : Error(msg) {}
};

// Signals an internal consistency failure: a certified claim did not verify.
class VerificationFailure : public Error {
public:
    explicit VerificationFailure(const std::string& msg) : Error(msg) {}
};

} // namespace unimap
