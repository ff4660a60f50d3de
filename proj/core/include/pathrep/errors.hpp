#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pathrep {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input data (graph files, automaton files, PMR documents).
class FormatError : public Error {
public:
    FormatError(std::string msg, std::size_t line = 0)
        : Error(line ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Syntax error in a regex or query expression, with a character offset.
class SyntaxError : public Error {
public:
    SyntaxError(std::string msg, std::size_t pos)
        : Error(msg + " at offset " + std::to_string(pos)), pos_(pos) {}
    std::size_t pos() const { return pos_; }

private:
    std::size_t pos_;
};

/// Semantically invalid request (wrong graph, ambiguous automaton, ...).
class SemanticError : public Error {
public:
    using Error::Error;
};

class AmbiguityError : public SemanticError {
public:
    using SemanticError::SemanticError;
};

class GraphMismatchError : public SemanticError {
public:
    using SemanticError::SemanticError;
};

class NotTrimError : public SemanticError {
public:
    using SemanticError::SemanticError;
};

class InfiniteMultisetError : public SemanticError {
public:
    using SemanticError::SemanticError;
};

class UnsupportedError : public SemanticError {
public:
    using SemanticError::SemanticError;
};

/// A configurable cap was exceeded (determinization states, emitted paths).
class ResourceLimitError : public Error {
public:
    using Error::Error;
};

} // namespace pathrep
