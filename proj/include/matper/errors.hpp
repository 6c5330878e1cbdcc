#ifndef MATPER_ERRORS_HPP
#define MATPER_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace matper {

// Base of all library errors that should surface as exit status 1 in the CLI.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Violated mathematical precondition (singular matrix, zero polynomial, ...).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(what) {}
};

// A configured search bound was exceeded; the result would be a guess.
class BoundExceededError : public DomainError {
public:
    explicit BoundExceededError(const std::string& what) : DomainError(what) {}
};

// Malformed input file.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(what) {}
};

}  // namespace matper

#endif
