#ifndef MPS_ERRORS_HPP
#define MPS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mps {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input text (arena files, formulas, configs, proof documents).
/// Carries a 1-based line/column when the source position is known.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, int line, int column)
        : Error(msg + " at line " + std::to_string(line) + ", column " +
                std::to_string(column)),
          line_(line),
          column_(column) {}

    explicit ParseError(const std::string& msg) : Error(msg), line_(0), column_(0) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

/// Semantically invalid input: unknown identifiers, bad references,
/// violated file-format constraints.
class InputError : public Error {
public:
    using Error::Error;
};

/// A caller broke an API precondition (e.g. extracting from an unsolved tree).
class ContractViolation : public Error {
public:
    using Error::Error;
};

}  // namespace mps

#endif
