#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ctdb {

// Root of all engine errors. Statement execution catches this type and
// reports the message without tearing down the session.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// condition ---------------------------------------------------------------

class DnfBlowupError : public Error {
public:
    using Error::Error;
};

class EnumerationCapError : public Error {
public:
    using Error::Error;
};

class UnboundVariableError : public Error {
public:
    using Error::Error;
};

class UnknownVariableError : public Error {
public:
    using Error::Error;
};

class InvalidValueError : public Error {
public:
    using Error::Error;
};

// ctable / algebra / poss --------------------------------------------------

class SchemaMismatchError : public Error {
public:
    using Error::Error;
};

class ColumnMismatchError : public Error {
public:
    using Error::Error;
};

class SetTooLargeError : public Error {
public:
    using Error::Error;
};

class CapacityError : public Error {
public:
    using Error::Error;
};

// csql ----------------------------------------------------------------------

class LexError : public Error {
public:
    LexError(std::string message, std::size_t offset)
        : Error(std::move(message) + " at offset " + std::to_string(offset)), offset_(offset) {}

    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

class ParseError : public Error {
public:
    ParseError(std::string message, std::size_t offset)
        : Error(std::move(message) + " at offset " + std::to_string(offset)), offset_(offset) {}

    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

// engine ---------------------------------------------------------------------

class UnknownTableError : public Error {
public:
    using Error::Error;
};

class UnknownColumnError : public Error {
public:
    using Error::Error;
};

class ArityMismatchError : public Error {
public:
    using Error::Error;
};

class UnknownLiteralError : public Error {
public:
    using Error::Error;
};

class DuplicateObjectError : public Error {
public:
    using Error::Error;
};

// storage ---------------------------------------------------------------------

class IoError : public Error {
public:
    using Error::Error;
};

class FormatError : public Error {
public:
    FormatError(std::string message, std::size_t line)
        : Error("line " + std::to_string(line) + ": " + std::move(message)), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

class VersionError : public Error {
public:
    using Error::Error;
};

} // namespace ctdb
