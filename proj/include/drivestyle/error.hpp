#pragma once

#include <stdexcept>
#include <string>

namespace drivestyle {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text (a log line, a CSV row, a JSON document).
class ParseError : public Error {
public:
    using Error::Error;
};

/// A file could not be opened, read or written.
class IoError : public Error {
public:
    using Error::Error;
};

/// Arguments outside the documented domain of an operation.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

}  // namespace drivestyle
