#pragma once

#include <stdexcept>
#include <string>

namespace narrative {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A required file or directory is missing or unreadable.
class IoError : public Error {
public:
    using Error::Error;
};

/// Input content is present but malformed (bad row, bad schema, bad value).
class FormatError : public Error {
public:
    using Error::Error;
};

/// A parameter is outside its documented range.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

}  // namespace narrative
