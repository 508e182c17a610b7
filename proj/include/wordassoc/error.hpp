#pragma once

#include <stdexcept>
#include <string>

namespace wordassoc {

// Base for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A caller passed an argument outside an operation's domain.
class ArgumentError : public Error {
public:
    using Error::Error;
};

// Invalid configuration (templates, sweeps, generation settings).
class ConfigError : public Error {
public:
    using Error::Error;
};

// Malformed input text: dataset files, completions, norm files.
class ParseError : public Error {
public:
    using Error::Error;
};

// A file could not be read or written.
class IoError : public Error {
public:
    using Error::Error;
};

// A statistic is mathematically undefined for its input (zero SD, zero variance).
class UndefinedResultError : public Error {
public:
    using Error::Error;
};

// The reference dataset has no responses for a requested cue.
class MissingProfileError : public Error {
public:
    using Error::Error;
};

// The generation endpoint rejected our credentials.
class AuthError : public Error {
public:
    using Error::Error;
};

} // namespace wordassoc
