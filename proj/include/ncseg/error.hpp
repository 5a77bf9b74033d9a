#pragma once

#include <stdexcept>
#include <string>

namespace ncseg {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

// File I/O failures. Each PGM failure mode has its own type so callers and
// tests can tell them apart.
class FileNotFound : public Error {
public:
    using Error::Error;
};

class MalformedHeader : public Error {
public:
    using Error::Error;
};

class TruncatedPayload : public Error {
public:
    using Error::Error;
};

class WriteError : public Error {
public:
    using Error::Error;
};

// Graph / spectral failures.
class EmptySide : public Error {
public:
    using Error::Error;
};

class ZeroVolume : public Error {
public:
    using Error::Error;
};

class DisconnectedGraph : public Error {
public:
    using Error::Error;
};

class EigenSolverError : public Error {
public:
    using Error::Error;
};

class DegenerateSplit : public Error {
public:
    using Error::Error;
};

/// Wraps a failure inside one pipeline stage; `stage()` names it.
class StageError : public Error {
public:
    StageError(std::string stage, const std::string& what)
        : Error(stage + ": " + what), stage_(std::move(stage)) {}

    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

}  // namespace ncseg
