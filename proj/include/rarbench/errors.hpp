#pragma once

#include <stdexcept>
#include <string>

namespace rarbench {

// Bad caller-supplied input (empty question, out-of-range variant, ...).
class InvalidInputError : public std::runtime_error {
public:
    explicit InvalidInputError(const std::string& what) : std::runtime_error(what) {}
};

// A data/fixture file failed to parse or violated its schema.
class LoadError : public std::runtime_error {
public:
    explicit LoadError(const std::string& what) : std::runtime_error(what) {}
};

// Network-level failure after retries were exhausted (or a non-retryable status).
class TransportError : public std::runtime_error {
public:
    TransportError(const std::string& what, int status)
        : std::runtime_error(what), status_(status) {}
    int status() const { return status_; }

private:
    int status_;
};

// Authentication rejected by the endpoint; never retried.
class AuthError : public std::runtime_error {
public:
    explicit AuthError(const std::string& what) : std::runtime_error(what) {}
};

// The endpoint replied but the body did not have the expected shape.
class ProtocolError : public std::runtime_error {
public:
    explicit ProtocolError(const std::string& what) : std::runtime_error(what) {}
};

// A replay backend had no canned response for the request.
class FixtureMissError : public std::runtime_error {
public:
    explicit FixtureMissError(const std::string& what) : std::runtime_error(what) {}
};

// Comparison/report construction failed (e.g. task sets differ between runs).
class BuildError : public std::runtime_error {
public:
    explicit BuildError(const std::string& what) : std::runtime_error(what) {}
};

// A run directory cannot be resumed (missing/corrupt config snapshot).
class UnrecoverableRunError : public std::runtime_error {
public:
    explicit UnrecoverableRunError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rarbench
