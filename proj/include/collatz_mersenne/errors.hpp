#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cm {

// Root of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class RangeError : public Error {
public:
    using Error::Error;
};

// A path did not reach 1 within the configured step ceiling.
class CycleGuardExceeded : public Error {
public:
    CycleGuardExceeded(const std::string& what, unsigned long long limit)
        : Error(what), limit_(limit) {}
    unsigned long long limit() const noexcept { return limit_; }

private:
    unsigned long long limit_;
};

class DegenerateFitError : public Error {
public:
    using Error::Error;
};

class DegenerateStatsError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t offset, const std::string& expected)
        : Error("parse error at offset " + std::to_string(offset) + ": expected " + expected),
          offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

class ChecksumMismatch : public Error {
public:
    using Error::Error;
};

class OriginMismatch : public Error {
public:
    using Error::Error;
};

class VersionUnsupported : public Error {
public:
    using Error::Error;
};

class MalformedField : public Error {
public:
    using Error::Error;
};

}  // namespace cm
