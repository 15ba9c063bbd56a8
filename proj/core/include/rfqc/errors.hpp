#pragma once

#include <stdexcept>
#include <string>

namespace rfqc {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the operation's domain (bad index, empty input, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A hardware-style resource limit was exceeded (envelope memory, tone count, readout outputs).
class CapacityError : public Error {
public:
    using Error::Error;
};

/// Two scheduled instructions occupy the same channel at the same time.
class ConflictError : public Error {
public:
    using Error::Error;
};

/// Two readout tones land in the same frequency bin.
class CollisionError : public Error {
public:
    CollisionError(const std::string& what, std::size_t first, std::size_t second)
        : Error(what), first_(first), second_(second) {}

    std::size_t first() const noexcept { return first_; }
    std::size_t second() const noexcept { return second_; }

private:
    std::size_t first_;
    std::size_t second_;
};

/// No configuration on the search grid satisfies the constraints.
class InfeasibleError : public Error {
public:
    using Error::Error;
};

/// A fit or calibration could not produce a result.
class FitError : public Error {
public:
    using Error::Error;
};

/// File-system or format failure while reading/writing artifacts.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace rfqc
