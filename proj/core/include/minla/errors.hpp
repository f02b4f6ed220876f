#pragma once

#include <stdexcept>
#include <string>

namespace minla {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Two values that must describe the same node set do not.
class InstanceMismatch : public Error {
public:
    using Error::Error;
};

/// Malformed or invalid input: traces, permutations, configurations.
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// An exact exponential search was asked to exceed its item cap.
class CapacityExceeded : public Error {
public:
    using Error::Error;
};

/// An adaptive adversary was fed a state it cannot respond to.
class ProtocolError : public Error {
public:
    using Error::Error;
};

}  // namespace minla
