#ifndef WITNESSKIT_ERRORS_HPP
#define WITNESSKIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace witnesskit {

/// Base for all library errors; callers that only care about "bad input" can catch this.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A documented precondition on the arguments was violated (bad n, k, tolerance, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

class FullRankInput : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

class SingularMap : public Error {
public:
    using Error::Error;
};

class IndefiniteInput : public Error {
public:
    using Error::Error;
};

class ZeroInput : public Error {
public:
    using Error::Error;
};

/// Malformed or mismatching serialized data.
class FormatError : public Error {
public:
    using Error::Error;
};

inline void require(bool cond, const std::string& what)
{
    if (!cond) throw PreconditionError(what);
}

} // namespace witnesskit

#endif
