#pragma once

#include <stdexcept>
#include <string>

namespace solvact {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input (bad rational literal, ragged matrix, ...).
class InputError : public Error {
public:
    using Error::Error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

class UnsupportedDegree : public Error {
public:
    using Error::Error;
};

/// A Sturm query whose interval endpoint is itself a root.
class EndpointRoot : public Error {
public:
    using Error::Error;
};

class FieldMismatch : public Error {
public:
    using Error::Error;
};

/// Raised when a stage cannot run because its hypotheses fail. The CLI maps
/// every subclass to exit code 3.
class PreconditionError : public Error {
public:
    using Error::Error;
};

class SingularMatrix : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

class NoPositiveRealEigenvalue : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

class DegenerateEigenvalue : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

class UnsupportedStructure : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

class GeometryError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

class DegenerateDisplacement : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

class NoInteriorFixedPoint : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

/// det(A^T - I) = 0: the rotation-vector candidates form a continuum.
class InfiniteFamily : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

}  // namespace solvact
