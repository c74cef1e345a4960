#pragma once

#include <stdexcept>

namespace ytest {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid arguments or violated type invariants (bad thresholds, cyclic
/// models, empty draws, unknown names).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Conflicting variable roles in a query (a == b, role overlaps with the
/// conditioning set, mismatched before/after records).
class RoleConflict : public Error {
public:
    using Error::Error;
};

/// Numerically rank-deficient design matrix (collinear predictors).
class DegenerateDesign : public Error {
public:
    using Error::Error;
};

/// Residual variance vanished relative to the response (perfect fit or a
/// constant response).
class DegenerateFit : public Error {
public:
    using Error::Error;
};

/// Too few rows for the requested fit, or an empty dataset.
class InsufficientData : public Error {
public:
    using Error::Error;
};

/// Filesystem-level failure.
class IoError : public Error {
public:
    using Error::Error;
};

/// Malformed input file contents (CSV cells, model files, priors files).
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace ytest
