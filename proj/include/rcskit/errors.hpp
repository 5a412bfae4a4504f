#pragma once

#include <stdexcept>
#include <string>

namespace rcskit {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (d <= 0, negative power, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

class LengthMismatch : public Error {
public:
    using Error::Error;
};

/// Positive-support family handed a sample x <= 0.
class NonPositiveSample : public Error {
public:
    using Error::Error;
};

/// Sample with zero variance (or otherwise unusable for fitting).
class DegenerateSample : public Error {
public:
    using Error::Error;
};

class NonConvergence : public Error {
public:
    using Error::Error;
};

class InsufficientData : public Error {
public:
    using Error::Error;
};

/// All observations sit at the same distance, so the path-loss exponent is unidentifiable.
class DegenerateGeometry : public Error {
public:
    using Error::Error;
};

/// Deterministic RCS model evaluated to a non-positive value.
class NonPositiveRcs : public Error {
public:
    using Error::Error;
};

class UnsupportedFamily : public Error {
public:
    using Error::Error;
};

/// Input file structure is wrong (header, column count, missing file, malformed JSON).
class SchemaError : public Error {
public:
    using Error::Error;
};

/// A field parsed but holds an unacceptable value. Message names the row.
class ValueError : public Error {
public:
    using Error::Error;
};

}  // namespace rcskit
