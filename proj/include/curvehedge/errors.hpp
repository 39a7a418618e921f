#pragma once

#include <stdexcept>
#include <string>

namespace curvehedge {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the domain of an operation (e.g. t > T).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Violated operation contract (bad cash flow placement, wrong plan kind, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Linear solve or parameter calibration failed.
class CalibrationError : public Error {
public:
    using Error::Error;
};

/// The requested quantity exists only for some methods or inputs.
class NotWellDefinedError : public Error {
public:
    using Error::Error;
};

/// A curve evaluation hit a non-positive Smith-Wilson denominator.
class DefectError : public Error {
public:
    using Error::Error;
};

/// A functional returned a non-finite value during differencing.
class EvaluationError : public Error {
public:
    using Error::Error;
};

/// Malformed input file or document.
class ParseError : public Error {
public:
    using Error::Error;
};

/// File could not be opened or written.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace curvehedge
