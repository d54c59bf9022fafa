#pragma once

#include <stdexcept>
#include <string>

namespace lzero {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad caller input (not a prime, non-positive modulus, ...). Maps to CLI exit 2.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

class DivisionByZero : public Error {
public:
    DivisionByZero() : Error("division by zero") {}
    using Error::Error;
};

class IncompatibleOrders : public Error {
public:
    using Error::Error;
};

class NotPrimePower : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class ImprimitiveInput : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class NoOrderPCharacter : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

/// The working precision could not resolve a quantity even at the hard cap.
class PrecisionExhausted : public Error {
public:
    using Error::Error;
};

/// A proven statement failed to hold on computed data. This always means a bug
/// in the arithmetic, never a mathematical finding. Maps to CLI exit 1.
class TheoremViolation : public Error {
public:
    using Error::Error;
};

class NonIntegralResult : public TheoremViolation {
public:
    using TheoremViolation::TheoremViolation;
};

class ClassificationViolation : public TheoremViolation {
public:
    using TheoremViolation::TheoremViolation;
};

class IntegralityViolation : public TheoremViolation {
public:
    using TheoremViolation::TheoremViolation;
};

class CongruenceViolation : public TheoremViolation {
public:
    using TheoremViolation::TheoremViolation;
};

} // namespace lzero
