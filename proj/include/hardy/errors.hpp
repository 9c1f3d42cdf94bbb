#pragma once

#include <stdexcept>
#include <string>

namespace hardy {

/// Base class of every error raised by the library.
class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed or out-of-range arguments (dimension mismatch, negative σ, ...).
class InputError : public Error
{
  public:
    using Error::Error;
};

/// A point was outside the open domain an operation requires.
class DomainError : public Error
{
  public:
    using Error::Error;
};

/// The operation is not defined for this domain variant or dimension.
class UnsupportedError : public Error
{
  public:
    using Error::Error;
};

class NoRootError : public Error
{
  public:
    using Error::Error;
};

/// Degenerate geometry, e.g. a vanishing volume-ratio estimate.
class DegenerateError : public Error
{
  public:
    using Error::Error;
};

/// A quadrature integrand produced a non-finite sample.
class IntegrandError : public Error
{
  public:
    IntegrandError(std::string const& what, double location)
        : Error(what), location_(location)
    {
    }
    double location() const { return location_; }

  private:
    double location_;
};

} // namespace hardy
