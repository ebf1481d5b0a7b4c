#pragma once

#include <stdexcept>
#include <string>

namespace sfp {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A matrix handed to an SPD factorization had a non-positive pivot.
class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

/// A linear system was numerically singular.
class SingularSystem : public Error {
 public:
  using Error::Error;
};

/// Half-space / hyperplane constructed with a zero normal vector.
class ZeroNormal : public Error {
 public:
  using Error::Error;
};

class EmptyBox : public Error {
 public:
  using Error::Error;
};

/// A point fell outside the domain of a Bregman generator.
class DomainViolation : public Error {
 public:
  using Error::Error;
};

/// The 1-D dual problem of a Bregman projection is unbounded below.
class NoFiniteMinimizer : public Error {
 public:
  using Error::Error;
};

/// Region indices fail to partition the voxel set.
class PartitionError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace sfp
