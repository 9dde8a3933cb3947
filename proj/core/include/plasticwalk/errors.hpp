#pragma once

#include <stdexcept>

namespace plasticwalk {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter lies outside its admissible range (c outside [0,1], c·kappa > 1, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// m > 0 while sin(theta) = 0, so the mass angle zeta is undefined.
class SingularMassError : public Error {
 public:
  using Error::Error;
};

/// A translation-invariant operation was requested on an inhomogeneous profile.
class InhomogeneousError : public Error {
 public:
  using Error::Error;
};

/// Problem too large for a dense method.
class SizeError : public Error {
 public:
  using Error::Error;
};

/// Linear solve failed.
class SolverError : public Error {
 public:
  using Error::Error;
};

/// Statevector budget exceeded.
class BudgetError : public Error {
 public:
  using Error::Error;
};

/// A QCA state carries weight outside the one-particle sector.
class SectorError : public Error {
 public:
  using Error::Error;
};

/// Slater orbitals drifted too far from orthonormality.
class OrthogonalityError : public Error {
 public:
  using Error::Error;
};

/// Wave packet narrower than the grid can resolve.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

/// Order fit requested on errors at or below the noise floor.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

}  // namespace plasticwalk
