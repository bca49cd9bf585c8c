#pragma once

#include <stdexcept>
#include <string>

namespace steklov {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Argument outside the stated range of a special function or constructor.
struct DomainError : Error {
  using Error::Error;
};

/// Improper integral with endpoint exponent <= -1.
struct DivergentIntegral : Error {
  using Error::Error;
};

/// Untagged integrand that keeps growing under node doubling.
struct PossiblyDivergent : Error {
  using Error::Error;
};

struct UnsupportedFamily : Error {
  using Error::Error;
};

/// |mu| >= 1 somewhere: the map is not quasiconformal.
struct DegenerateDilatation : Error {
  using Error::Error;
};

/// Weight density is not square integrable.
struct NotInL2 : Error {
  using Error::Error;
};

/// Origin candidate for which the domain is not starlike.
struct InfeasibleOrigin : Error {
  using Error::Error;
};

/// Too few positive eigenvalues survive the rank truncation.
struct InsufficientBasis : Error {
  using Error::Error;
};

/// A proven eigenvalue inequality failed beyond tolerance; signals a bug.
struct BoundViolation : Error {
  using Error::Error;
};

struct InvalidConfig : Error {
  using Error::Error;
};

}  // namespace steklov
