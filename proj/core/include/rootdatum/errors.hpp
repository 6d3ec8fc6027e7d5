#pragma once

#include <stdexcept>
#include <string>

namespace rootdatum {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define ROOTDATUM_DECLARE_ERROR(Name)        \
  class Name : public Error {                \
   public:                                   \
    using Error::Error;                      \
  }

/// A p-adic element with positive valuation was asked for its inverse.
ROOTDATUM_DECLARE_ERROR(NonUnit);
/// Hensel lifting was asked for a square root that does not exist.
ROOTDATUM_DECLARE_ERROR(NotASquare);
/// A decision depends on p-adic digits outside the trusted precision window.
ROOTDATUM_DECLARE_ERROR(PrecisionLoss);
/// Sublattice containment failed where it was required.
ROOTDATUM_DECLARE_ERROR(NotContained);
ROOTDATUM_DECLARE_ERROR(NonInvertibleGenerator);
ROOTDATUM_DECLARE_ERROR(OrderCapExceeded);
/// An enumeration (group closure, reflection orbit, search) hit its cap.
ROOTDATUM_DECLARE_ERROR(CapExceeded);
ROOTDATUM_DECLARE_ERROR(Inconsistent);
ROOTDATUM_DECLARE_ERROR(RingMismatch);
ROOTDATUM_DECLARE_ERROR(WrongRing);
ROOTDATUM_DECLARE_ERROR(BadKey);
ROOTDATUM_DECLARE_ERROR(DimensionMismatch);

#undef ROOTDATUM_DECLARE_ERROR

}  // namespace rootdatum
