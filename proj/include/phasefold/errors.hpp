#pragma once

#include <stdexcept>
#include <string>

namespace phasefold {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "Error"; }
};

#define PHASEFOLD_ERROR(Name)                                   \
  class Name : public Error {                                   \
   public:                                                      \
    using Error::Error;                                         \
    const char* kind() const noexcept override { return #Name; } \
  }

PHASEFOLD_ERROR(BadParams);
PHASEFOLD_ERROR(WindowTooSmall);
PHASEFOLD_ERROR(NonSummableTail);
PHASEFOLD_ERROR(RatioTooLarge);
PHASEFOLD_ERROR(NDViolated);
PHASEFOLD_ERROR(MSViolated);
PHASEFOLD_ERROR(UnsupportedPairing);
PHASEFOLD_ERROR(NotBandLimited);
PHASEFOLD_ERROR(CertificateViolated);

#undef PHASEFOLD_ERROR

}  // namespace phasefold
