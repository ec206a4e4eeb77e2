#pragma once

#include <stdexcept>
#include <string>

namespace pwreg {

// Base class for every error the library throws. The CLI maps these to
// machine-readable error JSON and nonzero exit codes.
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

private:
  std::string kind_;
};

#define PWREG_DEFINE_ERROR(NAME)                          \
  class NAME : public Error {                             \
  public:                                                 \
    explicit NAME(const std::string& what)                \
        : Error(#NAME, what) {}                           \
  }

// simplicial
PWREG_DEFINE_ERROR(AffineDependence);
PWREG_DEFINE_ERROR(BadIntersection);
PWREG_DEFINE_ERROR(ComponentSplit);

// polyalg
PWREG_DEFINE_ERROR(DenominatorZero);
PWREG_DEFINE_ERROR(NonFinite);
PWREG_DEFINE_ERROR(RankDeficient);

// extend
PWREG_DEFINE_ERROR(IncompatibleFacetData);
PWREG_DEFINE_ERROR(DenominatorVanishes);
PWREG_DEFINE_ERROR(DegreeCapExceeded);

// grassmann
PWREG_DEFINE_ERROR(ShapeMismatch);
PWREG_DEFINE_ERROR(OscillationTooLarge);
PWREG_DEFINE_ERROR(RankLost);

// sphere
PWREG_DEFINE_ERROR(ChartPole);
PWREG_DEFINE_ERROR(NoChartFound);

// pipeline
PWREG_DEFINE_ERROR(SubdivisionCapExceeded);
PWREG_DEFINE_ERROR(CertificateMismatch);
PWREG_DEFINE_ERROR(OutsideDomain);

// bundles
PWREG_DEFINE_ERROR(InvalidCertificate);
PWREG_DEFINE_ERROR(ComplexMismatch);
PWREG_DEFINE_ERROR(NotInjectiveOnFibers);

// io
PWREG_DEFINE_ERROR(BadInput);

#undef PWREG_DEFINE_ERROR

}  // namespace pwreg
