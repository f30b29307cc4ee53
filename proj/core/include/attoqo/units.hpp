#pragma once

#include <cmath>

#include "attoqo/errors.hpp"

// Unit conversions at the configuration boundary. Everything inside the
// library is in Hartree atomic units (hbar = e = m_e = 1).
namespace attoqo::units {

// photon energy of a 1 nm wave in Hartree: h*c expressed in eV*nm over E_h in eV
inline constexpr double kEvNmPerHartree = 1239.841984 / 27.211386245988;

// atomic unit of intensity in W/cm^2
inline constexpr double kIntensityAu = 3.50944758e16;

// atomic unit of time in femtoseconds
inline constexpr double kFsPerAu = 0.024188843265857;

inline double omega_from_wavelength_nm(double lambda_nm) {
  require(lambda_nm > 0.0, errc::domain, "wavelength must be positive");
  return kEvNmPerHartree / lambda_nm;
}

inline double field_from_intensity_w_cm2(double intensity) {
  require(intensity >= 0.0, errc::domain, "intensity must be non-negative");
  return std::sqrt(intensity / kIntensityAu);
}

} // namespace attoqo::units
