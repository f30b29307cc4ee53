#pragma once

#include <Eigen/Dense>

#include "attoqo/sfa.hpp"

namespace attoqo {

enum class SpectralWindow { rectangular, hann };

struct Spectrum {
  Eigen::VectorXd omega;     // uniform bins, spacing 2 pi / (n_fft dt)
  Eigen::VectorXd intensity; // omega^4 |d~(omega)|^2, nonnegative
  SpectralWindow window = SpectralWindow::hann;
  double fundamental = 0.0;       // carrier frequency used for harmonic order
  double cutoff_harmonic = 0.0;   // detected plateau edge, 0 if undetectable
  double bin_width() const { return omega.size() > 1 ? omega(1) - omega(0) : 0.0; }
  double harmonic_order(int i) const { return fundamental > 0.0 ? omega(i) / fundamental : 0.0; }
};

// Radiated intensity I(w) = w^4 |FFT of windowed <d(t)>|^2 up to the global
// normalization fixed by the dipole convention. The time series is zero
// padded to a power of two; only the positive-frequency half is kept.
Spectrum hhg_spectrum(const DipoleRecord& record, SpectralWindow window, double fundamental);

// Plateau-edge detector: scans odd harmonics and reports the last one before
// the intensity enters a sustained collapse (two consecutive odd-to-odd drops
// below 0.22x). Falls back to the last nonzero odd harmonic when the decay is
// gradual; returns 0 when no harmonic content is found.
double detect_cutoff_harmonic(const Spectrum& spectrum);

// Intensity at the harmonic-order-q bin peak (max over the +-0.5 order bins).
double harmonic_peak_intensity(const Spectrum& spectrum, double q);

} // namespace attoqo
