#include "attoqo/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "attoqo/errors.hpp"
#include "attoqo/fftwrap.hpp"

namespace attoqo {
namespace {

const double kPi = std::acos(-1.0);

} // namespace

Spectrum hhg_spectrum(const DipoleRecord& record, SpectralWindow window, double fundamental) {
  const int n = record.grid.n;
  require(n >= 2 && record.values.size() == n, errc::dimension, "empty dipole record");
  require(fundamental >= 0.0, errc::domain, "fundamental frequency must be non-negative");

  std::vector<std::complex<double>> sig(n);
  for (int i = 0; i < n; ++i) {
    double w = 1.0;
    if (window == SpectralWindow::hann) w = 0.5 * (1.0 - std::cos(2.0 * kPi * i / (n - 1)));
    sig[i] = w * record.values(i);
  }
  const auto ft = fft_forward(sig); // zero padded to a power of two
  const int n_fft = static_cast<int>(ft.size());
  const int half = n_fft / 2;
  const double d_omega = 2.0 * kPi / (n_fft * record.grid.dt);

  Spectrum sp;
  sp.window = window;
  sp.fundamental = fundamental;
  sp.omega.resize(half);
  sp.intensity.resize(half);
  for (int k = 0; k < half; ++k) {
    const double w = d_omega * k;
    sp.omega(k) = w;
    const double w2 = w * w;
    sp.intensity(k) = w2 * w2 * std::norm(ft[k]) * record.grid.dt * record.grid.dt;
  }
  sp.cutoff_harmonic = detect_cutoff_harmonic(sp);
  return sp;
}

double harmonic_peak_intensity(const Spectrum& spectrum, double q) {
  require(spectrum.fundamental > 0.0, errc::domain,
          "harmonic lookup needs a positive fundamental");
  const double dw = spectrum.bin_width();
  const int lo = std::max(0, static_cast<int>(std::floor((q - 0.5) * spectrum.fundamental / dw)));
  const int hi = std::min<int>(spectrum.omega.size() - 1,
                               static_cast<int>(std::ceil((q + 0.5) * spectrum.fundamental / dw)));
  double peak = 0.0;
  for (int k = lo; k <= hi; ++k) peak = std::max(peak, spectrum.intensity(k));
  return peak;
}

double detect_cutoff_harmonic(const Spectrum& spectrum) {
  if (spectrum.fundamental <= 0.0 || spectrum.omega.size() < 8) return 0.0;
  const double max_order = spectrum.omega(spectrum.omega.size() - 1) / spectrum.fundamental;
  if (max_order < 9.0) return 0.0;

  // Plateau edge: the last odd harmonic before the intensity enters a
  // sustained collapse (two consecutive odd-to-odd drops of more than ~6.5 dB
  // each). A single-interval dip is ignored so that plateau structure does
  // not trigger a false edge.
  const double kDropRatio = 0.22;
  double last_positive = 0.0;
  for (int q = 7; q + 4 <= static_cast<int>(max_order); q += 2) {
    const double i0 = harmonic_peak_intensity(spectrum, q);
    const double i1 = harmonic_peak_intensity(spectrum, q + 2);
    const double i2 = harmonic_peak_intensity(spectrum, q + 4);
    if (i0 > 0.0) last_positive = q;
    if (i0 > 0.0 && i1 < kDropRatio * i0 && i2 < kDropRatio * i1) return q;
  }
  return last_positive;
}

} // namespace attoqo
