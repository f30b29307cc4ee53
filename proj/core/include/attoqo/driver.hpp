#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "attoqo/pulse.hpp"
#include "attoqo/spectrum.hpp"

namespace attoqo {

// Strong-field observables under non-classical driving fields. In the
// large-amplitude limit the driver's phase-space distribution collapses to a
// classical weight over complex field amplitudes alpha; spectra and scalar
// observables then follow by incoherent averaging of the single-amplitude
// result over that weight. Coherent drivers collapse to a point mass, so the
// averaged pipeline reproduces the direct classical computation through the
// very same code path.

enum class DriverKind { coherent, squeezed_vacuum, displaced_squeezed, thermal };

// Single-mode Gaussian driver family. Mean photon number decomposes as
// |alpha0|^2 + sinh^2 r + nbar. Kind restricts which fields may be nonzero:
//   coherent            alpha0 only
//   squeezed_vacuum     r (theta orients the fluctuation ellipse)
//   displaced_squeezed  alpha0 and r
//   thermal             nbar, optionally displaced by alpha0
struct DriverDistribution {
  DriverKind kind = DriverKind::coherent;
  std::complex<double> alpha0{0.0, 0.0}; // mean amplitude
  double r = 0.0;                        // squeeze magnitude, >= 0
  double theta = 0.0;                    // squeeze angle; major fluctuation axis at theta/2
  double nbar = 0.0;                     // thermal occupation, >= 0

  double mean_photons() const {
    const double sh = std::sinh(r);
    return std::norm(alpha0) + sh * sh + nbar;
  }
};

DriverDistribution coherent_driver(std::complex<double> alpha0);
DriverDistribution squeezed_vacuum_driver(double r, double theta = 0.0);
DriverDistribution displaced_squeezed_driver(std::complex<double> alpha0, double r,
                                             double theta = 0.0);
DriverDistribution thermal_driver(double nbar, std::complex<double> alpha0 = {0.0, 0.0});

// Normalized large-amplitude weight over the alpha plane: an exact point mass
// for coherent drivers, otherwise a Gaussian given by its mean and principal
// per-axis variances. Convention: the fluctuation energy F = sinh^2 r + nbar
// splits across the principal axes as
//   var_major = F e^{+2r} / (2 cosh 2r),  var_minor = F e^{-2r} / (2 cosh 2r),
// so the variance ratio is e^{4r}, the major axis lies at angle theta/2, and
// |mean|^2 + var_major + var_minor equals the driver's mean photon number
// (thermal: isotropic with nbar/2 per axis).
struct ClassicalLimitWeight {
  bool point_mass = true;
  std::complex<double> mean{0.0, 0.0};
  double var_major = 0.0;
  double var_minor = 0.0;
  double axis_angle = 0.0;

  double mean_photons() const { return std::norm(mean) + var_major + var_minor; }
};

ClassicalLimitWeight classical_limit_weight(const DriverDistribution& dist);

enum class SamplerKind { stratified_mc, gauss_hermite };

// Evaluation budget for averaging over a spread weight. Point masses always
// use a single node. Spread weights require nodes >= 16; a smaller budget
// cannot certify the reported precision and raises a domain error.
struct SamplerConfig {
  SamplerKind kind = SamplerKind::stratified_mc;
  int nodes = 256;
  std::uint64_t seed = 0; // stratified MC only
};

// Quadrature nodes drawn from the weight: amplitudes alpha_i with weights
// w_i summing to one.
//  - stratified_mc: Latin-hypercube stratification along each principal axis
//    (one jittered sample per stratum, shuffled pairing), equal weights.
//    Deterministic in (weight, nodes, seed) and independent of threading.
//  - gauss_hermite: tensor rule with m = floor(sqrt(nodes)) points per axis,
//    exact for Gaussian expectations of polynomials up to degree 2m - 1 in
//    each principal coordinate; weights are the normalized tensor weights.
struct WeightNodes {
  std::vector<std::complex<double>> alpha;
  std::vector<double> weight;
  bool stochastic = false; // true when standard errors are statistically meaningful

  int count() const { return static_cast<int>(alpha.size()); }
};

WeightNodes weight_nodes(const ClassicalLimitWeight& weight, const SamplerConfig& cfg);

// Classical pulse family swept by the sampled amplitude: the field scales
// linearly with |alpha| (reaching e0_ref at |alpha| = alpha_ref) and
// arg(alpha) shifts the carrier phase; envelope, carrier frequency and
// duration stay fixed.
struct PulseTemplate {
  double e0_ref = 0.0;   // peak field realized at |alpha| = alpha_ref
  double omega = 0.0;    // carrier frequency
  double cep = 0.0;      // carrier-envelope phase at arg(alpha) = 0
  Envelope envelope = Envelope::sin2;
  double cycles = 0.0;
  double alpha_ref = 1.0;      // reference amplitude, > 0
  int samples_per_cycle = 512; // dipole time-grid resolution
  SpectralWindow window = SpectralWindow::hann;
};

LaserPulse realize_pulse(const PulseTemplate& tpl, std::complex<double> alpha);
TimeGrid template_grid(const PulseTemplate& tpl);

struct AveragedValue {
  double value = 0.0;
  double std_error = 0.0; // zero for deterministic quadrature and point masses
  int nodes = 0;
};

// Weighted average of a pure scalar function of alpha. Node evaluations run
// in parallel; the reduction is a fixed-order sweep over node indices, so the
// result is independent of worker count. Point mass: the evaluator's value at
// the mean, exactly.
AveragedValue averaged_observable(const ClassicalLimitWeight& weight,
                                  const std::function<double(std::complex<double>)>& evaluator,
                                  const SamplerConfig& cfg);

// Component-wise flavor of the same machinery; every component shares the
// nodes, weights and fixed-order reduction. All evaluations must agree on
// the vector length.
struct AveragedVector {
  Eigen::VectorXd value;
  Eigen::VectorXd std_error;
  int nodes = 0;
};

AveragedVector averaged_vector_observable(
    const ClassicalLimitWeight& weight,
    const std::function<Eigen::VectorXd(std::complex<double>)>& evaluator,
    const SamplerConfig& cfg);

// Incoherently averaged emission spectrum: for each node, realize the pulse,
// compute the dipole expectation on the template grid and its radiated
// spectrum, then average bin by bin. `coupling` scales the overall radiated
// intensity by coupling^2 (the classical spectrum is recovered at 1). The
// spectrum's cutoff_harmonic field is re-detected on the averaged intensity.
struct AveragedSpectrum {
  Spectrum spectrum;
  Eigen::VectorXd std_error; // per-bin standard error of the averaged intensity
  int nodes = 0;
};

AveragedSpectrum averaged_hhg_spectrum(const ClassicalLimitWeight& weight,
                                       const PulseTemplate& tpl, const AtomModel& atom,
                                       double coupling, const SamplerConfig& cfg);

// Cutoff-bin detector used for all averaged-spectrum comparisons: the last
// bin whose intensity exceeds 1e-4 x the plateau median. The plateau is the
// bin range from harmonic order 4 up to the last bin within 1e-2 of the
// post-order-4 maximum; its median sets the reference level. Returns -1 when
// the spectrum carries no content above order 4.
int cutoff_bin(const Spectrum& spectrum);

// Comma-separated serialization: "omega,intensity,stderr" after a '#' header
// line, one row per bin.
std::string to_csv(const AveragedSpectrum& averaged);

} // namespace attoqo
