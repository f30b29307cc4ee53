#pragma once

#include <complex>

#include <Eigen/Dense>

#include "attoqo/correlation.hpp"
#include "attoqo/gaussian_states.hpp"
#include "attoqo/sfa.hpp"

namespace attoqo {

// Light-matter coupling for the multimode field description. The default g
// is a rescaling knob (the mode volume is not fixed here); it is chosen so
// benchmark photon numbers land in an O(1)..O(1e3) window.
struct CouplingConfig {
  double g = 1e-4; // coupling strength per mode, scales as sqrt(q) per harmonic
  int q_cutoff = 2;
  int n_emitters = 1; // identical uncorrelated emitters (mean-field scaling)
};

// Coherent amplitudes of the harmonic modes q = 1..q_cutoff. chi(0) is the
// fundamental-mode shift delta_alpha; alpha_in the driver amplitude it
// depletes.
struct HarmonicAmplitudes {
  Eigen::VectorXcd chi;
  std::complex<double> alpha_in = 0.0;
  int q_cutoff() const { return static_cast<int>(chi.size()); }
};

// chi_q = N g sqrt(q) int dt' <d(t')> e^{-i q w t'}, trapezoid quadrature
// over the record grid. For nonzero alpha_in the depleted driver magnitude
// |alpha_in + chi_1| must not exceed |alpha_in| (within 1e-9): a driver phase
// inconsistent with energy flow into the harmonics is a domain error (use
// driver_amplitude to construct a consistent one).
HarmonicAmplitudes coherent_amplitudes(const DipoleRecord& record, const CouplingConfig& coupling,
                                       std::complex<double> alpha_in = 0.0);

// Driver amplitude of the given magnitude whose phase opposes the
// fundamental-mode shift of the record, so that emission depletes the pump.
std::complex<double> driver_amplitude(const DipoleRecord& record, const CouplingConfig& coupling,
                                      double magnitude);

struct DepletionTrace {
  TimeGrid grid;
  Eigen::VectorXd magnitude; // |alpha_in + delta_alpha(t_i)|
};

// Running partial integral of chi_1: the pump amplitude trace of Fig.-3 type
// staircases, stepping down at the half-cycle ionization bursts.
DepletionTrace depletion_trace(const DipoleRecord& record, const CouplingConfig& coupling,
                               std::complex<double> alpha_in);

// Second-order (bilinear) coefficients of the mode Hamiltonian induced by
// the dipole fluctuation kernel: G the pair-creation block (symmetric), K
// the beam-splitter block (Hermitian), both carrying the g^2 sqrt(q p) N
// weights:
//   G_qp = N g^2 sqrt(qp) int dt' dt'' C(t',t'') e^{+i(w_q t' + w_p t'')}
//   K_qp = N g^2 sqrt(qp) int dt' dt'' C(t',t'') e^{+i(w_q t' - w_p t'')}
// G is symmetrized (only the symmetric part couples to a_q+ a_p+).
struct BilinearCoefficients {
  Eigen::MatrixXcd G;
  Eigen::MatrixXcd K;
};

BilinearCoefficients bilinear_coefficients(const DipoleCorrelation& corr,
                                           const CouplingConfig& coupling);

// Product coherent state: mean set by chi (mode 1 holds alpha_in + chi_1),
// covariance exactly vacuum.
GaussianModeState gaussian_output_state(const HarmonicAmplitudes& amps);

// Gaussian state including the second-order correction: the bilinear
// Hermitian form is mapped to its Hamiltonian flow, S = exp(Omega M), and the
// covariance is S (1/2 I) S^T; the mean is displaced by chi as above. The
// squeezing-angle convention is fixed by this flow direction; magnitudes
// (squeezing r, entanglement) are convention-free. A symplectic eigenvalue
// below 1/2 - 1e-6 after exponentiation signals a generator magnitude outside
// the validity of the second-order treatment and raises a numeric error.
GaussianModeState gaussian_output_state(const HarmonicAmplitudes& amps,
                                        const BilinearCoefficients& bil);

} // namespace attoqo
