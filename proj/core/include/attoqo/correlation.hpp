#pragma once

#include <Eigen/Dense>

#include "attoqo/pulse.hpp"

namespace attoqo {

struct MomentumGrid {
  double v_max = 0.0; // grid spans [-v_max, v_max]
  int n = 0;
};

MomentumGrid make_momentum_grid(double v_max, int n);

struct DipoleCorrelation {
  TimeGrid grid;
  Eigen::MatrixXcd cov;     // C(t_i, t_j), Hermitian PSD kernel
  double fundamental = 0.0; // carrier frequency of the driving pulse
};

// Dipole fluctuation kernel
//   C(t', t'') = int dv  d(v - A(t')) d(v - A(t'')) e^{+i phi_v(t')} e^{-i phi_v(t'')}
// with the continuum phase phi_v(t) = Ip (t - t0) + int_{t0}^{t} (v - A)^2/2.
// The bound-channel contribution cancels the <d(t')><d(t'')> product, so the
// continuum quadrature above already is the mean-subtracted kernel. Assembled
// as a Gram matrix, hence exactly Hermitian and positive semidefinite.
// Momentum coverage must reach the 10 Up rescattering scale:
// v_max >= sqrt(2 * 10 * Up).
DipoleCorrelation dipole_correlation(const LaserPulse& pulse, const AtomModel& atom,
                                     const TimeGrid& grid, const MomentumGrid& momenta);

} // namespace attoqo
