#pragma once

#include <complex>

#include <Eigen/Dense>

#include "attoqo/pulse.hpp"

namespace attoqo {

struct DipoleRecord {
  TimeGrid grid;
  Eigen::VectorXd values;   // <d(t)> along the polarization axis, a.u.
  double fundamental = 0.0; // carrier frequency of the driving pulse
  // set when the one-cycle ionization-history window was clipped by the grid
  // start while the field was still significant there
  bool truncated_history = false;
};

// SFA dipole expectation: for each emission time t, integrate over ionization
// times t' within one optical cycle of history,
//   <d(t)> = 2 Im sum_{t'} (2pi/(eps + i(t-t')))^{3/2}
//            d(p_st - A(t)) E(t') d(p_st - A(t')) e^{-iS(p_st, t, t')} dt'
// with the stationary momentum p_st = (int_{t'}^{t} A)/(t - t') and
// eps = 1e-4. The t' = t node is skipped (integrand vanishes like tau^{1/2}).
// Absolute yield normalization is fixed by this convention, not calibrated.
DipoleRecord dipole_expectation(const LaserPulse& pulse, const AtomModel& atom,
                                const TimeGrid& grid);

// same, reusing precomputed tables (grid is tables.grid())
DipoleRecord dipole_expectation(const PulseTables& tables, const AtomModel& atom);

// Ionization amplitude into velocity v at time t':
//   b(v, t') = E(t') d(v - A(t')) exp(-i S(v, t', t0))
// with the action accumulated from the grid origin t0. The phase convention
// matches dipole_expectation's e^{-iS}.
std::complex<double> ionization_amplitude(double v, double t_prime, const PulseTables& tables,
                                          const AtomModel& atom);

} // namespace attoqo
