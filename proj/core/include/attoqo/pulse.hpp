#pragma once

#include <Eigen/Dense>

namespace attoqo {

// Atomic units (hbar = m = e = 1) throughout. SI conversion happens only at
// the command-line boundary.

enum class Envelope { sin2, gaussian, flattop };

struct TimeGrid {
  double t0 = 0.0;
  double dt = 0.0;
  int n = 0;
  double time(int i) const { return t0 + dt * i; }
  double end() const { return t0 + dt * (n - 1); }
};

TimeGrid make_grid(double t0, double dt, int n);

// Linearly polarized pulse defined through its vector potential
//   A(t) = (E0/w) f(t) sin(w t + cep),  E(t) = -dA/dt,
// so that A vanishes identically outside the envelope support and the pulse
// area constraint A(end) = 0 holds to envelope precision. `cycles` means:
// total duration in optical cycles for sin2/flattop, intensity-envelope FWHM
// in cycles for gaussian (support truncated at +-6.5 sigma).
struct LaserPulse {
  double e0 = 0.0;
  double omega = 0.0;
  double cep = 0.0;
  Envelope envelope = Envelope::sin2;
  double cycles = 0.0;

  double period() const;
  double start() const { return 0.0; }
  double end() const;

  double envelope_value(double t) const;
  double envelope_slope(double t) const;
  double vector_potential(double t) const;
  double electric_field(double t) const;
};

LaserPulse make_pulse(double e0, double omega, double cep, Envelope env, double cycles);

struct AtomModel {
  double ip = 0.5; // ionization potential, a.u.
};

AtomModel make_atom(double ip);

double ponderomotive_energy(const LaserPulse& pulse);
double cutoff_energy(const LaserPulse& pulse, const AtomModel& atom);

// Hydrogenic 1s bound-free dipole, odd in v, peaked at v = sqrt(2 Ip / 5):
//   d(v) = 2^{7/2} (2 Ip)^{5/4} / pi * v / (v^2 + 2 Ip)^3
double transition_dipole(double v, const AtomModel& atom);

// Cumulative integrals of A and A^2 on a grid, five-point Gauss-Legendre per
// interval on the analytic A(t); partial intervals handled the same way, so
// lookups at arbitrary times keep near-machine accuracy.
class PulseTables {
public:
  PulseTables(const LaserPulse& pulse, const TimeGrid& grid);

  const LaserPulse& pulse() const { return pulse_; }
  const TimeGrid& grid() const { return grid_; }

  double a(int i) const { return a_(i); }
  double field(int i) const { return e_(i); }

  // integral of A (resp. A^2) from t1 to t2, both within the grid span
  double int_a(double t1, double t2) const;
  double int_a2(double t1, double t2) const;

  // node-to-node integrals, table lookups only
  double int_a_nodes(int j, int i) const { return ia_(i) - ia_(j); }
  double int_a2_nodes(int j, int i) const { return ia2_(i) - ia2_(j); }

private:
  double cum_a(double t) const;
  double cum_a2(double t) const;

  LaserPulse pulse_;
  TimeGrid grid_;
  Eigen::VectorXd a_, e_, ia_, ia2_;
};

// S(p, t, t') = (p^2/2 + Ip)(t - t') - p * int A + (1/2) int A^2 over [t', t]
double semiclassical_action(double p, double t, double t_prime, const PulseTables& tables,
                            const AtomModel& atom);

} // namespace attoqo
