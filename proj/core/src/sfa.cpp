#include "attoqo/sfa.hpp"

#include <cmath>

#include "attoqo/errors.hpp"
#include "attoqo/parallel.hpp"

namespace attoqo {
namespace {

const double kPi = std::acos(-1.0);
constexpr double kSaddleEpsilon = 1e-4;

} // namespace

DipoleRecord dipole_expectation(const PulseTables& tables, const AtomModel& atom) {
  const LaserPulse& pulse = tables.pulse();
  const TimeGrid& grid = tables.grid();
  // Nyquist guard: the grid must resolve oscillations up to the cutoff energy
  // with one harmonic of margin
  const double omega_max = cutoff_energy(pulse, atom) + pulse.omega;
  require(grid.dt * omega_max <= kPi, errc::grid,
          "time step too coarse for the expected cutoff harmonic");

  DipoleRecord rec;
  rec.grid = grid;
  rec.values = Eigen::VectorXd::Zero(grid.n);
  rec.fundamental = pulse.omega;
  if (pulse.e0 == 0.0) return rec;

  const int history = std::min(grid.n - 1, static_cast<int>(std::ceil(pulse.period() / grid.dt)));
  // history clipped by the grid start while the field is still on?
  if (grid.t0 > pulse.start() + 1e-12 &&
      std::abs(pulse.electric_field(grid.t0)) > 1e-6 * pulse.e0)
    rec.truncated_history = true;

  parallel_for(grid.n, [&](int i) {
    const double t = grid.time(i);
    const double a_t = tables.a(i);
    std::complex<double> acc = 0.0;
    const int j_lo = std::max(0, i - history);
    for (int j = j_lo; j < i; ++j) {
      const double tp = grid.time(j);
      const double field = tables.field(j);
      if (field == 0.0) continue;
      const double tau = t - tp;
      const double ia = tables.int_a_nodes(j, i);
      const double p_st = ia / tau;
      const double action =
          atom.ip * tau - 0.5 * ia * ia / tau + 0.5 * tables.int_a2_nodes(j, i);
      const std::complex<double> pref =
          std::pow(2.0 * kPi / std::complex<double>(kSaddleEpsilon, tau), 1.5);
      acc += pref * transition_dipole(p_st - a_t, atom) * field *
             transition_dipole(p_st - tables.a(j), atom) *
             std::exp(std::complex<double>(0.0, -action));
    }
    rec.values(i) = 2.0 * (acc * grid.dt).imag();
  });
  require(rec.values.allFinite(), errc::numeric, "dipole expectation produced non-finite values");
  return rec;
}

DipoleRecord dipole_expectation(const LaserPulse& pulse, const AtomModel& atom,
                                const TimeGrid& grid) {
  return dipole_expectation(PulseTables(pulse, grid), atom);
}

std::complex<double> ionization_amplitude(double v, double t_prime, const PulseTables& tables,
                                          const AtomModel& atom) {
  const double field = tables.pulse().electric_field(t_prime);
  if (field == 0.0) return 0.0;
  const double action = semiclassical_action(v, t_prime, tables.grid().t0, tables, atom);
  return field * transition_dipole(v - tables.pulse().vector_potential(t_prime), atom) *
         std::exp(std::complex<double>(0.0, -action));
}

} // namespace attoqo
