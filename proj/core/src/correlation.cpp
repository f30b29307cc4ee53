#include "attoqo/correlation.hpp"

#include <cmath>
#include <complex>

#include "attoqo/errors.hpp"
#include "attoqo/parallel.hpp"

namespace attoqo {

MomentumGrid make_momentum_grid(double v_max, int n) {
  require(v_max > 0.0, errc::grid, "momentum span must be positive");
  require(n >= 2, errc::grid, "momentum grid needs at least two samples");
  return {v_max, n};
}

DipoleCorrelation dipole_correlation(const LaserPulse& pulse, const AtomModel& atom,
                                     const TimeGrid& grid, const MomentumGrid& momenta) {
  const double v_need = std::sqrt(20.0 * ponderomotive_energy(pulse));
  require(momenta.v_max >= v_need - 1e-12, errc::grid,
          "momentum grid must cover the 10 Up rescattering scale");

  const PulseTables tables(pulse, grid);
  const int nt = grid.n;
  const int nv = momenta.n;
  const double dv = 2.0 * momenta.v_max / (nv - 1);

  // F(i, v) = sqrt(w_v) d(v - A(t_i)) e^{-i phi_v(t_i)}; C = conj(F) F^T
  Eigen::MatrixXcd f(nt, nv);
  parallel_for(nv, [&](int k) {
    const double v = -momenta.v_max + dv * k;
    const double w = (k == 0 || k == nv - 1) ? 0.5 * dv : dv;
    const double sqw = std::sqrt(w);
    for (int i = 0; i < nt; ++i) {
      const double t = grid.time(i);
      const double phase = (atom.ip + 0.5 * v * v) * (t - grid.t0) -
                           v * tables.int_a_nodes(0, i) + 0.5 * tables.int_a2_nodes(0, i);
      f(i, k) = sqw * transition_dipole(v - tables.a(i), atom) *
                std::exp(std::complex<double>(0.0, -phase));
    }
  });

  DipoleCorrelation out;
  out.grid = grid;
  out.cov = f.conjugate() * f.transpose();
  out.fundamental = pulse.omega;
  require(out.cov.allFinite(), errc::numeric, "correlation kernel has non-finite entries");
  return out;
}

} // namespace attoqo
