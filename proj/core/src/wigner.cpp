#include "attoqo/wigner.hpp"

#include <cmath>

#include "attoqo/errors.hpp"
#include "attoqo/parallel.hpp"

namespace attoqo {
namespace {

const double kPi = std::acos(-1.0);

Eigen::VectorXd axis(double lo, double hi, int n) {
  require(n >= 2, errc::grid, "axis needs at least two samples");
  require(hi > lo, errc::grid, "axis bounds must be increasing");
  const double step = (hi - lo) / (n - 1);
  require(step <= 0.5, errc::grid, "phase-space step exceeds 0.5");
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = lo + step * i;
  return v;
}

} // namespace

double wigner_at(const ReducedDyads& rd, double x, double p) {
  const cxd z(x / std::sqrt(2.0), p / std::sqrt(2.0));
  cxd w = 0.0;
  for (std::size_t k = 0; k < rd.coeff.size(); ++k) {
    const cxd a = rd.ket[k];
    const cxd b = rd.bra[k];
    const cxd trace_ab =
        std::exp(-0.5 * std::norm(a) - 0.5 * std::norm(b) + std::conj(b) * a); // <b|a>
    w += rd.coeff[k] * trace_ab * std::exp(-2.0 * (z - a) * (std::conj(z) - std::conj(b)));
  }
  return w.real() / kPi;
}

WignerGrid wigner(const ReducedDyads& rd, const WignerWindow& win) {
  WignerGrid g;
  g.x = axis(win.x_min, win.x_max, win.nx);
  g.p = axis(win.p_min, win.p_max, win.np);
  g.value.resize(win.nx, win.np);
  parallel_for(win.nx, [&](int i) {
    for (int j = 0; j < win.np; ++j) g.value(i, j) = wigner_at(rd, g.x(i), g.p(j));
  });
  return g;
}

WignerGrid wigner(const CoherentOperatorMix& op, int mode, const WignerWindow& win) {
  return wigner(reduce_to_mode(op, mode), win);
}

WignerGrid wigner(const CoherentSuperposition& psi, int mode, const WignerWindow& win) {
  return wigner(reduce_to_mode(psi, mode), win);
}

double grid_integral(const WignerGrid& g) {
  const int nx = static_cast<int>(g.x.size());
  const int np = static_cast<int>(g.p.size());
  const double dx = (g.x(nx - 1) - g.x(0)) / (nx - 1);
  const double dp = (g.p(np - 1) - g.p(0)) / (np - 1);
  double sum = 0.0;
  for (int i = 0; i < nx; ++i) {
    const double wx = (i == 0 || i == nx - 1) ? 0.5 : 1.0;
    for (int j = 0; j < np; ++j) {
      const double wp = (j == 0 || j == np - 1) ? 0.5 : 1.0;
      sum += wx * wp * g.value(i, j);
    }
  }
  return sum * dx * dp;
}

} // namespace attoqo
