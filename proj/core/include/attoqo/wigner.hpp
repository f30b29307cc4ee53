#pragma once

#include <Eigen/Dense>

#include "attoqo/coherent_states.hpp"

namespace attoqo {

// Phase-space raster of one mode; value(i, j) = W(x(i), p(j)).
struct WignerGrid {
  Eigen::VectorXd x;
  Eigen::VectorXd p;
  Eigen::MatrixXd value;
};

// Axis specification. Steps wider than 0.5 cannot resolve vacuum-scale
// structure and are rejected with a grid error.
struct WignerWindow {
  double x_min, x_max;
  double p_min, p_max;
  int nx, np;
};

double wigner_at(const ReducedDyads& rd, double x, double p);

WignerGrid wigner(const ReducedDyads& rd, const WignerWindow& win);
WignerGrid wigner(const CoherentOperatorMix& op, int mode, const WignerWindow& win);
WignerGrid wigner(const CoherentSuperposition& psi, int mode, const WignerWindow& win);

// Trapezoid mass of the raster; approaches the reduced trace for windows that
// contain the support.
double grid_integral(const WignerGrid& g);

} // namespace attoqo
