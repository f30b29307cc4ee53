#pragma once

#include <Eigen/Dense>

#include "attoqo/coherent_states.hpp"
#include "attoqo/gaussian_states.hpp"

namespace attoqo {

struct PhotonStatistics {
  Eigen::VectorXd pmf; // p(0) .. p(n_max)
  double mean;
  double variance;
  double mandel_q; // (variance - mean)/mean, 0 for vacuum
};

// Number distribution of one mode after tracing out the rest. Requires
// n_max >= 10 * analytic mean occupation, otherwise a truncation error.
PhotonStatistics photon_statistics(const CoherentSuperposition& psi, int mode, int n_max);
PhotonStatistics photon_statistics(const CoherentOperatorMix& op, int mode, int n_max);
PhotonStatistics photon_statistics(const GaussianModeState& s, int mode, int n_max);

} // namespace attoqo
