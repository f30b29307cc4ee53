#pragma once

#include <vector>

#include <Eigen/Dense>

namespace attoqo {

// Gaussian state of M bosonic modes in the ordering (x1, p1, x2, p2, ...).
// Vacuum has covariance diag(1/2); physical states satisfy all symplectic
// eigenvalues >= 1/2 (checked with a small slack on construction).
struct GaussianModeState {
  Eigen::VectorXd mean; // length 2M
  Eigen::MatrixXd cov;  // 2M x 2M, symmetric

  int modes() const { return static_cast<int>(mean.size()) / 2; }
};

GaussianModeState vacuum_state(int modes);
GaussianModeState two_mode_squeezed_vacuum(double r);

// Throws structure/dimension errors if the shape, symmetry or uncertainty
// bound is violated.
void validate_state(const GaussianModeState& s, double slack = 1e-9);

Eigen::MatrixXd symplectic_form(int modes);

// Symplectic spectrum of a (valid-shaped) covariance matrix, ascending.
Eigen::VectorXd symplectic_eigenvalues(const Eigen::MatrixXd& cov);

struct SqueezingParameters {
  double r;     // squeezing magnitude, 0 for vacuum/coherent
  double angle; // orientation of the squeezed quadrature in [0, pi)
};

// Single-mode marginal squeezing: r = -(1/2) ln(2 lambda_min) of the 2x2
// covariance block. Ignores correlations with other modes by design.
SqueezingParameters squeezing_parameters(const GaussianModeState& s, int mode);

double gaussian_purity(const GaussianModeState& s);

// Mean photon number of one mode: (sigma_xx + sigma_pp - 1)/2 + |mean|^2 / 2.
double mean_photon_number(const GaussianModeState& s, int mode);
double total_mean_photon_number(const GaussianModeState& s);

// Reduced state on a subset of modes (marginalization is a submatrix pick).
GaussianModeState reduce_modes(const GaussianModeState& s, const std::vector<int>& keep);

// Logarithmic negativity across the bipartition (side_a | rest), computed
// from the partially transposed covariance matrix. Zero when separable.
double log_negativity(const GaussianModeState& s, const std::vector<int>& side_a);

// Von Neumann entropy of the reduced state on `modes_a`; for a globally pure
// state this is the entanglement entropy of the bipartition.
double gaussian_entropy(const GaussianModeState& s, const std::vector<int>& modes_a);

} // namespace attoqo
