#pragma once

// Brute-force number-basis reference implementations used only by tests.
// Everything here is deliberately direct and slow: dense matrices, matrix
// exponentials, explicit Kraus sums. Production code must agree with these
// within the tolerances pinned in the test files.

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace fock {

using cxd = std::complex<double>;

// coherent state vector in the number basis, levels = n_max + 1
Eigen::VectorXcd coherent_vector(cxd alpha, int n_max);

// superposition sum_k c_k |alpha_k> (single mode), not normalized
Eigen::VectorXcd superposition_vector(const std::vector<cxd>& coeffs,
                                      const std::vector<cxd>& alphas, int n_max);

Eigen::MatrixXcd lowering_operator(int n_max);
Eigen::MatrixXcd number_operator(int n_max);
Eigen::MatrixXcd displacement_operator(cxd alpha, int n_max);

// W(x, p) of a density matrix via the displaced-parity form, normalized so
// that the vacuum peaks at 1/pi and the dx dp integral is the trace.
double wigner_point(const Eigen::MatrixXcd& rho, double x, double p);

// beam-splitter loss channel as an explicit Kraus sum
Eigen::MatrixXcd kraus_loss(const Eigen::MatrixXcd& rho, double eta);

// same channel applied to a pure state, organized so that large photon
// numbers neither overflow nor require matrix-matrix products
Eigen::MatrixXcd kraus_loss_pure(const Eigen::VectorXcd& psi, double eta);

double purity(const Eigen::MatrixXcd& rho);

// phase-estimation QFI with generator N = a^+ a via full eigendecomposition
double qfi_phase(const Eigen::MatrixXcd& rho);

Eigen::VectorXd number_pmf(const Eigen::MatrixXcd& rho);

} // namespace fock
