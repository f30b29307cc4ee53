#pragma once

#include <Eigen/Dense>

namespace attoqo {

// Spectral cutoff below which Gram-matrix eigenvalues are treated as zero
// when orthogonalizing nearly parallel coherent components.
inline constexpr double kGramCutoff = 1e-12;

// Hermitian square root with spectral cutoff: eigenvalues below cutoff are
// dropped (set to zero) so nearly singular Gram matrices stay well behaved.
Eigen::MatrixXcd hermitian_sqrt(const Eigen::MatrixXcd& m, double cutoff = kGramCutoff);

// Eigenvalues of the operator sum_kl R_kl |v_k><v_l| expressed in the
// non-orthogonal frame with Gram matrix B_kl = <v_k|v_l>. Returned ascending.
Eigen::VectorXd span_operator_eigenvalues(const Eigen::MatrixXcd& R, const Eigen::MatrixXcd& B,
                                          double cutoff = kGramCutoff);

// Same decomposition but also returns the eigenvectors expressed in the
// orthonormalized frame, plus the transform T = B^(1/2) used to get there.
struct SpanEig {
  Eigen::VectorXd values;    // ascending
  Eigen::MatrixXcd vectors;  // columns, orthonormal frame
  Eigen::MatrixXcd sqrt_gram;
};
SpanEig span_operator_eig(const Eigen::MatrixXcd& R, const Eigen::MatrixXcd& B,
                          double cutoff = kGramCutoff);

// von Neumann entropy -sum p ln p of a set of eigenvalues; negatives within
// `slack` are clipped to zero, larger negatives raise a structure error.
double entropy_from_eigenvalues(const Eigen::VectorXd& evals, double slack = 1e-9);

} // namespace attoqo
