#include "attoqo/gram.hpp"

#include <cmath>

#include "attoqo/errors.hpp"

namespace attoqo {

Eigen::MatrixXcd hermitian_sqrt(const Eigen::MatrixXcd& m, double cutoff) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (m + m.adjoint()));
  require(es.info() == Eigen::Success, errc::numeric, "hermitian eigensolve failed");
  Eigen::VectorXd d = es.eigenvalues();
  for (int i = 0; i < d.size(); ++i) d(i) = d(i) > cutoff ? std::sqrt(d(i)) : 0.0;
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

SpanEig span_operator_eig(const Eigen::MatrixXcd& R, const Eigen::MatrixXcd& B, double cutoff) {
  require(R.rows() == R.cols() && B.rows() == B.cols() && R.rows() == B.rows(), errc::dimension,
          "span operator: coefficient and Gram matrices must agree in size");
  const Eigen::MatrixXcd T = hermitian_sqrt(B, cutoff);
  Eigen::MatrixXcd rho = T * R * T.adjoint();
  rho = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
  require(es.info() == Eigen::Success, errc::numeric, "span operator eigensolve failed");
  return {es.eigenvalues(), es.eigenvectors(), T};
}

Eigen::VectorXd span_operator_eigenvalues(const Eigen::MatrixXcd& R, const Eigen::MatrixXcd& B,
                                          double cutoff) {
  return span_operator_eig(R, B, cutoff).values;
}

double entropy_from_eigenvalues(const Eigen::VectorXd& evals, double slack) {
  double s = 0.0;
  for (int i = 0; i < evals.size(); ++i) {
    const double p = evals(i);
    require(p > -slack, errc::structure, "operator has a significantly negative eigenvalue");
    if (p > 0.0) s -= p * std::log(p);
  }
  return s;
}

} // namespace attoqo
