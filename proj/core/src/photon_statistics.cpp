#include "attoqo/photon_statistics.hpp"

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "attoqo/errors.hpp"

namespace attoqo {
namespace {

constexpr int kMaxFockLevels = 4096;

PhotonStatistics from_pmf(Eigen::VectorXd pmf) {
  for (int n = 0; n < pmf.size(); ++n) {
    require(pmf(n) > -1e-9, errc::structure, "negative probability in number distribution");
    pmf(n) = std::max(pmf(n), 0.0);
  }
  PhotonStatistics out;
  double m1 = 0.0, m2 = 0.0;
  for (int n = 0; n < pmf.size(); ++n) {
    m1 += n * pmf(n);
    m2 += double(n) * n * pmf(n);
  }
  out.pmf = std::move(pmf);
  out.mean = m1;
  out.variance = m2 - m1 * m1;
  out.mandel_q = m1 > 0.0 ? (out.variance - m1) / m1 : 0.0;
  return out;
}

PhotonStatistics dyad_statistics(const ReducedDyads& rd, int n_max) {
  require(n_max >= 0, errc::domain, "n_max must be non-negative");
  // analytic mean <a^+ a> = sum_k c_k (bra_k^* ket_k) <bra_k|ket_k>
  cxd mean = 0.0;
  for (std::size_t k = 0; k < rd.coeff.size(); ++k) {
    const cxd a = rd.ket[k], b = rd.bra[k];
    const cxd ov = std::exp(-0.5 * std::norm(a) - 0.5 * std::norm(b) + std::conj(b) * a);
    mean += rd.coeff[k] * std::conj(b) * a * ov;
  }
  require(n_max >= 10.0 * mean.real(), errc::truncation,
          "n_max below ten times the mean occupation");

  Eigen::VectorXcd pmf = Eigen::VectorXcd::Zero(n_max + 1);
  for (std::size_t k = 0; k < rd.coeff.size(); ++k) {
    const cxd a = rd.ket[k], b = rd.bra[k];
    // <n|a><b|n> = e^{-(|a|^2+|b|^2)/2} (a b^*)^n / n!
    cxd term = rd.coeff[k] * std::exp(-0.5 * std::norm(a) - 0.5 * std::norm(b));
    const cxd ratio = a * std::conj(b);
    for (int n = 0; n <= n_max; ++n) {
      pmf(n) += term;
      term *= ratio / double(n + 1);
    }
  }
  return from_pmf(pmf.real());
}

} // namespace

PhotonStatistics photon_statistics(const CoherentSuperposition& psi, int mode, int n_max) {
  return dyad_statistics(reduce_to_mode(psi, mode), n_max);
}

PhotonStatistics photon_statistics(const CoherentOperatorMix& op, int mode, int n_max) {
  return dyad_statistics(reduce_to_mode(op, mode), n_max);
}

PhotonStatistics photon_statistics(const GaussianModeState& s, int mode, int n_max) {
  validate_state(s);
  require(n_max >= 0, errc::domain, "n_max must be non-negative");
  const GaussianModeState red = reduce_modes(s, {mode});
  const double mean = mean_photon_number(red, 0);
  require(n_max >= 10.0 * mean, errc::truncation, "n_max below ten times the mean occupation");
  const int levels = std::min(kMaxFockLevels, n_max + 33);
  require(levels > n_max, errc::truncation, "mode occupation too large for Fock-space build");

  // decompose sigma = A (nu I) A^T with A = sqrt(sigma/nu) in SL(2,R),
  // i.e. a squeeze of a thermal state, then displace
  const Eigen::Matrix2d sigma = red.cov;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(sigma);
  const double nu = std::sqrt(std::max(sigma.determinant(), 0.25));
  const double nbar = std::max(nu - 0.5, 0.0);
  Eigen::Vector2d klog;
  klog << 0.5 * std::log(es.eigenvalues()(0) / nu), 0.5 * std::log(es.eigenvalues()(1) / nu);
  const Eigen::Matrix2d kmat =
      es.eigenvectors() * klog.asDiagonal() * es.eigenvectors().transpose();
  // quadratic generator G = Omega^T K so that the flow e^{Omega G} equals e^K
  Eigen::Matrix2d omega;
  omega << 0, 1, -1, 0;
  const Eigen::Matrix2d gmat = omega.transpose() * kmat;

  Eigen::MatrixXcd adag = Eigen::MatrixXcd::Zero(levels, levels);
  for (int n = 1; n < levels; ++n) adag(n, n - 1) = std::sqrt(double(n));
  const Eigen::MatrixXcd a = adag.adjoint();
  const double s2 = std::sqrt(2.0);
  const Eigen::MatrixXcd x = (a + adag) / s2;
  const Eigen::MatrixXcd p = cxd(0.0, 1.0) * (adag - a) / s2;

  const Eigen::MatrixXcd h = 0.5 * (gmat(0, 0) * x * x + gmat(1, 1) * p * p +
                                    gmat(0, 1) * (x * p + p * x));
  const Eigen::MatrixXcd u = (cxd(0.0, -1.0) * h).exp();

  const cxd beta((red.mean(0)) / s2, (red.mean(1)) / s2);
  const Eigen::MatrixXcd d = (beta * adag - std::conj(beta) * a).exp();

  Eigen::VectorXd thermal(levels);
  for (int n = 0; n < levels; ++n)
    thermal(n) = std::pow(nbar / (1.0 + nbar), n) / (1.0 + nbar);
  const Eigen::MatrixXcd du = d * u;
  const Eigen::MatrixXcd rho = du * thermal.asDiagonal() * du.adjoint();
  return from_pmf(rho.diagonal().real().head(n_max + 1));
}

} // namespace attoqo
