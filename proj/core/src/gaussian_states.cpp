#include "attoqo/gaussian_states.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "attoqo/errors.hpp"

namespace attoqo {
namespace {

void check_subset(int modes, const std::vector<int>& sel) {
  require(!sel.empty(), errc::dimension, "mode subset must not be empty");
  std::vector<bool> seen(modes, false);
  for (int m : sel) {
    require(m >= 0 && m < modes, errc::dimension, "mode index out of range");
    require(!seen[m], errc::dimension, "duplicate mode index");
    seen[m] = true;
  }
}

Eigen::VectorXd symplectic_spectrum_unchecked(const Eigen::MatrixXd& cov) {
  const int n = static_cast<int>(cov.rows());
  const Eigen::MatrixXd m = symplectic_form(n / 2) * cov;
  Eigen::EigenSolver<Eigen::MatrixXd> es(m);
  require(es.info() == Eigen::Success, errc::numeric, "symplectic eigensolve failed");
  // eigenvalues of Omega*cov come in +-(i nu) pairs; collect the positive half
  std::vector<double> nus;
  for (int i = 0; i < n; ++i) {
    const double im = es.eigenvalues()(i).imag();
    if (im > 0.0) nus.push_back(im);
  }
  require(static_cast<int>(nus.size()) == n / 2, errc::numeric,
          "symplectic spectrum did not split into conjugate pairs");
  std::sort(nus.begin(), nus.end());
  return Eigen::Map<Eigen::VectorXd>(nus.data(), nus.size());
}

// entropy contribution of one symplectic eigenvalue
double g_entropy(double nu) {
  const double a = nu + 0.5;
  const double b = nu - 0.5;
  double out = a * std::log(a);
  if (b > 1e-15) out -= b * std::log(b);
  return out;
}

} // namespace

GaussianModeState vacuum_state(int modes) {
  require(modes >= 1, errc::dimension, "state needs at least one mode");
  GaussianModeState s;
  s.mean = Eigen::VectorXd::Zero(2 * modes);
  s.cov = 0.5 * Eigen::MatrixXd::Identity(2 * modes, 2 * modes);
  return s;
}

GaussianModeState two_mode_squeezed_vacuum(double r) {
  GaussianModeState s = vacuum_state(2);
  const double c = 0.5 * std::cosh(2.0 * r);
  const double d = 0.5 * std::sinh(2.0 * r);
  s.cov << c, 0, d, 0, //
      0, c, 0, -d,     //
      d, 0, c, 0,      //
      0, -d, 0, c;
  return s;
}

void validate_state(const GaussianModeState& s, double slack) {
  const int n = static_cast<int>(s.mean.size());
  require(n >= 2 && n % 2 == 0, errc::dimension, "mean vector length must be even and positive");
  require(s.cov.rows() == n && s.cov.cols() == n, errc::dimension,
          "covariance shape does not match the mean vector");
  require(s.mean.allFinite() && s.cov.allFinite(), errc::numeric, "non-finite gaussian state");
  require((s.cov - s.cov.transpose()).cwiseAbs().maxCoeff() <= 1e-9 * (1.0 + s.cov.norm()),
          errc::structure, "covariance matrix must be symmetric");
  const Eigen::VectorXd nu = symplectic_spectrum_unchecked(0.5 * (s.cov + s.cov.transpose()));
  require(nu.minCoeff() >= 0.5 - slack, errc::structure,
          "covariance violates the uncertainty bound");
}

Eigen::MatrixXd symplectic_form(int modes) {
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * modes, 2 * modes);
  for (int m = 0; m < modes; ++m) {
    omega(2 * m, 2 * m + 1) = 1.0;
    omega(2 * m + 1, 2 * m) = -1.0;
  }
  return omega;
}

Eigen::VectorXd symplectic_eigenvalues(const Eigen::MatrixXd& cov) {
  require(cov.rows() == cov.cols() && cov.rows() % 2 == 0 && cov.rows() >= 2, errc::dimension,
          "covariance must be square with even size");
  return symplectic_spectrum_unchecked(0.5 * (cov + cov.transpose()));
}

SqueezingParameters squeezing_parameters(const GaussianModeState& s, int mode) {
  validate_state(s);
  require(mode >= 0 && mode < s.modes(), errc::dimension, "mode index out of range");
  const Eigen::Matrix2d block = s.cov.block<2, 2>(2 * mode, 2 * mode);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(block);
  const double lmin = es.eigenvalues()(0);
  require(lmin > 0.0, errc::structure, "degenerate quadrature block");
  SqueezingParameters out;
  out.r = std::max(0.0, -0.5 * std::log(2.0 * lmin));
  const Eigen::Vector2d v = es.eigenvectors().col(0);
  double angle = std::atan2(v(1), v(0));
  // direction is defined up to sign; fold into [0, pi)
  const double pi = std::acos(-1.0);
  while (angle < 0.0) angle += pi;
  while (angle >= pi) angle -= pi;
  out.angle = angle;
  return out;
}

double gaussian_purity(const GaussianModeState& s) {
  validate_state(s);
  const double det = s.cov.determinant();
  require(det > 0.0, errc::structure, "covariance determinant must be positive");
  return 1.0 / (std::pow(2.0, s.modes()) * std::sqrt(det));
}

double mean_photon_number(const GaussianModeState& s, int mode) {
  require(mode >= 0 && mode < s.modes(), errc::dimension, "mode index out of range");
  const double sxx = s.cov(2 * mode, 2 * mode);
  const double spp = s.cov(2 * mode + 1, 2 * mode + 1);
  const double mx = s.mean(2 * mode);
  const double mp = s.mean(2 * mode + 1);
  return 0.5 * (sxx + spp - 1.0) + 0.5 * (mx * mx + mp * mp);
}

double total_mean_photon_number(const GaussianModeState& s) {
  double n = 0.0;
  for (int m = 0; m < s.modes(); ++m) n += mean_photon_number(s, m);
  return n;
}

GaussianModeState reduce_modes(const GaussianModeState& s, const std::vector<int>& keep) {
  check_subset(s.modes(), keep);
  const int k = static_cast<int>(keep.size());
  GaussianModeState out;
  out.mean.resize(2 * k);
  out.cov.resize(2 * k, 2 * k);
  for (int i = 0; i < k; ++i) {
    out.mean.segment<2>(2 * i) = s.mean.segment<2>(2 * keep[i]);
    for (int j = 0; j < k; ++j)
      out.cov.block<2, 2>(2 * i, 2 * j) = s.cov.block<2, 2>(2 * keep[i], 2 * keep[j]);
  }
  return out;
}

double log_negativity(const GaussianModeState& s, const std::vector<int>& side_a) {
  validate_state(s);
  check_subset(s.modes(), side_a);
  require(static_cast<int>(side_a.size()) < s.modes(), errc::dimension,
          "bipartition must leave modes on both sides");
  Eigen::VectorXd flip = Eigen::VectorXd::Ones(2 * s.modes());
  for (int m : side_a) flip(2 * m + 1) = -1.0; // partial transpose reverses p on side A
  const Eigen::MatrixXd cov_pt = flip.asDiagonal() * s.cov * flip.asDiagonal();
  const Eigen::VectorXd nu = symplectic_spectrum_unchecked(cov_pt);
  double en = 0.0;
  for (int i = 0; i < nu.size(); ++i)
    if (2.0 * nu(i) < 1.0) en -= std::log(2.0 * nu(i));
  return en;
}

double gaussian_entropy(const GaussianModeState& s, const std::vector<int>& modes_a) {
  validate_state(s);
  const GaussianModeState red = reduce_modes(s, modes_a);
  const Eigen::VectorXd nu = symplectic_spectrum_unchecked(red.cov);
  double h = 0.0;
  for (int i = 0; i < nu.size(); ++i) h += g_entropy(std::max(nu(i), 0.5));
  return h;
}

} // namespace attoqo
