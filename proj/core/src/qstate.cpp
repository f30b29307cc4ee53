#include "attoqo/qstate.hpp"

#include <cmath>
#include <complex>

#include <unsupported/Eigen/MatrixFunctions>

#include "attoqo/errors.hpp"
#include "attoqo/parallel.hpp"

namespace attoqo {
namespace {

using cxd = std::complex<double>;

const double kPi = std::acos(-1.0);

void validate_coupling(const CouplingConfig& c) {
  require(c.g > 0.0, errc::domain, "coupling g must be positive");
  require(c.q_cutoff >= 2, errc::domain, "q_cutoff must be at least 2");
  require(c.n_emitters >= 1, errc::domain, "n_emitters must be at least 1");
}

void validate_record(const DipoleRecord& record, const CouplingConfig& c) {
  require(record.grid.n >= 2 && record.values.size() == record.grid.n, errc::dimension,
          "empty dipole record");
  require(record.fundamental > 0.0, errc::domain, "record carries no fundamental frequency");
  require(c.q_cutoff * record.fundamental * record.grid.dt <= kPi, errc::grid,
          "q_cutoff beyond the Nyquist limit of the record grid");
}

// trapezoid quadrature of <d(t)> e^{-i w t} over the record grid
cxd mode_quadrature(const DipoleRecord& record, double w) {
  const int n = record.grid.n;
  cxd acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = record.grid.time(i);
    const double weight = (i == 0 || i == n - 1) ? 0.5 : 1.0;
    acc += weight * record.values(i) * std::exp(cxd(0.0, -w * t));
  }
  return acc * record.grid.dt;
}

} // namespace

HarmonicAmplitudes coherent_amplitudes(const DipoleRecord& record, const CouplingConfig& coupling,
                                       cxd alpha_in) {
  validate_coupling(coupling);
  validate_record(record, coupling);

  HarmonicAmplitudes amps;
  amps.alpha_in = alpha_in;
  amps.chi.resize(coupling.q_cutoff);
  const double scale = coupling.g * coupling.n_emitters;
  parallel_for(coupling.q_cutoff, [&](std::ptrdiff_t m) {
    const int q = static_cast<int>(m) + 1;
    amps.chi(m) = scale * std::sqrt(double(q)) * mode_quadrature(record, q * record.fundamental);
  });

  if (alpha_in != cxd(0.0)) {
    require(std::abs(alpha_in + amps.chi(0)) <= std::abs(alpha_in) + 1e-9, errc::domain,
            "driver amplitude phase is inconsistent with pump depletion");
  }
  return amps;
}

cxd driver_amplitude(const DipoleRecord& record, const CouplingConfig& coupling,
                     double magnitude) {
  validate_coupling(coupling);
  validate_record(record, coupling);
  require(magnitude >= 0.0, errc::domain, "driver magnitude must be non-negative");
  const cxd chi1 = coupling.g * coupling.n_emitters * mode_quadrature(record, record.fundamental);
  if (std::abs(chi1) == 0.0) return cxd(magnitude, 0.0);
  return -magnitude * chi1 / std::abs(chi1);
}

DepletionTrace depletion_trace(const DipoleRecord& record, const CouplingConfig& coupling,
                               cxd alpha_in) {
  validate_coupling(coupling);
  validate_record(record, coupling);
  require(std::isfinite(alpha_in.real()) && std::isfinite(alpha_in.imag()), errc::domain,
          "driver amplitude must be finite");

  const int n = record.grid.n;
  const double w = record.fundamental;
  const double scale = coupling.g * coupling.n_emitters;
  DepletionTrace trace;
  trace.grid = record.grid;
  trace.magnitude.resize(n);
  trace.magnitude(0) = std::abs(alpha_in);
  cxd delta = 0.0;
  for (int i = 1; i < n; ++i) {
    const double t0 = record.grid.time(i - 1), t1 = record.grid.time(i);
    const cxd f0 = record.values(i - 1) * std::exp(cxd(0.0, -w * t0));
    const cxd f1 = record.values(i) * std::exp(cxd(0.0, -w * t1));
    delta += 0.5 * record.grid.dt * (f0 + f1);
    trace.magnitude(i) = std::abs(alpha_in + scale * delta);
  }
  return trace;
}

BilinearCoefficients bilinear_coefficients(const DipoleCorrelation& corr,
                                           const CouplingConfig& coupling) {
  validate_coupling(coupling);
  const int n = corr.grid.n;
  require(n >= 2 && corr.cov.rows() == n && corr.cov.cols() == n, errc::dimension,
          "correlation kernel does not match its grid");
  require(corr.fundamental > 0.0, errc::domain, "kernel carries no fundamental frequency");
  require(coupling.q_cutoff * corr.fundamental * corr.grid.dt <= kPi, errc::grid,
          "q_cutoff beyond the Nyquist limit of the kernel grid");
  const double herm = (corr.cov - corr.cov.adjoint()).cwiseAbs().maxCoeff();
  require(herm <= 1e-6 * std::max(1.0, corr.cov.cwiseAbs().maxCoeff()), errc::structure,
          "correlation kernel is not Hermitian");

  const int m = coupling.q_cutoff;
  // mode quadrature matrix U(q, i) = w_i e^{+i w_q t_i} with trapezoid weights
  Eigen::MatrixXcd u(m, n);
  for (int q = 1; q <= m; ++q) {
    for (int i = 0; i < n; ++i) {
      const double weight = (i == 0 || i == n - 1) ? 0.5 : 1.0;
      u(q - 1, i) =
          weight * corr.grid.dt * std::exp(cxd(0.0, q * corr.fundamental * corr.grid.time(i)));
    }
  }

  Eigen::VectorXd root_q(m);
  for (int q = 1; q <= m; ++q) root_q(q - 1) = std::sqrt(double(q));
  const double g2 = coupling.g * coupling.g * coupling.n_emitters;

  BilinearCoefficients bil;
  const Eigen::MatrixXcd uc = u * corr.cov;
  Eigen::MatrixXcd raw_g = uc * u.transpose();
  Eigen::MatrixXcd raw_k = uc * u.adjoint();
  raw_g = 0.5 * (raw_g + raw_g.transpose()).eval();
  raw_k = 0.5 * (raw_k + raw_k.adjoint()).eval();
  bil.G = g2 * root_q.asDiagonal() * raw_g * root_q.asDiagonal();
  bil.K = g2 * root_q.asDiagonal() * raw_k * root_q.asDiagonal();
  require(bil.G.allFinite() && bil.K.allFinite(), errc::numeric,
          "bilinear coefficients are not finite");
  return bil;
}

GaussianModeState gaussian_output_state(const HarmonicAmplitudes& amps) {
  const int m = amps.q_cutoff();
  require(m >= 1, errc::dimension, "no modes");
  GaussianModeState s = vacuum_state(m);
  for (int k = 0; k < m; ++k) {
    const cxd a = amps.chi(k) + (k == 0 ? amps.alpha_in : cxd(0.0));
    s.mean(2 * k) = std::sqrt(2.0) * a.real();
    s.mean(2 * k + 1) = std::sqrt(2.0) * a.imag();
  }
  return s;
}

GaussianModeState gaussian_output_state(const HarmonicAmplitudes& amps,
                                        const BilinearCoefficients& bil) {
  const int m = amps.q_cutoff();
  require(bil.G.rows() == m && bil.G.cols() == m && bil.K.rows() == m && bil.K.cols() == m,
          errc::dimension, "bilinear blocks do not match the mode count");
  require((bil.G - bil.G.transpose()).cwiseAbs().maxCoeff() <=
              1e-10 * std::max(1.0, bil.G.cwiseAbs().maxCoeff()),
          errc::structure, "pair-creation block is not symmetric");
  require((bil.K - bil.K.adjoint()).cwiseAbs().maxCoeff() <=
              1e-10 * std::max(1.0, bil.K.cwiseAbs().maxCoeff()),
          errc::structure, "beam-splitter block is not Hermitian");

  // quadratic form of the generator in (x1, p1, x2, p2, ...) quadratures
  Eigen::MatrixXd quad(2 * m, 2 * m);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      const cxd g = bil.G(a, b), k = bil.K(a, b);
      quad(2 * a, 2 * b) = (k - g).real();
      quad(2 * a, 2 * b + 1) = -(g + k).imag();
      quad(2 * a + 1, 2 * b) = (k - g).imag();
      quad(2 * a + 1, 2 * b + 1) = (k + g).real();
    }
  }

  const Eigen::MatrixXd flow = symplectic_form(m) * quad;
  const Eigen::MatrixXd s_mat = flow.exp();

  GaussianModeState s = gaussian_output_state(amps);
  s.cov = 0.5 * s_mat * s_mat.transpose();
  const Eigen::VectorXd nu = symplectic_eigenvalues(s.cov);
  require(nu.minCoeff() >= 0.5 - 1e-6, errc::numeric,
          "second-order generator outside its validity range (unphysical covariance)");
  return s;
}

} // namespace attoqo
