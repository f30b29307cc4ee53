#include "attoqo/coherence.hpp"

#include <cmath>
#include <complex>

#include "attoqo/errors.hpp"

namespace attoqo {

namespace {

using cxd = std::complex<double>;
constexpr cxd kI{0.0, 1.0};

void validate_coupling(const CouplingConfig& c) {
  require(c.g > 0.0 && std::isfinite(c.g), errc::domain, "coupling g must be positive");
  require(c.n_emitters >= 1, errc::domain, "emitter count must be at least 1");
}

void validate_record(const DipoleRecord& record) {
  require(record.grid.n >= 2 && record.grid.dt > 0.0, errc::grid,
          "dipole record needs at least two samples");
  require(record.fundamental > 0.0, errc::domain,
          "dipole record carries no carrier frequency");
  require(record.values.size() == record.grid.n, errc::dimension,
          "dipole record length does not match its grid");
}

void validate_mode(int q, double omega, double dt) {
  require(q >= 1, errc::domain, "mode index must be at least 1");
  require(static_cast<double>(q) * omega * dt <= M_PI + 1e-12, errc::grid,
          "mode frequency beyond the Nyquist limit of the correlation grid");
}

// The kernel grid must be the record grid subsampled at an integer stride
// (same origin), so running dipole integrals can be read off at kernel nodes.
int aligned_stride(const TimeGrid& fine, const TimeGrid& coarse) {
  require(coarse.n >= 2 && coarse.dt > 0.0, errc::grid,
          "correlation kernel needs at least two samples");
  require(std::abs(coarse.t0 - fine.t0) <= 1e-9 * std::max(1.0, std::abs(fine.t0)) + 1e-12,
          errc::grid, "correlation grid origin does not match the record grid");
  const double ratio = coarse.dt / fine.dt;
  const int stride = static_cast<int>(std::lround(ratio));
  require(stride >= 1 && std::abs(ratio - stride) <= 1e-6, errc::grid,
          "correlation grid spacing is not an integer multiple of the record spacing");
  require(static_cast<long>(coarse.n - 1) * stride <= fine.n - 1, errc::grid,
          "correlation grid extends past the record grid");
  return stride;
}

// Running single-emitter amplitude chi1(t_j) = g sqrt(q) int_0^{t_j} <d> e^{-i q w t},
// cumulative trapezoid on the record grid, sampled at the kernel nodes.
Eigen::VectorXcd running_amplitude(const DipoleRecord& record, int q,
                                   const CouplingConfig& coupling, int stride, int n_nodes) {
  const double omega_q = q * record.fundamental;
  const double dt = record.grid.dt;
  Eigen::VectorXcd out(n_nodes);
  cxd cum = 0.0;
  cxd prev = record.values(0) * std::exp(-kI * (omega_q * record.grid.time(0)));
  out(0) = 0.0;
  int node = 1;
  const int last_fine = (n_nodes - 1) * stride;
  for (int i = 1; i <= last_fine; ++i) {
    const cxd cur = record.values(i) * std::exp(-kI * (omega_q * record.grid.time(i)));
    cum += 0.5 * dt * (prev + cur);
    prev = cur;
    if (i == node * stride) out(node++) = cum;
  }
  const double scale = coupling.g * std::sqrt(static_cast<double>(q));
  return scale * out;
}

// Column-cumulative kernel quadratures A(a,b) = int_0^{t_a} C(t1,t_b) e^{s i w t1} dt1
// (trapezoid in t1) for every kernel node pair; `sign` selects e^{-iwt1} (the
// a+ pairing) or e^{+iwt1} (the anomalous pairing).
Eigen::MatrixXcd column_cumulative(const DipoleCorrelation& corr, double omega_q, double sign) {
  const int n = corr.grid.n;
  const double dt = corr.grid.dt;
  Eigen::VectorXcd phase(n);
  for (int i = 0; i < n; ++i) phase(i) = std::exp(sign * kI * (omega_q * corr.grid.time(i)));
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
  for (int b = 0; b < n; ++b) {
    cxd cum = 0.0;
    cxd prev = corr.cov(0, b) * phase(0);
    a(0, b) = 0.0;
    for (int i = 1; i < n; ++i) {
      const cxd cur = corr.cov(i, b) * phase(i);
      cum += 0.5 * dt * (prev + cur);
      prev = cur;
      a(i, b) = cum;
    }
  }
  return a;
}

// W(a, b) = int_0^{t_a} dt1 int_0^{t_b} dt2 C(t1,t2) e^{-iw t1} e^{+iw t2}:
// row a = a_ref of the a+(t_ref) a(t) pairing, cumulative in b.
Eigen::VectorXcd row_quadrature(const Eigen::MatrixXcd& colcum, const TimeGrid& grid,
                                double omega_q, int a_ref) {
  const int n = grid.n;
  const double dt = grid.dt;
  Eigen::VectorXcd out(n);
  cxd cum = 0.0;
  cxd prev = colcum(a_ref, 0) * std::exp(kI * (omega_q * grid.time(0)));
  out(0) = 0.0;
  for (int b = 1; b < n; ++b) {
    const cxd cur = colcum(a_ref, b) * std::exp(kI * (omega_q * grid.time(b)));
    cum += 0.5 * dt * (prev + cur);
    prev = cur;
    out(b) = cum;
  }
  return out;
}

// Diagonal W(j, j) for every node, real and nonnegative for a PSD kernel.
Eigen::VectorXd diag_quadrature(const Eigen::MatrixXcd& colcum, const TimeGrid& grid,
                                double omega_q) {
  const int n = grid.n;
  const double dt = grid.dt;
  Eigen::VectorXd out(n);
  out(0) = 0.0;
  for (int j = 1; j < n; ++j) {
    cxd cum = 0.0;
    cxd prev = colcum(j, 0) * std::exp(kI * (omega_q * grid.time(0)));
    for (int b = 1; b <= j; ++b) {
      const cxd cur = colcum(j, b) * std::exp(kI * (omega_q * grid.time(b)));
      cum += 0.5 * dt * (prev + cur);
      prev = cur;
    }
    out(j) = cum.real();
  }
  return out;
}

struct ModeMoments {
  int i_ref = 0;     // reference kernel node
  int n_tau = 0;     // delay samples
  double dt = 0.0;   // kernel spacing
  double omega_q = 0.0;
  // Single-emitter running amplitude at kernel nodes and the fluctuation
  // quadratures; indices clamp to the last node beyond the grid (free
  // evolution adds only a phase, handled by the assembly).
  Eigen::VectorXcd chi1;
  Eigen::VectorXcd w_row;  // W(i_ref, j)
  Eigen::VectorXd w_diag;  // W(j, j)
  Eigen::VectorXcd v_row;  // V(i_ref, j), anomalous pairing
  double n_emitters = 1.0;
  double g2q = 0.0; // g^2 q
};

ModeMoments mode_moments(const DipoleRecord& record, const DipoleCorrelation& corr, int q,
                         const CouplingConfig& coupling, int t_ref, int n_tau,
                         bool need_anomalous) {
  validate_coupling(coupling);
  validate_record(record);
  require(corr.cov.rows() == corr.grid.n && corr.cov.cols() == corr.grid.n, errc::dimension,
          "correlation kernel shape does not match its grid");
  const int stride = aligned_stride(record.grid, corr.grid);
  const double omega_q = q * record.fundamental;
  validate_mode(q, record.fundamental, corr.grid.dt);

  ModeMoments m;
  m.dt = corr.grid.dt;
  m.omega_q = omega_q;
  m.n_emitters = static_cast<double>(coupling.n_emitters);
  m.g2q = coupling.g * coupling.g * static_cast<double>(q);
  const int n = corr.grid.n;
  m.i_ref = t_ref < 0 ? n - 1 : t_ref;
  require(m.i_ref < n, errc::domain, "reference index beyond the correlation grid");
  m.n_tau = n_tau < 0 ? n - m.i_ref : n_tau;
  require(m.n_tau >= 1, errc::domain, "delay axis needs at least one sample");

  m.chi1 = running_amplitude(record, q, coupling, stride, n);
  const Eigen::MatrixXcd colcum = column_cumulative(corr, omega_q, -1.0);
  m.w_row = row_quadrature(colcum, corr.grid, omega_q, m.i_ref);
  m.w_diag = diag_quadrature(colcum, corr.grid, omega_q);
  if (need_anomalous) {
    const Eigen::MatrixXcd colcum_plus = column_cumulative(corr, omega_q, +1.0);
    Eigen::VectorXcd row(n);
    cxd cum = 0.0;
    cxd prev = colcum_plus(m.i_ref, 0) * std::exp(kI * (omega_q * corr.grid.time(0)));
    row(0) = 0.0;
    for (int b = 1; b < n; ++b) {
      const cxd cur = colcum_plus(m.i_ref, b) * std::exp(kI * (omega_q * corr.grid.time(b)));
      cum += 0.5 * m.dt * (prev + cur);
      prev = cur;
      row(b) = cum;
    }
    m.v_row = row;
  }
  return m;
}

int clamp_node(const ModeMoments& m, int k) {
  const int j = m.i_ref + k;
  const int last = static_cast<int>(m.w_diag.size()) - 1;
  return j > last ? last : j;
}

} // namespace

EnvironmentConfig make_environment(double g0) {
  require(g0 >= 0.0 && std::isfinite(g0), errc::domain,
          "environment coupling g0 must be nonnegative");
  return EnvironmentConfig{g0 * g0, g0};
}

CorrelationSeries first_order_correlation(const DipoleRecord& record,
                                          const DipoleCorrelation& corr, int q,
                                          const CouplingConfig& coupling, int t_ref,
                                          int n_tau) {
  const ModeMoments m = mode_moments(record, corr, q, coupling, t_ref, n_tau, false);
  const double nn = m.n_emitters;
  CorrelationSeries out;
  out.tau.resize(m.n_tau);
  out.values.resize(m.n_tau);
  out.diagonal.resize(m.n_tau);
  out.normalized = false;
  const cxd chi_ref = m.chi1(m.i_ref);
  for (int k = 0; k < m.n_tau; ++k) {
    const double tau = k * m.dt;
    out.tau(k) = tau;
    const int j = clamp_node(m, k);
    const cxd coherent = nn * nn * chi_ref * std::conj(m.chi1(j));
    const cxd fluct = nn * m.g2q * m.w_row(j);
    out.values(k) = std::exp(-kI * (m.omega_q * tau)) * (coherent + fluct);
    out.diagonal(k) = nn * nn * std::norm(m.chi1(j)) + nn * m.g2q * m.w_diag(j);
  }
  return out;
}

CorrelationSeries g1_normalized(const CorrelationSeries& raw) {
  require(!raw.normalized, errc::structure, "series is already normalized");
  const int n = static_cast<int>(raw.values.size());
  require(n >= 1 && raw.tau.size() == n && raw.diagonal.size() == n, errc::dimension,
          "correlation series fields have mismatched lengths");
  CorrelationSeries out;
  out.tau = raw.tau;
  out.values.resize(n);
  out.diagonal = raw.diagonal;
  out.normalized = true;
  const double i0 = raw.diagonal(0);
  require(i0 > 0.0, errc::domain, "zero-intensity normalization request");
  for (int k = 0; k < n; ++k) {
    require(raw.diagonal(k) > 0.0, errc::domain, "zero-intensity normalization request");
    out.values(k) = raw.values(k) / std::sqrt(i0 * raw.diagonal(k));
  }
  return out;
}

CorrelationSeries g2(const DipoleRecord& record, const DipoleCorrelation& corr, int q,
                     const CouplingConfig& coupling, int t_ref, int n_tau) {
  const ModeMoments m = mode_moments(record, corr, q, coupling, t_ref, n_tau, true);
  const double nn = m.n_emitters;
  CorrelationSeries out;
  out.tau.resize(m.n_tau);
  out.values.resize(m.n_tau);
  out.diagonal.resize(m.n_tau);
  out.normalized = true;

  // Gaussian (Wick) factorization over the mean + fluctuation field. All
  // mode phases cancel inside the normal-ordered combination, so the terms
  // below are assembled phase-free from chi1, W and the anomalous V.
  const cxd chi_r = m.chi1(m.i_ref);
  const double mu2_r = nn * nn * std::norm(chi_r);
  const double nu_rr = nn * m.g2q * m.w_diag(m.i_ref);
  const double intensity_r = mu2_r + nu_rr;
  require(intensity_r > 0.0, errc::domain, "zero-intensity normalization request");

  for (int k = 0; k < m.n_tau; ++k) {
    out.tau(k) = k * m.dt;
    const int j = clamp_node(m, k);
    const cxd chi_j = m.chi1(j);
    const double mu2_j = nn * nn * std::norm(chi_j);
    const double nu_jj = nn * m.g2q * m.w_diag(j);
    const double intensity_j = mu2_j + nu_jj;
    require(intensity_j > 0.0, errc::domain, "zero-intensity normalization request");
    // nu = <da+(t_r) da(t_j)>, anom = <da(t_r) da(t_j)>, both without the
    // free mode phases (which cancel against the mean-field phases).
    const cxd nu = nn * m.g2q * m.w_row(j);
    const cxd anom = nn * m.g2q * m.v_row(j);
    const cxd mean_cross = nn * nn * std::conj(chi_r) * chi_j; // mu_r conj(mu_j) dephased
    double numer = mu2_r * mu2_j + mu2_r * nu_jj + mu2_j * nu_rr;
    numer += 2.0 * (mean_cross * nu).real();
    numer += 2.0 * (nn * nn * chi_r * chi_j * anom).real();
    numer += std::norm(nu) + std::norm(anom) + nu_rr * nu_jj;
    out.values(k) = numer / (intensity_r * intensity_j);
    out.diagonal(k) = intensity_j;
  }
  return out;
}

double csi_parameter(double g2_ii, double g2_jj, double g2_ij) {
  require(g2_ii > 0.0 && g2_jj > 0.0 && g2_ij >= 0.0, errc::domain,
          "intensity correlations must be positive");
  return g2_ij * g2_ij / (g2_ii * g2_jj);
}

std::pair<Spectrum, Spectrum> wkt_spectrum(const DipoleRecord& record,
                                           const DipoleCorrelation& corr,
                                           const CouplingConfig& coupling, int n_bins,
                                           double omega_max) {
  validate_coupling(coupling);
  validate_record(record);
  require(n_bins >= 2 && omega_max > 0.0, errc::domain, "spectrum grid is empty");
  require(coupling.q_cutoff >= 1, errc::domain, "mode cutoff must be at least 1");
  require(omega_max >= coupling.q_cutoff * record.fundamental, errc::domain,
          "spectrum grid does not cover the retained modes");
  const double bin = omega_max / (n_bins - 1);
  const double duration = record.grid.dt * (record.grid.n - 1);
  require(2.0 * M_PI / bin >= 4.0 * duration, errc::grid,
          "window too short for the stationary limit (need >= 4 record durations)");
  aligned_stride(record.grid, corr.grid);
  validate_mode(coupling.q_cutoff, record.fundamental, corr.grid.dt);

  Spectrum coh, inc;
  coh.omega = Eigen::VectorXd::LinSpaced(n_bins, 0.0, omega_max);
  coh.intensity = Eigen::VectorXd::Zero(n_bins);
  coh.window = SpectralWindow::rectangular;
  coh.fundamental = record.fundamental;
  inc = coh;

  const double nn = static_cast<double>(coupling.n_emitters);
  for (int q = 1; q <= coupling.q_cutoff; ++q) {
    const double omega_q = q * record.fundamental;
    const ModeMoments m = mode_moments(record, corr, q, coupling, -1, 1, false);
    const int last = corr.grid.n - 1;
    const double coh_mass = omega_q * nn * nn * std::norm(m.chi1(last));
    const double inc_mass = omega_q * nn * m.g2q * m.w_diag(last);
    const int b = static_cast<int>(std::lround(omega_q / bin));
    require(b >= 0 && b < n_bins, errc::domain, "harmonic falls outside the spectrum grid");
    coh.intensity(b) += coh_mass;
    inc.intensity(b) += std::max(0.0, inc_mass);
  }
  coh.cutoff_harmonic = detect_cutoff_harmonic(coh);
  inc.cutoff_harmonic = detect_cutoff_harmonic(inc);
  return {coh, inc};
}

Spectrum damped_spectrum(const DipoleRecord& record, const EnvironmentConfig& env,
                         const CouplingConfig& coupling, int n_bins, double omega_max) {
  validate_coupling(coupling);
  validate_record(record);
  require(env.kappa >= 0.0 && std::isfinite(env.kappa), errc::domain,
          "damping rate must be nonnegative");
  require(n_bins >= 2 && omega_max > 0.0, errc::domain, "spectrum grid is empty");
  require(coupling.q_cutoff >= 1, errc::domain, "mode cutoff must be at least 1");
  require(omega_max >= coupling.q_cutoff * record.fundamental, errc::domain,
          "spectrum grid does not cover the retained modes");
  const double bin = omega_max / (n_bins - 1);

  Spectrum out;
  out.omega = Eigen::VectorXd::LinSpaced(n_bins, 0.0, omega_max);
  out.intensity = Eigen::VectorXd::Zero(n_bins);
  out.window = SpectralWindow::rectangular;
  out.fundamental = record.fundamental;

  const double nn = static_cast<double>(coupling.n_emitters);
  const double scale = coupling.g * coupling.g * nn * nn;
  for (int q = 1; q <= coupling.q_cutoff; ++q) {
    const double omega_q = q * record.fundamental;
    require(omega_q * record.grid.dt <= M_PI + 1e-12, errc::grid,
            "mode frequency beyond the Nyquist limit of the record grid");
    // Full-record mode quadrature: chi1 magnitude without a kernel.
    cxd amp = 0.0;
    cxd prev = record.values(0) * std::exp(-kI * (omega_q * record.grid.time(0)));
    for (int i = 1; i < record.grid.n; ++i) {
      const cxd cur = record.values(i) * std::exp(-kI * (omega_q * record.grid.time(i)));
      amp += 0.5 * record.grid.dt * (prev + cur);
      prev = cur;
    }
    const double mass = omega_q * scale * static_cast<double>(q) * std::norm(amp);
    if (env.kappa == 0.0) {
      const int b = static_cast<int>(std::lround(omega_q / bin));
      require(b >= 0 && b < n_bins, errc::domain, "harmonic falls outside the spectrum grid");
      out.intensity(b) += mass;
    } else {
      const double kap = env.kappa;
      for (int b = 0; b < n_bins; ++b) {
        const double d = out.omega(b) - omega_q;
        out.intensity(b) += mass * (kap / M_PI) / (d * d + kap * kap) * bin;
      }
    }
  }
  out.cutoff_harmonic = detect_cutoff_harmonic(out);
  return out;
}

double incoherent_power_bound(double g, double g0) {
  require(std::isfinite(g) && std::isfinite(g0), errc::domain,
          "coupling constants must be finite");
  require(g0 > 0.0, errc::domain,
          "undamped limit: the power bound diverges as g0 -> 0");
  const double r = g / g0;
  return r * r;
}

} // namespace attoqo
