#pragma once

#include <utility>

#include <Eigen/Dense>

#include "attoqo/correlation.hpp"
#include "attoqo/qstate.hpp"
#include "attoqo/sfa.hpp"
#include "attoqo/spectrum.hpp"

namespace attoqo {

// Two-time field correlation data at a fixed reference time t_ref:
// values(k) ~ G(t_ref, t_ref + tau_k), diagonal(k) ~ G(t_ref + tau_k, ...)
// for raw first-order series; normalized series hold g(tau) directly.
struct CorrelationSeries {
  Eigen::VectorXd tau;
  Eigen::VectorXcd values;
  Eigen::VectorXd diagonal;
  bool normalized = false;
};

// Bosonic environment with flat (Markovian) coupling g0; the damping rate
// follows the kappa = g0^2 convention used by make_environment.
struct EnvironmentConfig {
  double kappa = 0.0;
  double g0 = 0.0;
};

EnvironmentConfig make_environment(double g0);

// First-order correlation G1(t_ref, t_ref + tau) of harmonic mode q from the
// Heisenberg source-term solution, splitting the dipole into mean and
// fluctuation: the coherent part scales as N^2 (constructive emitters), the
// fluctuation part as N. The record supplies <d(t)> on a fine grid; the
// kernel grid must align with it (same origin, integer stride). t_ref is a
// kernel-grid index (-1: last node, i.e. after the pulse, where the series
// reduces to a free phase); n_tau extends the series beyond the grid by free
// evolution.
CorrelationSeries first_order_correlation(const DipoleRecord& record,
                                          const DipoleCorrelation& corr, int q,
                                          const CouplingConfig& coupling, int t_ref = -1,
                                          int n_tau = -1);

// g1(tau) = G(t_ref, t_ref+tau)/sqrt(G(t_ref,t_ref) G(t_ref+tau, t_ref+tau)).
CorrelationSeries g1_normalized(const CorrelationSeries& raw);

// Normal-ordered intensity correlation g2(tau) of mode q, evaluated by
// Gaussian moment factorization over the mean + fluctuation field (the state
// at this order is Gaussian); coherent-only input gives exactly 1.
CorrelationSeries g2(const DipoleRecord& record, const DipoleCorrelation& corr, int q,
                     const CouplingConfig& coupling, int t_ref = -1, int n_tau = -1);

// Cauchy-Schwarz parameter R = g2_ij^2 / (g2_ii g2_jj); R > 1 witnesses
// nonclassical cross-mode correlations.
double csi_parameter(double g2_ii, double g2_jj, double g2_ij);

// Wiener-Khintchine power spectrum after the pulse, split into the coherent
// (mean-dipole, N^2) and incoherent (fluctuation, N) parts. Each harmonic
// mode contributes a single-bin mass in energy units, w_q * <n_q>, so the
// integrated S_coh equals sum_q w_q |chi_q|^2 exactly. The bin grid spans
// [0, omega_max] with n_bins bins; resolving stationarity requires the
// implied window 2 pi / bin_width to cover at least 4 record durations.
std::pair<Spectrum, Spectrum> wkt_spectrum(const DipoleRecord& record,
                                           const DipoleCorrelation& corr,
                                           const CouplingConfig& coupling, int n_bins,
                                           double omega_max);

// Coherent spectrum with each harmonic mass spread over a unit-normalized
// Lorentzian of half-width kappa (kappa = 0 keeps single-bin masses), per the
// Markovian damping of the mode operators. Peak-height ratios between
// harmonics are kappa-independent.
Spectrum damped_spectrum(const DipoleRecord& record, const EnvironmentConfig& env,
                         const CouplingConfig& coupling, int n_bins, double omega_max);

// Bound constant g^2/g0^2 on the incoherently emitted power, in the
// documented convention P_max = (g/g0)^2.
double incoherent_power_bound(double g, double g0);

} // namespace attoqo
