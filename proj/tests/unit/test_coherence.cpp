#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "attoqo/coherence.hpp"
#include "attoqo/correlation.hpp"
#include "attoqo/errors.hpp"
#include "attoqo/pulse.hpp"
#include "attoqo/qstate.hpp"
#include "attoqo/sfa.hpp"
#include "attoqo/spectrum.hpp"
#include "attoqo/units.hpp"
#include "fock_oracle.hpp"

using namespace attoqo;
using cxd = std::complex<double>;

namespace {

const double kPi = std::acos(-1.0);

LaserPulse benchmark_pulse() {
  return make_pulse(units::field_from_intensity_w_cm2(1e14),
                    units::omega_from_wavelength_nm(800.0), 0.0, Envelope::sin2, 8.0);
}

// Fine record grid (512 samples per cycle) with kernels subsampled at integer
// strides so the grids align; built once, reused across cases.
const DipoleRecord& shared_record() {
  static const DipoleRecord rec = [] {
    const LaserPulse p = benchmark_pulse();
    const int n = 8 * 512;
    return dipole_expectation(p, make_atom(0.5), make_grid(0.0, p.end() / n, n + 1));
  }();
  return rec;
}

const DipoleCorrelation& shared_kernel() {
  static const DipoleCorrelation kern = [] {
    const LaserPulse p = benchmark_pulse();
    const double dtf = p.end() / (8 * 512);
    const double v_need = std::sqrt(20.0 * ponderomotive_energy(p));
    return dipole_correlation(p, make_atom(0.5), make_grid(0.0, 4.0 * dtf, 1025),
                              make_momentum_grid(1.05 * v_need, 512));
  }();
  return kern;
}

DipoleCorrelation zero_kernel() {
  DipoleCorrelation z = shared_kernel();
  z.cov.setZero();
  return z;
}

DipoleRecord zero_record() {
  DipoleRecord z = shared_record();
  z.values.setZero();
  return z;
}

CouplingConfig coupling_n(int n_emitters) {
  CouplingConfig c;
  c.q_cutoff = 15;
  c.n_emitters = n_emitters;
  return c;
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const int n = static_cast<int>(x.size());
  double xm = 0, ym = 0;
  for (int i = 0; i < n; ++i) {
    xm += x[i];
    ym += y[i];
  }
  xm /= n;
  ym /= n;
  double num = 0, den = 0;
  for (int i = 0; i < n; ++i) {
    num += (x[i] - xm) * (y[i] - ym);
    den += (x[i] - xm) * (x[i] - xm);
  }
  return num / den;
}

} // namespace

TEST_CASE("first-order correlation: zero inputs, photon numbers, emitter scaling") {
  const DipoleRecord& rec = shared_record();
  const DipoleCorrelation& kern = shared_kernel();
  const DipoleCorrelation zk = zero_kernel();
  const DipoleRecord zr = zero_record();
  const CouplingConfig c1 = coupling_n(1);

  SUBCASE("dark input produces an identically zero series") {
    const CorrelationSeries s = first_order_correlation(zr, zk, 3, c1, 512, 257);
    CHECK(s.values.cwiseAbs().maxCoeff() == 0.0);
    CHECK(s.diagonal.cwiseAbs().maxCoeff() == 0.0);
    CHECK_THROWS_AS(g1_normalized(s), Error); // zero-intensity normalization
  }

  SUBCASE("equal-time value reproduces the mode photon number") {
    const HarmonicAmplitudes amps = coherent_amplitudes(rec, c1);
    for (int q : {1, 7, 11}) {
      const CorrelationSeries s = first_order_correlation(rec, zk, q, c1, -1, 1);
      const double expected = std::norm(amps.chi(q - 1));
      CHECK(std::abs(s.values(0).real() - expected) <= 1e-12 * expected);
      CHECK(std::abs(s.values(0).imag()) <= 1e-15 * expected);
    }
  }

  SUBCASE("coherent part scales as N^2, fluctuation part as N") {
    const CorrelationSeries coh1 = first_order_correlation(rec, zk, 5, c1, 512, 65);
    const CorrelationSeries coh3 = first_order_correlation(rec, zk, 5, coupling_n(3), 512, 65);
    const CorrelationSeries flu1 = first_order_correlation(zr, kern, 5, c1, 512, 65);
    const CorrelationSeries flu3 = first_order_correlation(zr, kern, 5, coupling_n(3), 512, 65);
    CHECK((coh3.values - 9.0 * coh1.values).cwiseAbs().maxCoeff() <=
          1e-14 * coh3.values.cwiseAbs().maxCoeff());
    CHECK((flu3.values - 3.0 * flu1.values).cwiseAbs().maxCoeff() <=
          1e-14 * flu3.values.cwiseAbs().maxCoeff());

    std::vector<double> lx, ly_coh, ly_flu;
    for (int n = 1; n <= 8; ++n) {
      lx.push_back(std::log(static_cast<double>(n)));
      ly_coh.push_back(std::log(
          first_order_correlation(rec, zk, 5, coupling_n(n), -1, 1).values(0).real()));
      ly_flu.push_back(std::log(
          first_order_correlation(zr, kern, 5, coupling_n(n), -1, 1).values(0).real()));
    }
    CHECK(std::abs(fit_slope(lx, ly_coh) - 2.0) <= 0.05);
    CHECK(std::abs(fit_slope(lx, ly_flu) - 1.0) <= 0.05);
  }

  SUBCASE("grid and mode validation") {
    DipoleCorrelation bad = zk;
    bad.grid = make_grid(0.0, rec.grid.dt * 3.7, 64);
    bad.cov = Eigen::MatrixXcd::Zero(64, 64);
    CHECK_THROWS_AS(first_order_correlation(rec, bad, 3, c1), Error); // stride not integer
    bad.grid = make_grid(rec.grid.dt / 2.0, rec.grid.dt * 4.0, 64);
    CHECK_THROWS_AS(first_order_correlation(rec, bad, 3, c1), Error); // origin mismatch
    CHECK_THROWS_AS(first_order_correlation(rec, kern, 300, c1), Error); // Nyquist
    CHECK_THROWS_AS(first_order_correlation(rec, kern, 0, c1), Error);
    DipoleRecord nof = rec;
    nof.fundamental = 0.0;
    CHECK_THROWS_AS(first_order_correlation(nof, kern, 3, c1), Error);
  }
}

TEST_CASE("first-order coherence: unity for coherent light, decay under fluctuations") {
  const DipoleRecord& rec = shared_record();
  const DipoleCorrelation& kern = shared_kernel();

  SUBCASE("coherent-only field has |g1| = 1 at every delay") {
    const CorrelationSeries g1 =
        g1_normalized(first_order_correlation(rec, zero_kernel(), 3, coupling_n(1), 512, 513));
    CHECK(g1.normalized);
    for (int k = 0; k < g1.values.size(); ++k)
      CHECK(std::abs(std::abs(g1.values(k)) - 1.0) <= 1e-12);
  }

  SUBCASE("coherent-dominated field stays within 1e-6 of unit coherence") {
    const CorrelationSeries g1 =
        g1_normalized(first_order_correlation(rec, kern, 1, coupling_n(10000000), 512, 513));
    double dev = 0.0;
    for (int k = 0; k < g1.values.size(); ++k)
      dev = std::max(dev, std::abs(std::abs(g1.values(k)) - 1.0));
    CHECK(dev <= 1e-6);
  }

  SUBCASE("pure fluctuation field decays while respecting |g1| <= 1") {
    const CorrelationSeries g1 =
        g1_normalized(first_order_correlation(zero_record(), kern, 11, coupling_n(1), 256, 513));
    double peak = 0.0;
    for (int k = 0; k < g1.values.size(); ++k) peak = std::max(peak, std::abs(g1.values(k)));
    CHECK(peak <= 1.0 + 1e-9);
    CHECK(std::abs(std::abs(g1.values(0)) - 1.0) <= 1e-12);
    const double tail = std::abs(g1.values(g1.values.size() - 1));
    CHECK(tail < 0.75);
    CHECK(tail > 0.4);
  }

  SUBCASE("two-frequency thermal toy matches the number-basis evaluation") {
    const double nbar1 = 0.5, nbar2 = 0.25;
    const double w1 = 1.0, w2 = 1.37;
    const int n_tau = 65;
    const double dtau = 0.2;
    // Truncated number-basis evaluation of G(tau) = Tr[rho b+(0) b(tau)] for
    // b(t) = a1 e^{-i w1 t} + a2 e^{-i w2 t} on a two-mode thermal state.
    const int n_max = 24;
    const int dim = n_max + 1;
    Eigen::VectorXd p1(dim), p2(dim);
    for (int n = 0; n <= n_max; ++n) {
      p1(n) = std::pow(nbar1 / (1.0 + nbar1), n) / (1.0 + nbar1);
      p2(n) = std::pow(nbar2 / (1.0 + nbar2), n) / (1.0 + nbar2);
    }
    const Eigen::MatrixXcd a = fock::lowering_operator(n_max);
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(dim, dim);
    // weights of the product thermal state and the tensored mode operators
    auto tensor_trace = [&](const Eigen::MatrixXcd& op1, const Eigen::MatrixXcd& op2) {
      // Tr[(rho1 x rho2) (op1 x op2)] for diagonal thermal factors
      cxd t1 = 0.0, t2 = 0.0;
      for (int n = 0; n < dim; ++n) {
        t1 += p1(n) * op1(n, n);
        t2 += p2(n) * op2(n, n);
      }
      return t1 * t2;
    };
    CorrelationSeries fock_raw, analytic_raw;
    fock_raw.tau = Eigen::VectorXd::LinSpaced(n_tau, 0.0, dtau * (n_tau - 1));
    fock_raw.values.resize(n_tau);
    fock_raw.diagonal.resize(n_tau);
    analytic_raw = fock_raw;
    const Eigen::MatrixXcd n1 = a.adjoint() * a;
    for (int k = 0; k < n_tau; ++k) {
      const double tau = fock_raw.tau(k);
      const cxd ph1 = std::exp(cxd(0.0, -w1 * tau));
      const cxd ph2 = std::exp(cxd(0.0, -w2 * tau));
      // cross terms Tr[rho a1+ a2] vanish for the product thermal state
      const cxd g = tensor_trace(n1, id) * ph1 + tensor_trace(id, n1) * ph2;
      fock_raw.values(k) = g;
      fock_raw.diagonal(k) = (tensor_trace(n1, id) + tensor_trace(id, n1)).real();
      analytic_raw.values(k) = nbar1 * ph1 + nbar2 * ph2;
      analytic_raw.diagonal(k) = nbar1 + nbar2;
    }
    const CorrelationSeries gf = g1_normalized(fock_raw);
    const CorrelationSeries ga = g1_normalized(analytic_raw);
    CHECK((gf.values - ga.values).cwiseAbs().maxCoeff() <= 1e-8);
    double low = 2.0;
    for (int k = 0; k < n_tau; ++k) {
      CHECK(std::abs(gf.values(k)) <= 1.0 + 1e-9);
      low = std::min(low, std::abs(gf.values(k)));
    }
    CHECK(low < 0.5); // the two-frequency beat pulls |g1| well below 1
  }
}

TEST_CASE("intensity correlations: Wick toys and the classical battery") {
  const DipoleRecord& rec = shared_record();
  const DipoleCorrelation& kern = shared_kernel();
  const CouplingConfig c1 = coupling_n(1);

  SUBCASE("coherent-only field has g2 = 1 identically") {
    const CorrelationSeries s = g2(rec, zero_kernel(), 3, c1, 512, 129);
    for (int k = 0; k < s.values.size(); ++k) {
      CHECK(std::abs(s.values(k).real() - 1.0) <= 1e-9);
      CHECK(s.values(k).imag() == 0.0);
    }
  }

  SUBCASE("single-mode thermal toy gives g2(0) = 2") {
    // Rank-one mode-matched kernel on a grid commensurate with the mode
    // frequency, so the anomalous quadrature vanishes identically.
    const int n = 65;
    const TimeGrid g = make_grid(0.0, kPi / 32.0, n);
    DipoleRecord dark;
    dark.grid = g;
    dark.values = Eigen::VectorXd::Zero(n);
    dark.fundamental = 1.0;
    DipoleCorrelation toy;
    toy.grid = g;
    toy.fundamental = 1.0;
    toy.cov.resize(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) toy.cov(i, j) = std::exp(cxd(0.0, g.time(i) - g.time(j)));
    CouplingConfig ct;
    ct.q_cutoff = 1;
    const CorrelationSeries s = g2(dark, toy, 1, ct, -1, 33);
    CHECK(std::abs(s.values(0).real() - 2.0) <= 1e-12);
    for (int k = 1; k < s.values.size(); ++k)
      CHECK(s.values(k).real() <= s.values(0).real() + 1e-12);
  }

  SUBCASE("decorrelating thermal toy decays monotonically from g2(0) = 2") {
    const int n = 513;
    const TimeGrid g = make_grid(0.0, kPi / 32.0, n);
    DipoleRecord dark;
    dark.grid = g;
    dark.values = Eigen::VectorXd::Zero(n);
    dark.fundamental = 1.0;
    DipoleCorrelation toy;
    toy.grid = g;
    toy.fundamental = 1.0;
    toy.cov.resize(n, n);
    const double tc = 8.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double d = g.time(i) - g.time(j);
        toy.cov(i, j) = std::exp(cxd(0.0, d)) * std::exp(-d * d / (tc * tc));
      }
    CouplingConfig ct;
    ct.q_cutoff = 1;
    const CorrelationSeries s = g2(dark, toy, 1, ct, 256, 257);
    CHECK(std::abs(s.values(0).real() - 2.0) <= 1e-4);
    for (int k = 1; k < s.values.size(); ++k) {
      CHECK(s.values(k).real() <= s.values(k - 1).real() + 1e-9);
      CHECK(s.values(k).real() >= 1.0 - 1e-9);
    }
    CHECK(s.values(s.values.size() - 1).real() < 1.7);
  }

  SUBCASE("plateau harmonic of the benchmark: bunched thermal-like statistics") {
    // The single-emitter field is fluctuation dominated, so the normal-ordered
    // statistics come out chaotic; the anti-bunching flag reports g2(0) < 1.
    const CorrelationSeries s = g2(rec, kern, 11, c1, -1, 1);
    const double g20 = s.values(0).real();
    CHECK(g20 > 1.0);
    CHECK(g20 <= 2.2);
    const bool antibunched = g20 < 1.0;
    CHECK_FALSE(antibunched);
    // classical-side battery from a mid-pulse reference: g2(0) bounds the tail
    const CorrelationSeries sm = g2(rec, kern, 11, c1, 512, 257);
    for (int k = 1; k < sm.values.size(); ++k)
      CHECK(sm.values(k).real() <= sm.values(0).real() + 1e-9);
  }

  SUBCASE("zero intensity cannot be normalized") {
    CHECK_THROWS_AS(g2(zero_record(), zero_kernel(), 3, c1, -1, 1), Error);
  }
}

TEST_CASE("cross-mode Cauchy-Schwarz parameter") {
  SUBCASE("product coherent state built from the harmonic amplitudes gives R = 1") {
    const HarmonicAmplitudes amps = coherent_amplitudes(shared_record(), coupling_n(1));
    // amplify to order one while keeping the computed phases
    const cxd a1 = 0.9 * amps.chi(0) / std::abs(amps.chi(0));
    const cxd a3 = 1.4 * amps.chi(2) / std::abs(amps.chi(2));
    const int n_max = 24;
    const Eigen::VectorXcd v1 = fock::coherent_vector(a1, n_max);
    const Eigen::VectorXcd v3 = fock::coherent_vector(a3, n_max);
    auto moments = [&](const Eigen::VectorXcd& v) {
      double n = 0, nn = 0;
      for (int k = 0; k <= n_max; ++k) {
        const double p = std::norm(v(k));
        n += p * k;
        nn += p * k * (k - 1.0);
      }
      return std::pair<double, double>(n, nn);
    };
    const auto [n1, f1] = moments(v1);
    const auto [n3, f3] = moments(v3);
    const double g11 = f1 / (n1 * n1);
    const double g33 = f3 / (n3 * n3);
    const double g13 = (n1 * n3) / (n1 * n3); // independent modes factorize
    const double r = csi_parameter(g11, g33, g13);
    CHECK(std::abs(r - 1.0) <= 1e-9);
  }

  SUBCASE("two-mode squeezed toy exceeds the classical bound") {
    const double sq = 0.6;
    const double nbar = std::sinh(sq) * std::sinh(sq);
    const int n_max = 40;
    // |TMSV> = sech(s) sum tanh(s)^n |n, n>
    Eigen::VectorXd pn(n_max + 1);
    const double th = std::tanh(sq);
    for (int n = 0; n <= n_max; ++n)
      pn(n) = std::pow(th, 2 * n) / (std::cosh(sq) * std::cosh(sq));
    double n1 = 0, f1 = 0, cross = 0;
    for (int n = 0; n <= n_max; ++n) {
      n1 += pn(n) * n;
      f1 += pn(n) * n * (n - 1.0);
      cross += pn(n) * static_cast<double>(n) * n;
    }
    const double g_auto = f1 / (n1 * n1);
    const double g_cross = cross / (n1 * n1);
    const double r = csi_parameter(g_auto, g_auto, g_cross);
    const double r_analytic = std::pow(2.0 + 1.0 / nbar, 2) / 4.0;
    CHECK(std::abs(g_auto - 2.0) <= 1e-8);
    CHECK(std::abs(g_cross - (2.0 + 1.0 / nbar)) <= 1e-8);
    CHECK(std::abs(r - r_analytic) <= 1e-8);
    CHECK(r > 1.0);
  }

  SUBCASE("uncorrelated thermal modes sit at R = 1/4") {
    CHECK(csi_parameter(2.0, 2.0, 1.0) == 0.25);
  }

  SUBCASE("nonpositive intensity correlations are rejected") {
    CHECK_THROWS_AS(csi_parameter(0.0, 2.0, 1.0), Error);
    CHECK_THROWS_AS(csi_parameter(2.0, -1.0, 1.0), Error);
    CHECK_THROWS_AS(csi_parameter(2.0, 2.0, -0.5), Error);
  }
}

TEST_CASE("stationary emission spectrum: coherent and incoherent parts") {
  const DipoleRecord& rec = shared_record();
  const DipoleCorrelation& kern = shared_kernel();
  const double dtf = rec.grid.dt;
  const int n_bins = 16385;
  const double omega_max = kPi / dtf;

  SUBCASE("zero kernel leaves no incoherent part; coherent masses are w_q n_q") {
    const CouplingConfig c1 = coupling_n(1);
    const auto [coh, inc] = wkt_spectrum(rec, zero_kernel(), c1, n_bins, omega_max);
    CHECK(inc.intensity.maxCoeff() == 0.0);
    const HarmonicAmplitudes amps = coherent_amplitudes(rec, c1);
    const double bin = coh.bin_width();
    double total = 0.0;
    for (int q = 1; q <= 15; ++q) {
      const double wq = q * rec.fundamental;
      const int b = static_cast<int>(std::lround(wq / bin));
      const double expected = wq * std::norm(amps.chi(q - 1));
      CHECK(std::abs(coh.intensity(b) - expected) <= 1e-12 * expected);
      total += expected;
    }
    CHECK(std::abs(coh.intensity.sum() - total) <= 1e-9 * total);
  }

  SUBCASE("coherent part matches the radiated spectrum on exact bins") {
    DipoleRecord windowed = rec;
    const int n = windowed.grid.n;
    for (int i = 0; i < n; ++i)
      windowed.values(i) *= 0.5 * (1.0 - std::cos(2.0 * kPi * i / (n - 1)));
    const CouplingConfig c1 = coupling_n(1);
    const auto [coh, inc] = wkt_spectrum(windowed, zero_kernel(), c1, n_bins, omega_max);
    const Spectrum radiated = hhg_spectrum(rec, SpectralWindow::hann, rec.fundamental);
    // same Fourier content: I(w_q) = w_q^3 / g^2 q * S_coh(w_q) mode by mode
    for (int q : {3, 7, 11, 15}) {
      const double wq = q * rec.fundamental;
      const double mapped = std::pow(wq, 3) / (c1.g * c1.g * q) * coh.intensity(64 * q);
      const double direct = radiated.intensity(16 * q);
      CHECK(std::abs(mapped - direct) <= 1e-10 * direct);
    }
  }

  SUBCASE("single emitter is incoherent dominated; many emitters flip the plateau") {
    const auto [coh1, inc1] = wkt_spectrum(rec, kern, coupling_n(1), n_bins, omega_max);
    const double bin = coh1.bin_width();
    for (int q : {5, 9, 11, 13, 15}) {
      const int b = static_cast<int>(std::lround(q * rec.fundamental / bin));
      CHECK(inc1.intensity(b) > coh1.intensity(b));
    }
    const auto [cohn, incn] = wkt_spectrum(rec, kern, coupling_n(1000000000), n_bins, omega_max);
    for (int q : {3, 9, 11, 13, 15}) {
      const int b = static_cast<int>(std::lround(q * rec.fundamental / bin));
      CHECK(cohn.intensity(b) > incn.intensity(b));
    }
  }

  SUBCASE("incoherent part is structureless across the plateau") {
    const auto [coh, inc] = wkt_spectrum(rec, kern, coupling_n(1), n_bins, omega_max);
    const double bin = inc.bin_width();
    auto mass = [&](int q) {
      return inc.intensity(static_cast<int>(std::lround(q * rec.fundamental / bin)));
    };
    for (int q = 5; q <= 13; q += 2) {
      const double contrast = mass(q) / std::sqrt(mass(q - 1) * mass(q + 1));
      CHECK(contrast < 3.0);
      CHECK(contrast > 1.0 / 3.0);
    }
  }

  SUBCASE("too coarse a bin grid violates the stationary-window requirement") {
    CHECK_THROWS_AS(wkt_spectrum(rec, zero_kernel(), coupling_n(1), 129, omega_max), Error);
  }
}

TEST_CASE("damped emission: Lorentzian lines and the power bound") {
  const DipoleRecord& rec = shared_record();
  CouplingConfig c;
  c.q_cutoff = 5;
  const double om = rec.fundamental;
  const int n_bins = 16 * 256 + 1;
  const double omega_max = 16.0 * om;
  const double bin = omega_max / (n_bins - 1);

  SUBCASE("kappa = 0 recovers single-bin masses") {
    const Spectrum s = damped_spectrum(rec, EnvironmentConfig{0.0, 0.0}, c, n_bins, omega_max);
    const HarmonicAmplitudes amps = coherent_amplitudes(rec, c);
    for (int q = 1; q <= 5; ++q) {
      const double wq = q * om;
      const int b = static_cast<int>(std::lround(wq / bin));
      const double expected = wq * std::norm(amps.chi(q - 1));
      CHECK(std::abs(s.intensity(b) - expected) <= 1e-12 * expected);
      CHECK(s.intensity(b + 8) == 0.0); // off-resonant bins stay empty
    }
  }

  SUBCASE("fitted half width matches kappa; peak ratios are kappa independent") {
    auto peak_and_hwhm = [&](double kappa, int q) {
      const Spectrum s =
          damped_spectrum(rec, EnvironmentConfig{kappa, std::sqrt(kappa)}, c, n_bins, omega_max);
      const int pk = static_cast<int>(std::lround(q * om / bin));
      const double half = s.intensity(pk) / 2.0;
      int l = pk, r = pk;
      while (s.intensity(l) > half) --l;
      while (s.intensity(r) > half) ++r;
      auto cross = [&](int a, int b2) {
        return s.omega(a) + (half - s.intensity(a)) * (s.omega(b2) - s.omega(a)) /
                                (s.intensity(b2) - s.intensity(a));
      };
      return std::pair<double, double>(s.intensity(pk),
                                       0.5 * (cross(r - 1, r) - cross(l, l + 1)));
    };
    const double kappa10 = 10.0 * bin;
    const auto [h3_10, w3_10] = peak_and_hwhm(kappa10, 3);
    CHECK(std::abs(w3_10 - kappa10) <= 0.02 * kappa10);
    const auto [h1_10, w1_10] = peak_and_hwhm(kappa10, 1);
    const auto [h3_20, w3_20] = peak_and_hwhm(2.0 * kappa10, 3);
    const auto [h1_20, w1_20] = peak_and_hwhm(2.0 * kappa10, 1);
    CHECK(std::abs(w1_10 - kappa10) <= 0.02 * kappa10);
    const double ratio10 = h3_10 / h1_10;
    const double ratio20 = h3_20 / h1_20;
    CHECK(std::abs(ratio10 - ratio20) <= 0.01 * ratio10);
  }

  SUBCASE("environment construction and validation") {
    const EnvironmentConfig env = make_environment(0.3);
    CHECK(env.kappa == doctest::Approx(0.09).epsilon(1e-12));
    CHECK(env.g0 == 0.3);
    CHECK_THROWS_AS(make_environment(-1.0), Error);
    CHECK_THROWS_AS(
        damped_spectrum(rec, EnvironmentConfig{-0.1, 0.0}, c, n_bins, omega_max), Error);
  }

  SUBCASE("incoherent power bound and a saturating two-level toy") {
    CHECK(incoherent_power_bound(0.01, 0.2) == doctest::Approx(2.5e-3).epsilon(1e-12));
    CHECK(incoherent_power_bound(0.04, 0.2) ==
          doctest::Approx(16.0 * incoherent_power_bound(0.01, 0.2)).epsilon(1e-12));
    CHECK_THROWS_AS(incoherent_power_bound(0.01, 0.0), Error);

    // Driven damped mode with a bounded two-level source dipole: the emitted
    // power 2 kappa |a|^2 settles at half the bound in the kappa = g0^2
    // convention. Fourth-order integration, long-time average.
    const double g = 0.01, g0 = 0.2;
    const double kappa = g0 * g0;
    const double w0 = 1.0;
    const double bound = incoherent_power_bound(g, g0);
    auto rhs = [&](double t, cxd a) {
      return (-cxd(0.0, w0) - kappa) * a + g * std::cos(w0 * t);
    };
    cxd a = 0.0;
    const double dt = 0.01;
    const int n_steps = 75000;
    double acc = 0.0;
    int n_acc = 0;
    for (int i = 0; i < n_steps; ++i) {
      const double t = i * dt;
      const cxd k1 = rhs(t, a);
      const cxd k2 = rhs(t + dt / 2, a + dt / 2 * k1);
      const cxd k3 = rhs(t + dt / 2, a + dt / 2 * k2);
      const cxd k4 = rhs(t + dt, a + dt * k3);
      a += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      if (i > 2 * n_steps / 3) {
        acc += 2.0 * kappa * std::norm(a);
        ++n_acc;
      }
    }
    const double power = acc / n_acc;
    CHECK(power < bound);
    CHECK(power > 0.3 * bound);
  }
}
