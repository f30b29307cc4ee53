#include "attoqo/driver.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>
#include <utility>

#include "attoqo/errors.hpp"
#include "attoqo/parallel.hpp"
#include "attoqo/rng.hpp"
#include "attoqo/sfa.hpp"

namespace attoqo {

namespace {

using cxd = std::complex<double>;

bool finite(cxd z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void validate(const DriverDistribution& d) {
  require(finite(d.alpha0) && std::isfinite(d.r) && std::isfinite(d.theta) &&
              std::isfinite(d.nbar),
          errc::numeric, "driver distribution has non-finite parameters");
  require(d.r >= 0.0, errc::domain, "squeeze magnitude must be non-negative");
  require(d.nbar >= 0.0, errc::domain, "thermal occupation must be non-negative");
  switch (d.kind) {
    case DriverKind::coherent:
      require(d.r == 0.0 && d.nbar == 0.0, errc::domain,
              "coherent driver must have zero squeeze and thermal occupation");
      break;
    case DriverKind::squeezed_vacuum:
      require(d.alpha0 == cxd{0.0, 0.0}, errc::domain, "squeezed vacuum carries no displacement");
      require(d.nbar == 0.0, errc::domain, "squeezed vacuum carries no thermal occupation");
      require(d.r > 0.0, errc::domain, "squeezed vacuum needs a positive squeeze magnitude");
      break;
    case DriverKind::displaced_squeezed:
      require(d.nbar == 0.0, errc::domain,
              "displaced-squeezed driver carries no thermal occupation");
      require(d.r > 0.0, errc::domain,
              "displaced-squeezed driver needs a positive squeeze magnitude");
      break;
    case DriverKind::thermal:
      require(d.r == 0.0, errc::domain, "thermal driver carries no squeeze");
      require(d.nbar > 0.0, errc::domain, "thermal driver needs a positive occupation");
      break;
  }
  require(std::isfinite(d.mean_photons()), errc::numeric, "driver mean photon number overflows");
}

void validate(const ClassicalLimitWeight& w) {
  require(finite(w.mean) && std::isfinite(w.var_major) && std::isfinite(w.var_minor) &&
              std::isfinite(w.axis_angle),
          errc::numeric, "weight has non-finite parameters");
  require(w.var_major >= 0.0 && w.var_minor >= 0.0, errc::domain,
          "weight variances must be non-negative");
  require(w.var_major >= w.var_minor, errc::structure, "weight major variance below minor");
  if (w.point_mass)
    require(w.var_major == 0.0 && w.var_minor == 0.0, errc::structure,
            "point mass cannot carry variance");
}

// per-axis Gauss-Hermite rule for weight e^{-t^2}: nodes t_k and weights w_k
// with sum w_k = sqrt(pi), via the symmetric tridiagonal recurrence matrix
void hermite_rule(int m, Eigen::VectorXd& t, Eigen::VectorXd& w) {
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(m, m);
  for (int k = 1; k < m; ++k) {
    const double b = std::sqrt(0.5 * k);
    jac(k - 1, k) = b;
    jac(k, k - 1) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
  require(es.info() == Eigen::Success, errc::numeric, "quadrature eigensolve failed");
  t = es.eigenvalues();
  w.resize(m);
  const double sqrt_pi = std::sqrt(M_PI);
  for (int k = 0; k < m; ++k) {
    const double v0 = es.eigenvectors()(0, k);
    w(k) = sqrt_pi * v0 * v0;
  }
}

// Weighted fixed-order reduction shared by all averaged outputs. Nodes are
// evaluated in parallel chunks; accumulation always walks node indices in
// order, so results do not depend on the worker count.
AveragedVector average_vector(const WeightNodes& nodes,
                              const std::function<Eigen::VectorXd(cxd)>& evaluator) {
  const int n = nodes.count();
  require(n >= 1, errc::dimension, "no quadrature nodes");
  // accumulation is shifted by the first node's value, so a constant
  // evaluator yields exactly zero spread and the single-node (point-mass)
  // average reproduces the evaluation bit for bit
  Eigen::VectorXd origin, sum_d, sum_d2;
  Eigen::Index dim = -1;
  const int chunk = 256;
  std::vector<Eigen::VectorXd> buffer;
  for (int base = 0; base < n; base += chunk) {
    const int count = std::min(chunk, n - base);
    buffer.assign(count, Eigen::VectorXd());
    std::vector<std::exception_ptr> failures(count);
    parallel_for(count, [&](std::ptrdiff_t j) {
      try {
        buffer[j] = evaluator(nodes.alpha[base + j]);
      } catch (...) {
        failures[j] = std::current_exception();
      }
    });
    for (int j = 0; j < count; ++j)
      if (failures[j]) std::rethrow_exception(failures[j]);
    for (int j = 0; j < count; ++j) {
      if (dim < 0) {
        dim = buffer[j].size();
        origin = buffer[j];
        sum_d = Eigen::VectorXd::Zero(dim);
        sum_d2 = Eigen::VectorXd::Zero(dim);
      }
      require(buffer[j].size() == dim, errc::dimension, "evaluator changed output length");
      const double wt = nodes.weight[base + j];
      const Eigen::VectorXd dev = buffer[j] - origin;
      sum_d += wt * dev;
      sum_d2 += wt * dev.cwiseProduct(dev);
    }
  }
  AveragedVector out;
  out.nodes = n;
  out.value = origin + sum_d;
  out.std_error = Eigen::VectorXd::Zero(dim);
  if (nodes.stochastic && n >= 2) {
    // equal-weight sample standard error of the mean
    for (Eigen::Index i = 0; i < dim; ++i) {
      const double var = std::max(0.0, sum_d2(i) - sum_d(i) * sum_d(i));
      out.std_error(i) = std::sqrt(var / (n - 1));
    }
  }
  return out;
}

} // namespace

DriverDistribution coherent_driver(cxd alpha0) {
  DriverDistribution d;
  d.kind = DriverKind::coherent;
  d.alpha0 = alpha0;
  return d;
}

DriverDistribution squeezed_vacuum_driver(double r, double theta) {
  DriverDistribution d;
  d.kind = DriverKind::squeezed_vacuum;
  d.r = r;
  d.theta = theta;
  return d;
}

DriverDistribution displaced_squeezed_driver(cxd alpha0, double r, double theta) {
  DriverDistribution d;
  d.kind = DriverKind::displaced_squeezed;
  d.alpha0 = alpha0;
  d.r = r;
  d.theta = theta;
  return d;
}

DriverDistribution thermal_driver(double nbar, cxd alpha0) {
  DriverDistribution d;
  d.kind = DriverKind::thermal;
  d.nbar = nbar;
  d.alpha0 = alpha0;
  return d;
}

ClassicalLimitWeight classical_limit_weight(const DriverDistribution& dist) {
  validate(dist);
  ClassicalLimitWeight w;
  w.mean = dist.alpha0;
  if (dist.kind == DriverKind::coherent) return w; // exact point mass at alpha0
  const double sh = std::sinh(dist.r);
  const double fluct = sh * sh + dist.nbar;
  const double c2r = std::cosh(2.0 * dist.r);
  w.point_mass = false;
  w.var_major = fluct * std::exp(2.0 * dist.r) / (2.0 * c2r);
  w.var_minor = fluct * std::exp(-2.0 * dist.r) / (2.0 * c2r);
  w.axis_angle = 0.5 * dist.theta;
  require(std::isfinite(w.var_major), errc::numeric, "weight variance overflows");
  return w;
}

WeightNodes weight_nodes(const ClassicalLimitWeight& weight, const SamplerConfig& cfg) {
  validate(weight);
  WeightNodes out;
  if (weight.point_mass) {
    out.alpha = {weight.mean};
    out.weight = {1.0};
    return out;
  }
  require(cfg.nodes >= 16, errc::domain,
          "sampler budget below 16 nodes cannot certify precision for a spread weight");
  const double c = std::cos(weight.axis_angle), s = std::sin(weight.axis_angle);
  const double sig1 = std::sqrt(weight.var_major), sig2 = std::sqrt(weight.var_minor);
  auto push = [&](double z1, double z2, double wt) {
    const double u1 = sig1 * z1, u2 = sig2 * z2;
    out.alpha.push_back(weight.mean + cxd{c * u1 - s * u2, s * u1 + c * u2});
    out.weight.push_back(wt);
  };
  if (cfg.kind == SamplerKind::stratified_mc) {
    const int n = cfg.nodes;
    RngStream rng(cfg.seed);
    // shuffled pairing of the per-axis strata (Latin hypercube)
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (int i = n - 1; i > 0; --i) {
      const int j = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(i + 1));
      std::swap(perm[i], perm[j]);
    }
    auto stratum = [&](int k) {
      const double p = (k + rng.uniform()) / n; // in (k/n, (k+1)/n]
      return norminv(std::min(p, 1.0 - 1e-16));
    };
    for (int i = 0; i < n; ++i) {
      const double z1 = stratum(i);
      const double z2 = stratum(perm[i]);
      push(z1, z2, 1.0 / n);
    }
    out.stochastic = true;
    return out;
  }
  const int m = static_cast<int>(std::floor(std::sqrt(static_cast<double>(cfg.nodes))));
  Eigen::VectorXd t, w;
  hermite_rule(m, t, w);
  const double sqrt2 = std::sqrt(2.0);
  const double pi_norm = 1.0 / M_PI; // (1/sqrt(pi)) per axis
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) push(sqrt2 * t(i), sqrt2 * t(j), w(i) * w(j) * pi_norm);
  double total = 0.0;
  for (double wt : out.weight) total += wt;
  for (double& wt : out.weight) wt /= total;
  return out;
}

LaserPulse realize_pulse(const PulseTemplate& tpl, cxd alpha) {
  require(std::isfinite(tpl.e0_ref) && tpl.e0_ref >= 0.0, errc::domain,
          "reference field must be non-negative and finite");
  require(std::isfinite(tpl.alpha_ref) && tpl.alpha_ref > 0.0, errc::domain,
          "reference amplitude must be positive");
  require(finite(alpha), errc::numeric, "non-finite field amplitude");
  const double scale = std::abs(alpha) / tpl.alpha_ref;
  return make_pulse(tpl.e0_ref * scale, tpl.omega, tpl.cep + std::arg(alpha), tpl.envelope,
                    tpl.cycles);
}

TimeGrid template_grid(const PulseTemplate& tpl) {
  require(tpl.samples_per_cycle >= 16, errc::grid, "need at least 16 samples per cycle");
  const LaserPulse ref = make_pulse(tpl.e0_ref, tpl.omega, tpl.cep, tpl.envelope, tpl.cycles);
  const int n = static_cast<int>(std::lround(tpl.cycles * tpl.samples_per_cycle)) + 1;
  return make_grid(0.0, ref.end() / (n - 1), n);
}

AveragedValue averaged_observable(const ClassicalLimitWeight& weight,
                                  const std::function<double(cxd)>& evaluator,
                                  const SamplerConfig& cfg) {
  const WeightNodes nodes = weight_nodes(weight, cfg);
  const AveragedVector av = average_vector(nodes, [&](cxd a) {
    Eigen::VectorXd v(1);
    v(0) = evaluator(a);
    return v;
  });
  return AveragedValue{av.value(0), av.std_error(0), av.nodes};
}

AveragedVector averaged_vector_observable(
    const ClassicalLimitWeight& weight,
    const std::function<Eigen::VectorXd(cxd)>& evaluator, const SamplerConfig& cfg) {
  const WeightNodes nodes = weight_nodes(weight, cfg);
  return average_vector(nodes, evaluator);
}

AveragedSpectrum averaged_hhg_spectrum(const ClassicalLimitWeight& weight,
                                       const PulseTemplate& tpl, const AtomModel& atom,
                                       double coupling, const SamplerConfig& cfg) {
  require(std::isfinite(coupling), errc::numeric, "non-finite coupling");
  require(std::isfinite(tpl.e0_ref) && tpl.e0_ref >= 0.0, errc::domain,
          "reference field must be non-negative and finite");
  require(std::isfinite(tpl.alpha_ref) && tpl.alpha_ref > 0.0, errc::domain,
          "reference amplitude must be positive");
  const TimeGrid grid = template_grid(tpl);
  // shared bin layout: the grid fixes the FFT size, so all nodes align
  const DipoleRecord silent{grid, Eigen::VectorXd::Zero(grid.n), tpl.omega, false};
  const Spectrum proto = hhg_spectrum(silent, tpl.window, tpl.omega);

  const WeightNodes nodes = weight_nodes(weight, cfg);
  const AveragedVector av = average_vector(nodes, [&](cxd a) {
    const LaserPulse pulse = realize_pulse(tpl, a);
    const DipoleRecord record = dipole_expectation(pulse, atom, grid);
    return hhg_spectrum(record, tpl.window, tpl.omega).intensity;
  });

  AveragedSpectrum out;
  out.spectrum = proto;
  const double scale = coupling * coupling;
  out.spectrum.intensity = scale * av.value;
  out.std_error = scale * av.std_error;
  out.nodes = av.nodes;
  out.spectrum.cutoff_harmonic = detect_cutoff_harmonic(out.spectrum);
  return out;
}

int cutoff_bin(const Spectrum& spectrum) {
  const Eigen::Index n = spectrum.omega.size();
  require(spectrum.intensity.size() == n, errc::dimension, "spectrum bins mismatched");
  Eigen::Index i0 = 0;
  if (spectrum.fundamental > 0.0)
    while (i0 < n && spectrum.omega(i0) < 4.0 * spectrum.fundamental) ++i0;
  if (i0 >= n) return -1;
  double peak = 0.0;
  for (Eigen::Index i = i0; i < n; ++i) peak = std::max(peak, spectrum.intensity(i));
  if (peak <= 0.0) return -1;
  Eigen::Index bright_end = i0;
  for (Eigen::Index i = i0; i < n; ++i)
    if (spectrum.intensity(i) >= 1e-2 * peak) bright_end = i;
  std::vector<double> band;
  band.reserve(bright_end - i0 + 1);
  for (Eigen::Index i = i0; i <= bright_end; ++i) band.push_back(spectrum.intensity(i));
  std::nth_element(band.begin(), band.begin() + band.size() / 2, band.end());
  const double median = band[band.size() / 2];
  Eigen::Index cut = i0;
  for (Eigen::Index i = i0; i < n; ++i)
    if (spectrum.intensity(i) > 1e-4 * median) cut = i;
  return static_cast<int>(cut);
}

std::string to_csv(const AveragedSpectrum& averaged) {
  const Eigen::Index n = averaged.spectrum.omega.size();
  require(averaged.spectrum.intensity.size() == n && averaged.std_error.size() == n,
          errc::dimension, "averaged spectrum columns mismatched");
  std::ostringstream out;
  out.precision(17);
  out << "omega,intensity,stderr\n";
  for (Eigen::Index i = 0; i < n; ++i)
    out << averaged.spectrum.omega(i) << ',' << averaged.spectrum.intensity(i) << ','
        << averaged.std_error(i) << '\n';
  return out.str();
}

} // namespace attoqo
