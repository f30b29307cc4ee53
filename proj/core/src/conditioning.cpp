#include "attoqo/conditioning.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "attoqo/errors.hpp"
#include "attoqo/parallel.hpp"
#include "attoqo/rng.hpp"

namespace attoqo {

namespace {

bool finite(cxd z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void validate(const ConditioningInput& in) {
  require(finite(in.alpha_in) && finite(in.delta_alpha), errc::domain,
          "conditioning: amplitudes must be finite");
  for (Eigen::Index m = 0; m < in.chi.size(); ++m)
    require(finite(in.chi(m)), errc::domain, "conditioning: harmonic amplitudes must be finite");
  if (std::abs(in.alpha_in) > 0.0) {
    require(std::abs(in.alpha_in + in.delta_alpha) <= std::abs(in.alpha_in) + 1e-9, errc::domain,
            "conditioning: shifted driver magnitude exceeds the incoming amplitude");
  }
}

// <alpha | alpha + dA>
cxd reference_overlap(const ConditioningInput& in) {
  return coherent_overlap(single_mode(in.alpha_in + in.delta_alpha), single_mode(in.alpha_in));
}

// mean upconverted energy sum_q q |chi_q|^2 in fundamental-photon units
double upconverted_energy(const ConditioningInput& in) {
  double e = 0.0;
  for (Eigen::Index m = 0; m < in.chi.size(); ++m) e += static_cast<double>(m + 2) * std::norm(in.chi(m));
  return e;
}

// two-branch fundamental ansatz |alpha + dA> - t phase |alpha>, normalized
CoherentSuperposition fundamental_ansatz(const ConditioningInput& in, double t, cxd phase) {
  CoherentSuperposition psi(1);
  psi.add_term(1.0, single_mode(in.alpha_in + in.delta_alpha));
  psi.add_term(-t * phase, single_mode(in.alpha_in));
  return psi.normalized();
}

} // namespace

double ConditioningInput::excitation() const {
  double s = 0.0;
  for (Eigen::Index m = 0; m < chi.size(); ++m) s += std::norm(chi(m));
  return s;
}

ConditioningInput make_conditioning_input(const HarmonicAmplitudes& amps) {
  require(amps.chi.size() >= 1, errc::dimension, "conditioning: amplitudes must cover the fundamental");
  ConditioningInput in;
  in.alpha_in = amps.alpha_in;
  in.delta_alpha = amps.chi(0);
  in.chi = amps.chi.tail(amps.chi.size() - 1);
  validate(in);
  return in;
}

CoherentSuperposition entangled_conditioned_state(const ConditioningInput& in) {
  validate(in);
  const int nh = static_cast<int>(in.chi.size());
  Amplitude emitted(1 + nh);
  emitted(0) = in.alpha_in + in.delta_alpha;
  for (int m = 0; m < nh; ++m) emitted(1 + m) = in.chi(m);
  Amplitude reference = Amplitude::Zero(1 + nh);
  reference(0) = in.alpha_in;

  CoherentSuperposition psi(1 + nh);
  psi.add_term(1.0, emitted);
  psi.add_term(-reference_overlap(in) * std::exp(-0.5 * in.excitation()), reference);
  return psi.normalized();
}

CoherentSuperposition hhg_cat_state(const ConditioningInput& in) {
  validate(in);
  CoherentSuperposition psi(1);
  psi.add_term(1.0, single_mode(in.alpha_in + in.delta_alpha));
  psi.add_term(-reference_overlap(in) * std::exp(-in.excitation()), single_mode(in.alpha_in));
  return psi.normalized();
}

CoherentSuperposition xuv_cat_state(const ConditioningInput& in, int kept_q) {
  validate(in);
  require(kept_q >= 2 && kept_q <= in.q_cutoff(), errc::dimension,
          "xuv_cat_state: kept harmonic out of range");
  const cxd chi_q = in.chi(kept_q - 2);
  // measured first-branch outcomes: <alpha + dA| on the fundamental and
  // <chi_q'| on every other harmonic
  const double rest = in.excitation() - std::norm(chi_q);
  const double weight = std::norm(reference_overlap(in)) *
                        std::exp(-0.5 * in.excitation()) * std::exp(-0.5 * rest);
  CoherentSuperposition psi(1);
  psi.add_term(1.0, single_mode(chi_q));
  psi.add_term(-weight, single_mode(0.0));
  return psi.normalized();
}

ShotTable sample_shots(const ConditioningInput& in, int shots, std::uint64_t seed) {
  validate(in);
  require(shots >= 1, errc::domain, "sample_shots: need at least one shot");
  const int nh = static_cast<int>(in.chi.size());
  Eigen::VectorXd mean(1 + nh);
  mean(0) = std::norm(in.alpha_in + in.delta_alpha);
  for (int m = 0; m < nh; ++m) mean(1 + m) = std::norm(in.chi(m));

  ShotTable table;
  table.seed = seed;
  table.counts.resize(shots, 1 + nh);
  parallel_for(shots, [&](std::ptrdiff_t i) {
    RngStream rs(seed, static_cast<std::uint64_t>(i));
    for (int m = 0; m < mean.size(); ++m)
      table.counts(i, m) = static_cast<std::int64_t>(rs.poisson(mean(m)));
  });
  return table;
}

std::string to_csv(const ShotTable& table) {
  std::ostringstream out;
  out << "shot_id";
  for (int m = 0; m < table.modes(); ++m) out << ",n_" << m + 1;
  out << '\n';
  for (int i = 0; i < table.shots(); ++i) {
    out << i;
    for (int m = 0; m < table.modes(); ++m) out << ',' << table.counts(i, m);
    out << '\n';
  }
  return out.str();
}

SelectionResult postselect_energy_conserving(const ShotTable& table, const ConditioningInput& in,
                                             double window) {
  validate(in);
  require(table.shots() >= 1, errc::dimension, "postselect: empty shot table");
  require(table.modes() == 1 + static_cast<int>(in.chi.size()), errc::dimension,
          "postselect: table does not match the input mode layout");
  if (window < 0.0) window = std::max(1.0, 0.05 * upconverted_energy(in));
  require(!std::isnan(window) && window > 0.0, errc::domain, "postselect: window must be positive");

  SelectionResult result;
  result.window = window;
  const double n_in = std::norm(in.alpha_in);
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < table.shots(); ++i) {
    const double depletion = n_in - static_cast<double>(table.counts(i, 0));
    double up = 0.0;
    for (int m = 1; m < table.modes(); ++m) up += static_cast<double>((m + 1) * table.counts(i, m));
    if (std::abs(up - depletion) <= window) {
      result.kept.push_back(i);
      const double n1 = static_cast<double>(table.counts(i, 0));
      sum += n1;
      sum2 += n1 * n1;
    }
  }
  result.acceptance = static_cast<double>(result.kept.size()) / static_cast<double>(table.shots());
  if (result.kept.empty()) {
    std::ostringstream msg;
    msg << "postselect: no shot inside the energy window (acceptance 0 of " << table.shots()
        << ", window " << window << ")";
    throw Error(errc::selection, msg.str());
  }
  const double kept_n = static_cast<double>(result.kept.size());
  const double kept_mean = sum / kept_n;
  const double kept_var = std::max(0.0, sum2 / kept_n - kept_mean * kept_mean);

  // fit the reference-branch weight t in [0, 1] so the ansatz photon-number
  // mean and variance match the kept-shot statistics, each residual weighted
  // by its sampling variance; the branch phase is fixed by <alpha|alpha + dA>
  const cxd xi = reference_overlap(in);
  const cxd phase = std::abs(xi) > 0.0 ? xi / std::abs(xi) : cxd(1.0);
  const double w_mean = kept_n / std::max(kept_var, 0.25);
  const double w_var = kept_n / std::max(2.0 * kept_var * kept_var, 1.0);
  auto objective = [&](double t) {
    const CoherentSuperposition psi = fundamental_ansatz(in, t, phase);
    const double dm = mean_photon(psi, 0) - kept_mean;
    const double dv = 0.25 * qfi_phase(psi) - kept_var;
    return w_mean * dm * dm + w_var * dv * dv;
  };

  const int coarse = 400;
  double best_t = 0.0;
  double best_j = objective(0.0);
  for (int k = 1; k <= coarse; ++k) {
    const double t = static_cast<double>(k) / coarse;
    const double j = objective(t);
    if (j < best_j) {
      best_j = j;
      best_t = t;
    }
  }
  {
    // golden-section refinement inside the bracketing grid cells
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double lo = std::max(0.0, best_t - 1.0 / coarse);
    double hi = std::min(1.0, best_t + 1.0 / coarse);
    double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
    double fc = objective(c), fd = objective(d);
    for (int it = 0; it < 60; ++it) {
      if (fc < fd) {
        hi = d;
        d = c;
        fd = fc;
        c = hi - gr * (hi - lo);
        fc = objective(c);
      } else {
        lo = c;
        c = d;
        fc = fd;
        d = lo + gr * (hi - lo);
        fd = objective(d);
      }
    }
    const double mid = 0.5 * (lo + hi);
    if (objective(mid) < best_j) best_t = mid;
  }

  result.reconstructed = fundamental_ansatz(in, best_t, phase);
  const CoherentSuperposition cat = hhg_cat_state(in);
  result.fidelity = std::norm(superposition_overlap(result.reconstructed, cat));
  return result;
}

double matched_cat_amplitude(double mean_photons, int sign) {
  require(sign == 1 || sign == -1, errc::domain, "matched_cat_amplitude: sign must be +1 or -1");
  require(std::isfinite(mean_photons) && mean_photons > 0.0, errc::domain,
          "matched_cat_amplitude: mean photon number must be positive");
  if (sign == -1)
    require(mean_photons > 1.0, errc::domain,
            "matched_cat_amplitude: an odd cat holds more than one photon on average");
  // mean(x) = x tanh x (even) or x coth x (odd) with x = b^2, both increasing
  auto mean_of = [&](double x) {
    if (x < 1e-12) return sign == 1 ? x * x : 1.0 + x * x / 3.0;
    return sign == 1 ? x * std::tanh(x) : x / std::tanh(x);
  };
  double lo = 0.0;
  double hi = mean_photons + std::sqrt(mean_photons) + 5.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (mean_of(mid) < mean_photons ? lo : hi) = mid;
  }
  return std::sqrt(0.5 * (lo + hi));
}

std::string to_csv(const LossCurve& curve) {
  std::ostringstream out;
  out.precision(17);
  out << "eta,purity_hhg,purity_even,purity_odd\n";
  for (Eigen::Index k = 0; k < curve.eta.size(); ++k)
    out << curve.eta(k) << ',' << curve.purity_cat(k) << ',' << curve.purity_even(k) << ','
        << curve.purity_odd(k) << '\n';
  return out.str();
}

std::string to_csv(const QfiCurve& curve) {
  std::ostringstream out;
  out.precision(17);
  out << "eta,qfi_hhg,qfi_odd,qfi_odd_pure\n";
  for (Eigen::Index k = 0; k < curve.eta.size(); ++k)
    out << curve.eta(k) << ',' << curve.qfi_cat(k) << ',' << curve.qfi_odd(k) << ','
        << curve.qfi_odd_pure << '\n';
  return out.str();
}

CoherentSuperposition reference_cat(double b, int sign) {
  require(sign == 1 || sign == -1, errc::domain, "reference_cat: sign must be +1 or -1");
  require(std::isfinite(b) && b >= 0.0, errc::domain, "reference_cat: amplitude must be non-negative");
  CoherentSuperposition psi(1);
  psi.add_term(1.0, single_mode(b));
  psi.add_term(static_cast<double>(sign), single_mode(-b));
  return psi.normalized();
}

LossCurve loss_robustness_curve(const ConditioningInput& in, const Eigen::VectorXd& eta) {
  validate(in);
  require(eta.size() >= 1, errc::dimension, "loss_robustness_curve: empty transmissivity grid");
  const CoherentSuperposition cat = hhg_cat_state(in);
  const double nbar = mean_photon(cat, 0);
  const CoherentSuperposition even = reference_cat(matched_cat_amplitude(nbar, 1), 1);
  const CoherentSuperposition odd = reference_cat(matched_cat_amplitude(nbar, -1), -1);

  LossCurve curve;
  curve.eta = eta;
  curve.purity_cat.resize(eta.size());
  curve.purity_even.resize(eta.size());
  curve.purity_odd.resize(eta.size());
  for (Eigen::Index k = 0; k < eta.size(); ++k) {
    require(eta(k) >= 0.0 && eta(k) <= 1.0, errc::domain,
            "loss_robustness_curve: transmissivity must lie in [0, 1]");
    curve.purity_cat(k) = purity(apply_loss(cat, eta(k)));
    curve.purity_even(k) = purity(apply_loss(even, eta(k)));
    curve.purity_odd(k) = purity(apply_loss(odd, eta(k)));
  }
  return curve;
}

QfiCurve qfi_comparison(const ConditioningInput& in, const Eigen::VectorXd& eta) {
  validate(in);
  require(eta.size() >= 1, errc::dimension, "qfi_comparison: empty transmissivity grid");
  for (Eigen::Index k = 0; k + 1 < eta.size(); ++k)
    require(eta(k) < eta(k + 1), errc::domain, "qfi_comparison: grid must increase");
  const CoherentSuperposition cat = hhg_cat_state(in);
  const double nbar = mean_photon(cat, 0);
  const CoherentSuperposition odd = reference_cat(matched_cat_amplitude(nbar, -1), -1);

  QfiCurve curve;
  curve.eta = eta;
  curve.qfi_cat.resize(eta.size());
  curve.qfi_odd.resize(eta.size());
  curve.qfi_odd_pure = qfi_phase(odd);
  for (Eigen::Index k = 0; k < eta.size(); ++k) {
    require(eta(k) >= 0.0 && eta(k) <= 1.0, errc::domain,
            "qfi_comparison: transmissivity must lie in [0, 1]");
    curve.qfi_cat(k) = qfi_phase(apply_loss(cat, eta(k)));
    curve.qfi_odd(k) = qfi_phase(apply_loss(odd, eta(k)));
  }
  curve.eta_star = eta(eta.size() - 1);
  curve.crossing_nonempty = false;
  for (Eigen::Index k = eta.size() - 1; k >= 0; --k) {
    if (curve.qfi_cat(k) > curve.qfi_odd_pure) {
      curve.eta_star = eta(k);
      curve.crossing_nonempty = true;
    } else {
      break;
    }
  }
  return curve;
}

} // namespace attoqo
