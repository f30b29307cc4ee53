#include "attoqo/pulse.hpp"

#include <cmath>

#include "attoqo/errors.hpp"

namespace attoqo {
namespace {

const double kPi = std::acos(-1.0);
constexpr double kGaussHalfWidthSigmas = 6.5;

// 5-point Gauss-Legendre nodes/weights on [-1, 1]
const double kGlNode[5] = {-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                           0.9061798459386640};
const double kGlWeight[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                             0.4786286704993665, 0.2369268850561891};

double gauss_sigma(const LaserPulse& p) {
  const double fwhm = p.cycles * p.period();
  return fwhm / (2.0 * std::sqrt(2.0 * std::log(2.0)));
}

} // namespace

TimeGrid make_grid(double t0, double dt, int n) {
  require(dt > 0.0, errc::grid, "time step must be positive");
  require(n >= 2, errc::grid, "time grid needs at least two samples");
  require(std::isfinite(t0), errc::numeric, "non-finite grid origin");
  return {t0, dt, n};
}

double LaserPulse::period() const { return 2.0 * kPi / omega; }

double LaserPulse::end() const {
  switch (envelope) {
    case Envelope::gaussian:
      return 2.0 * kGaussHalfWidthSigmas * gauss_sigma(*this);
    default:
      return cycles * period();
  }
}

double LaserPulse::envelope_value(double t) const {
  if (t <= 0.0 || t >= end()) return 0.0;
  switch (envelope) {
    case Envelope::sin2: {
      const double s = std::sin(kPi * t / end());
      return s * s;
    }
    case Envelope::gaussian: {
      const double tc = 0.5 * end();
      const double sig = gauss_sigma(*this);
      const double u = (t - tc) / sig;
      return std::exp(-0.5 * u * u);
    }
    case Envelope::flattop: {
      const double ramp = period();
      if (t < ramp) {
        const double s = std::sin(0.5 * kPi * t / ramp);
        return s * s;
      }
      if (t > end() - ramp) {
        const double s = std::sin(0.5 * kPi * (end() - t) / ramp);
        return s * s;
      }
      return 1.0;
    }
  }
  return 0.0;
}

double LaserPulse::envelope_slope(double t) const {
  if (t <= 0.0 || t >= end()) return 0.0;
  switch (envelope) {
    case Envelope::sin2:
      return std::sin(2.0 * kPi * t / end()) * kPi / end();
    case Envelope::gaussian: {
      const double tc = 0.5 * end();
      const double sig = gauss_sigma(*this);
      const double u = (t - tc) / sig;
      return -u / sig * std::exp(-0.5 * u * u);
    }
    case Envelope::flattop: {
      const double ramp = period();
      if (t < ramp) return std::sin(kPi * t / ramp) * 0.5 * kPi / ramp;
      if (t > end() - ramp) return -std::sin(kPi * (end() - t) / ramp) * 0.5 * kPi / ramp;
      return 0.0;
    }
  }
  return 0.0;
}

double LaserPulse::vector_potential(double t) const {
  if (e0 == 0.0) return 0.0;
  return e0 / omega * envelope_value(t) * std::sin(omega * t + cep);
}

double LaserPulse::electric_field(double t) const {
  if (e0 == 0.0) return 0.0;
  return -e0 / omega *
         (envelope_slope(t) * std::sin(omega * t + cep) +
          omega * envelope_value(t) * std::cos(omega * t + cep));
}

LaserPulse make_pulse(double e0, double omega, double cep, Envelope env, double cycles) {
  require(e0 >= 0.0, errc::domain, "peak field must be non-negative");
  require(omega > 0.0, errc::domain, "carrier frequency must be positive");
  require(cycles >= 1.0, errc::domain, "pulse needs at least one cycle");
  require(std::isfinite(cep), errc::numeric, "non-finite carrier-envelope phase");
  if (env == Envelope::flattop)
    require(cycles >= 2.0, errc::domain, "flat-top needs one ramp cycle on each side");
  LaserPulse p{e0, omega, cep, env, cycles};
  if (e0 > 0.0) {
    const double tail = std::max(std::abs(p.vector_potential(p.end() - 1e-12)),
                                 std::abs(p.vector_potential(1e-12)));
    require(tail <= 1e-8 * e0 / omega, errc::structure,
            "vector potential fails to close at the pulse edges");
  }
  return p;
}

AtomModel make_atom(double ip) {
  require(ip > 0.0, errc::domain, "ionization potential must be positive");
  return {ip};
}

double ponderomotive_energy(const LaserPulse& pulse) {
  return pulse.e0 * pulse.e0 / (4.0 * pulse.omega * pulse.omega);
}

double cutoff_energy(const LaserPulse& pulse, const AtomModel& atom) {
  return 3.17 * ponderomotive_energy(pulse) + atom.ip;
}

double transition_dipole(double v, const AtomModel& atom) {
  const double two_ip = 2.0 * atom.ip;
  const double norm = std::pow(2.0, 3.5) * std::pow(two_ip, 1.25) / kPi;
  const double denom = v * v + two_ip;
  return norm * v / (denom * denom * denom);
}

PulseTables::PulseTables(const LaserPulse& pulse, const TimeGrid& grid)
    : pulse_(pulse), grid_(grid) {
  a_.resize(grid.n);
  e_.resize(grid.n);
  ia_.resize(grid.n);
  ia2_.resize(grid.n);
  for (int i = 0; i < grid.n; ++i) {
    a_(i) = pulse.vector_potential(grid.time(i));
    e_(i) = pulse.electric_field(grid.time(i));
  }
  ia_(0) = 0.0;
  ia2_(0) = 0.0;
  for (int i = 1; i < grid.n; ++i) {
    const double lo = grid.time(i - 1), hi = grid.time(i);
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    double s1 = 0.0, s2 = 0.0;
    for (int k = 0; k < 5; ++k) {
      const double av = pulse.vector_potential(mid + half * kGlNode[k]);
      s1 += kGlWeight[k] * av;
      s2 += kGlWeight[k] * av * av;
    }
    ia_(i) = ia_(i - 1) + half * s1;
    ia2_(i) = ia2_(i - 1) + half * s2;
  }
}

double PulseTables::cum_a(double t) const {
  int k = static_cast<int>(std::floor((t - grid_.t0) / grid_.dt));
  k = std::max(0, std::min(k, grid_.n - 1));
  const double lo = grid_.time(k);
  const double mid = 0.5 * (lo + t), half = 0.5 * (t - lo);
  double s = 0.0;
  for (int i = 0; i < 5; ++i) s += kGlWeight[i] * pulse_.vector_potential(mid + half * kGlNode[i]);
  return ia_(k) + half * s;
}

double PulseTables::cum_a2(double t) const {
  int k = static_cast<int>(std::floor((t - grid_.t0) / grid_.dt));
  k = std::max(0, std::min(k, grid_.n - 1));
  const double lo = grid_.time(k);
  const double mid = 0.5 * (lo + t), half = 0.5 * (t - lo);
  double s = 0.0;
  for (int i = 0; i < 5; ++i) {
    const double av = pulse_.vector_potential(mid + half * kGlNode[i]);
    s += kGlWeight[i] * av * av;
  }
  return ia2_(k) + half * s;
}

double PulseTables::int_a(double t1, double t2) const { return cum_a(t2) - cum_a(t1); }

double PulseTables::int_a2(double t1, double t2) const { return cum_a2(t2) - cum_a2(t1); }

double semiclassical_action(double p, double t, double t_prime, const PulseTables& tables,
                            const AtomModel& atom) {
  require(t >= t_prime, errc::domain, "action requires t >= t'");
  return (0.5 * p * p + atom.ip) * (t - t_prime) - p * tables.int_a(t_prime, t) +
         0.5 * tables.int_a2(t_prime, t);
}

} // namespace attoqo
