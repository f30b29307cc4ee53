#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "attoqo/coherent_states.hpp"
#include "attoqo/errors.hpp"
#include "attoqo/gaussian_states.hpp"
#include "attoqo/photon_statistics.hpp"
#include "attoqo/wigner.hpp"
#include "fock_oracle.hpp"

using namespace attoqo;

namespace {

const double kPi = std::acos(-1.0);

Amplitude amp1(cxd a) {
  Amplitude v(1);
  v << a;
  return v;
}

Amplitude amp2(cxd a, cxd b) {
  Amplitude v(2);
  v << a, b;
  return v;
}

CoherentSuperposition cat(cxd alpha, double sign) {
  CoherentSuperposition psi(1);
  psi.add_term(1.0, amp1(alpha));
  psi.add_term(sign, amp1(-alpha));
  return psi.normalized();
}

// single-mode operator mix rendered as a truncated number-basis matrix
Eigen::MatrixXcd mix_to_fock(const CoherentOperatorMix& op, int n_max) {
  REQUIRE(op.modes() == 1);
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(n_max + 1, n_max + 1);
  for (const auto& t : op.terms()) {
    const Eigen::VectorXcd k = fock::coherent_vector(t.ket(0), n_max);
    const Eigen::VectorXcd b = fock::coherent_vector(t.bra(0), n_max);
    rho += t.coeff * k * b.adjoint();
  }
  return rho;
}

} // namespace

TEST_CASE("coherent overlap: identities and truncated-Fock cross-check") {
  const Amplitude a = amp2({1.0, 2.0}, {0.3, 0.0});
  CHECK(std::abs(coherent_overlap(a, a) - 1.0) < 1e-12);

  // <0|alpha> with alpha = 2
  CHECK(std::abs(coherent_overlap(amp1(2.0), amp1(0.0)) - std::exp(-2.0)) < 1e-12);

  // alpha = 1, beta = i against the number-basis inner product at n_max = 64
  const cxd direct = coherent_overlap(amp1(1.0), amp1(cxd(0.0, 1.0)));
  const Eigen::VectorXcd va = fock::coherent_vector(1.0, 64);
  const Eigen::VectorXcd vb = fock::coherent_vector(cxd(0.0, 1.0), 64);
  const cxd brute = (vb.adjoint() * va)(0);
  CHECK(std::abs(direct - brute) < 1e-12);

  // Cauchy-Schwarz with equality only at equal amplitudes
  CHECK(std::abs(coherent_overlap(amp2(0.4, {1.0, -2.0}), amp2({0.1, 0.1}, 0.0))) < 1.0);
  CHECK_THROWS_AS(coherent_overlap(amp1(1.0), amp2(1.0, 0.0)), Error);
}

TEST_CASE("superposition normalization satisfies the unit-norm invariant") {
  CoherentSuperposition psi(1);
  psi.add_term({0.3, 0.7}, amp1({1.2, -0.4}));
  psi.add_term({-1.1, 0.2}, amp1({-0.5, 0.9}));
  CHECK(std::abs(psi.normalized().norm2() - 1.0) < 1e-12);
  CHECK(std::abs(CoherentOperatorMix::projector(psi).trace() - 1.0) < 1e-12);
}

TEST_CASE("wigner: convention anchors and oracle agreement") {
  // vacuum peak 1/pi
  CoherentSuperposition vac(1);
  vac.add_term(1.0, amp1(0.0));
  CHECK(std::abs(wigner_at(reduce_to_mode(vac, 0), 0.0, 0.0) - 1.0 / kPi) < 1e-12);

  // even cat alpha=2 against displaced-parity evaluation in the number basis
  const CoherentSuperposition even = cat(2.0, 1.0);
  const Eigen::VectorXcd psi_f = fock::superposition_vector({1.0, 1.0}, {2.0, -2.0}, 96);
  const Eigen::MatrixXcd rho_f = psi_f * psi_f.adjoint() / psi_f.squaredNorm();
  const ReducedDyads rd = reduce_to_mode(even, 0);
  for (const auto& pt : std::vector<std::pair<double, double>>{
           {0.0, 0.0}, {0.35, 0.0}, {0.0, 0.8}, {2.0 * std::sqrt(2.0), 0.0}, {-1.3, 0.6}}) {
    CHECK(std::abs(wigner_at(rd, pt.first, pt.second) -
                   fock::wigner_point(rho_f, pt.first, pt.second)) < 1e-6);
  }

  // near-Fock-1 limit: (|eps> - |-eps>)/norm has W(0,0) -> -1/pi
  const CoherentSuperposition fock1 = cat(0.01, -1.0);
  CHECK(std::abs(wigner_at(reduce_to_mode(fock1, 0), 0.0, 0.0) + 1.0 / kPi) < 1e-3);

  // grid machinery: coarse step rejected, +-5 sigma window integrates to ~1
  CHECK_THROWS_AS(wigner(even, 0, WignerWindow{-4, 4, -4, 4, 9, 9}), Error);
  CoherentSuperposition coh(1);
  coh.add_term(1.0, amp1({1.0, 0.5}));
  const double x0 = std::sqrt(2.0), p0 = std::sqrt(2.0) * 0.5;
  const WignerGrid g =
      wigner(coh, 0, WignerWindow{x0 - 4.0, x0 + 4.0, p0 - 4.0, p0 + 4.0, 81, 81});
  CHECK(grid_integral(g) == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("photon statistics: coherent, vacuum, cat, truncation guard") {
  CoherentSuperposition coh(1);
  coh.add_term(1.0, amp1(2.0));
  const PhotonStatistics ps = photon_statistics(coh, 0, 60);
  double logfac = 0.0;
  for (int n = 0; n <= 20; ++n) {
    if (n > 0) logfac += std::log(double(n));
    const double poisson = std::exp(-4.0 + n * std::log(4.0) - logfac);
    CHECK(std::abs(ps.pmf(n) - poisson) < 1e-12);
  }
  CHECK(std::abs(ps.mean - 4.0) < 1e-9);
  CHECK(std::abs(ps.mandel_q) < 1e-9);

  CoherentSuperposition vac(1);
  vac.add_term(1.0, amp1(0.0));
  CHECK(photon_statistics(vac, 0, 5).pmf(0) == doctest::Approx(1.0).epsilon(1e-12));

  const CoherentSuperposition even = cat(2.0, 1.0);
  const PhotonStatistics cat_ps = photon_statistics(even, 0, 96);
  const Eigen::VectorXcd psi_f = fock::superposition_vector({1.0, 1.0}, {2.0, -2.0}, 96);
  const Eigen::VectorXd pmf_f =
      fock::number_pmf(psi_f * psi_f.adjoint() / psi_f.squaredNorm());
  for (int n = 0; n <= 96; ++n) {
    CHECK(std::abs(cat_ps.pmf(n) - pmf_f(n)) < 1e-9);
    if (n % 2 == 1) CHECK(cat_ps.pmf(n) < 1e-14);
  }

  CHECK_THROWS_AS(photon_statistics(coh, 0, 30), Error); // mean 4 needs n_max >= 40
}

TEST_CASE("photon statistics of gaussian states") {
  // vacuum
  CHECK(photon_statistics(vacuum_state(1), 0, 8).pmf(0) == doctest::Approx(1.0).epsilon(1e-10));

  // reduced two-mode squeezed vacuum is thermal with nbar = sinh^2 r
  const double r = 0.8;
  const double nbar = std::sinh(r) * std::sinh(r);
  const PhotonStatistics th = photon_statistics(two_mode_squeezed_vacuum(r), 0, 60);
  for (int n = 0; n <= 20; ++n) {
    const double expect = std::pow(nbar / (1.0 + nbar), n) / (1.0 + nbar);
    CHECK(std::abs(th.pmf(n) - expect) < 1e-9);
  }
  CHECK(th.mandel_q == doctest::Approx(nbar).epsilon(1e-6));

  // squeezed vacuum populates even levels with the textbook weights
  const double s = 0.6;
  GaussianModeState sq = vacuum_state(1);
  sq.cov << 0.5 * std::exp(-2.0 * s), 0.0, 0.0, 0.5 * std::exp(2.0 * s);
  const PhotonStatistics sq_ps = photon_statistics(sq, 0, 40);
  double log_even = 0.0; // log((2n)! / (2^n n!)^2) accumulated
  for (int n = 0; n <= 6; ++n) {
    if (n > 0) log_even += std::log(double(2 * n - 1)) - std::log(double(2 * n));
    const double expect = std::exp(log_even) * std::pow(std::tanh(s), 2 * n) / std::cosh(s);
    CHECK(std::abs(sq_ps.pmf(2 * n) - expect) < 1e-9);
    if (n >= 1) CHECK(sq_ps.pmf(2 * n - 1) < 1e-12);
  }

  // displaced vacuum reproduces the Poisson law through the matrix route
  GaussianModeState disp = vacuum_state(1);
  disp.mean << std::sqrt(2.0), 0.0; // alpha = 1
  const PhotonStatistics dp = photon_statistics(disp, 0, 30);
  CHECK(std::abs(dp.pmf(0) - std::exp(-1.0)) < 1e-9);
  CHECK(std::abs(dp.pmf(3) - std::exp(-1.0) / 6.0) < 1e-9);
  CHECK(std::abs(dp.mandel_q) < 1e-6);
}

TEST_CASE("loss channel: identity, vacuum, suppression factor, Kraus oracle") {
  const CoherentSuperposition even = cat(2.0, 1.0);

  const CoherentOperatorMix id = apply_loss(even, 1.0);
  const CoherentOperatorMix proj = CoherentOperatorMix::projector(even);
  for (std::size_t i = 0; i < id.terms().size(); ++i) {
    CHECK(id.terms()[i].coeff == proj.terms()[i].coeff);
    CHECK(id.terms()[i].ket(0) == proj.terms()[i].ket(0));
  }

  const CoherentOperatorMix dark = apply_loss(even, 0.0);
  for (const auto& t : dark.terms()) CHECK(std::abs(t.ket(0)) == 0.0);
  CHECK(std::abs(dark.trace() - 1.0) < 1e-10);

  for (double eta : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    CHECK(std::abs(apply_loss(even, eta).trace() - 1.0) < 1e-10);
  }

  // off-diagonal suppression e^{-2(1-eta)|alpha|^2}
  const double eta = 0.9;
  const CoherentOperatorMix lossy = apply_loss(even, eta);
  for (std::size_t i = 0; i < lossy.terms().size(); ++i) {
    const auto& before = proj.terms()[i];
    const auto& after = lossy.terms()[i];
    if (std::abs(before.ket(0) - before.bra(0)) > 1.0) { // cross dyad
      const double expect = std::exp(-2.0 * (1.0 - eta) * 4.0);
      CHECK(std::abs(after.coeff) ==
            doctest::Approx(std::abs(before.coeff) * expect).epsilon(1e-10));
    }
  }

  // full matrix agreement with the Kraus-sum oracle
  const Eigen::VectorXcd psi_f = fock::superposition_vector({1.0, 1.0}, {2.0, -2.0}, 60);
  const Eigen::MatrixXcd rho_in = psi_f * psi_f.adjoint() / psi_f.squaredNorm();
  const Eigen::MatrixXcd rho_kraus = fock::kraus_loss(rho_in, eta);
  const Eigen::MatrixXcd rho_ours = mix_to_fock(lossy, 60);
  CHECK((rho_kraus - rho_ours).cwiseAbs().maxCoeff() < 1e-10);

  CHECK_THROWS_AS(apply_loss(even, -0.1), Error);
  CHECK_THROWS_AS(apply_loss(even, 1.1), Error);
}

TEST_CASE("purity: anchors, oracle, monotonicity, hermiticity guard") {
  CoherentSuperposition coh(1);
  coh.add_term(1.0, amp1({0.7, -0.2}));
  CHECK(std::abs(purity(CoherentOperatorMix::projector(coh)) - 1.0) < 1e-10);

  // 50/50 mixture of vacuum and a far coherent state
  CoherentOperatorMix mixed(1);
  mixed.add_term(0.5, amp1(0.0), amp1(0.0));
  mixed.add_term(0.5, amp1(8.0), amp1(8.0));
  CHECK(purity(mixed) == doctest::Approx(0.5).epsilon(1e-6));

  // lossy even cat at alpha = 10 against the number-basis Tr[rho^2]
  const CoherentSuperposition big = cat(10.0, 1.0);
  const CoherentOperatorMix lossy = apply_loss(big, 0.9);
  const Eigen::MatrixXcd rho_f = mix_to_fock(lossy, 950);
  CHECK(purity(lossy) == doctest::Approx(rho_f.cwiseAbs2().sum()).epsilon(1e-6));

  // purity non-increasing as eta drops from 1 to 0.5
  const CoherentSuperposition even = cat(2.0, 1.0);
  double prev = 2.0;
  for (int i = 0; i <= 10; ++i) {
    const double eta = 1.0 - 0.05 * i;
    const double g = purity(apply_loss(even, eta));
    CHECK(g <= prev + 1e-12);
    prev = g;
  }

  // trace-one but non-hermitian coefficient pattern must be rejected
  CoherentOperatorMix bad(1);
  const double leak = 0.4 * std::exp(-2.0);
  bad.add_term(0.6 - leak, amp1(0.0), amp1(0.0));
  bad.add_term(0.4, amp1(2.0), amp1(2.0));
  bad.add_term(0.3, amp1(0.0), amp1(2.0));
  bad.add_term(0.1, amp1(2.0), amp1(0.0));
  CHECK(std::abs(bad.trace() - 1.0) < 1e-12);
  CHECK_THROWS_AS(purity(bad), Error);
}

TEST_CASE("phase qfi: coherent anchor, Fock limit, lossy cat oracle, convexity") {
  CoherentSuperposition coh(1);
  coh.add_term(1.0, amp1(10.0));
  CHECK(qfi_phase(coh) == doctest::Approx(400.0).epsilon(1e-9));
  CHECK(qfi_phase(CoherentOperatorMix::projector(coh)) == doctest::Approx(400.0).epsilon(1e-6));

  // number states are phase-insensitive; use the small-cat Fock-1 limit
  const CoherentSuperposition fock1 = cat(0.01, -1.0);
  CHECK(std::abs(qfi_phase(fock1)) < 1e-2);

  // lossy odd cat, alpha^2 = 100, eta = 0.9, against the full-space formula
  const CoherentSuperposition odd = cat(10.0, -1.0);
  const CoherentOperatorMix lossy = apply_loss(odd, 0.9);
  const Eigen::VectorXcd psi_f = fock::superposition_vector({1.0, -1.0}, {10.0, -10.0}, 950);
  const Eigen::MatrixXcd rho_f = fock::kraus_loss_pure(psi_f / psi_f.norm(), 0.9);
  const double oracle = fock::qfi_phase(rho_f);
  CHECK(qfi_phase(lossy) == doctest::Approx(oracle).epsilon(0.01));

  // convexity sanity: mixture of two coherent states never beats the best pure component
  CoherentOperatorMix mixture(1);
  mixture.add_term(0.5, amp1(2.0), amp1(2.0));
  mixture.add_term(0.5, amp1(-2.0), amp1(-2.0));
  CHECK(qfi_phase(mixture) <= 16.0 + 1e-9);
}

TEST_CASE("squeezing parameters from covariance blocks") {
  CHECK(std::abs(squeezing_parameters(vacuum_state(1), 0).r) < 1e-12);

  const double s = 0.7;
  GaussianModeState sq = vacuum_state(1);
  sq.cov << 0.5 * std::exp(-2.0 * s), 0.0, 0.0, 0.5 * std::exp(2.0 * s);
  const SqueezingParameters sp = squeezing_parameters(sq, 0);
  CHECK(sp.r == doctest::Approx(s).epsilon(1e-12));
  CHECK(std::abs(sp.angle) < 1e-9);

  // rotate the squeezed axis by theta and read it back
  const double theta = 0.5;
  Eigen::Matrix2d rot;
  rot << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  GaussianModeState rq = sq;
  rq.cov = rot * sq.cov * rot.transpose();
  const SqueezingParameters rp = squeezing_parameters(rq, 0);
  CHECK(rp.r == doctest::Approx(s).epsilon(1e-10));
  CHECK(rp.angle == doctest::Approx(theta).epsilon(1e-9));
}

TEST_CASE("log negativity: product states, two-mode squeezed anchor") {
  CHECK(std::abs(log_negativity(vacuum_state(2), {0})) < 1e-10);

  const double s = 0.8;
  CHECK(log_negativity(two_mode_squeezed_vacuum(s), {0}) == doctest::Approx(2.0 * s).epsilon(1e-9));

  CHECK_THROWS_AS(log_negativity(vacuum_state(2), {0, 1}), Error);
  CHECK_THROWS_AS(log_negativity(vacuum_state(2), {}), Error);
}

TEST_CASE("gaussian entropy of the two-mode squeezed reduction") {
  const double r = 0.9;
  const double nb = std::sinh(r) * std::sinh(r);
  const double expect = (nb + 1.0) * std::log(nb + 1.0) - nb * std::log(nb);
  CHECK(gaussian_entropy(two_mode_squeezed_vacuum(r), {0}) == doctest::Approx(expect).epsilon(1e-9));
  CHECK(gaussian_purity(vacuum_state(3)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(gaussian_purity(two_mode_squeezed_vacuum(r)) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("entanglement entropy: product, bell-like, reduced-matrix oracle") {
  CoherentSuperposition prod(2);
  prod.add_term(1.0, amp2({0.4, 0.1}, {-1.0, 0.3}));
  CHECK(std::abs(entanglement_entropy(prod, {0})) < 1e-10);

  CoherentSuperposition bell(2);
  bell.add_term(1.0, amp2(0.0, 0.0));
  bell.add_term(1.0, amp2(8.0, 8.0));
  CHECK(entanglement_entropy(bell.normalized(), {0}) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-6));

  // generic two-term state against a direct partial trace in the number basis
  const cxd a1(0.7, 0.0), b1(-0.3, 0.4), a2(-0.2, 0.1), b2(0.9, 0.0);
  const cxd c1(0.8, 0.1), c2(-0.5, 0.3);
  CoherentSuperposition psi(2);
  psi.add_term(c1, amp2(a1, b1));
  psi.add_term(c2, amp2(a2, b2));

  const int nm = 24;
  Eigen::MatrixXcd joint = Eigen::MatrixXcd::Zero(nm + 1, nm + 1); // (n_A, n_B) table
  joint += c1 * fock::coherent_vector(a1, nm) * fock::coherent_vector(b1, nm).transpose();
  joint += c2 * fock::coherent_vector(a2, nm) * fock::coherent_vector(b2, nm).transpose();
  joint /= joint.norm();
  const Eigen::MatrixXcd rho_a = joint * joint.adjoint();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho_a);
  double s_oracle = 0.0;
  for (int i = 0; i <= nm; ++i) {
    const double l = es.eigenvalues()(i);
    if (l > 1e-14) s_oracle -= l * std::log(l);
  }
  CHECK(entanglement_entropy(psi, {0}) == doctest::Approx(s_oracle).epsilon(1e-8));

  CHECK_THROWS_AS(entanglement_entropy(psi, {}), Error);
  CHECK_THROWS_AS(entanglement_entropy(psi, {0, 1}), Error);
}
