#include "attoqo/coherent_states.hpp"

#include <cmath>

#include "attoqo/errors.hpp"
#include "attoqo/gram.hpp"

namespace attoqo {
namespace {

constexpr double kTraceTol = 1e-6;

// single-mode <b|a>
cxd overlap1(cxd a, cxd b) {
  return std::exp(-0.5 * std::norm(a) - 0.5 * std::norm(b) + std::conj(b) * a);
}

void check_partition(int modes, const std::vector<int>& side_a) {
  require(!side_a.empty(), errc::dimension, "partition must not be empty");
  require(static_cast<int>(side_a.size()) < modes, errc::dimension,
          "partition must be a proper subset of the modes");
  std::vector<bool> seen(modes, false);
  for (int m : side_a) {
    require(m >= 0 && m < modes, errc::dimension, "partition index out of range");
    require(!seen[m], errc::dimension, "duplicate mode in partition");
    seen[m] = true;
  }
}

struct GramSqrt {
  Eigen::MatrixXcd sqrt;     // B^(1/2) with spectral cutoff
  Eigen::MatrixXcd inv_sqrt; // pseudo-inverse of the square root
};

GramSqrt gram_sqrt(const Eigen::MatrixXcd& b, double cutoff) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (b + b.adjoint()));
  require(es.info() == Eigen::Success, errc::numeric, "gram eigensolve failed");
  Eigen::VectorXd d = es.eigenvalues();
  Eigen::VectorXd ds(d.size()), dis(d.size());
  for (int i = 0; i < d.size(); ++i) {
    if (d(i) > cutoff) {
      ds(i) = std::sqrt(d(i));
      dis(i) = 1.0 / ds(i);
    } else {
      ds(i) = dis(i) = 0.0;
    }
  }
  const Eigen::MatrixXcd& u = es.eigenvectors();
  return {u * ds.asDiagonal() * u.adjoint(), u * dis.asDiagonal() * u.adjoint()};
}

} // namespace

cxd coherent_overlap(const Amplitude& alpha, const Amplitude& beta) {
  require(alpha.size() == beta.size(), errc::dimension, "overlap of states with different mode counts");
  const cxd dot = (beta.adjoint() * alpha)(0);
  return std::exp(-0.5 * alpha.squaredNorm() - 0.5 * beta.squaredNorm() + dot);
}

CoherentSuperposition::CoherentSuperposition(int modes) : modes_(modes) {
  require(modes >= 1, errc::dimension, "state needs at least one mode");
}

void CoherentSuperposition::add_term(cxd coeff, const Amplitude& amp) {
  require(amp.size() == modes_, errc::dimension, "term amplitude has wrong mode count");
  require(std::isfinite(coeff.real()) && std::isfinite(coeff.imag()) && amp.allFinite(),
          errc::numeric, "non-finite term");
  terms_.push_back({coeff, amp});
}

double CoherentSuperposition::norm2() const {
  cxd n = 0.0;
  for (const auto& tk : terms_)
    for (const auto& tl : terms_) n += tk.coeff * std::conj(tl.coeff) * coherent_overlap(tk.amp, tl.amp);
  return n.real();
}

CoherentSuperposition CoherentSuperposition::normalized() const {
  const double n2 = norm2();
  require(n2 > 1e-300, errc::numeric, "state norm underflows, superposition cancels");
  CoherentSuperposition out(modes_);
  const double s = 1.0 / std::sqrt(n2);
  for (const auto& t : terms_) out.add_term(t.coeff * s, t.amp);
  return out;
}

CoherentOperatorMix::CoherentOperatorMix(int modes) : modes_(modes) {
  require(modes >= 1, errc::dimension, "operator needs at least one mode");
}

void CoherentOperatorMix::add_term(cxd coeff, const Amplitude& ket, const Amplitude& bra) {
  require(ket.size() == modes_ && bra.size() == modes_, errc::dimension,
          "dyad amplitude has wrong mode count");
  require(std::isfinite(coeff.real()) && std::isfinite(coeff.imag()) && ket.allFinite() &&
              bra.allFinite(),
          errc::numeric, "non-finite dyad");
  terms_.push_back({coeff, ket, bra});
}

cxd CoherentOperatorMix::trace() const {
  cxd tr = 0.0;
  for (const auto& t : terms_) tr += t.coeff * coherent_overlap(t.ket, t.bra);
  return tr;
}

CoherentOperatorMix CoherentOperatorMix::projector(const CoherentSuperposition& psi) {
  const CoherentSuperposition n = psi.normalized();
  CoherentOperatorMix op(n.modes());
  for (const auto& tk : n.terms())
    for (const auto& tl : n.terms()) op.add_term(tk.coeff * std::conj(tl.coeff), tk.amp, tl.amp);
  return op;
}

SpanDecomposition span_decompose(const CoherentOperatorMix& op) {
  SpanDecomposition sd;
  auto find_or_add = [&sd](const Amplitude& v) -> int {
    for (std::size_t i = 0; i < sd.vectors.size(); ++i) {
      if ((sd.vectors[i] - v).norm() <= 1e-13 * (1.0 + v.norm())) return static_cast<int>(i);
    }
    sd.vectors.push_back(v);
    return static_cast<int>(sd.vectors.size() - 1);
  };
  std::vector<std::pair<std::pair<int, int>, cxd>> entries;
  for (const auto& t : op.terms()) {
    const int a = find_or_add(t.ket);
    const int b = find_or_add(t.bra);
    entries.push_back({{a, b}, t.coeff});
  }
  const int s = static_cast<int>(sd.vectors.size());
  sd.R = Eigen::MatrixXcd::Zero(s, s);
  for (const auto& e : entries) sd.R(e.first.first, e.first.second) += e.second;
  sd.B.resize(s, s);
  for (int a = 0; a < s; ++a)
    for (int b = 0; b < s; ++b) sd.B(a, b) = coherent_overlap(sd.vectors[b], sd.vectors[a]);
  return sd;
}

ReducedDyads reduce_to_mode(const CoherentOperatorMix& op, int mode) {
  require(mode >= 0 && mode < op.modes(), errc::dimension, "mode index out of range");
  ReducedDyads rd;
  for (const auto& t : op.terms()) {
    cxd w = t.coeff;
    for (int m = 0; m < op.modes(); ++m)
      if (m != mode) w *= overlap1(t.ket(m), t.bra(m));
    rd.coeff.push_back(w);
    rd.ket.push_back(t.ket(mode));
    rd.bra.push_back(t.bra(mode));
  }
  return rd;
}

ReducedDyads reduce_to_mode(const CoherentSuperposition& psi, int mode) {
  return reduce_to_mode(CoherentOperatorMix::projector(psi), mode);
}

CoherentOperatorMix apply_loss(const CoherentOperatorMix& op, double eta) {
  require(eta >= 0.0 && eta <= 1.0, errc::domain, "transmissivity must lie in [0,1]");
  const double seta = std::sqrt(eta);
  CoherentOperatorMix out(op.modes());
  for (const auto& t : op.terms()) {
    const cxd dot = (t.bra.adjoint() * t.ket)(0); // alpha . beta^*
    const cxd factor =
        std::exp((1.0 - eta) * (dot - 0.5 * t.ket.squaredNorm() - 0.5 * t.bra.squaredNorm()));
    out.add_term(t.coeff * factor, seta * t.ket, seta * t.bra);
  }
  return out;
}

CoherentOperatorMix apply_loss(const CoherentSuperposition& psi, double eta) {
  return apply_loss(CoherentOperatorMix::projector(psi), eta);
}

double purity(const CoherentOperatorMix& op) {
  require(std::abs(op.trace() - 1.0) <= kTraceTol, errc::structure,
          "purity requires a unit-trace operator");
  // hermiticity in the coherent span: T (R - R^+) T^+ must vanish
  const SpanDecomposition sd = span_decompose(op);
  const Eigen::MatrixXcd t = hermitian_sqrt(sd.B);
  const Eigen::MatrixXcd rho_on = t * sd.R * t.adjoint();
  require((rho_on - rho_on.adjoint()).norm() <= 1e-8 * std::max(1.0, rho_on.norm()),
          errc::structure, "purity requires a hermitian operator");
  cxd p = 0.0;
  for (const auto& s : op.terms())
    for (const auto& t2 : op.terms())
      p += s.coeff * t2.coeff * coherent_overlap(t2.ket, s.bra) * coherent_overlap(s.ket, t2.bra);
  return p.real();
}

double qfi_phase(const CoherentOperatorMix& op) {
  require(std::abs(op.trace() - 1.0) <= kTraceTol, errc::structure,
          "qfi requires a unit-trace density operator");
  const SpanDecomposition sd = span_decompose(op);
  const int s = static_cast<int>(sd.vectors.size());
  const GramSqrt gs = gram_sqrt(sd.B, kGramCutoff);

  Eigen::MatrixXcd rho_on = gs.sqrt * sd.R * gs.sqrt.adjoint();
  require((rho_on - rho_on.adjoint()).norm() <= 1e-8 * std::max(1.0, rho_on.norm()),
          errc::structure, "qfi requires a hermitian density operator");
  rho_on = 0.5 * (rho_on + rho_on.adjoint());

  // matrix elements of N and N^2 between span vectors:
  // <v_a|N|v_b> = (v_a^+ v_b) <v_a|v_b>,  <v_a|N^2|v_b> = ((v_a^+ v_b)^2 + v_a^+ v_b) <v_a|v_b>
  Eigen::MatrixXcd n1(s, s), n2(s, s);
  for (int a = 0; a < s; ++a)
    for (int b = 0; b < s; ++b) {
      const cxd dot = (sd.vectors[a].adjoint() * sd.vectors[b])(0);
      n1(a, b) = dot * sd.B(a, b);
      n2(a, b) = (dot * dot + dot) * sd.B(a, b);
    }
  const Eigen::MatrixXcd n1_on = gs.inv_sqrt * n1 * gs.inv_sqrt;
  const Eigen::MatrixXcd n2_on = gs.inv_sqrt * n2 * gs.inv_sqrt;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho_on);
  require(es.info() == Eigen::Success, errc::numeric, "qfi eigensolve failed");
  Eigen::VectorXd lam = es.eigenvalues();
  for (int i = 0; i < lam.size(); ++i) {
    require(lam(i) > -1e-8, errc::structure, "density operator has a negative eigenvalue");
    lam(i) = std::max(lam(i), 0.0);
  }
  const Eigen::MatrixXcd w = es.eigenvectors();
  const Eigen::MatrixXcd nij = w.adjoint() * n1_on * w;
  const Eigen::MatrixXcd n2ij = w.adjoint() * n2_on * w;

  double fisher = 0.0;
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) {
      if (i == j) continue;
      const double denom = lam(i) + lam(j);
      if (denom <= kGramCutoff) continue;
      const double diff = lam(i) - lam(j);
      fisher += 2.0 * diff * diff / denom * std::norm(nij(i, j));
    }
  // coupling to the orthogonal complement of the span (all zero eigenvalue)
  for (int i = 0; i < s; ++i) {
    if (lam(i) <= kGramCutoff) continue;
    double inside = 0.0;
    for (int j = 0; j < s; ++j) inside += std::norm(nij(i, j));
    fisher += 4.0 * lam(i) * (n2ij(i, i).real() - inside);
  }
  return fisher;
}

double qfi_phase(const CoherentSuperposition& psi) {
  const CoherentSuperposition n = psi.normalized();
  cxd mean = 0.0, mean2 = 0.0;
  for (const auto& tk : n.terms())
    for (const auto& tl : n.terms()) {
      const cxd ov = coherent_overlap(tk.amp, tl.amp); // <l|k>
      const cxd dot = (tl.amp.adjoint() * tk.amp)(0);
      const cxd w = std::conj(tl.coeff) * tk.coeff * ov;
      mean += w * dot;
      mean2 += w * (dot * dot + dot);
    }
  return 4.0 * (mean2.real() - mean.real() * mean.real());
}

double entanglement_entropy(const CoherentSuperposition& psi, const std::vector<int>& side_a) {
  check_partition(psi.modes(), side_a);
  const CoherentSuperposition n = psi.normalized();
  std::vector<bool> in_a(psi.modes(), false);
  for (int m : side_a) in_a[m] = true;

  const auto& terms = n.terms();
  const int k = static_cast<int>(terms.size());
  auto split = [&](const Amplitude& v, bool want_a) {
    Amplitude out(want_a ? side_a.size() : psi.modes() - side_a.size());
    int j = 0;
    for (int m = 0; m < psi.modes(); ++m)
      if (in_a[m] == want_a) out(j++) = v(m);
    return out;
  };

  Eigen::MatrixXcd r(k, k), b(k, k);
  std::vector<Amplitude> amps_a(k), amps_b(k);
  for (int i = 0; i < k; ++i) {
    amps_a[i] = split(terms[i].amp, true);
    amps_b[i] = split(terms[i].amp, false);
  }
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      // rho_A = sum_ij c_i c_j^* <B_j|B_i> |A_i><A_j|
      r(i, j) = terms[i].coeff * std::conj(terms[j].coeff) * coherent_overlap(amps_b[i], amps_b[j]);
      b(i, j) = coherent_overlap(amps_a[j], amps_a[i]);
    }
  Eigen::VectorXd evals = span_operator_eigenvalues(r, b);
  return entropy_from_eigenvalues(evals);
}

double mean_photon(const CoherentSuperposition& psi, int mode) {
  require(mode >= 0 && mode < psi.modes(), errc::dimension, "mean_photon: mode out of range");
  const auto& terms = psi.terms();
  require(!terms.empty(), errc::structure, "mean_photon: empty superposition");
  cxd num = 0.0;
  cxd den = 0.0;
  for (const auto& tj : terms) {
    for (const auto& tk : terms) {
      const cxd w = std::conj(tj.coeff) * tk.coeff * coherent_overlap(tk.amp, tj.amp);
      num += w * std::conj(tj.amp(mode)) * tk.amp(mode);
      den += w;
    }
  }
  require(den.real() > 1e-300, errc::numeric, "mean_photon: norm underflow");
  return num.real() / den.real();
}

cxd superposition_overlap(const CoherentSuperposition& bra, const CoherentSuperposition& ket) {
  require(bra.modes() == ket.modes(), errc::dimension, "superposition_overlap: mode count mismatch");
  cxd acc = 0.0;
  for (const auto& tb : bra.terms())
    for (const auto& tk : ket.terms()) acc += std::conj(tb.coeff) * tk.coeff * coherent_overlap(tk.amp, tb.amp);
  return acc;
}

} // namespace attoqo
