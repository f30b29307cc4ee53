#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace attoqo {

using cxd = std::complex<double>;

// one complex coherent amplitude per mode
using Amplitude = Eigen::VectorXcd;

inline Amplitude single_mode(cxd a) {
  Amplitude v(1);
  v(0) = a;
  return v;
}

// <beta|alpha> = exp(-|alpha|^2/2 - |beta|^2/2 + beta^* . alpha)
cxd coherent_overlap(const Amplitude& alpha, const Amplitude& beta);

struct CoherentTerm {
  cxd coeff;
  Amplitude amp;
};

// Finite superposition sum_k c_k |amp_k> of multimode coherent states.
class CoherentSuperposition {
public:
  explicit CoherentSuperposition(int modes);

  int modes() const { return modes_; }
  void add_term(cxd coeff, const Amplitude& amp);
  const std::vector<CoherentTerm>& terms() const { return terms_; }

  double norm2() const;
  CoherentSuperposition normalized() const; // numeric error when the norm underflows

private:
  int modes_;
  std::vector<CoherentTerm> terms_;
};

struct DyadTerm {
  cxd coeff;
  Amplitude ket;
  Amplitude bra;
};

// Finite operator mix sum_s c_s |ket_s><bra_s| over unit-norm coherent dyads.
// This closed form stays exact for mean photon numbers far beyond what a
// truncated Fock basis could hold.
class CoherentOperatorMix {
public:
  explicit CoherentOperatorMix(int modes);

  int modes() const { return modes_; }
  void add_term(cxd coeff, const Amplitude& ket, const Amplitude& bra);
  const std::vector<DyadTerm>& terms() const { return terms_; }

  cxd trace() const;
  static CoherentOperatorMix projector(const CoherentSuperposition& psi); // |psi><psi|, normalized

private:
  int modes_;
  std::vector<DyadTerm> terms_;
};

// Span decomposition of a mix: unique amplitude vectors, the coefficient
// matrix R (rho = sum R_ab |v_a><v_b|) and the Gram matrix B_ab = <v_a|v_b>.
struct SpanDecomposition {
  std::vector<Amplitude> vectors;
  Eigen::MatrixXcd R;
  Eigen::MatrixXcd B;
};
SpanDecomposition span_decompose(const CoherentOperatorMix& op);

// reduced single-mode dyads after tracing out every other mode; coefficients
// absorb the traced-mode overlap factors
struct ReducedDyads {
  std::vector<cxd> coeff;
  std::vector<cxd> ket;
  std::vector<cxd> bra;
};
ReducedDyads reduce_to_mode(const CoherentOperatorMix& op, int mode);
ReducedDyads reduce_to_mode(const CoherentSuperposition& psi, int mode);

// Pure-loss (beam splitter) channel of transmissivity eta applied to every
// mode. Exact on coherent dyads; trace preserving for all eta.
CoherentOperatorMix apply_loss(const CoherentOperatorMix& op, double eta);
CoherentOperatorMix apply_loss(const CoherentSuperposition& psi, double eta);

// Tr[rho^2] via coherent overlap algebra; validates hermiticity and trace.
double purity(const CoherentOperatorMix& op);

// Quantum Fisher information for phase rotations generated by the total
// photon number. Mixed states are diagonalized in the finite span of their
// coherent components; coupling to the orthogonal complement is included in
// closed form, so the result is exact up to the Gram spectral cutoff.
double qfi_phase(const CoherentOperatorMix& op);
double qfi_phase(const CoherentSuperposition& psi); // pure case, 4 Var(N)

// von Neumann entropy of the reduced state on the listed modes
double entanglement_entropy(const CoherentSuperposition& psi, const std::vector<int>& side_a);

// <N_mode> of the normalized state, exact via overlap algebra
double mean_photon(const CoherentSuperposition& psi, int mode);

// <bra|ket> between superpositions as stored (no renormalization)
cxd superposition_overlap(const CoherentSuperposition& bra, const CoherentSuperposition& ket);

} // namespace attoqo
