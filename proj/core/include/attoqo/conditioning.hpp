#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "attoqo/coherent_states.hpp"
#include "attoqo/qstate.hpp"

namespace attoqo {

// Amplitudes entering the conditioning step: the incoming fundamental
// amplitude alpha_in, the shift delta_alpha it acquires during emission, and
// the harmonic amplitudes chi(m) for q = m + 2.
//
// For a driven configuration (alpha_in != 0) the shifted driver must not gain
// energy: |alpha_in + delta_alpha| <= |alpha_in| within 1e-9. The undriven
// reference alpha_in = 0 is exempt; it is used for vacuum-seeded limit
// states, not for depletion bookkeeping.
struct ConditioningInput {
  cxd alpha_in = 0.0;
  cxd delta_alpha = 0.0;
  Eigen::VectorXcd chi; // harmonic amplitudes, q = 2 .. q_cutoff

  int q_cutoff() const { return static_cast<int>(chi.size()) + 1; }
  double excitation() const; // sum_q |chi_q|^2 over q >= 2
};

// Adapter from the pipeline amplitudes: there chi(0) holds the fundamental
// shift and chi(1..) hold the harmonic amplitudes.
ConditioningInput make_conditioning_input(const HarmonicAmplitudes& amps);

// Normalized two-branch state over 1 + (q_cutoff - 1) modes (fundamental
// first, then q = 2 ..):
//   |alpha + dA> (x)_q |chi_q>  -  xi_1 e^{-excitation/2} |alpha> (x)_q |0>
// with xi_1 = <alpha|alpha + dA>. Conditioning on "no emission happened"
// subtracts the overlap-weighted reference branch. Throws a numeric error
// when both dA and every chi_q vanish (the two branches coincide and the
// conditioned state has zero norm).
CoherentSuperposition entangled_conditioned_state(const ConditioningInput& in);

// Normalized fundamental-mode state after projecting every harmonic onto its
// own coherent amplitude:  |alpha + dA> - xi_1 e^{-excitation} |alpha>.
CoherentSuperposition hhg_cat_state(const ConditioningInput& in);

// Normalized single-mode state of harmonic kept_q after projecting the
// fundamental onto <alpha + dA| and every other harmonic q' onto <chi_q'|
// (the first-branch outcome of each measured mode):
//   |chi_q>  -  |xi_1|^2 e^{-excitation/2} e^{-(excitation - |chi_q|^2)/2} |0>
// Reduces to vacuum as chi_q -> 0.
CoherentSuperposition xuv_cat_state(const ConditioningInput& in, int kept_q);

// Per-shot photon numbers drawn from the product coherent state: column 0
// counts the shifted fundamental |alpha + dA|^2, column m >= 1 the harmonic
// q = m + 1 at mean |chi_q|^2. Row i is generated from its own counter-based
// stream (seed, i), so the table is independent of thread partitioning.
struct ShotTable {
  Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> counts; // shots x modes
  std::uint64_t seed = 0;

  int shots() const { return static_cast<int>(counts.rows()); }
  int modes() const { return static_cast<int>(counts.cols()); }
};

ShotTable sample_shots(const ConditioningInput& in, int shots, std::uint64_t seed);

// CSV with header "shot_id, n_1, n_2, ..." where n_1 is the fundamental.
std::string to_csv(const ShotTable& table);

struct SelectionResult {
  std::vector<int> kept;   // indices of retained shots
  double acceptance = 0.0; // kept fraction
  double window = 0.0;     // applied half-width, fundamental-photon units
  CoherentSuperposition reconstructed{1}; // fundamental-mode estimate
  double fidelity = 0.0;   // |<reconstructed|hhg_cat_state>|^2
};

// Keeps shots whose upconverted energy sum_q q n_q matches the fundamental
// depletion |alpha_in|^2 - n_1 within the window (default half-width
// max(1, 0.05 sum_q q |chi_q|^2)). The conditioned fundamental state is
// reconstructed by fitting the reference-branch weight t of the two-branch
// ansatz |alpha + dA> - t xi_hat |alpha> to the kept-shot mean photon
// number. Raises a selection error carrying the acceptance rate when no
// shot survives.
SelectionResult postselect_energy_conserving(const ShotTable& table, const ConditioningInput& in,
                                             double window = -1.0);

// Purity of the state after a transmissivity-eta loss channel, compared for
// the fundamental-mode cat against even/odd reference cats |b> +/- |-b>
// whose mean photon number matches the cat's.
struct LossCurve {
  Eigen::VectorXd eta;
  Eigen::VectorXd purity_cat;  // hhg_cat_state(in) under loss
  Eigen::VectorXd purity_even; // matched |b> + |-b>
  Eigen::VectorXd purity_odd;  // matched |b> - |-b>
};

LossCurve loss_robustness_curve(const ConditioningInput& in, const Eigen::VectorXd& eta);

// Phase-rotation quantum Fisher information under loss for the same trio.
// qfi_odd_pure is the lossless odd-cat value; eta_star is the smallest grid
// transmissivity from which the lossy cat still exceeds that pure reference
// on every grid point up to eta = 1 (crossing_nonempty reports whether such
// a contiguous interval exists).
struct QfiCurve {
  Eigen::VectorXd eta;
  Eigen::VectorXd qfi_cat;
  Eigen::VectorXd qfi_odd;
  double qfi_odd_pure = 0.0;
  double eta_star = 1.0;
  bool crossing_nonempty = false;
};

QfiCurve qfi_comparison(const ConditioningInput& in, const Eigen::VectorXd& eta);

// Amplitude b >= 0 such that the normalized even (sign = +1) or odd
// (sign = -1) cat |b> + sign |-b> has the requested mean photon number.
double matched_cat_amplitude(double mean_photons, int sign);

CoherentSuperposition reference_cat(double b, int sign);

// CSV rows "eta,purity_hhg,purity_even,purity_odd" and
// "eta,qfi_hhg,qfi_odd,qfi_odd_pure"
std::string to_csv(const LossCurve& curve);
std::string to_csv(const QfiCurve& curve);

} // namespace attoqo
