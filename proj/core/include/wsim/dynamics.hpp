// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "wsim/state.hpp"
#include "wsim/states.hpp"

namespace wsim::dynamics {

// Two field modes (a, b) tensored with the symmetric atomic ladder |m;n>.
// Subsystem order (a, b, atoms); mode occupations run 0..n_photon_max.
struct AtomFieldState {
  int n_atoms = 0;
  int n_photon_max = 1;
  StateVector sv;

  AtomFieldState(int atoms, int photon_max, StateVector state);
  static AtomFieldState basis(int atoms, int photon_max, int na, int nb, int m);
  cx amp(int na, int nb, int m) const;
};

// Closed-form two-mode scattering step: the (alpha|01> + beta|10>) (x) |m;n>
// superposition evolves with mixing angles
// theta_m = t f sqrt((m+1)(n-m)), theta'_m = theta_{m-1}.
AtomFieldState raman_closed_form(cx alpha, cx beta, int m, int n, double f, double t);

// Exact evolution under H = i f (S10 a^dag b - S01 b^dag a), exponentiated
// on the closed single-photon sector. Agrees with the closed form.
AtomFieldState raman_numeric(cx alpha, cx beta, int m, int n, double f, double t);

// Conserved excitation count <b^dag b> + <m> for the two-mode scattering.
double raman_excitation(const AtomFieldState& state);

// Three ions, levels (S, D), tensored with a phonon mode truncated at n = 2.
// Subsystem order (ion1, ion2, ion3, phonon); S = 0, D = 1.
struct IonRegister {
  StateVector sv;
  IonRegister() : sv(StateVector::basis({0, 0, 0, 0}, {2, 2, 2, 3})) {}
  explicit IonRegister(StateVector s) : sv(std::move(s)) {}
};

// Carrier rotation exp(i theta/2 (e^{i phi} |D><S| + e^{-i phi} |S><D|))
// on one ion.
Matrix ion_R(double theta, double phi, int ion);

// Blue-sideband rotation coupling |S, n> and |D, n+1>, exponentiated exactly
// on the truncated register.
Matrix ion_Rplus(double theta, double phi, int ion);

struct IonSequenceResult {
  IonRegister final_state;
  std::vector<IonRegister> intermediates;  // after each pulse
  std::string pulse_order;                 // "right-to-left" or "left-to-right"
  double intermediate_fidelity = 0.0;      // pulse-1 check, global phase free
  double w_fidelity = 0.0;                 // gauge-optimized vs (|DDS>+|DSD>+|SDD>)/sqrt(3)
  double phonon_leakage = 0.0;             // max population of phonon level 2
  double phonon_purity = 0.0;              // purity after tracing the phonon
};

// Five-pulse W sequence from |SSS>|0>. The displayed pulse product is tried
// operator-style (rightmost first); if the stated first-pulse intermediate
// is missed, the reversed reading is used and recorded.
IonSequenceResult ion_w_sequence();

// Gauge-optimized |<target| diag-phase |psi>|^2 over per-qubit z phases.
double gauge_optimized_fidelity(const StateVector& target, const StateVector& psi,
                                const std::vector<int>& phase_qubits);

struct LindbladRun {
  DensityMatrix final_state;
  std::vector<double> times;
  std::vector<double> excitation;  // <S11> along the trajectory
  double max_trace_drift = 0.0;
  double min_eigenvalue = 0.0;  // most negative eigenvalue seen at checkpoints
};

// Integrates rho' = -gamma (R^dag R rho + rho R^dag R - 2 R rho R^dag)
// with R = S01, by fixed-step RK4 with per-step Hermitian symmetrization.
LindbladRun lindblad_collective_decay_run(const DensityMatrix& rho0, double gamma,
                                          double t, int steps);
DensityMatrix lindblad_collective_decay(const DensityMatrix& rho0, double gamma,
                                        double t, int steps);

struct DfCheck {
  double identity_residual;  // || R psi - (sum q_k) |0...0> ||
  double noise_coupling;     // || R psi ||
};

// Collective-noise diagnostics for a qubit register; q_k are the
// single-excitation amplitudes of psi.
DfCheck df_check(const StateVector& psi, const Matrix& collective_op);

}  // namespace wsim::dynamics
