// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wsim/fock.hpp"

namespace wsim::optics {

// Photon-number-conserving linear transformation on a subset of modes.
struct ModeUnitary {
  Matrix matrix;
  explicit ModeUnitary(Matrix m, double tol = kStructuralTol);
};

// One photon shared over n modes with equal amplitudes.
FockVector photonic_w1(int n);

// n single-occupied H/V ports, one V among H's. Mode layout is interleaved:
// port k owns modes (2k, 2k+1) = (H, V).
FockVector photonic_wV(int n);

// Substitutes a_j^dag -> sum_k u(k,j) a_k^dag on the listed modes and
// re-expands with bosonic normalization. Photon number is conserved term
// by term.
FockVector apply_mode_unitary(const FockVector& state, const ModeUnitary& u,
                              const std::vector<int>& modes);

// u(j,k) = exp(2 pi i j k / n)/sqrt(n).
ModeUnitary multiport_dft(int n);

// [[cos t, -e^{-i p} sin t], [e^{i p} sin t, cos t]]; 50/50 at t = pi/4, p = 0.
ModeUnitary beamsplitter(double theta, double phi);

// On (aH, aV, bH, bV): H passes, V swaps ports.
ModeUnitary pbs();

// Half-wave plate at the given axis angle, acting on (H, V) of one port.
ModeUnitary hwp(double angle);

// Quarter-wave plate at the given axis angle.
ModeUnitary qwp(double angle);

// Couples a V mode to a heralding mode with amplitude transmittance t_v.
ModeUnitary bs_v(double t_v);

// Phase shift on a single mode.
ModeUnitary phase_shift(double phi);

// Sources.
FockVector source_sps(int mode_count, int mode, int n_max = 6);
// a|4H> + b|4V> + c|2H2V> in the (H, V) modes of one port.
FockVector source_two_crystal(cx a, cx b, cx c, int n_max = 6);
// Four-photon superposition of the same-polarization double pairs and the
// bosonically normalized double-EPR component, over modes
// (aH, aV, bH, bV). Renormalized to 1.
FockVector source_psi4(int n_max = 6);

// Post-selection pattern: exact per-mode counts and port-total predicates.
struct ModeCountConstraint {
  int mode;
  int count;
};
struct PortTotalConstraint {
  std::vector<int> modes;
  int total;
  bool at_least = false;  // ">= total" instead of "== total"
};
struct PostSelectPattern {
  std::vector<ModeCountConstraint> mode_counts;
  std::vector<PortTotalConstraint> port_totals;
  bool empty() const { return mode_counts.empty() && port_totals.empty(); }
  bool matches(const Occupation& occ) const;
};

struct PostSelectResult {
  FockVector conditional;  // renormalized; empty when probability = 0
  double probability = 0.0;
  PostSelectResult() : conditional(1, 0) {}
};

PostSelectResult postselect(const FockVector& state, const PostSelectPattern& pattern);

// Declarative scheme description mirroring the scheme file format.
struct SchemeElement {
  std::string type;                      // bs, pbs, hwp, qwp, bs_v, dft, phase
  std::map<std::string, double> params;  // by parameter name
  std::vector<std::string> targets;      // declared mode names
};

struct SourceSpec {
  std::string kind;                 // photons | sps | two_crystal | psi4
  std::map<std::string, int> occupations;  // kind = photons / sps
  std::vector<std::string> modes;   // modes the source feeds, in order
  cx a, b, c;                       // kind = two_crystal
};

struct PatternSpec {
  std::vector<std::pair<std::string, int>> mode_counts;
  struct Port {
    std::vector<std::string> modes;
    int total = 0;
    bool at_least = false;
  };
  std::vector<Port> ports;
};

struct TargetTerm {
  std::map<std::string, int> occupations;
  cx amplitude;
};

struct OpticalScheme {
  std::string name;
  std::vector<std::string> modes;
  int truncation = 6;
  SourceSpec source;
  std::vector<SchemeElement> elements;
  PatternSpec postselect;
  std::vector<TargetTerm> target_state;  // optional fidelity target

  int mode_index(const std::string& name) const;
};

struct SchemeReport {
  std::string name;
  std::vector<std::string> modes;
  double probability = 0.0;
  std::optional<double> fidelity;
  FockVector conditional;
  SchemeReport() : conditional(1, 0) {}
};

SchemeReport run_scheme(const OpticalScheme& scheme);

// Scheme file round trip (JSON text). Parse errors carry the offending
// field name.
OpticalScheme parse_scheme_json(const std::string& text);
std::string scheme_to_json(const OpticalScheme& scheme);
std::string report_to_json(const SchemeReport& report);

// Builders for the schemes shipped with the toolkit.
// Single photon into the first port of an n-port fiber multiport; produces
// W_n(1) with probability 1.
OpticalScheme scheme_multiport_w1(int n);
// Three photons H, H, V into a per-polarization tritter, one photon per
// output port; produces W_3(V) with probability 1/9.
OpticalScheme scheme_tritter_w3v();
// Four photons H, H, H, V into a 4-port, with V-phase corrections so the
// conditional state is exactly W_4(V); probability 1/16.
OpticalScheme scheme_multiport_w4v();
// Four-photon source split into trigger + three arms; trigger polarization
// analyzed as 'H', 'V', '+' or '-' (diagonal basis via a half-wave plate).
OpticalScheme scheme_psi4_w3v(char trigger);

struct TriggerSearchResult {
  char best_trigger = 'V';
  double best_fidelity = 0.0;
  double best_probability = 0.0;
  std::vector<std::pair<char, double>> fidelities;  // per trigger setting
};

// Runs scheme_psi4_w3v over the four analyzer settings and reports the one
// with the highest W_3(V) fidelity.
TriggerSearchResult psi4_trigger_search();

// Photon statistics by direct sparse contraction.
struct ModeStatistics {
  std::vector<cx> a_mean;          // <a_k>
  Matrix coherence;                // <a_k^dag a_m>
  Eigen::MatrixXd coincidence;     // <n_k n_m>
  std::vector<double> mandel;      // (Var n_k - <n_k>)/<n_k>; NaN when <n_k> = 0
};

ModeStatistics mode_statistics(const FockVector& state);

}  // namespace wsim::optics
