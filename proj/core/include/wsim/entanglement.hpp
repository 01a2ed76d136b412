// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "wsim/state.hpp"

namespace wsim::entanglement {

// Partition of the subsystem indices into two non-empty sides.
struct BipartitionSpec {
  std::vector<int> side_a;
  std::vector<int> side_b;
  BipartitionSpec(std::vector<int> a, int subsystem_count);
};

enum class PptVerdict { NptEntangled, Separable, Inconclusive };

struct PptResult {
  RealVector spectrum;  // ascending
  PptVerdict verdict = PptVerdict::Inconclusive;
};

std::string to_string(PptVerdict v);

// (s/n)|W_s><W_s| + (1 - s/n)|0...0><0...0| over s qubits.
DensityMatrix reduced_w(int n, int s);

// Spectrum of the partial transpose over side_a. The separable verdict is
// only issued for 2x2 and 2x3 side dimensions, where PPT is conclusive.
PptResult ppt_spectrum(const DensityMatrix& rho, const BipartitionSpec& part,
                       double tol = kStructuralTol);

// {1/n, 1/n, (n-2)(1 -+ sqrt(1+4/(n-2)^2))/(2n)} ascending, for the
// two-qubit reduction of the n-qubit W state.
RealVector ppt_closed_form_w(int n);

// sum (|lambda| - lambda)/2 over the partial-transpose spectrum.
double negativity(const DensityMatrix& rho, const BipartitionSpec& part);

// Entanglement entropy S(rho_A) of a pure state across the partition.
double ent_entropy(const StateVector& psi, const BipartitionSpec& part);

// Minimum M such that measuring ANY M qubits in the computational basis
// leaves every outcome branch fully product. Exhaustive; qubit registers
// up to n = 5 only.
int persistency(const StateVector& psi, double tol = kStructuralTol);

struct WitnessOperator {
  Matrix matrix;
  std::string label;  // "W1" or "W2"
};

WitnessOperator witness_w1();  // (2/3) I - |W><W|
WitnessOperator witness_w2();  // (1/2) I - |GHZ'><GHZ'|

double witness_value(const WitnessOperator& w, const DensityMatrix& rho);
double witness_value(const WitnessOperator& w, const StateVector& psi);

struct PauliTerm {
  double coefficient;
  std::string word;  // three letters over {I, X, Y, Z}
};

struct PauliExpansionReport {
  std::vector<PauliTerm> terms;  // as-displayed terms plus expanded cubes
  double max_deviation;          // vs (2/3) I - |W><W|, elementwise
};

// Materializes the measurement decomposition of the W witness term by term
// and reports its elementwise deviation from the projector form.
PauliExpansionReport witness_w1_pauli_expansion();

}  // namespace wsim::entanglement
