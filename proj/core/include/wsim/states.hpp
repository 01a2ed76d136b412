// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "wsim/state.hpp"

namespace wsim::states {

// Single-excitation amplitude profile (q_1, ..., q_n), sum|q_k|^2 = 1.
struct AmplitudeProfile {
  std::vector<cx> q;
  explicit AmplitudeProfile(std::vector<cx> q_, double tol = kAssertTol);
  int size() const { return static_cast<int>(q.size()); }
  cx sum() const;
};

// Sum over sites of the single-site operator |x><y|.
struct CollectiveOperator {
  Matrix matrix;
  int x = 0, y = 0;
  int sites = 0;
};

struct AngularOperators {
  Matrix j1, j2, j3, jsq;
};

struct DickeNumbers {
  double j = 0.0, l = 0.0;
  double var_jsq = 0.0, var_j3 = 0.0;
};

// (|10...0> + |01...0> + ... + |00...1>)/sqrt(n)
StateVector w_state(int n);

// (|0...0> + |1...1>)/sqrt(2)
StateVector ghz_state(int n);

// Single-excitation state with amplitude q_k on an excitation at site k.
StateVector eta_state(const AmplitudeProfile& profile);

// Zero-sum-amplitude test: |sum_k q_k| <= tol.
bool is_zsa(const AmplitudeProfile& profile, double tol = kStructuralTol);

// Equal-weight superposition of all weight-m basis states of n qubits.
StateVector dicke_symmetric(int m, int n);

CollectiveOperator collective_S(int x, int y, int n);

// J1 = (S10+S01)/2, J2 = i(S10-S01)/2, J3 = (S00-S11)/2, Jsq = J1^2+J2^2+J3^2.
AngularOperators angular_ops(int n);

// (Phi0, Psi1): the two four-qubit decoherence-free states, a singlet product
// and its orthogonal companion.
std::pair<StateVector, StateVector> df_states();

// GHZ with each |x> replaced by ((-1)^x |0> + i|1>)/sqrt(2).
StateVector ghz_prime();

// Reports (j, l) when the state is a simultaneous eigenvector of Jsq and J3
// (both variances <= tol); half-integer values are snapped within 1e-6.
std::optional<DickeNumbers> dicke_numbers(const StateVector& psi, double tol = kAssertTol);

double binomial(int n, int k);

}  // namespace wsim::states
