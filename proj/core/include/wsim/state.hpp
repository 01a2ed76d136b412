// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "wsim/types.hpp"

namespace wsim {

// Dense pure state over an ordered tensor product of finite subsystems.
// Basis convention: row-major, leftmost subsystem is the slowest index,
// so for dims (d0, d1, ...) the basis index of digits (i0, i1, ...) is
// i0*d1*d2*... + i1*d2*... + ...
class StateVector {
 public:
  StateVector(Vector amplitudes, std::vector<int> dims, double tol = kAssertTol);

  // Normalizes the amplitudes instead of requiring unit norm.
  static StateVector normalized(Vector amplitudes, std::vector<int> dims);

  // Computational basis state |digits>.
  static StateVector basis(const std::vector<int>& digits,
                           const std::vector<int>& dims);

  // n-qubit |0...0>.
  static StateVector ground(int n_qubits);

  const Vector& amplitudes() const { return amps_; }
  const std::vector<int>& dims() const { return dims_; }
  int subsystem_count() const { return static_cast<int>(dims_.size()); }
  Eigen::Index dimension() const { return amps_.size(); }
  cx amp(Eigen::Index i) const { return amps_(i); }
  double norm() const { return amps_.norm(); }

  bool is_qubit_register() const;

  // Index arithmetic for the fixed ordering convention.
  std::vector<int> digits_of(Eigen::Index index) const;
  Eigen::Index index_of(const std::vector<int>& digits) const;

 private:
  Vector amps_;
  std::vector<int> dims_;
};

// Hermitian, unit-trace, positive-semidefinite operator with subsystem
// dimension metadata.
class DensityMatrix {
 public:
  DensityMatrix(Matrix entries, std::vector<int> dims,
                double tol = kAssertTol, double psd_tol = kStructuralTol);

  static DensityMatrix from_state(const StateVector& psi);

  const Matrix& entries() const { return m_; }
  const std::vector<int>& dims() const { return dims_; }
  int subsystem_count() const { return static_cast<int>(dims_.size()); }
  Eigen::Index dimension() const { return m_.rows(); }
  double trace_real() const { return m_.trace().real(); }

 private:
  Matrix m_;
  std::vector<int> dims_;
};

struct HermitianSpectrum {
  RealVector eigenvalues;  // ascending
  Matrix eigenvectors;     // orthonormal columns, matching order
};

// Tensor composition. Result dims are concat(a.dims, b.dims).
StateVector tensor(const StateVector& a, const StateVector& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);
Matrix tensor_op(const Matrix& a, const Matrix& b);

// Traces out every subsystem not in keep; keep indices refer to rho.dims()
// and the kept subsystems retain their original relative order.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);

// Transposes the given subsystem's indices. Hermitian and trace preserving;
// the result is generally not positive, so a bare matrix is returned.
Matrix partial_transpose(const DensityMatrix& rho, int subsystem);
Matrix partial_transpose(const Matrix& m, const std::vector<int>& dims, int subsystem);

// Applies a unitary acting on the listed subsystems (in the listed order,
// leftmost slowest) to the full state.
StateVector apply_unitary(const StateVector& psi, const Matrix& u,
                          const std::vector<int>& subsystems);

HermitianSpectrum hermitian_eig(const Matrix& m, double tol = kStructuralTol);

// exp(-i H t) by eigendecomposition of Hermitian H.
Matrix evolve(const Matrix& hamiltonian, double t);

// |<a|b>|^2
double fidelity(const StateVector& a, const StateVector& b);

// -sum(lambda log2 lambda), 0 log 0 = 0.
double von_neumann_entropy(const DensityMatrix& rho);
double entropy_of_eigenvalues(const RealVector& eigenvalues);

}  // namespace wsim
