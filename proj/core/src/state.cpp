// SPDX-License-Identifier: Apache-2.0
#include "wsim/state.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

namespace wsim {

std::string format_significant(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
  return buf;
}

std::string format_exact(double v) { return format_significant(v, 17); }

namespace {

Eigen::Index product_of(const std::vector<int>& dims) {
  Eigen::Index p = 1;
  for (int d : dims) {
    if (d < 1) throw std::invalid_argument("subsystem dimension must be >= 1");
    p *= d;
  }
  return p;
}

}  // namespace

StateVector::StateVector(Vector amplitudes, std::vector<int> dims, double tol)
    : amps_(std::move(amplitudes)), dims_(std::move(dims)) {
  if (product_of(dims_) != amps_.size())
    throw std::invalid_argument("amplitude length does not match product of dims");
  if (std::abs(amps_.squaredNorm() - 1.0) > tol)
    throw std::invalid_argument("state vector is not normalized");
}

StateVector StateVector::normalized(Vector amplitudes, std::vector<int> dims) {
  double n = amplitudes.norm();
  if (n < 1e-300) throw std::invalid_argument("cannot normalize a zero vector");
  amplitudes /= n;
  return StateVector(std::move(amplitudes), std::move(dims));
}

StateVector StateVector::basis(const std::vector<int>& digits,
                               const std::vector<int>& dims) {
  if (digits.size() != dims.size())
    throw std::invalid_argument("digit count does not match dims");
  Vector v = Vector::Zero(product_of(dims));
  Eigen::Index idx = 0;
  for (size_t k = 0; k < dims.size(); ++k) {
    if (digits[k] < 0 || digits[k] >= dims[k])
      throw std::invalid_argument("basis digit out of range");
    idx = idx * dims[k] + digits[k];
  }
  v(idx) = 1.0;
  return StateVector(std::move(v), dims);
}

StateVector StateVector::ground(int n_qubits) {
  if (n_qubits < 1) throw std::invalid_argument("need at least one qubit");
  return basis(std::vector<int>(n_qubits, 0), std::vector<int>(n_qubits, 2));
}

bool StateVector::is_qubit_register() const {
  for (int d : dims_)
    if (d != 2) return false;
  return true;
}

std::vector<int> StateVector::digits_of(Eigen::Index index) const {
  std::vector<int> out(dims_.size());
  for (size_t k = dims_.size(); k-- > 0;) {
    out[k] = static_cast<int>(index % dims_[k]);
    index /= dims_[k];
  }
  return out;
}

Eigen::Index StateVector::index_of(const std::vector<int>& digits) const {
  Eigen::Index idx = 0;
  for (size_t k = 0; k < dims_.size(); ++k) idx = idx * dims_[k] + digits[k];
  return idx;
}

DensityMatrix::DensityMatrix(Matrix entries, std::vector<int> dims, double tol,
                             double psd_tol)
    : m_(std::move(entries)), dims_(std::move(dims)) {
  if (m_.rows() != m_.cols()) throw std::invalid_argument("density matrix must be square");
  if (product_of(dims_) != m_.rows())
    throw std::invalid_argument("matrix size does not match product of dims");
  if (max_abs(m_ - m_.adjoint()) > tol)
    throw std::invalid_argument("density matrix is not Hermitian");
  if (std::abs(m_.trace().real() - 1.0) > tol || std::abs(m_.trace().imag()) > tol)
    throw std::invalid_argument("density matrix trace is not 1");
  Eigen::SelfAdjointEigenSolver<Matrix> es(m_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -psd_tol)
    throw std::invalid_argument("density matrix has a negative eigenvalue");
}

DensityMatrix DensityMatrix::from_state(const StateVector& psi) {
  Matrix m = psi.amplitudes() * psi.amplitudes().adjoint();
  return DensityMatrix(std::move(m), psi.dims());
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  Vector out(a.dimension() * b.dimension());
  for (Eigen::Index i = 0; i < a.dimension(); ++i)
    out.segment(i * b.dimension(), b.dimension()) = a.amp(i) * b.amplitudes();
  std::vector<int> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return StateVector(std::move(out), std::move(dims));
}

Matrix tensor_op(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c)
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
  return out;
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  std::vector<int> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return DensityMatrix(tensor_op(a.entries(), b.entries()), std::move(dims));
}

namespace {

struct IndexSplit {
  std::vector<int> keep;              // sorted keep indices
  std::vector<int> traced;            // complement
  std::vector<int> keep_dims, traced_dims;
  Eigen::Index keep_dim = 1, traced_dim = 1;
  std::vector<Eigen::Index> strides;  // full-register strides
};

IndexSplit make_split(const std::vector<int>& dims, std::vector<int> keep) {
  std::sort(keep.begin(), keep.end());
  if (keep.empty()) throw std::invalid_argument("keep set must not be empty");
  if (std::adjacent_find(keep.begin(), keep.end()) != keep.end())
    throw std::invalid_argument("keep set has duplicates");
  if (keep.front() < 0 || keep.back() >= static_cast<int>(dims.size()))
    throw std::invalid_argument("keep index out of range");

  IndexSplit s;
  s.keep = keep;
  s.strides.assign(dims.size(), 1);
  for (size_t k = dims.size() - 1; k-- > 0;)
    s.strides[k] = s.strides[k + 1] * dims[k + 1];
  size_t ki = 0;
  for (int i = 0; i < static_cast<int>(dims.size()); ++i) {
    if (ki < keep.size() && keep[ki] == i) {
      s.keep_dims.push_back(dims[i]);
      s.keep_dim *= dims[i];
      ++ki;
    } else {
      s.traced.push_back(i);
      s.traced_dims.push_back(dims[i]);
      s.traced_dim *= dims[i];
    }
  }
  return s;
}

// Full-register index from a multi-index over a subset of subsystems.
Eigen::Index compose_index(const std::vector<int>& subsystems,
                           const std::vector<int>& sub_dims, Eigen::Index sub_index,
                           const std::vector<Eigen::Index>& strides) {
  Eigen::Index idx = 0;
  for (size_t k = subsystems.size(); k-- > 0;) {
    idx += (sub_index % sub_dims[k]) * strides[subsystems[k]];
    sub_index /= sub_dims[k];
  }
  return idx;
}

}  // namespace

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
  IndexSplit s = make_split(rho.dims(), keep);
  Matrix out = Matrix::Zero(s.keep_dim, s.keep_dim);
  for (Eigen::Index t = 0; t < s.traced_dim; ++t) {
    Eigen::Index base = s.traced.empty()
                            ? 0
                            : compose_index(s.traced, s.traced_dims, t, s.strides);
    for (Eigen::Index r = 0; r < s.keep_dim; ++r) {
      Eigen::Index row = base + compose_index(s.keep, s.keep_dims, r, s.strides);
      for (Eigen::Index c = 0; c < s.keep_dim; ++c) {
        Eigen::Index col = base + compose_index(s.keep, s.keep_dims, c, s.strides);
        out(r, c) += rho.entries()(row, col);
      }
    }
  }
  return DensityMatrix(std::move(out), s.keep_dims);
}

Matrix partial_transpose(const Matrix& m, const std::vector<int>& dims, int subsystem) {
  if (subsystem < 0 || subsystem >= static_cast<int>(dims.size()))
    throw std::invalid_argument("subsystem index out of range");
  std::vector<Eigen::Index> strides(dims.size(), 1);
  for (size_t k = dims.size() - 1; k-- > 0;) strides[k] = strides[k + 1] * dims[k + 1];
  const Eigen::Index stride = strides[subsystem];
  const int d = dims[subsystem];

  Matrix out(m.rows(), m.cols());
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    int rd = static_cast<int>((r / stride) % d);
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      int cd = static_cast<int>((c / stride) % d);
      Eigen::Index r2 = r + (cd - rd) * stride;
      Eigen::Index c2 = c + (rd - cd) * stride;
      out(r2, c2) = m(r, c);
    }
  }
  return out;
}

Matrix partial_transpose(const DensityMatrix& rho, int subsystem) {
  return partial_transpose(rho.entries(), rho.dims(), subsystem);
}

StateVector apply_unitary(const StateVector& psi, const Matrix& u,
                          const std::vector<int>& subsystems) {
  if (subsystems.empty()) throw std::invalid_argument("no target subsystems");
  std::vector<Eigen::Index> strides(psi.dims().size(), 1);
  for (size_t k = psi.dims().size() - 1; k-- > 0;)
    strides[k] = strides[k + 1] * psi.dims()[k + 1];

  std::vector<int> sub_dims;
  Eigen::Index sub_dim = 1;
  for (int s : subsystems) {
    if (s < 0 || s >= psi.subsystem_count())
      throw std::invalid_argument("subsystem index out of range");
    sub_dims.push_back(psi.dims()[s]);
    sub_dim *= psi.dims()[s];
  }
  if (u.rows() != sub_dim || u.cols() != sub_dim)
    throw std::invalid_argument("operator size does not match target subsystems");

  // Complementary subsystems.
  std::vector<int> rest;
  std::vector<int> rest_dims;
  Eigen::Index rest_dim = 1;
  for (int i = 0; i < psi.subsystem_count(); ++i) {
    if (std::find(subsystems.begin(), subsystems.end(), i) != subsystems.end())
      continue;
    rest.push_back(i);
    rest_dims.push_back(psi.dims()[i]);
    rest_dim *= psi.dims()[i];
  }

  auto compose = [&](const std::vector<int>& subs, const std::vector<int>& dims_of,
                     Eigen::Index sub_index) {
    Eigen::Index idx = 0;
    for (size_t k = subs.size(); k-- > 0;) {
      idx += (sub_index % dims_of[k]) * strides[subs[k]];
      sub_index /= dims_of[k];
    }
    return idx;
  };

  Vector out = Vector::Zero(psi.dimension());
  Vector gather(sub_dim);
  for (Eigen::Index r = 0; r < rest_dim; ++r) {
    Eigen::Index base = rest.empty() ? 0 : compose(rest, rest_dims, r);
    for (Eigen::Index s = 0; s < sub_dim; ++s)
      gather(s) = psi.amp(base + compose(subsystems, sub_dims, s));
    Vector scattered = u * gather;
    for (Eigen::Index s = 0; s < sub_dim; ++s)
      out(base + compose(subsystems, sub_dims, s)) = scattered(s);
  }
  return StateVector(std::move(out), psi.dims(), kStructuralTol);
}

HermitianSpectrum hermitian_eig(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix must be square");
  if (max_abs(m - m.adjoint()) > tol)
    throw std::invalid_argument("matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("Hermitian eigendecomposition failed");
  return HermitianSpectrum{es.eigenvalues(), es.eigenvectors()};
}

Matrix evolve(const Matrix& hamiltonian, double t) {
  HermitianSpectrum s = hermitian_eig(hamiltonian);
  Vector phases(s.eigenvalues.size());
  for (Eigen::Index k = 0; k < s.eigenvalues.size(); ++k)
    phases(k) = std::exp(cx(0.0, -s.eigenvalues(k) * t));
  return s.eigenvectors * phases.asDiagonal() * s.eigenvectors.adjoint();
}

double fidelity(const StateVector& a, const StateVector& b) {
  if (a.dims() != b.dims()) throw std::invalid_argument("dimension mismatch");
  return std::norm(a.amplitudes().dot(b.amplitudes()));
}

double entropy_of_eigenvalues(const RealVector& eigenvalues) {
  double s = 0.0;
  for (Eigen::Index k = 0; k < eigenvalues.size(); ++k) {
    double p = eigenvalues(k);
    if (p > 1e-300) s -= p * std::log2(p);
  }
  return s;
}

double von_neumann_entropy(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.entries(), Eigen::EigenvaluesOnly);
  return entropy_of_eigenvalues(es.eigenvalues());
}

}  // namespace wsim
