// SPDX-License-Identifier: Apache-2.0
#include "wsim/states.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace wsim::states {

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

AmplitudeProfile::AmplitudeProfile(std::vector<cx> q_, double tol) : q(std::move(q_)) {
  if (q.size() < 1) throw std::invalid_argument("empty amplitude profile");
  double n2 = 0.0;
  for (const auto& x : q) n2 += std::norm(x);
  if (std::abs(n2 - 1.0) > tol)
    throw std::invalid_argument("amplitude profile is not normalized");
}

cx AmplitudeProfile::sum() const {
  cx s = 0.0;
  for (const auto& x : q) s += x;
  return s;
}

StateVector eta_state(const AmplitudeProfile& profile) {
  const int n = profile.size();
  Vector v = Vector::Zero(Eigen::Index(1) << n);
  for (int k = 0; k < n; ++k)
    v(Eigen::Index(1) << (n - 1 - k)) = profile.q[k];
  return StateVector(std::move(v), std::vector<int>(n, 2));
}

bool is_zsa(const AmplitudeProfile& profile, double tol) {
  return std::abs(profile.sum()) <= tol;
}

StateVector w_state(int n) {
  if (n < 2) throw std::invalid_argument("W state needs n >= 2");
  std::vector<cx> q(n, cx(1.0 / std::sqrt(double(n)), 0.0));
  return eta_state(AmplitudeProfile(std::move(q)));
}

StateVector ghz_state(int n) {
  if (n < 2) throw std::invalid_argument("GHZ state needs n >= 2");
  Vector v = Vector::Zero(Eigen::Index(1) << n);
  v(0) = v(v.size() - 1) = 1.0 / std::sqrt(2.0);
  return StateVector(std::move(v), std::vector<int>(n, 2));
}

StateVector dicke_symmetric(int m, int n) {
  if (n < 1 || m < 0 || m > n) throw std::invalid_argument("need 0 <= m <= n");
  Vector v = Vector::Zero(Eigen::Index(1) << n);
  const double amp = 1.0 / std::sqrt(binomial(n, m));
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (std::popcount(static_cast<std::uint64_t>(i)) == m) v(i) = amp;
  return StateVector(std::move(v), std::vector<int>(n, 2));
}

CollectiveOperator collective_S(int x, int y, int n) {
  if ((x != 0 && x != 1) || (y != 0 && y != 1))
    throw std::invalid_argument("labels must be bits");
  if (n < 1) throw std::invalid_argument("need n >= 1");
  const Eigen::Index dim = Eigen::Index(1) << n;
  Matrix m = Matrix::Zero(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (int site = 0; site < n; ++site) {
      const Eigen::Index bit = Eigen::Index(1) << (n - 1 - site);
      const int digit = (j & bit) ? 1 : 0;
      if (digit != y) continue;
      Eigen::Index i = (j & ~bit) | (x ? bit : 0);
      m(i, j) += 1.0;
    }
  }
  return CollectiveOperator{std::move(m), x, y, n};
}

AngularOperators angular_ops(int n) {
  Matrix s10 = collective_S(1, 0, n).matrix;
  Matrix s01 = collective_S(0, 1, n).matrix;
  Matrix s00 = collective_S(0, 0, n).matrix;
  Matrix s11 = collective_S(1, 1, n).matrix;
  AngularOperators ops;
  ops.j1 = 0.5 * (s10 + s01);
  ops.j2 = cx(0.0, 0.5) * (s10 - s01);
  ops.j3 = 0.5 * (s00 - s11);
  ops.jsq = ops.j1 * ops.j1 + ops.j2 * ops.j2 + ops.j3 * ops.j3;
  return ops;
}

std::pair<StateVector, StateVector> df_states() {
  Vector singlet(4);
  singlet << 0.0, 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0), 0.0;
  StateVector psi_minus(singlet, {2, 2});
  StateVector phi0 = tensor(psi_minus, psi_minus);

  Vector plus(4);
  plus << 0.0, 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 0.0;
  StateVector psi_plus(plus, {2, 2});
  StateVector pp = tensor(psi_plus, psi_plus);

  Vector v = Vector::Zero(16);
  v(0b0011) = 1.0;
  v(0b1100) = 1.0;
  v -= pp.amplitudes();
  v /= std::sqrt(3.0);
  StateVector psi1(std::move(v), {2, 2, 2, 2});
  return {phi0, psi1};
}

StateVector ghz_prime() {
  const double r = 1.0 / std::sqrt(2.0);
  Vector q0(2), q1(2);
  q0 << cx(r, 0.0), cx(0.0, r);
  q1 << cx(-r, 0.0), cx(0.0, r);
  Vector v = Vector::Zero(8);
  for (int term = 0; term < 2; ++term) {
    const Vector& q = term == 0 ? q0 : q1;
    for (Eigen::Index i = 0; i < 8; ++i) {
      cx a = 1.0 / std::sqrt(2.0);
      for (int k = 0; k < 3; ++k) a *= q((i >> (2 - k)) & 1);
      v(i) += a;
    }
  }
  return StateVector(std::move(v), {2, 2, 2});
}

namespace {
double snap_half_integer(double v) {
  double snapped = std::round(2.0 * v) / 2.0;
  return (std::abs(snapped - v) <= 1e-6) ? snapped : v;
}
}  // namespace

std::optional<DickeNumbers> dicke_numbers(const StateVector& psi, double tol) {
  if (!psi.is_qubit_register())
    throw std::invalid_argument("dicke_numbers expects a qubit register");
  AngularOperators ops = angular_ops(psi.subsystem_count());
  const Vector& v = psi.amplitudes();

  auto moments = [&](const Matrix& op) {
    Vector opv = op * v;
    double mean = v.dot(opv).real();
    double second = opv.squaredNorm();  // <psi| op^2 |psi> for Hermitian op
    return std::pair<double, double>(mean, second - mean * mean);
  };

  auto [jsq_mean, jsq_var] = moments(ops.jsq);
  auto [j3_mean, j3_var] = moments(ops.j3);
  if (jsq_var > tol || j3_var > tol) return std::nullopt;

  DickeNumbers out;
  out.var_jsq = jsq_var;
  out.var_j3 = j3_var;
  // j from j(j+1) = <Jsq>
  out.j = snap_half_integer(0.5 * (-1.0 + std::sqrt(1.0 + 4.0 * jsq_mean)));
  out.l = snap_half_integer(j3_mean);
  return out;
}

}  // namespace wsim::states
