// SPDX-License-Identifier: Apache-2.0
#include "wsim/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace wsim {

namespace {
std::uint64_t splitmix_step(std::uint64_t& s) {
  s += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}
}  // namespace

Rng Rng::substream(std::uint64_t seed, std::uint64_t counter) {
  std::uint64_t s = seed;
  std::uint64_t a = splitmix_step(s);
  s ^= counter * 0xD1B54A32D192ED03ULL;
  std::uint64_t b = splitmix_step(s);
  return Rng(a ^ (b + 0x9E3779B97F4A7C15ULL));
}

std::uint64_t Rng::next_u64() { return splitmix_step(state_); }

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = 0.0;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double a = 2.0 * M_PI * u2;
  spare_ = r * std::sin(a);
  have_spare_ = true;
  return r * std::cos(a);
}

cx Rng::normal_cx() {
  double re = normal();
  double im = normal();
  return {re, im};
}

int Rng::uniform_int(int n) {
  if (n <= 0) throw std::invalid_argument("uniform_int needs n > 0");
  return static_cast<int>(next_u64() % static_cast<std::uint64_t>(n));
}

StateVector random_state(const std::vector<int>& dims, Rng& rng) {
  Eigen::Index d = 1;
  for (int x : dims) d *= x;
  Vector v(d);
  for (Eigen::Index i = 0; i < d; ++i) v(i) = rng.normal_cx();
  return StateVector::normalized(std::move(v), dims);
}

StateVector random_product_state(int n_qubits, Rng& rng) {
  StateVector out = random_state({2}, rng);
  for (int k = 1; k < n_qubits; ++k) out = tensor(out, random_state({2}, rng));
  return out;
}

std::vector<cx> random_zsa_profile(int n, Rng& rng) {
  if (n < 2) throw std::invalid_argument("zero-sum profile needs n >= 2");
  while (true) {
    std::vector<cx> q(n);
    cx mean = 0.0;
    for (auto& x : q) {
      x = rng.normal_cx();
      mean += x;
    }
    mean /= static_cast<double>(n);
    double norm2 = 0.0;
    for (auto& x : q) {
      x -= mean;
      norm2 += std::norm(x);
    }
    if (norm2 < 1e-12) continue;  // degenerate draw, retry
    double inv = 1.0 / std::sqrt(norm2);
    for (auto& x : q) x *= inv;
    return q;
  }
}

Matrix random_unitary(int dim, Rng& rng) {
  Matrix g(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) g(r, c) = rng.normal_cx();
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < dim; ++k) {
    cx d = r(k, k);
    q.col(k) *= (std::abs(d) > 0.0) ? d / std::abs(d) : cx(1.0, 0.0);
  }
  return q;
}

}  // namespace wsim
