// SPDX-License-Identifier: Apache-2.0
#include "wsim/fock.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "wsim/state.hpp"

namespace wsim::optics {

FockVector::FockVector(int mode_count, int n_max)
    : mode_count_(mode_count), n_max_(n_max) {
  if (mode_count < 1) throw std::invalid_argument("need at least one mode");
  if (n_max < 0) throw std::invalid_argument("negative photon truncation");
}

void FockVector::add_term(const Occupation& occ, cx amplitude) {
  if (static_cast<int>(occ.size()) != mode_count_)
    throw std::invalid_argument("occupation tuple has wrong mode count");
  int total = 0;
  for (int n : occ) {
    if (n < 0) throw std::invalid_argument("negative occupation");
    total += n;
  }
  if (total > n_max_)
    throw std::invalid_argument("term exceeds total-photon truncation");
  cx& slot = terms_[occ];
  slot += amplitude;
  if (slot == cx(0.0, 0.0)) terms_.erase(occ);
}

cx FockVector::amplitude(const Occupation& occ) const {
  auto it = terms_.find(occ);
  return it == terms_.end() ? cx(0.0, 0.0) : it->second;
}

double FockVector::norm() const {
  double n2 = 0.0;
  for (const auto& [occ, amp] : terms_) n2 += std::norm(amp);
  return std::sqrt(n2);
}

void FockVector::normalize() {
  double n = norm();
  if (n < 1e-300) throw std::invalid_argument("cannot normalize empty state");
  for (auto& [occ, amp] : terms_) amp /= n;
}

void FockVector::prune(double floor) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (std::abs(it->second) <= floor)
      it = terms_.erase(it);
    else
      ++it;
  }
}

cx FockVector::inner(const FockVector& other) const {
  if (mode_count_ != other.mode_count_)
    throw std::invalid_argument("mode count mismatch");
  cx s = 0.0;
  for (const auto& [occ, amp] : terms_) {
    auto it = other.terms_.find(occ);
    if (it != other.terms_.end()) s += std::conj(amp) * it->second;
  }
  return s;
}

double FockVector::fidelity(const FockVector& other) const {
  return std::norm(inner(other));
}

std::vector<double> FockVector::photon_number_distribution() const {
  std::vector<double> dist(n_max_ + 1, 0.0);
  for (const auto& [occ, amp] : terms_) {
    int total = std::accumulate(occ.begin(), occ.end(), 0);
    dist[total] += std::norm(amp);
  }
  return dist;
}

std::string FockVector::to_canonical_text() const {
  std::ostringstream os;
  os << "fock " << mode_count_ << " " << n_max_ << "\n";
  for (const auto& [occ, amp] : terms_) {
    for (size_t k = 0; k < occ.size(); ++k) os << (k ? "," : "") << occ[k];
    os << " " << format_exact(amp.real()) << " " << format_exact(amp.imag()) << "\n";
  }
  return os.str();
}

FockVector FockVector::from_canonical_text(const std::string& text) {
  std::istringstream is(text);
  std::string tag;
  int modes = 0, nmax = 0;
  if (!(is >> tag >> modes >> nmax) || tag != "fock")
    throw std::invalid_argument("malformed fock header");
  FockVector out(modes, nmax);
  std::string occ_field;
  double re = 0.0, im = 0.0;
  while (is >> occ_field >> re >> im) {
    Occupation occ;
    std::istringstream fs(occ_field);
    std::string tok;
    while (std::getline(fs, tok, ',')) occ.push_back(std::stoi(tok));
    out.add_term(occ, cx(re, im));
  }
  return out;
}

}  // namespace wsim::optics
