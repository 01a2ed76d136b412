// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>
#include <vector>

#include "wsim/types.hpp"

namespace wsim::optics {

using Occupation = std::vector<int>;

// Sparse multimode bosonic state: occupation tuple -> complex amplitude.
// Keys are kept in a deterministic (lexicographic) order.
class FockVector {
 public:
  FockVector(int mode_count, int n_max);

  int mode_count() const { return mode_count_; }
  int n_max() const { return n_max_; }
  const std::map<Occupation, cx>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  // Adds amplitude to a term; throws if the tuple is malformed or exceeds
  // the total-photon truncation.
  void add_term(const Occupation& occ, cx amplitude);
  cx amplitude(const Occupation& occ) const;

  double norm() const;
  void normalize();
  void prune(double floor = 1e-14);

  cx inner(const FockVector& other) const;  // <this|other>
  double fidelity(const FockVector& other) const;

  // Total-photon distribution, index = photon count.
  std::vector<double> photon_number_distribution() const;

  // Canonical text form; round-trips exactly.
  std::string to_canonical_text() const;
  static FockVector from_canonical_text(const std::string& text);

 private:
  int mode_count_;
  int n_max_;
  std::map<Occupation, cx> terms_;
};

}  // namespace wsim::optics
