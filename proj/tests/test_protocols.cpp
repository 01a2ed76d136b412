// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "wsim/protocols.hpp"
#include "wsim/rng.hpp"
#include "wsim/states.hpp"

using namespace wsim;
using namespace wsim::protocols;

namespace {
StateVector entangled_pair(cx alpha, cx beta) {
  Vector v = Vector::Zero(4);
  v(1) = alpha;
  v(2) = beta;
  return StateVector(v, {2, 2});
}
}  // namespace

TEST_CASE("key distribution statistics") {
  const int rounds = 20000;
  ProtocolTranscript t = qkd_simulate(rounds, 7);
  CHECK(t.exact_acceptance == doctest::Approx(0.25).epsilon(1e-12));
  double sigma = std::sqrt(0.25 * 0.75 / rounds);
  CHECK(std::abs(t.success_rate - 0.25) <= 3.0 * sigma);
  CHECK(t.qubits_consumed == 3 * rounds);

  // Accepted rounds carry one key bit from two equal x outcomes.
  for (const auto& r : t.per_round) {
    if (!r.accepted) continue;
    REQUIRE(r.key_bit >= 0);
    std::vector<int> xs;
    int z_count = 0;
    for (int k = 0; k < 3; ++k) {
      if (r.basis[k] == 'x') xs.push_back(r.outcome[k]);
      if (r.basis[k] == 'z') ++z_count;
    }
    CHECK(z_count == 1);
    REQUIRE(xs.size() == 2);
    CHECK(xs[0] == xs[1]);
  }
  CHECK_THROWS_AS(qkd_simulate(0, 1), std::invalid_argument);
}

TEST_CASE("transcripts are deterministic in the seed") {
  ProtocolTranscript a = qkd_simulate(500, 11);
  ProtocolTranscript b = qkd_simulate(500, 11);
  CHECK(a.to_json() == b.to_json());
  ProtocolTranscript c = qkd_simulate(500, 12);
  CHECK(a.to_json() != c.to_json());
}

TEST_CASE("secret sharing statistics and reconstruction") {
  const int rounds = 20000;
  ProtocolTranscript t = qss_simulate(rounds, 13);
  CHECK(t.exact_acceptance == doctest::Approx(0.125).epsilon(1e-12));
  double sigma = std::sqrt(0.125 * 0.875 / rounds);
  CHECK(std::abs(t.success_rate - 0.125) <= 3.0 * sigma);
  CHECK(t.reconstruction_errors == 0);

  // Exhaustive reconstruction over the three z-basis outcome patterns: the
  // dealer bit is a function of the receivers' parity.
  StateVector w = states::w_state(3);
  for (int excited = 0; excited < 3; ++excited) {
    int alice = excited == 0 ? 1 : 0;   // 1 = z-
    int bob = excited == 1 ? 1 : 0;
    int claire = excited == 2 ? 1 : 0;
    int deduced = (bob != claire) ? 0 : 1;
    CHECK(deduced == alice);
  }

  REQUIRE(t.single_party_mutual_info_exact.has_value());
  CHECK(*t.single_party_mutual_info_exact ==
        doctest::Approx(std::log2(3.0) - 4.0 / 3.0).epsilon(1e-12));
  REQUIRE(t.single_party_mutual_info_empirical.has_value());
  CHECK(std::abs(*t.single_party_mutual_info_empirical -
                 *t.single_party_mutual_info_exact) < 0.05);
}

TEST_CASE("distillation to W3") {
  double r3 = 1.0 / std::sqrt(3.0);
  DistillResult already = distill_w(r3, r3, r3);
  CHECK(already.success_probability == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fidelity(already.output, states::w_state(3)) == doctest::Approx(1.0));

  double b = std::sqrt(1.0 - 0.64 - 0.09);
  DistillResult r = distill_w(0.8, b, 0.3);
  CHECK(r.success_probability == doctest::Approx(0.27).epsilon(1e-12));
  CHECK(fidelity(r.output, states::w_state(3)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.failure_probability == doctest::Approx(0.73).epsilon(1e-12));
  CHECK(fidelity(r.failure_output, states::w_state(3)) < 0.999);

  CHECK_THROWS_AS(distill_w(0.3, b, 0.8), std::invalid_argument);
  CHECK_THROWS_AS(distill_w(0.5, 0.5, 0.5), std::invalid_argument);

  Rng rng(61);
  for (int k = 0; k < 100; ++k) {
    double c = 0.05 + 0.4 * rng.uniform();
    double rest = 1.0 - c * c;
    double a = std::sqrt(rest * (0.4 + 0.2 * rng.uniform()));
    double bb = std::sqrt(rest - a * a);
    if (c > std::min(a, bb)) {
      --k;
      continue;
    }
    DistillResult d = distill_w(a, bb, c);
    CHECK(d.success_probability == doctest::Approx(3.0 * c * c).epsilon(1e-12));
    CHECK(fidelity(d.output, states::w_state(3)) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("distillation wiring search singles out the documented wiring") {
  double b = std::sqrt(1.0 - 0.64 - 0.09);
  auto reports = distill_wiring_search(0.8, b, 0.3);
  REQUIRE(reports.size() == 8);
  int winners = 0;
  bool documented_ok = false;
  for (const auto& rep : reports) {
    bool reproduces = std::abs(rep.success_probability - 0.27) < 1e-12 &&
                      std::abs(rep.w_fidelity - 1.0) < 1e-12;
    if (reproduces) ++winners;
    if (rep.ancilla_first && rep.u1_on_qubit1 && rep.postselect_ancilla == 0)
      documented_ok = reproduces;
  }
  CHECK(documented_ok);
  CHECK(winners >= 1);
}

TEST_CASE("Bell-like expansion of phi (x) GHZ") {
  Rng rng(67);
  for (int k = 0; k < 100; ++k) {
    cx alpha = std::polar(std::sqrt(rng.uniform()), 2 * M_PI * rng.uniform());
    cx beta = std::sqrt(1.0 - std::norm(alpha));
    DecompositionResult d = bell_like_decomposition(entangled_pair(alpha, beta));
    CHECK(d.reconstruction_residual <= 1e-12);
    CHECK(d.branch_norm_deviation <= 1e-12);
    CHECK(d.branches.size() == 8);
  }

  // The measurement vectors form an orthonormal set.
  DecompositionResult d = bell_like_decomposition(entangled_pair(1.0, 0.0));
  for (size_t i = 0; i < d.branches.size(); ++i)
    for (size_t j = 0; j < d.branches.size(); ++j) {
      cx ov = d.branches[i].measurement_vector.amplitudes().dot(
          d.branches[j].measurement_vector.amplitudes());
      CHECK(std::abs(ov - (i == j ? 1.0 : 0.0)) < 1e-12);
    }

  Vector bad = Vector::Zero(4);
  bad(0) = 1.0;
  CHECK_THROWS_AS(bell_like_decomposition(StateVector(bad, {2, 2})),
                  std::invalid_argument);
}

TEST_CASE("W-class channel construction") {
  Matrix v = w_channel_v();
  CHECK(max_abs(v.adjoint() * v - Matrix::Identity(4, 4)) < 1e-14);
  StateVector chan = w_channel();
  CHECK(std::abs(chan.amp(4) - 1.0 / std::sqrt(2.0)) < 1e-14);
  CHECK(std::abs(chan.amp(2) - 0.5) < 1e-14);
  CHECK(std::abs(chan.amp(1) - 0.5) < 1e-14);
  // Entirely inside the single-excitation sector.
  for (Eigen::Index i : {0, 3, 5, 6, 7}) CHECK(std::abs(chan.amp(i)) < 1e-14);
}

TEST_CASE("teleportation through both channels") {
  Rng rng(71);
  for (int k = 0; k < 100; ++k) {
    cx alpha = std::polar(std::sqrt(rng.uniform()), 2 * M_PI * rng.uniform());
    cx beta = std::sqrt(1.0 - std::norm(alpha));
    StateVector phi = entangled_pair(alpha, beta);
    TeleportReport g = teleport(phi, "ghz");
    TeleportReport w = teleport(phi, "w");
    CHECK(g.min_fidelity >= 1.0 - 1e-12);
    CHECK(w.min_fidelity >= 1.0 - 1e-12);
    CHECK(g.classical_bits == 3);
    CHECK(g.branch_fidelity.size() == 8);
  }
  StateVector prod = entangled_pair(1.0, 0.0);
  CHECK(teleport(prod, "ghz").min_fidelity >= 1.0 - 1e-12);
  CHECK_THROWS_AS(teleport(prod, "epr"), std::invalid_argument);
}

TEST_CASE("skipping the branch retrieval breaks teleportation") {
  StateVector phi = entangled_pair(std::sqrt(0.3), std::sqrt(0.7));
  DecompositionResult d = bell_like_decomposition(phi);
  StateVector full = tensor(phi, states::ghz_state(3));
  double mean_f = 0.0;
  for (const auto& branch : d.branches) {
    // Project, renormalize, but apply no retrieval.
    Vector bc = Vector::Zero(4);
    for (Eigen::Index i = 0; i < 8; ++i) {
      cx c = std::conj(branch.measurement_vector.amp(i));
      for (Eigen::Index j = 0; j < 4; ++j) bc(j) += c * full.amp(i * 4 + j);
    }
    mean_f += fidelity(StateVector::normalized(bc, {2, 2}), phi);
  }
  mean_f /= d.branches.size();
  CHECK(mean_f < 0.99);
}

TEST_CASE("the W-channel retrieval is jointly non-local") {
  StateVector phi = entangled_pair(std::sqrt(0.5), std::sqrt(0.5));
  DecompositionResult d = bell_like_decomposition(phi);
  Matrix v = w_channel_v();
  int nonlocal = 0;
  for (const auto& branch : d.branches) {
    Matrix r = v * tensor_op(branch.retrieval_b, branch.retrieval_c).adjoint() *
               v.adjoint();
    // Operator-Schmidt rank via the reshuffled 4x4 block matrix.
    Matrix shuffled(4, 4);
    for (int r1 = 0; r1 < 2; ++r1)
      for (int c1 = 0; c1 < 2; ++c1)
        for (int r2 = 0; r2 < 2; ++r2)
          for (int c2 = 0; c2 < 2; ++c2)
            shuffled(r1 * 2 + c1, r2 * 2 + c2) = r(r1 * 2 + r2, c1 * 2 + c2);
    Eigen::JacobiSVD<Matrix> svd(shuffled);
    if (svd.singularValues()(1) > 1e-9) ++nonlocal;
  }
  CHECK(nonlocal > 0);
}
