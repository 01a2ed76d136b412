// SPDX-License-Identifier: Apache-2.0
#include "wsim/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "wsim/rng.hpp"
#include "wsim/states.hpp"

namespace wsim::protocols {

namespace {

Vector basis_vector(char basis, int outcome) {
  Vector v(2);
  const double r = 1.0 / std::sqrt(2.0);
  if (basis == 'x')
    v << r, (outcome > 0 ? r : -r);
  else if (outcome > 0)
    v << 1.0, 0.0;  // z+ is |0>
  else
    v << 0.0, 1.0;
  return v;
}

Vector kron_vec(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

// Born probabilities of the 8 outcome triples for the given basis triple.
std::array<double, 8> outcome_distribution(const StateVector& w,
                                           const std::array<char, 3>& basis) {
  std::array<double, 8> p{};
  for (int s = 0; s < 8; ++s) {
    Vector bra = basis_vector(basis[0], (s & 4) ? -1 : +1);
    bra = kron_vec(bra, basis_vector(basis[1], (s & 2) ? -1 : +1));
    bra = kron_vec(bra, basis_vector(basis[2], (s & 1) ? -1 : +1));
    p[s] = std::norm(bra.dot(w.amplitudes()));
  }
  return p;
}

struct QkdRules {
  // Returns (accepted, key_bit).
  static std::pair<bool, int> judge(const std::array<char, 3>& basis,
                                    const std::array<int, 3>& outcome) {
    int z_count = 0, z_party = -1;
    for (int k = 0; k < 3; ++k)
      if (basis[k] == 'z') {
        ++z_count;
        z_party = k;
      }
    if (z_count != 1) return {false, -1};
    if (outcome[z_party] != +1) return {false, -1};  // z- branch is discarded
    // The two x outcomes agree on this branch; key bit from their value.
    for (int k = 0; k < 3; ++k)
      if (k != z_party) return {true, outcome[k] > 0 ? 0 : 1};
    return {false, -1};
  }
};

double enumerate_exact_acceptance(const StateVector& w, bool qss) {
  double total = 0.0;
  for (int bmask = 0; bmask < 8; ++bmask) {
    std::array<char, 3> basis;
    for (int k = 0; k < 3; ++k) basis[k] = (bmask & (4 >> k)) ? 'z' : 'x';
    auto dist = outcome_distribution(w, basis);
    for (int s = 0; s < 8; ++s) {
      std::array<int, 3> outcome = {(s & 4) ? -1 : +1, (s & 2) ? -1 : +1,
                                    (s & 1) ? -1 : +1};
      bool accepted = qss ? (basis[0] == 'z' && basis[1] == 'z' && basis[2] == 'z')
                          : QkdRules::judge(basis, outcome).first;
      if (accepted) total += dist[s] / 8.0;
    }
  }
  return total;
}

}  // namespace

ProtocolTranscript qkd_simulate(int rounds, std::uint64_t seed) {
  if (rounds < 1) throw std::invalid_argument("need at least one round");
  StateVector w = states::w_state(3);

  ProtocolTranscript t;
  t.protocol = "qkd";
  t.seed = seed;
  t.rounds = rounds;
  t.qubits_consumed = 3L * rounds;
  t.exact_acceptance = enumerate_exact_acceptance(w, false);
  t.per_round.reserve(rounds);

  for (int r = 0; r < rounds; ++r) {
    Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(r));
    RoundRecord rec;
    for (int k = 0; k < 3; ++k) rec.basis[k] = rng.uniform_int(2) ? 'z' : 'x';
    auto dist = outcome_distribution(w, rec.basis);
    double u = rng.uniform(), acc = 0.0;
    int chosen = 7;
    for (int s = 0; s < 8; ++s) {
      acc += dist[s];
      if (u < acc) {
        chosen = s;
        break;
      }
    }
    rec.outcome = {(chosen & 4) ? -1 : +1, (chosen & 2) ? -1 : +1,
                   (chosen & 1) ? -1 : +1};
    auto [accepted, bit] = QkdRules::judge(rec.basis, rec.outcome);
    rec.accepted = accepted;
    rec.key_bit = bit;
    if (accepted) ++t.accepted;
    t.per_round.push_back(rec);
  }

  t.success_rate = double(t.accepted) / rounds;
  t.standard_error = std::sqrt(t.success_rate * (1.0 - t.success_rate) / rounds);
  t.qubits_per_key_bit =
      t.accepted > 0 ? double(t.qubits_consumed) / t.accepted : 0.0;
  return t;
}

ProtocolTranscript qss_simulate(int rounds, std::uint64_t seed) {
  if (rounds < 1) throw std::invalid_argument("need at least one round");
  StateVector w = states::w_state(3);

  ProtocolTranscript t;
  t.protocol = "qss";
  t.seed = seed;
  t.rounds = rounds;
  t.qubits_consumed = 3L * rounds;
  t.exact_acceptance = enumerate_exact_acceptance(w, true);
  t.per_round.reserve(rounds);

  // Joint Alice/Bob statistics for the secrecy indicator.
  std::array<std::array<long, 2>, 2> joint{{{0, 0}, {0, 0}}};

  for (int r = 0; r < rounds; ++r) {
    Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(r));
    RoundRecord rec;
    for (int k = 0; k < 3; ++k) rec.basis[k] = rng.uniform_int(2) ? 'z' : 'x';
    auto dist = outcome_distribution(w, rec.basis);
    double u = rng.uniform(), acc = 0.0;
    int chosen = 7;
    for (int s = 0; s < 8; ++s) {
      acc += dist[s];
      if (u < acc) {
        chosen = s;
        break;
      }
    }
    rec.outcome = {(chosen & 4) ? -1 : +1, (chosen & 2) ? -1 : +1,
                   (chosen & 1) ? -1 : +1};
    rec.accepted = rec.basis[0] == 'z' && rec.basis[1] == 'z' && rec.basis[2] == 'z';
    if (rec.accepted) {
      ++t.accepted;
      rec.key_bit = rec.outcome[0] > 0 ? 0 : 1;  // Alice's bit
      // Bob and Claire reconstruct: opposite outcomes imply Alice saw z+.
      int deduced = (rec.outcome[1] != rec.outcome[2]) ? 0 : 1;
      if (deduced != rec.key_bit) ++t.reconstruction_errors;
      joint[rec.key_bit][rec.outcome[1] > 0 ? 0 : 1] += 1;
    }
    t.per_round.push_back(rec);
  }

  t.success_rate = double(t.accepted) / rounds;
  t.standard_error = std::sqrt(t.success_rate * (1.0 - t.success_rate) / rounds);
  t.qubits_per_key_bit =
      t.accepted > 0 ? double(t.qubits_consumed) / t.accepted : 0.0;

  // Exact single-party mutual information from the all-z Born distribution.
  {
    std::array<char, 3> zzz = {'z', 'z', 'z'};
    auto dist = outcome_distribution(w, zzz);
    double pab[2][2] = {{0, 0}, {0, 0}};
    for (int s = 0; s < 8; ++s) {
      int a = (s & 4) ? 1 : 0;  // Alice bit (1 = z-)
      int b = (s & 2) ? 1 : 0;
      pab[a][b] += dist[s];
    }
    auto mi = [&](double p[2][2]) {
      double pa[2] = {p[0][0] + p[0][1], p[1][0] + p[1][1]};
      double pb[2] = {p[0][0] + p[1][0], p[0][1] + p[1][1]};
      double i = 0.0;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          if (p[a][b] > 1e-15)
            i += p[a][b] * std::log2(p[a][b] / (pa[a] * pb[b]));
      return i;
    };
    t.single_party_mutual_info_exact = mi(pab);
    if (t.accepted > 0) {
      double emp[2][2];
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          emp[a][b] = double(joint[a][b]) / t.accepted;
      t.single_party_mutual_info_empirical = mi(emp);
    }
  }
  return t;
}

std::string ProtocolTranscript::to_json() const {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["protocol"] = protocol;
  j["rounds"] = rounds;
  j["accepted"] = accepted;
  j["success_rate"] = format_significant(success_rate);
  j["stderr"] = format_significant(standard_error);
  j["qubits_per_key_bit"] = format_significant(qubits_per_key_bit);
  j["seed"] = seed;
  j["qubits_consumed"] = qubits_consumed;
  j["exact_acceptance"] = format_significant(exact_acceptance);
  if (protocol == "qss") {
    j["reconstruction_errors"] = reconstruction_errors;
    if (single_party_mutual_info_exact)
      j["single_party_mutual_info_exact"] =
          format_significant(*single_party_mutual_info_exact);
    if (single_party_mutual_info_empirical)
      j["single_party_mutual_info_empirical"] =
          format_significant(*single_party_mutual_info_empirical);
  }
  j["e91_success_probability"] = format_significant(e91_success_probability);
  j["e91_qubits_per_key_bit"] = format_significant(e91_qubits_per_key_bit);
  return j.dump(2) + "\n";
}

namespace {

Matrix distill_gate(double v) {
  const double w = std::sqrt(1.0 - v * v);
  Matrix u(4, 4);
  u << 1, 0, 0, 0,
       0, v, 0, w,
       0, 0, -1, 0,
       0, w, 0, -v;
  return u;
}

StateVector w_class_input(double a, double b, double c) {
  Vector v = Vector::Zero(8);
  v(4) = a;
  v(2) = b;
  v(1) = c;
  return StateVector(std::move(v), {2, 2, 2});
}

}  // namespace

DistillResult distill_w(double a, double b, double c) {
  if (std::abs(a * a + b * b + c * c - 1.0) > kAssertTol)
    throw std::invalid_argument("coefficients are not normalized");
  if (!(c > 0.0) || c > a || c > b)
    throw std::invalid_argument("need 0 < c <= min(a, b)");

  StateVector sys = w_class_input(a, b, c);
  StateVector anc = StateVector::basis({0}, {2});
  StateVector psi = tensor(anc, sys);  // subsystem 0 is the ancilla

  psi = apply_unitary(psi, distill_gate(c / a), {0, 1});
  psi = apply_unitary(psi, distill_gate(c / b), {0, 2});

  Vector keep = Vector::Zero(8), drop = Vector::Zero(8);
  for (Eigen::Index i = 0; i < 16; ++i) {
    if (i < 8)
      keep(i) = psi.amp(i);  // ancilla |0>
    else
      drop(i - 8) = psi.amp(i);
  }
  DistillResult res{keep.squaredNorm(),
                    StateVector::normalized(keep, {2, 2, 2}),
                    drop.squaredNorm(),
                    StateVector::normalized(drop, {2, 2, 2})};
  return res;
}

std::vector<WiringReport> distill_wiring_search(double a, double b, double c) {
  StateVector w3 = states::w_state(3);
  Matrix swap(4, 4);
  swap << 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1;

  std::vector<WiringReport> out;
  for (bool ancilla_first : {true, false})
    for (bool u1_on_q1 : {true, false})
      for (int keep_value : {0, 1}) {
        Matrix u1 = distill_gate(c / a), u2 = distill_gate(c / b);
        if (!ancilla_first) {
          u1 = swap * u1 * swap;
          u2 = swap * u2 * swap;
        }
        StateVector psi = tensor(StateVector::basis({0}, {2}), w_class_input(a, b, c));
        psi = apply_unitary(psi, u1, {0, u1_on_q1 ? 1 : 2});
        psi = apply_unitary(psi, u2, {0, u1_on_q1 ? 2 : 1});
        Vector branch = Vector::Zero(8);
        for (Eigen::Index i = 0; i < 8; ++i)
          branch(i) = psi.amp(keep_value == 0 ? i : i + 8);
        WiringReport rep;
        rep.ancilla_first = ancilla_first;
        rep.u1_on_qubit1 = u1_on_q1;
        rep.postselect_ancilla = keep_value;
        rep.success_probability = branch.squaredNorm();
        if (rep.success_probability > 1e-15)
          rep.w_fidelity = fidelity(StateVector::normalized(branch, {2, 2, 2}), w3);
        out.push_back(rep);
      }
  return out;
}

namespace {

Matrix pauli_of(int k) {
  Matrix m(2, 2);
  switch (k) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, cx(0, -1), cx(0, 1), 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

const char* pauli_name(int k) {
  static const char* names[4] = {"I", "X", "Y", "Z"};
  return names[k];
}

// <chi|_{(0,1,2)} psi, leaving the last two qubits of a 5-qubit state.
Vector partial_inner_front3(const StateVector& chi, const StateVector& psi) {
  Vector out = Vector::Zero(4);
  for (Eigen::Index i = 0; i < 8; ++i) {
    cx c = std::conj(chi.amp(i));
    if (c == cx(0.0, 0.0)) continue;
    for (Eigen::Index j = 0; j < 4; ++j) out(j) += c * psi.amp(i * 4 + j);
  }
  return out;
}

void check_entangled_pair_form(const StateVector& phi) {
  if (phi.dims() != std::vector<int>{2, 2})
    throw std::invalid_argument("phi must be a two-qubit state");
  if (std::abs(phi.amp(0)) > kAssertTol || std::abs(phi.amp(3)) > kAssertTol)
    throw std::invalid_argument("phi must lie in span{|01>, |10>}");
}

}  // namespace

DecompositionResult bell_like_decomposition(const StateVector& phi) {
  check_entangled_pair_form(phi);
  StateVector ghz = states::ghz_state(3);
  StateVector full = tensor(phi, ghz);  // (1, 2, A, B, C)

  // Basis inputs for solving the phi-independent retrievals.
  StateVector e01 = StateVector::basis({0, 1}, {2, 2});
  StateVector e10 = StateVector::basis({1, 0}, {2, 2});
  StateVector full01 = tensor(e01, ghz);
  StateVector full10 = tensor(e10, ghz);

  const double r = 1.0 / std::sqrt(2.0);
  auto bell = [&](int which) {
    Vector v(4);
    switch (which) {
      case 0: v << r, 0, 0, r; break;    // Phi+
      case 1: v << r, 0, 0, -r; break;   // Phi-
      case 2: v << 0, r, r, 0; break;    // Psi+
      default: v << 0, r, -r, 0; break;  // Psi-
    }
    return StateVector(v, {2, 2});
  };
  static const char* bell_names[4] = {"Phi+", "Phi-", "Psi+", "Psi-"};

  DecompositionResult res;
  Vector reconstruction = Vector::Zero(32);
  for (int xs = 0; xs < 2; ++xs) {
    Vector xv(2);
    xv << r, (xs == 0 ? r : -r);
    StateVector x_eigen(xv, {2});
    for (int bw = 0; bw < 4; ++bw) {
      TeleportBranch branch(tensor(x_eigen, bell(bw)));
      branch.label = std::string(xs == 0 ? "x+" : "x-") + "," + bell_names[bw];

      Vector psi01 = partial_inner_front3(branch.measurement_vector, full01) *
                     std::sqrt(8.0);
      Vector psi10 = partial_inner_front3(branch.measurement_vector, full10) *
                     std::sqrt(8.0);

      bool solved = false;
      for (int p = 0; p < 4 && !solved; ++p)
        for (int q = 0; q < 4 && !solved; ++q) {
          Matrix m = tensor_op(pauli_of(p), pauli_of(q));
          Vector m01 = m * e01.amplitudes();
          Vector m10 = m * e10.amplitudes();
          cx phase = m01.dot(psi01);  // <m01|psi01>
          if (std::abs(std::abs(phase) - 1.0) > 1e-9) continue;
          if ((phase * m01 - psi01).norm() > 1e-9) continue;
          if ((phase * m10 - psi10).norm() > 1e-9) continue;
          branch.retrieval_b = phase * pauli_of(p);
          branch.retrieval_c = pauli_of(q);
          branch.label += std::string(" -> ") + pauli_name(p) + "(x)" + pauli_name(q);
          solved = true;
        }
      if (!solved)
        throw std::runtime_error("no Pauli retrieval found for branch " + branch.label);

      // Accumulate (1/sqrt 8) Phi_x (x) (B (x) C) phi.
      Matrix bc = tensor_op(branch.retrieval_b, branch.retrieval_c);
      Vector image = bc * phi.amplitudes();
      for (Eigen::Index i = 0; i < 8; ++i)
        for (Eigen::Index j = 0; j < 4; ++j)
          reconstruction(i * 4 + j) +=
              branch.measurement_vector.amp(i) * image(j) / std::sqrt(8.0);

      Vector actual = partial_inner_front3(branch.measurement_vector, full);
      res.branch_norm_deviation = std::max(
          res.branch_norm_deviation, std::abs(actual.norm() - 1.0 / std::sqrt(8.0)));
      res.branches.push_back(std::move(branch));
    }
  }
  res.reconstruction_residual = (reconstruction - full.amplitudes()).norm();
  return res;
}

Matrix w_channel_v() {
  const double r = 1.0 / std::sqrt(2.0);
  Matrix v = Matrix::Zero(4, 4);
  // |00> -> Psi+
  v(1, 0) = r;
  v(2, 0) = r;
  // |01> -> |11>
  v(3, 1) = 1.0;
  // |10> -> Psi-
  v(1, 2) = r;
  v(2, 2) = -r;
  // |11> -> |00>
  v(0, 3) = 1.0;
  return v;
}

StateVector w_channel() {
  return apply_unitary(states::ghz_state(3), w_channel_v(), {1, 2});
}

TeleportReport teleport(const StateVector& phi, const std::string& channel) {
  check_entangled_pair_form(phi);
  if (channel != "ghz" && channel != "w")
    throw std::invalid_argument("unknown channel label '" + channel + "'");

  DecompositionResult dec = bell_like_decomposition(phi);
  StateVector chan = channel == "ghz" ? states::ghz_state(3) : w_channel();
  StateVector full = tensor(phi, chan);
  const Matrix v = w_channel_v();

  TeleportReport rep;
  rep.channel = channel;
  rep.min_fidelity = 1.0;
  for (const auto& branch : dec.branches) {
    Vector bc = partial_inner_front3(branch.measurement_vector, full);
    StateVector received = StateVector::normalized(bc, {2, 2});
    Matrix retrieval = tensor_op(branch.retrieval_b, branch.retrieval_c);
    Vector out;
    if (channel == "ghz") {
      out = retrieval.adjoint() * received.amplitudes();
    } else {
      // Conjugated retrieval, then the fixed channel-frame undo.
      Matrix conjugated = v * retrieval.adjoint() * v.adjoint();
      out = v.adjoint() * (conjugated * received.amplitudes());
    }
    double f = fidelity(StateVector::normalized(out, {2, 2}), phi);
    rep.branch_fidelity.push_back(f);
    rep.min_fidelity = std::min(rep.min_fidelity, f);
  }
  return rep;
}

}  // namespace wsim::protocols
