// SPDX-License-Identifier: Apache-2.0
#include "wsim/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wsim::dynamics {

AtomFieldState::AtomFieldState(int atoms, int photon_max, StateVector state)
    : n_atoms(atoms), n_photon_max(photon_max), sv(std::move(state)) {
  std::vector<int> want = {photon_max + 1, photon_max + 1, atoms + 1};
  if (sv.dims() != want)
    throw std::invalid_argument("atom-field state has wrong subsystem layout");
}

AtomFieldState AtomFieldState::basis(int atoms, int photon_max, int na, int nb, int m) {
  return AtomFieldState(
      atoms, photon_max,
      StateVector::basis({na, nb, m}, {photon_max + 1, photon_max + 1, atoms + 1}));
}

cx AtomFieldState::amp(int na, int nb, int m) const {
  return sv.amp(sv.index_of({na, nb, m}));
}

AtomFieldState raman_closed_form(cx alpha, cx beta, int m, int n, double f, double t) {
  if (m < 0 || m > n) throw std::invalid_argument("need 0 <= m <= n");
  if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > kAssertTol)
    throw std::invalid_argument("mode amplitudes are not normalized");
  const int pmax = 1;
  const auto ladder = [&](int mm) {
    return (mm < 0 || mm >= n) ? 0.0 : std::sqrt(double(mm + 1) * double(n - mm));
  };
  const double theta = t * f * ladder(m);        // couples |01,m> and |10,m+1>
  const double theta_p = t * f * ladder(m - 1);  // couples |01,m-1> and |10,m>

  Vector v = Vector::Zero(2 * 2 * (n + 1));
  StateVector layout = StateVector::basis({0, 1, m}, {pmax + 1, pmax + 1, n + 1});
  auto at = [&](int na, int nb, int mm) { return layout.index_of({na, nb, mm}); };

  v(at(0, 1, m)) += alpha * std::cos(theta);
  if (m + 1 <= n) v(at(1, 0, m + 1)) += alpha * std::sin(theta);
  if (m - 1 >= 0) v(at(0, 1, m - 1)) -= beta * std::sin(theta_p);
  v(at(1, 0, m)) += beta * std::cos(theta_p);

  return AtomFieldState(n, pmax,
                        StateVector(std::move(v), {pmax + 1, pmax + 1, n + 1}));
}

AtomFieldState raman_numeric(cx alpha, cx beta, int m, int n, double f, double t) {
  if (m < 0 || m > n) throw std::invalid_argument("need 0 <= m <= n");
  if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > kAssertTol)
    throw std::invalid_argument("mode amplitudes are not normalized");
  const int pmax = 1;

  // Single-photon sector basis {(na, nb) in {(0,1),(1,0)}} x {0..n}; the
  // Hamiltonian H = i f (S10 a^dag b - S01 b^dag a) is closed on it.
  struct Basis {
    int na, nb, m;
  };
  std::vector<Basis> basis;
  for (int mode = 0; mode < 2; ++mode)
    for (int mm = 0; mm <= n; ++mm)
      basis.push_back({mode == 0 ? 0 : 1, mode == 0 ? 1 : 0, mm});
  auto find = [&](int na, int nb, int mm) -> int {
    for (size_t k = 0; k < basis.size(); ++k)
      if (basis[k].na == na && basis[k].nb == nb && basis[k].m == mm)
        return static_cast<int>(k);
    return -1;
  };

  const auto ladder_up = [&](int mm) {  // S10 |m> = sqrt((m+1)(n-m)) |m+1>
    return std::sqrt(double(mm + 1) * double(n - mm));
  };

  Matrix h = Matrix::Zero(basis.size(), basis.size());
  for (size_t col = 0; col < basis.size(); ++col) {
    const Basis& s = basis[col];
    // i f S10 a^dag b: needs nb >= 1, m < n.
    if (s.nb >= 1 && s.m < n) {
      int row = find(s.na + 1, s.nb - 1, s.m + 1);
      if (row >= 0) h(row, col) += cx(0.0, f) * ladder_up(s.m);
    }
    // -i f S01 b^dag a: needs na >= 1, m > 0.
    if (s.na >= 1 && s.m > 0) {
      int row = find(s.na - 1, s.nb + 1, s.m - 1);
      if (row >= 0) h(row, col) -= cx(0.0, f) * ladder_up(s.m - 1);
    }
  }

  Matrix u = evolve(h, t);
  Vector in = Vector::Zero(basis.size());
  in(find(0, 1, m)) = alpha;
  in(find(1, 0, m)) = beta;
  Vector out = u * in;

  Vector full = Vector::Zero(2 * 2 * (n + 1));
  StateVector layout = StateVector::basis({0, 1, 0}, {pmax + 1, pmax + 1, n + 1});
  for (size_t k = 0; k < basis.size(); ++k)
    full(layout.index_of({basis[k].na, basis[k].nb, basis[k].m})) = out(k);
  return AtomFieldState(n, pmax,
                        StateVector(std::move(full), {pmax + 1, pmax + 1, n + 1}));
}

double raman_excitation(const AtomFieldState& state) {
  double total = 0.0;
  const auto& sv = state.sv;
  for (Eigen::Index i = 0; i < sv.dimension(); ++i) {
    double p = std::norm(sv.amp(i));
    if (p == 0.0) continue;
    auto d = sv.digits_of(i);
    total += p * (d[1] + d[2]);  // b photons + atomic excitations
  }
  return total;
}

namespace {

Matrix embed_ion_op(const Matrix& op, int ion) {
  // op acts on (ion, phonon); remaining ions are identity. Subsystem order
  // is (ion1, ion2, ion3, phonon).
  if (ion < 1 || ion > 3) throw std::invalid_argument("ion index must be 1..3");
  const std::vector<int> dims = {2, 2, 2, 3};
  const Eigen::Index dim = 24;
  Matrix out = Matrix::Zero(dim, dim);
  auto split = [&](Eigen::Index idx, int& ion_digit, int& phonon, Eigen::Index& rest) {
    phonon = static_cast<int>(idx % 3);
    Eigen::Index q = idx / 3;
    int shift = 3 - ion;  // ion3 is the fastest qubit digit
    ion_digit = static_cast<int>((q >> shift) & 1);
    rest = q & ~(Eigen::Index(1) << shift);
  };
  for (Eigen::Index colv = 0; colv < dim; ++colv) {
    int cd, cp;
    Eigen::Index crest;
    split(colv, cd, cp, crest);
    for (int rd = 0; rd < 2; ++rd)
      for (int rp = 0; rp < 3; ++rp) {
        cx v = op(rd * 3 + rp, cd * 3 + cp);
        if (v == cx(0.0, 0.0)) continue;
        Eigen::Index q = crest | (Eigen::Index(rd) << (3 - ion));
        out(q * 3 + rp, colv) += v;
      }
  }
  return out;
}

}  // namespace

Matrix ion_R(double theta, double phi, int ion) {
  // Generator on (ion, phonon): (e^{i phi} |D><S| + h.c.) (x) I_phonon.
  Matrix g = Matrix::Zero(6, 6);
  for (int p = 0; p < 3; ++p) {
    g(1 * 3 + p, 0 * 3 + p) = std::polar(1.0, phi);   // S -> D
    g(0 * 3 + p, 1 * 3 + p) = std::polar(1.0, -phi);  // D -> S
  }
  Matrix local = evolve(g, -theta / 2.0);  // exp(+i theta/2 g)
  return embed_ion_op(local, ion);
}

Matrix ion_Rplus(double theta, double phi, int ion) {
  // Generator: e^{i phi} |D><S| b^dag + e^{-i phi} |S><D| b on the truncated
  // phonon ladder.
  Matrix g = Matrix::Zero(6, 6);
  for (int p = 0; p < 2; ++p) {
    double root = std::sqrt(double(p + 1));
    g(1 * 3 + (p + 1), 0 * 3 + p) = std::polar(root, phi);   // |S,p> -> |D,p+1>
    g(0 * 3 + p, 1 * 3 + (p + 1)) = std::polar(root, -phi);  // |D,p+1> -> |S,p>
  }
  Matrix local = evolve(g, -theta / 2.0);
  return embed_ion_op(local, ion);
}

double gauge_optimized_fidelity(const StateVector& target, const StateVector& psi,
                                const std::vector<int>& phase_qubits) {
  if (target.dims() != psi.dims()) throw std::invalid_argument("dimension mismatch");
  // Overlap decomposes as sum over phase-pattern classes; coordinate descent
  // on the per-qubit phases.
  const int nq = static_cast<int>(phase_qubits.size());
  std::vector<double> phases(nq, 0.0);
  auto overlap = [&]() {
    cx s = 0.0;
    for (Eigen::Index i = 0; i < psi.dimension(); ++i) {
      cx t = std::conj(target.amp(i)) * psi.amp(i);
      if (t == cx(0.0, 0.0)) continue;
      auto digits = psi.digits_of(i);
      double ph = 0.0;
      for (int k = 0; k < nq; ++k)
        if (digits[phase_qubits[k]] == 1) ph += phases[k];
      s += t * std::polar(1.0, ph);
    }
    return s;
  };
  double best = std::abs(overlap());
  for (int round = 0; round < 60; ++round) {
    for (int k = 0; k < nq; ++k) {
      // Split the overlap into the part that rotates with phase k and the rest.
      cx with = 0.0, without = 0.0;
      for (Eigen::Index i = 0; i < psi.dimension(); ++i) {
        cx t = std::conj(target.amp(i)) * psi.amp(i);
        if (t == cx(0.0, 0.0)) continue;
        auto digits = psi.digits_of(i);
        double ph = 0.0;
        bool rotates = false;
        for (int q = 0; q < nq; ++q) {
          if (digits[phase_qubits[q]] != 1) continue;
          if (q == k)
            rotates = true;
          else
            ph += phases[q];
        }
        if (rotates)
          with += t * std::polar(1.0, ph);
        else
          without += t * std::polar(1.0, ph);
      }
      if (std::abs(with) > 0.0)
        phases[k] = std::arg(without) - std::arg(with);
      if (std::abs(without) == 0.0 && std::abs(with) > 0.0) phases[k] = 0.0;
    }
    double now = std::abs(overlap());
    if (now - best < 1e-15 && round > 2) {
      best = std::max(best, now);
      break;
    }
    best = std::max(best, now);
  }
  return best * best;
}

IonSequenceResult ion_w_sequence() {
  struct Pulse {
    bool sideband;
    double theta, phi;
    int ion;
  };
  // As displayed, left to right.
  const std::vector<Pulse> listed = {
      {true, 2.0 * std::acos(1.0 / std::sqrt(3.0)), 0.0, 2},
      {false, M_PI, M_PI, 3},
      {true, M_PI / 2.0, M_PI, 3},
      {false, M_PI, 0.0, 1},
      {true, M_PI, M_PI, 1},
  };

  // Stated first-pulse intermediate (1/sqrt(3))(|SSS>|0> + i sqrt(2) |SDS>|1>).
  Vector inter = Vector::Zero(24);
  StateVector layout = StateVector::basis({0, 0, 0, 0}, {2, 2, 2, 3});
  inter(layout.index_of({0, 0, 0, 0})) = 1.0 / std::sqrt(3.0);
  inter(layout.index_of({0, 1, 0, 1})) = cx(0.0, std::sqrt(2.0 / 3.0));
  StateVector stated_intermediate(std::move(inter), {2, 2, 2, 3});

  auto run_order = [&](bool right_to_left) {
    std::vector<Pulse> order = listed;
    if (right_to_left) std::reverse(order.begin(), order.end());
    IonSequenceResult res;
    res.pulse_order = right_to_left ? "right-to-left" : "left-to-right";
    StateVector psi = IonRegister().sv;
    for (const auto& p : order) {
      Matrix u = p.sideband ? ion_Rplus(p.theta, p.phi, p.ion)
                            : ion_R(p.theta, p.phi, p.ion);
      psi = StateVector(u * psi.amplitudes(), psi.dims(), kStructuralTol);
      res.intermediates.emplace_back(psi);
    }
    res.final_state = IonRegister(psi);
    res.intermediate_fidelity =
        fidelity(stated_intermediate, res.intermediates.front().sv);
    return res;
  };

  IonSequenceResult res = run_order(true);
  if (res.intermediate_fidelity < 1.0 - 1e-9) {
    IonSequenceResult alt = run_order(false);
    if (alt.intermediate_fidelity > res.intermediate_fidelity) res = std::move(alt);
  }

  // Target (|DDS> + |DSD> + |SDD>)/sqrt(3) with the phonon in |0>.
  Vector w = Vector::Zero(24);
  w(layout.index_of({1, 1, 0, 0})) = 1.0 / std::sqrt(3.0);
  w(layout.index_of({1, 0, 1, 0})) = 1.0 / std::sqrt(3.0);
  w(layout.index_of({0, 1, 1, 0})) = 1.0 / std::sqrt(3.0);
  StateVector target(std::move(w), {2, 2, 2, 3});
  res.w_fidelity = gauge_optimized_fidelity(target, res.final_state.sv, {0, 1, 2});

  double leak = 0.0;
  for (const auto& reg : res.intermediates)
    for (Eigen::Index i = 0; i < reg.sv.dimension(); ++i)
      if (reg.sv.digits_of(i)[3] == 2) leak = std::max(leak, std::norm(reg.sv.amp(i)));
  res.phonon_leakage = leak;

  DensityMatrix rho = DensityMatrix::from_state(res.final_state.sv);
  DensityMatrix ions = partial_trace(rho, {0, 1, 2});
  res.phonon_purity = (ions.entries() * ions.entries()).trace().real();
  return res;
}

LindbladRun lindblad_collective_decay_run(const DensityMatrix& rho0, double gamma,
                                          double t, int steps) {
  if (gamma < 0.0) throw std::invalid_argument("decay rate must be >= 0");
  if (steps < 1) throw std::invalid_argument("need at least one step");
  int n = rho0.subsystem_count();
  for (int d : rho0.dims())
    if (d != 2) throw std::invalid_argument("collective decay expects qubits");

  const Matrix r_op = states::collective_S(0, 1, n).matrix;
  const Matrix rdr = r_op.adjoint() * r_op;
  const Matrix s11 = states::collective_S(1, 1, n).matrix;

  auto rhs = [&](const Matrix& rho) {
    return gamma * (2.0 * r_op * rho * r_op.adjoint() - rdr * rho - rho * rdr);
  };

  Matrix rho = rho0.entries();
  const double dt = t / steps;
  LindbladRun run{rho0, {}, {}, 0.0, 0.0};
  run.times.push_back(0.0);
  run.excitation.push_back((s11 * rho).trace().real());
  double min_eig = 0.0;

  for (int s = 0; s < steps; ++s) {
    Matrix k1 = rhs(rho);
    Matrix k2 = rhs(rho + 0.5 * dt * k1);
    Matrix k3 = rhs(rho + 0.5 * dt * k2);
    Matrix k4 = rhs(rho + dt * k3);
    rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    rho = 0.5 * (rho + Matrix(rho.adjoint()));  // exact Hermiticity

    double drift = std::abs(rho.trace().real() - 1.0);
    run.max_trace_drift = std::max(run.max_trace_drift, drift);
    if (drift > 1e-6)
      throw std::runtime_error("Lindblad step size too large: trace drift " +
                               format_significant(drift, 3));
    run.times.push_back(dt * (s + 1));
    run.excitation.push_back((s11 * rho).trace().real());
    if (s % 64 == 0 || s == steps - 1) {
      Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
      min_eig = std::min(min_eig, es.eigenvalues().minCoeff());
    }
  }
  run.min_eigenvalue = min_eig;
  run.final_state = DensityMatrix(rho, rho0.dims(), 1e-8, 1e-6);
  return run;
}

DensityMatrix lindblad_collective_decay(const DensityMatrix& rho0, double gamma,
                                        double t, int steps) {
  return lindblad_collective_decay_run(rho0, gamma, t, steps).final_state;
}

DfCheck df_check(const StateVector& psi, const Matrix& collective_op) {
  if (!psi.is_qubit_register())
    throw std::invalid_argument("df_check expects a qubit register");
  if (collective_op.rows() != psi.dimension())
    throw std::invalid_argument("operator dimension mismatch");
  const int n = psi.subsystem_count();

  Vector rpsi = collective_op * psi.amplitudes();
  cx q_sum = 0.0;
  for (int k = 0; k < n; ++k)
    q_sum += psi.amp(Eigen::Index(1) << (n - 1 - k));

  Vector target = Vector::Zero(psi.dimension());
  target(0) = q_sum;
  return DfCheck{(rpsi - target).norm(), rpsi.norm()};
}

}  // namespace wsim::dynamics
