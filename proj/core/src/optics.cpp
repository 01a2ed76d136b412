// SPDX-License-Identifier: Apache-2.0
#include "wsim/optics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace wsim::optics {

namespace {

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// All length-parts compositions (m_0, ..., m_{parts-1}) with sum = total.
void for_each_composition(int total, int parts,
                          const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> comp(parts, 0);
  std::function<void(int, int)> rec = [&](int slot, int remaining) {
    if (slot == parts - 1) {
      comp[slot] = remaining;
      fn(comp);
      return;
    }
    for (int k = 0; k <= remaining; ++k) {
      comp[slot] = k;
      rec(slot + 1, remaining - k);
    }
  };
  if (parts >= 1) rec(0, total);
}

}  // namespace

ModeUnitary::ModeUnitary(Matrix m, double tol) : matrix(std::move(m)) {
  if (matrix.rows() != matrix.cols())
    throw std::invalid_argument("mode transformation must be square");
  Matrix gram = matrix.adjoint() * matrix;
  if (max_abs(gram - Matrix::Identity(matrix.rows(), matrix.cols())) > tol)
    throw std::invalid_argument("mode transformation is not unitary");
}

FockVector photonic_w1(int n) {
  if (n < 2) throw std::invalid_argument("photonic W needs n >= 2");
  FockVector f(n, std::max(1, n));
  const double amp = 1.0 / std::sqrt(double(n));
  for (int k = 0; k < n; ++k) {
    Occupation occ(n, 0);
    occ[k] = 1;
    f.add_term(occ, amp);
  }
  return f;
}

FockVector photonic_wV(int n) {
  if (n < 2) throw std::invalid_argument("photonic W needs n >= 2");
  FockVector f(2 * n, std::max(n, 2));
  const double amp = 1.0 / std::sqrt(double(n));
  for (int k = 0; k < n; ++k) {
    Occupation occ(2 * n, 0);
    for (int j = 0; j < n; ++j) {
      if (j == k)
        occ[2 * j + 1] = 1;  // V
      else
        occ[2 * j] = 1;  // H
    }
    f.add_term(occ, amp);
  }
  return f;
}

FockVector apply_mode_unitary(const FockVector& state, const ModeUnitary& u,
                              const std::vector<int>& modes) {
  const int m = static_cast<int>(modes.size());
  if (u.matrix.rows() != m)
    throw std::invalid_argument("transformation size does not match target modes");
  for (int idx : modes)
    if (idx < 0 || idx >= state.mode_count())
      throw std::invalid_argument("target mode out of range");

  FockVector out(state.mode_count(), state.n_max());
  for (const auto& [occ, amp] : state.terms()) {
    cx pref = amp;
    for (int j = 0; j < m; ++j) pref /= std::sqrt(factorial(occ[modes[j]]));

    // Partial expansion over the target modes only.
    std::map<Occupation, cx> partial;
    {
      Occupation zero(m, 0);
      partial[zero] = pref;
    }
    for (int j = 0; j < m; ++j) {
      const int nj = occ[modes[j]];
      if (nj == 0) continue;
      std::map<Occupation, cx> next;
      for_each_composition(nj, m, [&](const std::vector<int>& comp) {
        cx coef = factorial(nj);
        for (int k = 0; k < m; ++k) {
          coef /= factorial(comp[k]);
          for (int p = 0; p < comp[k]; ++p) coef *= u.matrix(k, j);
        }
        if (coef == cx(0.0, 0.0)) return;
        for (const auto& [pocc, pamp] : partial) {
          Occupation t = pocc;
          for (int k = 0; k < m; ++k) t[k] += comp[k];
          next[t] += pamp * coef;
        }
      });
      partial.swap(next);
    }

    for (const auto& [pocc, pamp] : partial) {
      Occupation full = occ;
      cx final_amp = pamp;
      for (int k = 0; k < m; ++k) {
        full[modes[k]] = pocc[k];
        final_amp *= std::sqrt(factorial(pocc[k]));
      }
      out.add_term(full, final_amp);
    }
  }
  out.prune();
  return out;
}

ModeUnitary multiport_dft(int n) {
  if (n < 2) throw std::invalid_argument("multiport needs n >= 2");
  Matrix m(n, n);
  const double r = 1.0 / std::sqrt(double(n));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      m(j, k) = std::polar(r, 2.0 * M_PI * double(j) * double(k) / double(n));
  return ModeUnitary(std::move(m));
}

ModeUnitary beamsplitter(double theta, double phi) {
  Matrix m(2, 2);
  m(0, 0) = std::cos(theta);
  m(0, 1) = -std::polar(std::sin(theta), -phi);
  m(1, 0) = std::polar(std::sin(theta), phi);
  m(1, 1) = std::cos(theta);
  return ModeUnitary(std::move(m));
}

ModeUnitary pbs() {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = 1.0;  // aH -> aH
  m(3, 1) = 1.0;  // aV -> bV
  m(2, 2) = 1.0;  // bH -> bH
  m(1, 3) = 1.0;  // bV -> aV
  return ModeUnitary(std::move(m));
}

ModeUnitary hwp(double angle) {
  Matrix m(2, 2);
  m(0, 0) = std::cos(2.0 * angle);
  m(0, 1) = std::sin(2.0 * angle);
  m(1, 0) = std::sin(2.0 * angle);
  m(1, 1) = -std::cos(2.0 * angle);
  return ModeUnitary(std::move(m));
}

ModeUnitary qwp(double angle) {
  Matrix rot(2, 2), ret(2, 2);
  rot << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  ret << 1.0, 0.0, 0.0, cx(0.0, 1.0);
  Matrix m = rot * ret * rot.transpose();
  return ModeUnitary(std::move(m));
}

ModeUnitary bs_v(double t_v) {
  if (t_v < 0.0 || t_v > 1.0)
    throw std::invalid_argument("transmittance must be in [0, 1]");
  const double s = std::sqrt(1.0 - t_v * t_v);
  Matrix m(2, 2);
  m << t_v, -s, s, t_v;
  return ModeUnitary(std::move(m));
}

ModeUnitary phase_shift(double phi) {
  Matrix m(1, 1);
  m(0, 0) = std::polar(1.0, phi);
  return ModeUnitary(std::move(m));
}

FockVector source_sps(int mode_count, int mode, int n_max) {
  FockVector f(mode_count, n_max);
  Occupation occ(mode_count, 0);
  occ.at(mode) = 1;
  f.add_term(occ, 1.0);
  return f;
}

FockVector source_two_crystal(cx a, cx b, cx c, int n_max) {
  if (std::abs(std::norm(a) + std::norm(b) + std::norm(c) - 1.0) > kAssertTol)
    throw std::invalid_argument("two-crystal coefficients are not normalized");
  FockVector f(2, std::max(n_max, 4));
  f.add_term({4, 0}, a);
  f.add_term({0, 4}, b);
  f.add_term({2, 2}, c);
  return f;
}

FockVector source_psi4(int n_max) {
  FockVector f(4, std::max(n_max, 4));
  const double ghz_amp = std::sqrt(2.0 / 3.0) / std::sqrt(2.0);
  f.add_term({2, 0, 2, 0}, ghz_amp);
  f.add_term({0, 2, 0, 2}, ghz_amp);
  // Double EPR component, bosonically normalized: (|2002>+|1111>+|0220>)/sqrt(3).
  const double epr_amp = -std::sqrt(1.0 / 3.0) / std::sqrt(3.0);
  f.add_term({2, 0, 0, 2}, epr_amp);
  f.add_term({1, 1, 1, 1}, epr_amp);
  f.add_term({0, 2, 2, 0}, epr_amp);
  f.normalize();
  return f;
}

bool PostSelectPattern::matches(const Occupation& occ) const {
  for (const auto& mc : mode_counts)
    if (occ[mc.mode] != mc.count) return false;
  for (const auto& pt : port_totals) {
    int total = 0;
    for (int m : pt.modes) total += occ[m];
    if (pt.at_least ? (total < pt.total) : (total != pt.total)) return false;
  }
  return true;
}

PostSelectResult postselect(const FockVector& state, const PostSelectPattern& pattern) {
  if (pattern.empty()) throw std::invalid_argument("empty post-selection pattern");
  PostSelectResult res;
  res.conditional = FockVector(state.mode_count(), state.n_max());
  for (const auto& [occ, amp] : state.terms()) {
    if (!pattern.matches(occ)) continue;
    res.probability += std::norm(amp);
    res.conditional.add_term(occ, amp);
  }
  if (res.probability > 0.0) res.conditional.normalize();
  return res;
}

int OpticalScheme::mode_index(const std::string& mode_name) const {
  auto it = std::find(modes.begin(), modes.end(), mode_name);
  if (it == modes.end())
    throw std::invalid_argument("undeclared mode '" + mode_name + "'");
  return static_cast<int>(it - modes.begin());
}

namespace {

double get_param(const SchemeElement& e, const std::string& key, double fallback,
                 bool required) {
  auto it = e.params.find(key);
  if (it == e.params.end()) {
    if (required)
      throw std::invalid_argument("element '" + e.type + "' missing parameter '" +
                                  key + "'");
    return fallback;
  }
  return it->second;
}

FockVector build_source(const OpticalScheme& scheme) {
  const int n_modes = static_cast<int>(scheme.modes.size());
  const auto& src = scheme.source;
  if (src.kind == "photons" || src.kind == "sps") {
    FockVector f(n_modes, scheme.truncation);
    Occupation occ(n_modes, 0);
    for (const auto& [mode_name, count] : src.occupations)
      occ[scheme.mode_index(mode_name)] = count;
    f.add_term(occ, 1.0);
    return f;
  }
  auto embed = [&](const FockVector& local) {
    FockVector f(n_modes, scheme.truncation);
    std::vector<int> where;
    for (const auto& mode_name : src.modes)
      where.push_back(scheme.mode_index(mode_name));
    if (static_cast<int>(where.size()) != local.mode_count())
      throw std::invalid_argument("source '" + src.kind + "' needs " +
                                  std::to_string(local.mode_count()) + " modes");
    for (const auto& [occ, amp] : local.terms()) {
      Occupation full(n_modes, 0);
      for (size_t k = 0; k < where.size(); ++k) full[where[k]] = occ[k];
      f.add_term(full, amp);
    }
    return f;
  };
  if (src.kind == "two_crystal")
    return embed(source_two_crystal(src.a, src.b, src.c, scheme.truncation));
  if (src.kind == "psi4") return embed(source_psi4(scheme.truncation));
  throw std::invalid_argument("unknown source kind '" + src.kind + "'");
}

}  // namespace

SchemeReport run_scheme(const OpticalScheme& scheme) {
  FockVector state = build_source(scheme);

  for (const auto& e : scheme.elements) {
    std::vector<int> targets;
    for (const auto& mode_name : e.targets)
      targets.push_back(scheme.mode_index(mode_name));

    ModeUnitary u = [&]() -> ModeUnitary {
      if (e.type == "bs")
        return beamsplitter(get_param(e, "theta", 0.0, true),
                            get_param(e, "phi", 0.0, false));
      if (e.type == "pbs") return pbs();
      if (e.type == "hwp") return hwp(get_param(e, "angle", 0.0, true));
      if (e.type == "qwp") return qwp(get_param(e, "angle", 0.0, true));
      if (e.type == "bs_v") return bs_v(get_param(e, "t_v", 0.0, true));
      if (e.type == "dft")
        return multiport_dft(static_cast<int>(targets.size()));
      if (e.type == "phase") return phase_shift(get_param(e, "phi", 0.0, true));
      throw std::invalid_argument("unknown element type '" + e.type + "'");
    }();
    if (u.matrix.rows() != static_cast<Eigen::Index>(targets.size()))
      throw std::invalid_argument("element '" + e.type + "' expects " +
                                  std::to_string(u.matrix.rows()) + " target modes");
    state = apply_mode_unitary(state, u, targets);
  }

  PostSelectPattern pattern;
  for (const auto& [mode_name, count] : scheme.postselect.mode_counts)
    pattern.mode_counts.push_back({scheme.mode_index(mode_name), count});
  for (const auto& port : scheme.postselect.ports) {
    PortTotalConstraint c;
    for (const auto& mode_name : port.modes)
      c.modes.push_back(scheme.mode_index(mode_name));
    c.total = port.total;
    c.at_least = port.at_least;
    pattern.port_totals.push_back(std::move(c));
  }

  PostSelectResult sel = postselect(state, pattern);

  SchemeReport rep;
  rep.name = scheme.name;
  rep.modes = scheme.modes;
  rep.probability = sel.probability;
  rep.conditional = sel.conditional;
  if (!scheme.target_state.empty()) {
    FockVector target(static_cast<int>(scheme.modes.size()), scheme.truncation);
    for (const auto& term : scheme.target_state) {
      Occupation occ(scheme.modes.size(), 0);
      for (const auto& [mode_name, count] : term.occupations)
        occ[scheme.mode_index(mode_name)] = count;
      target.add_term(occ, term.amplitude);
    }
    target.normalize();
    rep.fidelity = sel.probability > 0.0 ? target.fidelity(sel.conditional) : 0.0;
  }
  return rep;
}

ModeStatistics mode_statistics(const FockVector& state) {
  const int m = state.mode_count();
  ModeStatistics st;
  st.a_mean.assign(m, cx(0.0, 0.0));
  st.coherence = Matrix::Zero(m, m);
  st.coincidence = Eigen::MatrixXd::Zero(m, m);
  st.mandel.assign(m, std::numeric_limits<double>::quiet_NaN());

  for (const auto& [occ, amp] : state.terms()) {
    // <a_k>: couples occ to occ - e_k.
    for (int k = 0; k < m; ++k) {
      if (occ[k] < 1) continue;
      Occupation lower = occ;
      lower[k] -= 1;
      st.a_mean[k] += std::conj(state.amplitude(lower)) * std::sqrt(double(occ[k])) * amp;
    }
    // <a_k^dag a_m>: a_m first, then a_k^dag.
    for (int mm = 0; mm < m; ++mm) {
      if (occ[mm] < 1) continue;
      for (int k = 0; k < m; ++k) {
        Occupation target = occ;
        target[mm] -= 1;
        target[k] += 1;
        double factor = std::sqrt(double(occ[mm]) * double(target[k]));
        st.coherence(k, mm) += std::conj(state.amplitude(target)) * factor * amp;
      }
    }
    // Diagonal moments.
    double p = std::norm(amp);
    for (int k = 0; k < m; ++k)
      for (int mm = 0; mm < m; ++mm)
        st.coincidence(k, mm) += p * double(occ[k]) * double(occ[mm]);
  }

  for (int k = 0; k < m; ++k) {
    double mean = st.coherence(k, k).real();
    if (mean > 1e-300) {
      double var = st.coincidence(k, k) - mean * mean;
      st.mandel[k] = (var - mean) / mean;
    }
  }
  return st;
}

}  // namespace wsim::optics
