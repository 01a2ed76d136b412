// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <stdexcept>

#include "wsim/optics.hpp"

namespace wsim::optics {

namespace {

std::string port_name(int k, char pol) {
  return "p" + std::to_string(k + 1) + "." + pol;
}

}  // namespace

OpticalScheme scheme_multiport_w1(int n) {
  if (n < 2) throw std::invalid_argument("multiport scheme needs n >= 2");
  OpticalScheme s;
  s.name = "multiport_w" + std::to_string(n);
  for (int k = 0; k < n; ++k) s.modes.push_back("p" + std::to_string(k + 1));
  s.truncation = 6;
  s.source.kind = "sps";
  s.source.occupations[s.modes[0]] = 1;
  SchemeElement dft;
  dft.type = "dft";
  dft.targets = s.modes;
  s.elements.push_back(dft);
  PatternSpec::Port all;
  all.modes = s.modes;
  all.total = 1;
  s.postselect.ports.push_back(all);
  const double amp = 1.0 / std::sqrt(double(n));
  for (int k = 0; k < n; ++k) {
    TargetTerm t;
    t.occupations[s.modes[k]] = 1;
    t.amplitude = amp;
    s.target_state.push_back(t);
  }
  return s;
}

namespace {

OpticalScheme polarized_multiport(int n) {
  OpticalScheme s;
  for (int k = 0; k < n; ++k) {
    s.modes.push_back(port_name(k, 'H'));
    s.modes.push_back(port_name(k, 'V'));
  }
  s.truncation = 6;
  s.source.kind = "photons";
  // H photons into ports 1..n-1, V photon into port n.
  for (int k = 0; k < n - 1; ++k) s.source.occupations[port_name(k, 'H')] = 1;
  s.source.occupations[port_name(n - 1, 'V')] = 1;
  SchemeElement dft_h, dft_v;
  dft_h.type = "dft";
  dft_v.type = "dft";
  for (int k = 0; k < n; ++k) {
    dft_h.targets.push_back(port_name(k, 'H'));
    dft_v.targets.push_back(port_name(k, 'V'));
  }
  s.elements.push_back(dft_h);
  s.elements.push_back(dft_v);
  for (int k = 0; k < n; ++k) {
    PatternSpec::Port port;
    port.modes = {port_name(k, 'H'), port_name(k, 'V')};
    port.total = 1;
    s.postselect.ports.push_back(port);
  }
  const double amp = 1.0 / std::sqrt(double(n));
  for (int k = 0; k < n; ++k) {
    TargetTerm t;
    for (int j = 0; j < n; ++j) t.occupations[port_name(j, j == k ? 'V' : 'H')] = 1;
    t.amplitude = amp;
    s.target_state.push_back(t);
  }
  return s;
}

}  // namespace

OpticalScheme scheme_tritter_w3v() {
  OpticalScheme s = polarized_multiport(3);
  s.name = "tritter_w3v";
  return s;
}

OpticalScheme scheme_multiport_w4v() {
  OpticalScheme s = polarized_multiport(4);
  s.name = "multiport_w4v";
  // The 4-port transform leaves alternating signs on the V terms; a pi
  // phase on the V modes of ports 2 and 4 makes the conditional state W4(V).
  for (int port : {1, 3}) {
    SchemeElement ph;
    ph.type = "phase";
    ph.params["phi"] = M_PI;
    ph.targets = {port_name(port, 'V')};
    s.elements.push_back(ph);
  }
  return s;
}

OpticalScheme scheme_psi4_w3v(char trigger) {
  OpticalScheme s;
  s.name = std::string("psi4_w3v_") + trigger;
  const std::vector<std::string> ports = {"t", "a", "b", "c"};
  for (const auto& p : ports) {
    s.modes.push_back(p + ".H");
    s.modes.push_back(p + ".V");
  }
  s.truncation = 6;
  s.source.kind = "psi4";
  s.source.modes = {"t.H", "t.V", "b.H", "b.V"};  // emission ports t and b

  // 50/50 splits t -> (t, a) and b -> (b, c), per polarization.
  for (const auto& [from, to] : {std::pair{"t", "a"}, std::pair{"b", "c"}}) {
    for (char pol : {'H', 'V'}) {
      SchemeElement bs;
      bs.type = "bs";
      bs.params["theta"] = M_PI / 4.0;
      bs.params["phi"] = 0.0;
      bs.targets = {std::string(from) + "." + pol, std::string(to) + "." + pol};
      s.elements.push_back(bs);
    }
  }

  // Diagonal analysis rotates the trigger port before the photon count.
  if (trigger == '+' || trigger == '-') {
    SchemeElement rot;
    rot.type = "hwp";
    rot.params["angle"] = M_PI / 8.0;  // |+> -> |H>, |-> -> -|V>
    rot.targets = {"t.H", "t.V"};
    s.elements.push_back(rot);
  } else if (trigger != 'H' && trigger != 'V') {
    throw std::invalid_argument("trigger must be one of H, V, +, -");
  }

  const bool detect_h = (trigger == 'H' || trigger == '+');
  s.postselect.mode_counts.emplace_back("t.H", detect_h ? 1 : 0);
  s.postselect.mode_counts.emplace_back("t.V", detect_h ? 0 : 1);
  for (const auto& p : {"a", "b", "c"}) {
    PatternSpec::Port port;
    port.modes = {std::string(p) + ".H", std::string(p) + ".V"};
    port.total = 1;
    s.postselect.ports.push_back(port);
  }

  // Target: trigger photon in its analyzed mode, W3(V) in the arms.
  const double amp = 1.0 / std::sqrt(3.0);
  const std::vector<std::string> arms = {"a", "b", "c"};
  for (size_t k = 0; k < arms.size(); ++k) {
    TargetTerm t;
    t.occupations[detect_h ? "t.H" : "t.V"] = 1;
    for (size_t j = 0; j < arms.size(); ++j)
      t.occupations[arms[j] + (j == k ? ".V" : ".H")] = 1;
    t.amplitude = amp;
    s.target_state.push_back(t);
  }
  return s;
}

TriggerSearchResult psi4_trigger_search() {
  TriggerSearchResult res;
  for (char trigger : {'H', 'V', '+', '-'}) {
    SchemeReport rep = run_scheme(scheme_psi4_w3v(trigger));
    double f = rep.fidelity.value_or(0.0);
    res.fidelities.emplace_back(trigger, f);
    if (f > res.best_fidelity) {
      res.best_fidelity = f;
      res.best_trigger = trigger;
      res.best_probability = rep.probability;
    }
  }
  return res;
}

}  // namespace wsim::optics
