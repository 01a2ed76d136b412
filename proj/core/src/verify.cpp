// SPDX-License-Identifier: Apache-2.0
#include "wsim/verify.hpp"

#include <cmath>
#include <stdexcept>

#include "wsim/dynamics.hpp"
#include "wsim/entanglement.hpp"
#include "wsim/optics.hpp"
#include "wsim/protocols.hpp"
#include "wsim/rng.hpp"
#include "wsim/states.hpp"

namespace wsim::verify {

namespace {

// Pass when |observed - expected| <= tol.
void check_close(SuiteReport& rep, const std::string& id, const std::string& claim,
                 double expected, double observed, double tol,
                 const std::string& note = "") {
  CheckResult c{id, claim, expected, observed, tol,
                std::abs(observed - expected) <= tol, note};
  rep.checks.push_back(std::move(c));
}

// Pass when observed <= bound (one-sided residual checks).
void check_below(SuiteReport& rep, const std::string& id, const std::string& claim,
                 double bound, double observed, const std::string& note = "") {
  CheckResult c{id, claim, bound, observed, bound, observed <= bound, note};
  rep.checks.push_back(std::move(c));
}

StateVector singlet() {
  Vector v(4);
  v << 0.0, 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0), 0.0;
  return StateVector(v, {2, 2});
}

}  // namespace

SuiteReport states_suite(const VerifyParams& params) {
  using namespace wsim::states;
  SuiteReport rep;
  rep.suite = "states";
  rep.environment = params;

  {
    StateVector w3 = w_state(3);
    double dev = 0.0;
    for (Eigen::Index i = 0; i < 8; ++i) {
      double want = (i == 1 || i == 2 || i == 4) ? 1.0 / std::sqrt(3.0) : 0.0;
      dev = std::max(dev, std::abs(w3.amp(i) - want));
    }
    check_below(rep, "s01-w3", "W3 = (|100>+|010>+|001>)/sqrt(3)", params.tol_assert,
                dev);
  }
  {
    StateVector g = ghz_state(3);
    double dev = std::max(std::abs(g.amp(0) - 1.0 / std::sqrt(2.0)),
                          std::abs(g.amp(7) - 1.0 / std::sqrt(2.0)));
    check_below(rep, "s02-ghz3", "GHZ3 = (|000>+|111>)/sqrt(2)", params.tol_assert, dev);
  }
  {
    // S10^m |0..0> = m! sqrt(C(n,m)) |m;n>, n <= 6.
    double dev = 0.0;
    for (int n = 1; n <= 6; ++n) {
      Matrix s10 = collective_S(1, 0, n).matrix;
      Vector v = StateVector::ground(n).amplitudes();
      for (int m = 1; m <= n; ++m) {
        v = (s10 * v).eval();
        Vector want = std::tgamma(m + 1.0) * std::sqrt(binomial(n, m)) *
                      dicke_symmetric(m, n).amplitudes();
        dev = std::max(dev, (v - want).cwiseAbs().maxCoeff());
      }
    }
    check_below(rep, "s03-collective-ladder",
                "S10^m|0..0> = m! sqrt(C(n,m)) |m;n> for n <= 6", params.tol_structural,
                dev);
  }
  {
    Matrix s01 = collective_S(0, 1, 2).matrix;
    check_below(rep, "s04-singlet-dark", "S01 annihilates the singlet", 0.0,
                (s01 * singlet().amplitudes()).norm(), "exact zero expected");
  }
  {
    double dev = 0.0;
    for (int n = 1; n <= 5; ++n) {
      AngularOperators ops = angular_ops(n);
      dev = std::max(dev, max_abs(ops.j1 * ops.j2 - ops.j2 * ops.j1 -
                                  cx(0.0, 1.0) * ops.j3));
      dev = std::max(dev, max_abs(ops.j2 * ops.j3 - ops.j3 * ops.j2 -
                                  cx(0.0, 1.0) * ops.j1));
      dev = std::max(dev, max_abs(ops.j3 * ops.j1 - ops.j1 * ops.j3 -
                                  cx(0.0, 1.0) * ops.j2));
    }
    check_below(rep, "s05-commutators", "[Jj, Jk] = i eps_jkl Jl for n <= 5",
                params.tol_assert, dev);
  }
  {
    double dev = 0.0;
    for (int n = 2; n <= 6; ++n) {
      auto d = dicke_numbers(w_state(n), params.tol_assert);
      if (!d) {
        dev = 1.0;
        break;
      }
      dev = std::max({dev, std::abs(d->j - n / 2.0), std::abs(d->l - (n / 2.0 - 1.0))});
    }
    check_below(rep, "s06-dicke-w", "W_n has (j, l) = (n/2, n/2 - 1)", params.tol_assert,
                dev);
  }
  {
    double dev = 0.0;
    Rng rng = Rng::substream(params.seed, 101);
    for (int n = 2; n <= 6; ++n) {
      auto q = random_zsa_profile(n, rng);
      auto d = dicke_numbers(eta_state(AmplitudeProfile(q)), params.tol_assert);
      if (!d) {
        dev = 1.0;
        break;
      }
      dev = std::max(
          {dev, std::abs(d->j - (n / 2.0 - 1.0)), std::abs(d->l - (n / 2.0 - 1.0))});
    }
    check_below(rep, "s07-dicke-zsa",
                "random zero-sum states have (j, l) = (n/2 - 1, n/2 - 1)",
                params.tol_assert, dev);
  }
  {
    auto [phi0, psi1] = df_states();
    Matrix s01 = collective_S(0, 1, 4).matrix;
    double dev = std::abs(phi0.amplitudes().dot(psi1.amplitudes()));
    dev = std::max(dev, (s01 * phi0.amplitudes()).norm());
    dev = std::max(dev, (s01 * psi1.amplitudes()).norm());
    check_below(rep, "s08-df-pair",
                "<Phi0|Psi1> = 0 and S01 annihilates both plateau states",
                params.tol_assert, dev);
  }
  {
    StateVector g = ghz_prime();
    check_close(rep, "s09-ghz-prime", "|GHZ'> is normalized", 1.0, g.norm(),
                params.tol_assert);
  }

  rep.sort_checks();
  return rep;
}

SuiteReport entanglement_suite(const VerifyParams& params) {
  using namespace wsim::entanglement;
  using states::w_state;
  SuiteReport rep;
  rep.suite = "entanglement";
  rep.environment = params;

  {
    DensityMatrix traced = partial_trace(DensityMatrix::from_state(w_state(3)), {0, 1});
    double dev = max_abs(traced.entries() - reduced_w(3, 2).entries());
    check_below(rep, "e01-reduced-w",
                "Tr_3 |W3><W3| = (1/3)|00><00| + (2/3)|Psi+><Psi+|", params.tol_assert,
                dev);
  }
  {
    double dev = 0.0;
    for (int n = 3; n <= 50; ++n) {
      PptResult r = ppt_spectrum(reduced_w(n, 2), BipartitionSpec({0}, 2));
      RealVector closed = ppt_closed_form_w(n);
      dev = std::max(dev, (r.spectrum - closed).cwiseAbs().maxCoeff());
    }
    check_below(rep, "e02-ppt-closed-form",
                "reduced-W PPT spectrum matches the closed form for n = 3..50",
                params.tol_structural, dev);
  }
  {
    DensityMatrix ghz12 =
        partial_trace(DensityMatrix::from_state(states::ghz_state(3)), {0, 1});
    PptResult r = ppt_spectrum(ghz12, BipartitionSpec({0}, 2));
    double neg = negativity(ghz12, BipartitionSpec({0}, 2));
    check_close(rep, "e03-ghz-separable",
                "two-qubit GHZ reduction is PPT-separable with zero negativity", 0.0,
                neg + (r.verdict == PptVerdict::Separable ? 0.0 : 1.0),
                params.tol_assert);
  }
  {
    double neg = negativity(reduced_w(3, 2), BipartitionSpec({0}, 2));
    check_close(rep, "e04-negativity-w12",
                "negativity of the two-qubit W reduction is (sqrt(5)-1)/6",
                (std::sqrt(5.0) - 1.0) / 6.0, neg, params.tol_structural);
  }
  {
    double dev = 0.0;
    for (int n = 2; n <= 8; ++n) {
      StateVector w = w_state(n);
      for (int s = 1; s < n; ++s) {
        std::vector<int> side;
        for (int k = 0; k < s; ++k) side.push_back(k);
        double h = -double(s) / n * std::log2(double(s) / n) -
                   (1.0 - double(s) / n) * std::log2(1.0 - double(s) / n);
        dev = std::max(dev, std::abs(ent_entropy(w, BipartitionSpec(side, n)) - h));
      }
    }
    check_below(rep, "e05-w-entropy",
                "entanglement entropy of W_n across s|(n-s) equals H(s/n) for n <= 8",
                params.tol_structural, dev);
  }
  {
    int g = persistency(states::ghz_state(3));
    int w3 = persistency(w_state(3));
    int w4 = persistency(w_state(4));
    double dev = std::abs(g - 1) + std::abs(w3 - 2) + std::abs(w4 - 3);
    check_close(rep, "e06-persistency",
                "persistency: GHZ3 -> 1, W3 -> 2, W4 -> 3 (exact integers)", 0.0, dev,
                0.0);
  }
  {
    WitnessOperator w1 = witness_w1();
    WitnessOperator w2 = witness_w2();
    double dev = std::abs(witness_value(w1, w_state(3)) + 1.0 / 3.0);
    dev = std::max(dev, std::abs(witness_value(w1, states::ghz_state(3)) - 2.0 / 3.0));
    dev = std::max(dev, std::abs(witness_value(w2, states::ghz_prime()) + 0.5));
    check_below(rep, "e07-witness-values",
                "Tr[W1 |W><W|] = -1/3, Tr[W1 |GHZ><GHZ|] = 2/3, Tr[W2 |GHZ'><GHZ'|] = -1/2",
                params.tol_assert, dev);
  }
  {
    WitnessOperator w1 = witness_w1();
    Rng rng = Rng::substream(params.seed, 202);
    double min_value = 1.0;
    for (int k = 0; k < 1000; ++k)
      min_value = std::min(min_value, witness_value(w1, random_product_state(3, rng)));
    CheckResult c{"e08-witness-products",
                  "W1 expectation is non-negative on 1000 random product states",
                  0.0, min_value, params.tol_structural,
                  min_value >= -params.tol_structural, ""};
    rep.checks.push_back(c);
  }
  {
    PauliExpansionReport pe = witness_w1_pauli_expansion();
    double iii = 0.0;
    for (const auto& t : pe.terms)
      if (t.word == "III") {
        iii = t.coefficient;
        break;  // leading displayed term
      }
    check_below(rep, "e09-witness-pauli",
                "measurement decomposition of W1 reproduces (2/3)I - |W><W|",
                params.tol_assert, pe.max_deviation,
                "leading III coefficient " + format_significant(iii, 6));
  }
  {
    // A 3-qubit embedding of the 2-qubit W reduction: rho(12) (x) |0><0|.
    DensityMatrix rho12 = reduced_w(3, 2);
    DensityMatrix embedded =
        tensor(rho12, DensityMatrix::from_state(StateVector::basis({0}, {2})));
    double value = witness_value(witness_w1(), embedded);
    // Independent route: 2/3 - <W| rho (x) |0><0| |W>.
    StateVector w = w_state(3);
    cx overlap =
        w.amplitudes().dot(embedded.entries() * w.amplitudes());
    double derived = 2.0 / 3.0 - overlap.real();
    check_close(rep, "e10-witness-embedding",
                "Tr[W1 (rho_W(12) (x) |0><0|)] = 2/9 by direct computation", derived,
                value, params.tol_assert,
                "a published figure of 1/9 is not reproduced by any natural embedding");
  }
  {
    RealVector limit = ppt_closed_form_w(1000000);
    RealVector want(4);
    want << 0.0, 0.0, 0.0, 1.0;
    check_below(rep, "e11-ppt-limit",
                "reduced-W partial-transpose spectrum approaches {0,0,0,1} as n grows",
                1e-5, (limit - want).cwiseAbs().maxCoeff(),
                "minimum eigenvalue stays negative for finite n: " +
                    format_significant(limit.minCoeff(), 3));
  }

  rep.sort_checks();
  return rep;
}

SuiteReport optics_suite(const VerifyParams& params) {
  using namespace wsim::optics;
  SuiteReport rep;
  rep.suite = "optics";
  rep.environment = params;

  {
    double dev = 0.0;
    for (int n = 2; n <= 6; ++n) {
      SchemeReport r = run_scheme(scheme_multiport_w1(n));
      dev = std::max(dev, std::abs(r.probability - 1.0));
      dev = std::max(dev, std::abs(r.fidelity.value_or(0.0) - 1.0));
    }
    check_below(rep, "o01-multiport",
                "single photon into an n-port multiport yields W_n(1) with probability 1",
                params.tol_assert, dev);
  }
  {
    SchemeReport r = run_scheme(scheme_tritter_w3v());
    check_close(rep, "o02-tritter-prob",
                "tritter on H,H,V post-selected one photon per port: probability 1/9",
                1.0 / 9.0, r.probability, params.tol_assert);
    check_close(rep, "o03-tritter-fidelity", "tritter conditional state is W3(V)", 1.0,
                r.fidelity.value_or(0.0), params.tol_assert);
  }
  {
    SchemeReport r = run_scheme(scheme_multiport_w4v());
    check_close(rep, "o04-w4v-prob",
                "4-port scheme probability equals the claimed 1/16", 1.0 / 16.0,
                r.probability, params.tol_assert);
    check_close(rep, "o05-w4v-fidelity",
                "4-port conditional state is W4(V) after V-phase correction", 1.0,
                r.fidelity.value_or(0.0), params.tol_assert);
  }
  {
    double dev = 0.0;
    for (int n = 2; n <= 6; ++n) {
      ModeStatistics st = mode_statistics(photonic_w1(n));
      for (int k = 0; k < n; ++k) {
        dev = std::max(dev, std::abs(st.mandel[k] + 1.0 / n));
        dev = std::max(dev, std::abs(st.a_mean[k]));
        for (int m = 0; m < n; ++m)
          dev = std::max(dev, std::abs(st.coherence(k, m) - cx(1.0 / n, 0.0)));
      }
    }
    check_below(rep, "o06-mandel",
                "W_n(1): <a_k^dag a_m> = 1/n and Mandel parameter -1/n", params.tol_assert,
                dev);
  }
  {
    ModeStatistics st = mode_statistics(photonic_w1(3));
    double off = st.coincidence(0, 1);
    double product = st.coherence(0, 0).real() * st.coherence(1, 1).real();
    bool stated_direction = (1.0 / 3.0) < product;   // the published comparison
    bool computed_direction = off < product;         // the computed moments
    check_close(rep, "o07-anticorrelation",
                "W_3(1) coincidence <n_k n_m> (k != m) vanishes; photons anti-correlated",
                0.0, off, params.tol_assert,
                std::string("computed <n_k n_m> = 0 < <n_k><n_m> = 1/9 (anti-correlation ") +
                    (computed_direction ? "holds" : "fails") +
                    "); the stated per-mode figure 1/n would reverse it (1/3 < 1/9 is " +
                    (stated_direction ? "true" : "false") + ")");
  }
  {
    // Hong-Ou-Mandel: both photons bunch, no coincidence term.
    FockVector in(2, 2);
    in.add_term({1, 1}, 1.0);
    FockVector out = apply_mode_unitary(in, beamsplitter(M_PI / 4.0, 0.0), {0, 1});
    check_below(rep, "o08-hom", "50/50 beamsplitter on |11> has no |11> term",
                params.tol_assert, std::abs(out.amplitude({1, 1})));
  }
  {
    // Complement patterns partition the outcome space on the tritter.
    OpticalScheme s = scheme_tritter_w3v();
    SchemeReport one_per_port = run_scheme(s);
    OpticalScheme bunched = s;
    bunched.postselect = PatternSpec{};
    PatternSpec::Port any;
    for (const auto& m : s.modes) any.modes.push_back(m);
    any.total = 3;
    bunched.postselect.ports.push_back(any);
    SchemeReport all_outcomes = run_scheme(bunched);
    check_close(rep, "o09-partition",
                "post-selection probabilities sum to 1 over a partition of outcomes",
                1.0, all_outcomes.probability, params.tol_assert,
                "one-per-port slice " + format_significant(one_per_port.probability, 12));
  }
  {
    TriggerSearchResult t = psi4_trigger_search();
    check_close(rep, "o10-psi4-trigger",
                "four-photon source: best trigger analysis for W3(V) in the arms",
                8.0 / 27.0, t.best_fidelity, params.tol_structural,
                std::string("best trigger '") + t.best_trigger + "', probability " +
                    format_significant(t.best_probability, 12));
  }
  {
    FockVector f(3, 4);
    Rng rng = Rng::substream(params.seed, 303);
    for (int k = 0; k < 6; ++k)
      f.add_term({rng.uniform_int(3), rng.uniform_int(2), rng.uniform_int(2)},
                 rng.normal_cx());
    f.normalize();
    FockVector back = FockVector::from_canonical_text(f.to_canonical_text());
    double dev = 0.0;
    for (const auto& [occ, amp] : f.terms())
      dev = std::max(dev, std::abs(amp - back.amplitude(occ)));
    check_below(rep, "o11-roundtrip", "canonical Fock serialization round-trips exactly",
                0.0, dev);
  }

  rep.sort_checks();
  return rep;
}

SuiteReport dynamics_suite(const VerifyParams& params) {
  using namespace wsim::dynamics;
  SuiteReport rep;
  rep.suite = "dynamics";
  rep.environment = params;

  {
    Rng rng = Rng::substream(params.seed, 404);
    double dev = 0.0, integral_drift = 0.0;
    for (int n = 1; n <= 6; ++n)
      for (int m = 0; m <= n; ++m)
        for (int rep_k = 0; rep_k < 10; ++rep_k) {
          double t = 4.0 * rng.uniform();
          double phase = 2.0 * M_PI * rng.uniform();
          cx alpha = std::polar(std::sqrt(rng.uniform()), phase);
          cx beta = std::sqrt(1.0 - std::norm(alpha));
          AtomFieldState closed = raman_closed_form(alpha, beta, m, n, 1.0, t);
          AtomFieldState numeric = raman_numeric(alpha, beta, m, n, 1.0, t);
          dev = std::max(dev, (closed.sv.amplitudes() - numeric.sv.amplitudes())
                                  .cwiseAbs()
                                  .maxCoeff());
          AtomFieldState start = raman_numeric(alpha, beta, m, n, 1.0, 0.0);
          integral_drift = std::max(
              integral_drift,
              std::abs(raman_excitation(numeric) - raman_excitation(start)));
        }
    check_below(rep, "d01-raman-oracle",
                "closed-form two-mode scattering matches exact exponentiation (m <= n <= 6)",
                1e-9, dev);
    check_below(rep, "d02-raman-integral",
                "excitation count <b^dag b + m> is conserved along trajectories",
                params.tol_structural, integral_drift);
  }
  {
    double dev = 0.0;
    for (int n = 2; n <= 6; ++n) {
      double t = (M_PI / 2.0) / std::sqrt(double(n));  // theta_0 = pi/2
      AtomFieldState out = raman_closed_form(1.0, 0.0, 0, n, 1.0, t);
      StateVector atomic_w = states::w_state(n);
      // Expect |10> (x) |1;n>: compare the atomic column against W amplitudes.
      cx got = out.amp(1, 0, 1);
      dev = std::max(dev, std::abs(std::abs(got) - 1.0));
      (void)atomic_w;
    }
    check_below(rep, "d03-raman-w",
                "theta_0 = pi/2 converts |01>|0;n> into |10>|1;n> (atomic W_n)",
                params.tol_assert, dev);
  }
  {
    IonSequenceResult seq = ion_w_sequence();
    check_close(rep, "d04-ion-intermediate",
                "first sideband pulse yields (|SSS>|0> + i sqrt(2)|SDS>|1>)/sqrt(3)", 1.0,
                seq.intermediate_fidelity, 1e-9, "pulse order: " + seq.pulse_order);
    check_close(rep, "d05-ion-final",
                "five-pulse sequence reaches (|DDS>+|DSD>+|SDD>)/sqrt(3)", 1.0,
                seq.w_fidelity, 1e-9,
                "phonon leakage " + format_significant(seq.phonon_leakage, 3) +
                    ", traced-phonon purity " + format_significant(seq.phonon_purity, 12));
  }
  {
    DensityMatrix rho0 = DensityMatrix::from_state(singlet());
    LindbladRun run = lindblad_collective_decay_run(rho0, 1.0, 10.0, 2000);
    double dist = 0.5 * hermitian_eig(run.final_state.entries() - rho0.entries())
                            .eigenvalues.cwiseAbs()
                            .sum();
    check_below(rep, "d06-lindblad-singlet",
                "collective decay leaves the singlet fixed (trace distance at t = 10/gamma)",
                1e-8, dist);
  }
  {
    StateVector ee = StateVector::basis({1, 1}, {2, 2});
    LindbladRun run =
        lindblad_collective_decay_run(DensityMatrix::from_state(ee), 1.0, 2.0, 1000);
    double worst_rise = 0.0;
    for (size_t k = 1; k < run.excitation.size(); ++k)
      worst_rise = std::max(worst_rise, run.excitation[k] - run.excitation[k - 1]);
    check_below(rep, "d07-lindblad-decay",
                "<S11> decreases monotonically for a doubly excited pair", 1e-10,
                worst_rise,
                "final excitation " +
                    format_significant(run.excitation.back(), 6));
  }
  {
    using states::collective_S;
    auto [phi0, psi1] = states::df_states();
    Matrix s01_2 = collective_S(0, 1, 2).matrix;
    Matrix s01_3 = collective_S(0, 1, 3).matrix;
    Matrix s01_4 = collective_S(0, 1, 4).matrix;
    Rng rng = Rng::substream(params.seed, 505);
    StateVector zsa = states::eta_state(
        states::AmplitudeProfile(random_zsa_profile(3, rng)));
    double dev = df_check(singlet(), s01_2).noise_coupling;
    dev = std::max(dev, df_check(phi0, s01_4).noise_coupling);
    dev = std::max(dev, df_check(psi1, s01_4).noise_coupling);
    dev = std::max(dev, df_check(zsa, s01_3).noise_coupling);
    double w_coupling = df_check(states::w_state(3), s01_3).noise_coupling;
    check_below(rep, "d08-df-coupling",
                "collective lowering annihilates singlet, DF pair and zero-sum states",
                params.tol_assert, dev,
                "W3 couples with strength sqrt(3): " + format_significant(w_coupling, 12));
  }

  rep.sort_checks();
  return rep;
}

SuiteReport protocols_suite(const VerifyParams& params) {
  using namespace wsim::protocols;
  SuiteReport rep;
  rep.suite = "protocols";
  rep.environment = params;

  const int rounds = 100000;
  {
    ProtocolTranscript t = qkd_simulate(rounds, params.seed);
    double sigma = std::sqrt(t.exact_acceptance * (1.0 - t.exact_acceptance) / rounds);
    check_close(rep, "p01-qkd-rate",
                "key distribution acceptance approaches 1/4 (12 qubits per key bit)",
                t.exact_acceptance, t.success_rate, 3.0 * sigma,
                "qubits per key bit " + format_significant(t.qubits_per_key_bit, 6));
    bool outcomes_agree = true;
    for (const auto& r : t.per_round)
      if (r.accepted) {
        std::vector<int> xs;
        for (int k = 0; k < 3; ++k)
          if (r.basis[k] == 'x') xs.push_back(r.outcome[k]);
        if (xs.size() != 2 || xs[0] != xs[1]) outcomes_agree = false;
      }
    check_close(rep, "p02-qkd-agreement",
                "accepted rounds leave the two x-measuring parties with equal outcomes",
                1.0, outcomes_agree ? 1.0 : 0.0, 0.0);
  }
  {
    ProtocolTranscript t = qss_simulate(rounds, params.seed + 1);
    double sigma = std::sqrt(t.exact_acceptance * (1.0 - t.exact_acceptance) / rounds);
    check_close(rep, "p03-qss-rate",
                "secret sharing acceptance approaches 1/8 (24 qubits per key bit)",
                t.exact_acceptance, t.success_rate, 3.0 * sigma,
                "qubits per key bit " + format_significant(t.qubits_per_key_bit, 6));
    check_close(rep, "p04-qss-reconstruction",
                "joint reconstruction of the dealer bit never errs", 0.0,
                double(t.reconstruction_errors), 0.0,
                "single-party mutual information " +
                    format_significant(t.single_party_mutual_info_exact.value_or(0.0), 6) +
                    " bits");
  }
  {
    Rng rng = Rng::substream(params.seed, 606);
    double dev = 0.0;
    for (int k = 0; k < 100; ++k) {
      double c = 0.1 + 0.4 * rng.uniform();
      double rest = 1.0 - c * c;
      double split = rng.uniform();
      double a = std::sqrt(rest * (0.5 + 0.49 * (split - 0.5)));
      double b = std::sqrt(rest - a * a);
      if (c > std::min(a, b)) {
        --k;
        continue;
      }
      DistillResult r = distill_w(a, b, c);
      dev = std::max(dev, std::abs(r.success_probability - 3.0 * c * c));
      dev = std::max(dev, std::abs(fidelity(r.output, states::w_state(3)) - 1.0));
    }
    check_below(rep, "p05-distill",
                "distillation succeeds with probability 3c^2 and yields W3 exactly",
                params.tol_assert, dev);
  }
  {
    Rng rng = Rng::substream(params.seed, 707);
    double residual = 0.0, norm_dev = 0.0;
    for (int k = 0; k < 100; ++k) {
      double phase = 2.0 * M_PI * rng.uniform();
      cx alpha = std::polar(std::sqrt(rng.uniform()), phase);
      cx beta = std::sqrt(1.0 - std::norm(alpha));
      Vector v = Vector::Zero(4);
      v(1) = alpha;
      v(2) = beta;
      StateVector phi(v, {2, 2});
      DecompositionResult d = bell_like_decomposition(phi);
      residual = std::max(residual, d.reconstruction_residual);
      norm_dev = std::max(norm_dev, d.branch_norm_deviation);
    }
    check_below(rep, "p06-bell-like",
                "eight-branch expansion over Bell (x) sigma_x products reconstructs "
                "phi (x) GHZ",
                params.tol_assert, residual,
                "branch norms all 1/sqrt(8) within " + format_significant(norm_dev, 3));
  }
  {
    Matrix v = protocols::w_channel_v();
    double unitarity = max_abs(v.adjoint() * v - Matrix::Identity(4, 4));
    StateVector chan = protocols::w_channel();
    Vector want = Vector::Zero(8);
    want(4) = 1.0 / std::sqrt(2.0);
    want(2) = 0.5;
    want(1) = 0.5;
    double dev = std::max(unitarity,
                          (chan.amplitudes() - want).cwiseAbs().maxCoeff());
    check_below(rep, "p07-w-channel",
                "V is unitary and (1 (x) V)|GHZ> = (1/sqrt(2))|100> + (1/2)|010> + (1/2)|001>",
                params.tol_assert, dev);
  }
  {
    Rng rng = Rng::substream(params.seed, 808);
    double min_f = 1.0;
    for (int k = 0; k < 100; ++k) {
      double phase = 2.0 * M_PI * rng.uniform();
      cx alpha = std::polar(std::sqrt(rng.uniform()), phase);
      cx beta = std::sqrt(1.0 - std::norm(alpha));
      Vector v = Vector::Zero(4);
      v(1) = alpha;
      v(2) = beta;
      StateVector phi(v, {2, 2});
      min_f = std::min(min_f, teleport(phi, "ghz").min_fidelity);
      min_f = std::min(min_f, teleport(phi, "w").min_fidelity);
    }
    check_close(rep, "p08-teleport",
                "branch fidelity is 1 through both the GHZ and W-class channels", 1.0,
                min_f, params.tol_assert);
  }
  {
    ProtocolTranscript a = qkd_simulate(200, params.seed);
    ProtocolTranscript b = qkd_simulate(200, params.seed);
    check_close(rep, "p09-determinism",
                "transcripts are reproducible from the seed", 1.0,
                a.to_json() == b.to_json() ? 1.0 : 0.0, 0.0);
  }

  rep.sort_checks();
  return rep;
}

SuiteReport all_suites(const VerifyParams& params) {
  SuiteReport all;
  all.suite = "all";
  all.environment = params;
  for (const auto* name : {"states", "entanglement", "optics", "dynamics", "protocols"}) {
    SuiteReport sub = run_suite(name, params);
    for (auto& c : sub.checks) all.checks.push_back(std::move(c));
  }
  all.sort_checks();
  return all;
}

SuiteReport run_suite(const std::string& name, const VerifyParams& params) {
  if (name == "states") return states_suite(params);
  if (name == "entanglement") return entanglement_suite(params);
  if (name == "optics") return optics_suite(params);
  if (name == "dynamics") return dynamics_suite(params);
  if (name == "protocols") return protocols_suite(params);
  if (name == "all") return all_suites(params);
  throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace wsim::verify
