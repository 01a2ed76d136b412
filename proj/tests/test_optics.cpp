// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "wsim/optics.hpp"
#include "wsim/rng.hpp"

using namespace wsim;
using namespace wsim::optics;

TEST_CASE("photonic W states") {
  FockVector w3 = photonic_w1(3);
  CHECK(w3.terms().size() == 3);
  CHECK(std::abs(w3.amplitude({1, 0, 0}) - 1.0 / std::sqrt(3.0)) < 1e-15);
  CHECK(std::abs(w3.norm() - 1.0) < 1e-14);

  FockVector wv = photonic_wV(3);
  CHECK(wv.mode_count() == 6);
  // V in port 1, H elsewhere: (H1,V1,H2,V2,H3,V3) = (0,1,1,0,1,0).
  CHECK(std::abs(wv.amplitude({0, 1, 1, 0, 1, 0}) - 1.0 / std::sqrt(3.0)) < 1e-15);

  FockVector w2 = photonic_w1(2);
  CHECK(std::abs(w2.amplitude({1, 0}) - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK_THROWS_AS(photonic_w1(1), std::invalid_argument);
}

TEST_CASE("mode transformations") {
  FockVector one(2, 2);
  one.add_term({1, 0}, 1.0);
  FockVector split = apply_mode_unitary(one, beamsplitter(M_PI / 4, 0.0), {0, 1});
  CHECK(std::abs(split.amplitude({1, 0}) - 1.0 / std::sqrt(2.0)) < 1e-14);
  CHECK(std::abs(split.amplitude({0, 1}) - 1.0 / std::sqrt(2.0)) < 1e-14);

  // Hong-Ou-Mandel: the coincidence term cancels.
  FockVector two(2, 2);
  two.add_term({1, 1}, 1.0);
  FockVector hom = apply_mode_unitary(two, beamsplitter(M_PI / 4, 0.0), {0, 1});
  CHECK(std::abs(hom.amplitude({1, 1})) < 1e-14);
  CHECK(std::abs(hom.amplitude({2, 0}) + 1.0 / std::sqrt(2.0)) < 1e-14);
  CHECK(std::abs(hom.amplitude({0, 2}) - 1.0 / std::sqrt(2.0)) < 1e-14);
  CHECK(std::abs(hom.norm() - 1.0) < 1e-10);

  ModeUnitary eye(Matrix::Identity(2, 2));
  FockVector same = apply_mode_unitary(two, eye, {0, 1});
  CHECK(std::abs(same.amplitude({1, 1}) - 1.0) < 1e-15);
}

TEST_CASE("photon number is conserved by every element") {
  Rng rng(41);
  FockVector f(3, 4);
  f.add_term({2, 1, 0}, rng.normal_cx());
  f.add_term({1, 1, 1}, rng.normal_cx());
  f.add_term({0, 0, 2}, rng.normal_cx());
  f.normalize();
  auto before = f.photon_number_distribution();
  FockVector g = apply_mode_unitary(f, multiport_dft(3), {0, 1, 2});
  auto after = g.photon_number_distribution();
  for (const auto& [occ, amp] : g.terms()) {
    int total = 0;
    for (int n : occ) total += n;
    CHECK((total == 3 || total == 2));
  }
  for (size_t k = 0; k < before.size(); ++k) CHECK(std::abs(before[k] - after[k]) < 1e-12);
  CHECK(std::abs(g.norm() - 1.0) < 1e-10);
}

TEST_CASE("multiport DFT creates W_n(1) from a single photon") {
  for (int n = 2; n <= 6; ++n) {
    FockVector in(n, 2);
    Occupation occ(n, 0);
    occ[0] = 1;
    in.add_term(occ, 1.0);
    std::vector<int> all;
    for (int k = 0; k < n; ++k) all.push_back(k);
    FockVector out = apply_mode_unitary(in, multiport_dft(n), all);
    CHECK(out.fidelity(photonic_w1(n)) == doctest::Approx(1.0).epsilon(1e-12));
  }
  ModeUnitary u2 = multiport_dft(2);
  for (int c = 0; c < 2; ++c) CHECK(u2.matrix.col(c).norm() == doctest::Approx(1.0));
}

TEST_CASE("polarization elements") {
  FockVector h(2, 1);
  h.add_term({1, 0}, 1.0);
  FockVector rot = apply_mode_unitary(h, hwp(M_PI / 8.0), {0, 1});
  CHECK(std::abs(rot.amplitude({1, 0}) - 1.0 / std::sqrt(2.0)) < 1e-14);
  CHECK(std::abs(rot.amplitude({0, 1}) - 1.0 / std::sqrt(2.0)) < 1e-14);

  // V photon in port 1 routes to port 2 on a polarizing splitter.
  FockVector v(4, 1);
  v.add_term({0, 1, 0, 0}, 1.0);
  FockVector routed = apply_mode_unitary(v, pbs(), {0, 1, 2, 3});
  CHECK(std::abs(routed.amplitude({0, 0, 0, 1}) - 1.0) < 1e-15);

  // Weak V splitter heralds with amplitude sqrt(1 - t^2).
  const double t = 0.3;
  FockVector vin(2, 1);
  vin.add_term({1, 0}, 1.0);
  FockVector heralded = apply_mode_unitary(vin, bs_v(t), {0, 1});
  CHECK(std::abs(heralded.amplitude({1, 0}) - t) < 1e-14);
  CHECK(std::abs(heralded.amplitude({0, 1}) - std::sqrt(1 - t * t)) < 1e-14);

  Matrix q = qwp(0.7).matrix;
  CHECK(max_abs(q.adjoint() * q - Matrix::Identity(2, 2)) < 1e-12);
}

TEST_CASE("sources") {
  FockVector sps = source_sps(3, 1);
  CHECK(std::abs(sps.amplitude({0, 1, 0}) - 1.0) < 1e-15);

  FockVector tc = source_two_crystal(0.6, 0.48, std::sqrt(1 - 0.36 - 0.2304));
  CHECK(std::abs(tc.amplitude({2, 2}).real() - std::sqrt(1 - 0.36 - 0.2304)) < 1e-12);
  CHECK_THROWS_AS(source_two_crystal(1.0, 1.0, 1.0), std::invalid_argument);

  FockVector psi4 = source_psi4();
  CHECK(std::abs(psi4.norm() - 1.0) < 1e-14);
  CHECK(std::abs(psi4.amplitude({2, 0, 2, 0}) - 1.0 / std::sqrt(3.0)) < 1e-14);
  CHECK(std::abs(psi4.amplitude({1, 1, 1, 1}) + 1.0 / 3.0) < 1e-14);
}

TEST_CASE("post-selection") {
  FockVector vac(2, 2);
  vac.add_term({0, 0}, 1.0);
  PostSelectPattern wants_photon;
  wants_photon.mode_counts.push_back({0, 1});
  PostSelectResult r = postselect(vac, wants_photon);
  CHECK(r.probability == 0.0);
  CHECK(r.conditional.empty());

  PostSelectPattern empty;
  CHECK_THROWS_AS(postselect(vac, empty), std::invalid_argument);
}

TEST_CASE("tritter scheme: W3(V) with probability 1/9") {
  SchemeReport rep = run_scheme(scheme_tritter_w3v());
  CHECK(rep.probability == doctest::Approx(1.0 / 9.0).epsilon(1e-12));
  REQUIRE(rep.fidelity.has_value());
  CHECK(*rep.fidelity == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("four-port scheme: W4(V) with probability 1/16") {
  SchemeReport rep = run_scheme(scheme_multiport_w4v());
  CHECK(rep.probability == doctest::Approx(1.0 / 16.0).epsilon(1e-12));
  CHECK(rep.fidelity.value_or(0.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("scheme files round-trip through JSON") {
  OpticalScheme s = scheme_tritter_w3v();
  OpticalScheme back = parse_scheme_json(scheme_to_json(s));
  SchemeReport a = run_scheme(s);
  SchemeReport b = run_scheme(back);
  CHECK(a.probability == doctest::Approx(b.probability).epsilon(1e-15));
  CHECK(report_to_json(a) == report_to_json(b));
}

TEST_CASE("scheme parse errors name the offending field") {
  CHECK_THROWS_WITH_AS(parse_scheme_json("{\"name\": \"x\"}"),
                       doctest::Contains("modes"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      parse_scheme_json(
          "{\"name\":\"x\",\"modes\":[\"a\"],\"source\":{\"kind\":\"sps\"},"
          "\"postselect\":{}}"),
      doctest::Contains("postselect"), std::invalid_argument);
  CHECK_THROWS_AS(parse_scheme_json("not json at all"), std::invalid_argument);

  OpticalScheme s = scheme_tritter_w3v();
  s.elements[0].type = "warp";
  CHECK_THROWS_WITH_AS(run_scheme(s), doctest::Contains("warp"), std::invalid_argument);
}

TEST_CASE("mode statistics of W_n(1)") {
  for (int n : {2, 3, 5}) {
    ModeStatistics st = mode_statistics(photonic_w1(n));
    for (int k = 0; k < n; ++k) {
      CHECK(std::abs(st.a_mean[k]) < 1e-14);
      CHECK(st.mandel[k] == doctest::Approx(-1.0 / n).epsilon(1e-12));
      for (int m = 0; m < n; ++m) {
        CHECK(std::abs(st.coherence(k, m) - cx(1.0 / n, 0)) < 1e-14);
        double want = (k == m) ? 1.0 / n : 0.0;
        CHECK(std::abs(st.coincidence(k, m) - want) < 1e-14);
      }
    }
  }

  FockVector vac(2, 1);
  vac.add_term({0, 0}, 1.0);
  ModeStatistics st = mode_statistics(vac);
  CHECK(std::abs(st.coherence(0, 0)) == 0.0);
  CHECK(std::abs(st.coincidence(1, 1)) == 0.0);
}

TEST_CASE("canonical serialization round-trips exactly") {
  Rng rng(47);
  FockVector f(4, 5);
  for (int k = 0; k < 8; ++k)
    f.add_term({rng.uniform_int(2), rng.uniform_int(2), rng.uniform_int(2),
                rng.uniform_int(3)},
               rng.normal_cx());
  f.normalize();
  FockVector g = FockVector::from_canonical_text(f.to_canonical_text());
  REQUIRE(g.terms().size() == f.terms().size());
  for (const auto& [occ, amp] : f.terms()) CHECK(g.amplitude(occ) == amp);
  CHECK(g.to_canonical_text() == f.to_canonical_text());
}

TEST_CASE("four-photon trigger search reports the best analyzer setting") {
  TriggerSearchResult res = psi4_trigger_search();
  CHECK(res.best_trigger == 'V');
  CHECK(res.best_fidelity == doctest::Approx(8.0 / 27.0).epsilon(1e-10));
  CHECK(res.best_probability == doctest::Approx(1.0 / 8.0).epsilon(1e-10));
  REQUIRE(res.fidelities.size() == 4);
}
