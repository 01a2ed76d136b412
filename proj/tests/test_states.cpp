// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "wsim/rng.hpp"
#include "wsim/states.hpp"

using namespace wsim;
using namespace wsim::states;

TEST_CASE("w_state amplitudes") {
  StateVector w3 = w_state(3);
  for (Eigen::Index i = 0; i < 8; ++i) {
    double want = (i == 1 || i == 2 || i == 4) ? 1.0 / std::sqrt(3.0) : 0.0;
    CHECK(std::abs(w3.amp(i) - want) < 1e-15);
  }
  StateVector w2 = w_state(2);
  CHECK(std::abs(w2.amp(1) - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(w2.amp(2) - 1.0 / std::sqrt(2.0)) < 1e-15);

  StateVector w4 = w_state(4);
  int nonzero = 0;
  for (Eigen::Index i = 0; i < 16; ++i)
    if (std::abs(w4.amp(i)) > 0) {
      ++nonzero;
      CHECK(std::abs(w4.amp(i) - 0.5) < 1e-15);
    }
  CHECK(nonzero == 4);
  CHECK_THROWS_AS(w_state(1), std::invalid_argument);
}

TEST_CASE("ghz_state amplitudes and sector orthogonality") {
  StateVector g = ghz_state(3);
  CHECK(std::abs(g.amp(0) - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(g.amp(7) - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(fidelity(g, w_state(3)) == doctest::Approx(0.0));
  CHECK_THROWS_AS(ghz_state(1), std::invalid_argument);
}

TEST_CASE("eta states and the zero-sum condition") {
  double r3 = 1.0 / std::sqrt(3.0);
  AmplitudeProfile w_profile({r3, r3, r3});
  CHECK((eta_state(w_profile).amplitudes() - w_state(3).amplitudes())
            .cwiseAbs()
            .maxCoeff() < 1e-15);
  CHECK_FALSE(is_zsa(w_profile));

  double r2 = 1.0 / std::sqrt(2.0);
  CHECK(is_zsa(AmplitudeProfile({r2, -r2, 0.0})));

  CHECK_THROWS_AS(AmplitudeProfile({1.0, 1.0}), std::invalid_argument);

  Rng rng(9);
  for (int n = 2; n <= 8; ++n)
    CHECK(is_zsa(AmplitudeProfile(random_zsa_profile(n, rng))));
}

TEST_CASE("symmetric Dicke states") {
  CHECK((dicke_symmetric(1, 3).amplitudes() - w_state(3).amplitudes())
            .cwiseAbs()
            .maxCoeff() < 1e-15);
  StateVector vac = dicke_symmetric(0, 4);
  CHECK(std::abs(vac.amp(0) - 1.0) < 1e-15);

  StateVector d24 = dicke_symmetric(2, 4);
  int nonzero = 0;
  for (Eigen::Index i = 0; i < 16; ++i)
    if (std::abs(d24.amp(i)) > 0) {
      ++nonzero;
      CHECK(std::abs(d24.amp(i) - 1.0 / std::sqrt(6.0)) < 1e-15);
    }
  CHECK(nonzero == 6);
  CHECK_THROWS_AS(dicke_symmetric(5, 4), std::invalid_argument);
}

TEST_CASE("collective operators") {
  // S10^m |0...0> = m! sqrt(C(n,m)) |m;n> for all m <= n <= 8.
  for (int n = 1; n <= 8; ++n) {
    Matrix s10 = collective_S(1, 0, n).matrix;
    Vector v = StateVector::ground(n).amplitudes();
    double fact = 1.0;
    for (int m = 1; m <= n; ++m) {
      v = (s10 * v).eval();
      fact *= m;
      Vector want = fact * std::sqrt(binomial(n, m)) * dicke_symmetric(m, n).amplitudes();
      CHECK((v - want).cwiseAbs().maxCoeff() < 1e-10);
    }
  }

  // Adjoint pairing S_xy^dag = S_yx.
  for (int n : {2, 3}) {
    Matrix s10 = collective_S(1, 0, n).matrix;
    Matrix s01 = collective_S(0, 1, n).matrix;
    CHECK(max_abs(s10.adjoint() - s01) < 1e-14);
  }

  // The singlet is exactly dark under collective lowering.
  Vector s(4);
  s << 0, 1 / std::sqrt(2.0), -1 / std::sqrt(2.0), 0;
  CHECK((collective_S(0, 1, 2).matrix * s).norm() == 0.0);

  // Completeness: S00 + S11 = n I.
  for (int n : {1, 2, 4}) {
    Matrix total = collective_S(0, 0, n).matrix + collective_S(1, 1, n).matrix;
    CHECK(max_abs(total - double(n) * Matrix::Identity(1 << n, 1 << n)) == 0.0);
  }
}

TEST_CASE("angular momentum algebra") {
  for (int n = 1; n <= 6; ++n) {
    AngularOperators ops = angular_ops(n);
    CHECK(max_abs(ops.j1 * ops.j2 - ops.j2 * ops.j1 - cx(0, 1) * ops.j3) < 1e-12);
  }

  for (int n = 2; n <= 6; ++n) {
    AngularOperators ops = angular_ops(n);
    Vector w = w_state(n).amplitudes();
    double j = n / 2.0;
    CHECK((ops.jsq * w - j * (j + 1.0) * w).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((ops.j3 * w - (j - 1.0) * w).cwiseAbs().maxCoeff() < 1e-10);
  }

  Rng rng(21);
  for (int n = 2; n <= 6; ++n) {
    AngularOperators ops = angular_ops(n);
    Vector eta = eta_state(AmplitudeProfile(random_zsa_profile(n, rng))).amplitudes();
    double j = n / 2.0 - 1.0;
    CHECK((ops.jsq * eta - j * (j + 1.0) * eta).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((ops.j3 * eta - j * eta).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("decoherence-free pair") {
  auto [phi0, psi1] = df_states();
  CHECK(std::abs(phi0.amplitudes().dot(psi1.amplitudes())) < 1e-15);
  Matrix s01 = collective_S(0, 1, 4).matrix;
  CHECK((s01 * phi0.amplitudes()).norm() < 1e-15);
  CHECK((s01 * psi1.amplitudes()).norm() < 1e-15);
}

TEST_CASE("rotated GHZ witness anchor state") {
  StateVector g = ghz_prime();
  CHECK(g.norm() == doctest::Approx(1.0).epsilon(1e-14));
  // Projector expectation on its own state.
  Matrix proj = 0.5 * Matrix::Identity(8, 8) - g.amplitudes() * g.amplitudes().adjoint();
  CHECK(g.amplitudes().dot(proj * g.amplitudes()).real() == doctest::Approx(-0.5));
}

TEST_CASE("dicke quantum number probe") {
  auto w4 = dicke_numbers(w_state(4));
  REQUIRE(w4.has_value());
  CHECK(w4->j == doctest::Approx(2.0));
  CHECK(w4->l == doctest::Approx(1.0));

  Rng rng(33);
  auto eta4 = dicke_numbers(eta_state(AmplitudeProfile(random_zsa_profile(4, rng))));
  REQUIRE(eta4.has_value());
  CHECK(eta4->j == doctest::Approx(1.0));
  CHECK(eta4->l == doctest::Approx(1.0));

  CHECK_FALSE(dicke_numbers(ghz_state(3)).has_value());

  // Variances vanish on W and zero-sum states up to n = 8.
  for (int n = 2; n <= 8; ++n) {
    auto w = dicke_numbers(w_state(n), 1e-12);
    REQUIRE(w.has_value());
    CHECK(w->var_jsq <= 1e-12);
    CHECK(w->var_j3 <= 1e-12);
    auto z = dicke_numbers(eta_state(AmplitudeProfile(random_zsa_profile(n, rng))), 1e-12);
    REQUIRE(z.has_value());
    CHECK(z->var_jsq <= 1e-12);
    CHECK(z->var_j3 <= 1e-12);
  }
}
