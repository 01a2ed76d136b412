// SPDX-License-Identifier: Apache-2.0
#include "wsim/entanglement.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "wsim/states.hpp"

namespace wsim::entanglement {

BipartitionSpec::BipartitionSpec(std::vector<int> a, int subsystem_count)
    : side_a(std::move(a)) {
  std::sort(side_a.begin(), side_a.end());
  if (side_a.empty()) throw std::invalid_argument("side A must not be empty");
  if (std::adjacent_find(side_a.begin(), side_a.end()) != side_a.end())
    throw std::invalid_argument("side A has duplicates");
  if (side_a.front() < 0 || side_a.back() >= subsystem_count)
    throw std::invalid_argument("side A index out of range");
  for (int i = 0; i < subsystem_count; ++i)
    if (!std::binary_search(side_a.begin(), side_a.end(), i)) side_b.push_back(i);
  if (side_b.empty()) throw std::invalid_argument("side B must not be empty");
}

std::string to_string(PptVerdict v) {
  switch (v) {
    case PptVerdict::NptEntangled: return "NPT-entangled";
    case PptVerdict::Separable: return "separable";
    default: return "inconclusive";
  }
}

DensityMatrix reduced_w(int n, int s) {
  if (s < 1 || s > n) throw std::invalid_argument("need 1 <= s <= n");
  const double w_weight = double(s) / double(n);
  Matrix m;
  if (s == 1) {
    m = Matrix::Zero(2, 2);
    m(1, 1) = w_weight;  // single qubit: excited with weight s/n
  } else {
    StateVector ws = states::w_state(s);
    m = w_weight * (ws.amplitudes() * ws.amplitudes().adjoint());
  }
  m(0, 0) += 1.0 - w_weight;
  return DensityMatrix(std::move(m), std::vector<int>(s, 2));
}

PptResult ppt_spectrum(const DensityMatrix& rho, const BipartitionSpec& part,
                       double tol) {
  Matrix pt = rho.entries();
  for (int idx : part.side_a) pt = partial_transpose(pt, rho.dims(), idx);
  HermitianSpectrum spec = hermitian_eig(pt, tol);

  PptResult out;
  out.spectrum = spec.eigenvalues;
  auto side_dim = [&](const std::vector<int>& side) {
    Eigen::Index d = 1;
    for (int i : side) d *= rho.dims()[i];
    return d;
  };
  const Eigen::Index da = side_dim(part.side_a);
  const Eigen::Index db = side_dim(part.side_b);
  const Eigen::Index lo = std::min(da, db), hi = std::max(da, db);
  const bool ppt_conclusive = (lo == 2 && (hi == 2 || hi == 3));
  if (out.spectrum.minCoeff() < -tol)
    out.verdict = PptVerdict::NptEntangled;
  else
    out.verdict = ppt_conclusive ? PptVerdict::Separable : PptVerdict::Inconclusive;
  return out;
}

RealVector ppt_closed_form_w(int n) {
  if (n < 3) throw std::invalid_argument("closed form needs n >= 3");
  const double nn = n;
  const double root = std::sqrt(1.0 + 4.0 / ((nn - 2.0) * (nn - 2.0)));
  RealVector v(4);
  v << (nn - 2.0) * (1.0 - root) / (2.0 * nn), 1.0 / nn, 1.0 / nn,
      (nn - 2.0) * (1.0 + root) / (2.0 * nn);
  std::sort(v.data(), v.data() + v.size());
  return v;
}

double negativity(const DensityMatrix& rho, const BipartitionSpec& part) {
  PptResult r = ppt_spectrum(rho, part);
  double s = 0.0;
  for (Eigen::Index k = 0; k < r.spectrum.size(); ++k)
    s += (std::abs(r.spectrum(k)) - r.spectrum(k)) / 2.0;
  return s;
}

double ent_entropy(const StateVector& psi, const BipartitionSpec& part) {
  if (std::abs(psi.norm() - 1.0) > kAssertTol)
    throw std::invalid_argument("state is not normalized");
  DensityMatrix rho_a = partial_trace(DensityMatrix::from_state(psi), part.side_a);
  return von_neumann_entropy(rho_a);
}

namespace {

// Schmidt rank 1 across every bipartition of the remaining qubits.
bool fully_product(const Vector& amps, int n, double tol) {
  if (n <= 1) return true;
  const Eigen::Index dim = Eigen::Index(1) << n;
  // Enumerate bipartitions by subset mask; skip complements by fixing bit 0.
  for (Eigen::Index mask = 1; mask < dim - 1; mask += 2) {
    int na = std::popcount(static_cast<std::uint64_t>(mask));
    if (na == n) continue;
    Eigen::Index da = Eigen::Index(1) << na;
    Eigen::Index db = Eigen::Index(1) << (n - na);
    Matrix m = Matrix::Zero(da, db);
    for (Eigen::Index i = 0; i < dim; ++i) {
      Eigen::Index ra = 0, rb = 0;
      Eigen::Index ba = 0, bb = 0;
      for (int q = n - 1; q >= 0; --q) {  // q counted from the left
        Eigen::Index bit = (i >> (n - 1 - q)) & 1;
        if ((mask >> (n - 1 - q)) & 1)
          ra |= bit << ba++;
        else
          rb |= bit << bb++;
      }
      m(ra, rb) = amps(i);
    }
    Eigen::JacobiSVD<Matrix> svd(m);
    if (svd.singularValues().size() > 1 && svd.singularValues()(1) > tol)
      return false;
  }
  return true;
}

}  // namespace

int persistency(const StateVector& psi, double tol) {
  if (!psi.is_qubit_register())
    throw std::invalid_argument("persistency expects a qubit register");
  const int n = psi.subsystem_count();
  if (n > 5) throw std::invalid_argument("persistency search is limited to n <= 5");

  const Eigen::Index dim = psi.dimension();
  for (int m = 0; m <= n; ++m) {
    bool all_choices_ok = true;
    // Every choice of m qubits, as a bitmask over sites (leftmost = high bit).
    for (Eigen::Index choice = 0; choice < dim && all_choices_ok; ++choice) {
      if (std::popcount(static_cast<std::uint64_t>(choice)) != m) continue;
      // Every outcome assignment on the chosen qubits.
      for (Eigen::Index outcome = 0; outcome < dim && all_choices_ok; ++outcome) {
        if ((outcome & ~choice) != 0) continue;
        // Collect the branch over the unmeasured qubits.
        const int rest = n - m;
        Vector branch = Vector::Zero(Eigen::Index(1) << rest);
        for (Eigen::Index i = 0; i < dim; ++i) {
          if ((i & choice) != outcome) continue;
          Eigen::Index r = 0;
          for (int q = 0; q < n; ++q) {
            Eigen::Index bit = Eigen::Index(1) << (n - 1 - q);
            if (choice & bit) continue;
            r = (r << 1) | ((i & bit) ? 1 : 0);
          }
          branch(r) = psi.amp(i);
        }
        double p = branch.squaredNorm();
        if (p <= 1e-14) continue;  // outcome never occurs
        branch /= std::sqrt(p);
        if (!fully_product(branch, rest, tol)) all_choices_ok = false;
      }
    }
    if (all_choices_ok) return m;
  }
  return n;
}

namespace {
Matrix pauli(char c) {
  Matrix m(2, 2);
  switch (c) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, cx(0, -1), cx(0, 1), 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: throw std::invalid_argument("unknown Pauli letter");
  }
  return m;
}

Matrix pauli_word(const std::string& word) {
  Matrix m = pauli(word.at(0));
  for (size_t k = 1; k < word.size(); ++k) m = tensor_op(m, pauli(word[k]));
  return m;
}
}  // namespace

WitnessOperator witness_w1() {
  StateVector w = states::w_state(3);
  Matrix m = (2.0 / 3.0) * Matrix::Identity(8, 8) -
             w.amplitudes() * w.amplitudes().adjoint();
  return WitnessOperator{std::move(m), "W1"};
}

WitnessOperator witness_w2() {
  StateVector g = states::ghz_prime();
  Matrix m = 0.5 * Matrix::Identity(8, 8) -
             g.amplitudes() * g.amplitudes().adjoint();
  return WitnessOperator{std::move(m), "W2"};
}

double witness_value(const WitnessOperator& w, const DensityMatrix& rho) {
  if (rho.dimension() != w.matrix.rows())
    throw std::invalid_argument("witness dimension mismatch");
  return (w.matrix * rho.entries()).trace().real();
}

double witness_value(const WitnessOperator& w, const StateVector& psi) {
  if (psi.dimension() != w.matrix.rows())
    throw std::invalid_argument("witness dimension mismatch");
  return psi.amplitudes().dot(w.matrix * psi.amplitudes()).real();
}

PauliExpansionReport witness_w1_pauli_expansion() {
  PauliExpansionReport rep;
  auto add = [&](double c, const std::string& word) {
    rep.terms.push_back({c, word});
  };

  // Displayed single-letter part, overall factor 1/24.
  add(17.0 / 24.0, "III");
  add(7.0 / 24.0, "ZZZ");
  add(3.0 / 24.0, "ZII");
  add(3.0 / 24.0, "IZI");
  add(3.0 / 24.0, "IIZ");
  add(5.0 / 24.0, "ZZI");
  add(5.0 / 24.0, "ZIZ");
  add(5.0 / 24.0, "IZZ");

  // Minus the four cubes (1 + sigma_z +- sigma_p)^(x)3, p in {x, y},
  // each expanded into 27 Pauli words.
  const char letters[3] = {'I', 'Z', 'P'};
  for (char p : {'X', 'Y'}) {
    for (int sign : {+1, -1}) {
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
          for (int c = 0; c < 3; ++c) {
            int p_count = (a == 2) + (b == 2) + (c == 2);
            double coeff = -std::pow(double(sign), p_count) / 24.0;
            std::string word = {letters[a] == 'P' ? p : letters[a],
                                letters[b] == 'P' ? p : letters[b],
                                letters[c] == 'P' ? p : letters[c]};
            add(coeff, word);
          }
    }
  }

  Matrix sum = Matrix::Zero(8, 8);
  for (const auto& t : rep.terms) sum += t.coefficient * pauli_word(t.word);
  rep.max_deviation = max_abs(sum - witness_w1().matrix);
  return rep;
}

}  // namespace wsim::entanglement
