#pragma once

// Shared generators for the test suites: random states, random
// quasi-distributions, stochastic maps, and the qutrit stabilizer orbit.

#include <magicdist/matrix.hpp>
#include <magicdist/numeric.hpp>
#include <magicdist/phase_space.hpp>
#include <magicdist/wigner.hpp>

#include <random>
#include <vector>

namespace magicdist::testutil {

inline CVec random_pure(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CVec v(dim);
  for (int i = 0; i < dim; ++i) v[i] = std::complex<double>(g(rng), g(rng));
  return v / v.norm();
}

inline CMat random_pure_dm(int dim, std::mt19937_64& rng) {
  const CVec v = random_pure(dim, rng);
  return v * v.adjoint();
}

// Ginibre-sampled full-rank mixed state.
inline CMat random_mixed_dm(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMat a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = std::complex<double>(g(rng), g(rng));
  CMat rho = a * a.adjoint();
  return rho / rho.trace().real();
}

// All pure qutrit stabilizer states, as the orbit of |0> under the Fourier
// and phase gates; there are exactly 12.
inline const std::vector<CVec>& qutrit_stabilizer_states() {
  static const std::vector<CVec> states = [] {
    const CMat f = fourier_matrix(3);
    CMat s = CMat::Identity(3, 3);
    s(2, 2) = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
    std::vector<CVec> found;
    auto seen = [&](const CVec& v) {
      for (const auto& u : found)
        if (std::abs(std::abs((u.adjoint() * v)(0, 0)) - 1.0) < 1e-9) return true;
      return false;
    };
    std::vector<CVec> frontier{CVec::Unit(3, 0)};
    found.push_back(frontier.front());
    while (!frontier.empty()) {
      std::vector<CVec> next;
      for (const auto& v : frontier)
        for (const CMat* gate : std::initializer_list<const CMat*>{&f, &s}) {
          const CVec u = (*gate) * v;
          if (!seen(u)) {
            found.push_back(u);
            next.push_back(u);
          }
        }
      frontier = std::move(next);
    }
    return found;
  }();
  return states;
}

// Random mixture of pure stabilizer projectors: Wigner-nonnegative by
// construction.
inline CMat random_free_dm(std::mt19937_64& rng) {
  const auto& stab = qutrit_stabilizer_states();
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> w(stab.size());
  double total = 0;
  for (auto& x : w) total += (x = u(rng));
  CMat rho = CMat::Zero(3, 3);
  for (std::size_t i = 0; i < stab.size(); ++i)
    rho += (w[i] / total) * (stab[i] * stab[i].adjoint());
  return rho;
}

// Random state with sum-negativity above the threshold (retry loop).
inline CMat random_magic_dm(std::mt19937_64& rng, PrimeDim d, double min_sn = 1e-6) {
  std::uniform_real_distribution<double> u(0.0, 0.35);
  for (;;) {
    const CMat rho = (1.0 - u(rng)) * random_pure_dm(3, rng) + u(rng) * mixed_dm(3);
    const CMat state = rho / rho.trace().real();
    if (sum_negativity(wigner_of_state(state, d)) > min_sn) return state;
  }
}

// Random quasi-distribution: entries bounded like Wigner values, summing
// exactly to 1 after a uniform shift (retry if the shift breaks the bound).
inline std::vector<double> random_quasi(std::size_t dim, double bound,
                                        std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-bound, bound);
  for (;;) {
    std::vector<double> w(dim);
    double s = 0;
    for (auto& x : w) s += (x = u(rng));
    const double shift = (1.0 - s) / static_cast<double>(dim);
    bool ok = true;
    for (auto& x : w) {
      x += shift;
      if (std::abs(x) > bound) ok = false;
    }
    if (ok) return w;
  }
}

// Convex mixture of random permutations: bistochastic.
inline Eigen::MatrixXd random_bistochastic(std::size_t dim, std::mt19937_64& rng,
                                           int n_perms = 4) {
  std::uniform_real_distribution<double> u(0.1, 1.0);
  std::vector<double> w(static_cast<std::size_t>(n_perms));
  double total = 0;
  for (auto& x : w) total += (x = u(rng));
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
  std::vector<std::size_t> perm(dim);
  for (std::size_t i = 0; i < dim; ++i) perm[i] = i;
  for (int k = 0; k < n_perms; ++k) {
    std::shuffle(perm.begin(), perm.end(), rng);
    for (std::size_t i = 0; i < dim; ++i)
      m(static_cast<Eigen::Index>(perm[i]), static_cast<Eigen::Index>(i)) +=
          w[static_cast<std::size_t>(k)] / total;
  }
  return m;
}

// Random convex mixture of displacement permutations as a ChannelWigner.
inline ChannelWigner random_displacement_channel(PrimeDim d, int n, std::mt19937_64& rng,
                                                 int n_terms = 4) {
  std::uniform_real_distribution<double> u(0.1, 1.0);
  std::uniform_int_distribution<std::size_t> pick(0, phase_space_size(d, n) - 1);
  std::vector<std::pair<PhasePoint, double>> terms;
  double total = 0;
  for (int k = 0; k < n_terms; ++k) {
    terms.emplace_back(PhasePoint::from_index(d, n, pick(rng)), u(rng));
    total += terms.back().second;
  }
  for (auto& [a, w] : terms) w /= total;
  return displacement_mixture_channel(d, n, terms);
}

// Random rational quasi-distribution (integers over their sum).
inline std::vector<Rational> random_rational_quasi(std::size_t dim, std::mt19937_64& rng,
                                                   bool allow_negative = true) {
  std::uniform_int_distribution<int> u(allow_negative ? -25 : 1, 100);
  for (;;) {
    std::vector<int> a(dim);
    long s = 0;
    for (auto& x : a) s += (x = u(rng));
    if (s <= 0) continue;
    std::vector<Rational> w(dim);
    for (std::size_t i = 0; i < dim; ++i) w[i] = Rational(a[i], s);
    return w;
  }
}

// Random stochastic matrix with rational entries (columns sum to 1).
inline std::vector<std::vector<Rational>> random_rational_stochastic(std::size_t rows,
                                                                     std::size_t cols,
                                                                     std::mt19937_64& rng) {
  std::uniform_int_distribution<int> u(0, 20);
  std::vector<std::vector<Rational>> m(rows, std::vector<Rational>(cols));
  for (std::size_t j = 0; j < cols; ++j) {
    long s = 0;
    std::vector<int> col(rows);
    do {
      s = 0;
      for (auto& x : col) s += (x = u(rng));
    } while (s == 0);
    for (std::size_t i = 0; i < rows; ++i) m[i][j] = Rational(col[i], s);
  }
  return m;
}

}  // namespace magicdist::testutil
