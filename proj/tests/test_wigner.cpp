#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <magicdist/pair_list.hpp>
#include <magicdist/wigner.hpp>

#include "test_util.hpp"

#include <random>

using namespace magicdist;
namespace tu = magicdist::testutil;

namespace {
const PrimeDim d3(3);
}

TEST_CASE("wigner of stock states") {
  SUBCASE("maximally mixed is uniform") {
    const auto w = wigner_of_state(mixed_dm(3), d3);
    for (double x : w.values) CHECK(x == doctest::Approx(1.0 / 9.0).epsilon(1e-14));
  }
  SUBCASE("Strange state: -1/3 at the origin, 1/6 elsewhere") {
    const auto w = wigner_of_state(strange_dm(), d3);
    CHECK(w[0] == doctest::Approx(-1.0 / 3.0).epsilon(1e-13));
    for (std::size_t i = 1; i < 9; ++i)
      CHECK(w[i] == doctest::Approx(1.0 / 6.0).epsilon(1e-13));
    CHECK(sum_negativity(w) == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  }
  SUBCASE("|0><0| spreads uniformly over its q = 0 line") {
    const auto w = wigner_of_state(basis_dm(3, 0), d3);
    for (std::size_t i = 0; i < 9; ++i) {
      const PhasePoint z = PhasePoint::from_index(d3, 1, i);
      CHECK(w[i] == doctest::Approx(z.q[0] == 0 ? 1.0 / 3.0 : 0.0).epsilon(1e-13));
    }
  }
}

TEST_CASE("wigner_of_state input validation") {
  CMat bad = strange_dm();
  bad(0, 1) = 0.3;  // not Hermitian
  CHECK_THROWS_AS(wigner_of_state(bad, d3), std::invalid_argument);
  CHECK_THROWS_AS(wigner_of_state(2.0 * mixed_dm(3), d3), std::invalid_argument);
  CMat neg = 1.5 * basis_dm(3, 0) - 0.5 * basis_dm(3, 1);  // not PSD
  CHECK_THROWS_AS(wigner_of_state(neg, d3), std::invalid_argument);
  CHECK_THROWS_AS(wigner_of_state(CMat::Identity(4, 4) / 4.0, d3), std::invalid_argument);
}

TEST_CASE("state_from_wigner round trips") {
  std::mt19937_64 rng(23);
  SUBCASE("uniform gives the maximally mixed state") {
    CHECK(max_abs(state_from_wigner(QuasiDistribution::uniform(d3, 1)) - mixed_dm(3)) < 1e-13);
  }
  SUBCASE("Strange Wigner vector reconstructs the projector") {
    CHECK(max_abs(state_from_wigner(noisy_strange_wigner(0.0)) - strange_dm()) < 1e-13);
  }
  SUBCASE("random single- and two-qutrit states") {
    for (int n : {1, 2})
      for (int trial = 0; trial < 5; ++trial) {
        const CMat rho = tu::random_mixed_dm(n == 1 ? 3 : 9, rng);
        const auto w = wigner_of_state(rho, d3);
        CHECK(max_abs(state_from_wigner(w) - rho) < 1e-10);
        const auto w2 = wigner_of_state(state_from_wigner(w), d3);
        for (std::size_t i = 0; i < w.size(); ++i)
          CHECK(w2[i] == doctest::Approx(w[i]).epsilon(1e-10));
      }
  }
}

TEST_CASE("channel Wigner representations") {
  SUBCASE("identity channel is the identity matrix") {
    const auto we = wigner_of_channel(choi_identity(3), d3, 1, 1);
    CHECK((we.w - Eigen::MatrixXd::Identity(9, 9)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(is_stochastic(we));
  }
  SUBCASE("displacement channel permutes z -> z + a") {
    for (std::size_t ai : {1UL, 4UL, 7UL}) {
      const PhasePoint a = PhasePoint::from_index(d3, 1, ai);
      const auto we = wigner_of_channel(choi_of_unitary(displacement_operator(a)), d3, 1, 1);
      Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(9, 9);
      for (std::size_t z = 0; z < 9; ++z) {
        const PhasePoint zp = PhasePoint::from_index(d3, 1, z);
        expected(static_cast<Eigen::Index>((zp + a).index()), static_cast<Eigen::Index>(z)) =
            1.0;
      }
      CHECK((we.w - expected).cwiseAbs().maxCoeff() < 1e-11);
    }
  }
  SUBCASE("completely depolarizing channel has all entries 1/9") {
    const auto we = wigner_of_channel(choi_depolarizing(3), d3, 1, 1);
    CHECK((we.w.array() - 1.0 / 9.0).abs().maxCoeff() < 1e-12);
  }
  SUBCASE("partial trace: a channel with fewer output than input qudits") {
    // E = tr_2 on two qutrits; J = (id x E)(phi+_9)
    CMat j = CMat::Zero(27, 27);
    for (int i1 = 0; i1 < 3; ++i1)
      for (int i2 = 0; i2 < 3; ++i2)
        for (int j1 = 0; j1 < 3; ++j1)
          j(3 * (3 * i1 + i2) + i1, 3 * (3 * j1 + i2) + j1) += 1.0 / 9.0;
    const auto we = wigner_of_channel(j, d3, 2, 1);
    CHECK(we.w.rows() == 9);
    CHECK(we.w.cols() == 81);
    CHECK(is_stochastic(we));
    // action matches the Wigner marginal of the traced state
    std::mt19937_64 rng(37);
    const CMat rho_a = tu::random_magic_dm(rng, d3);
    const CMat rho_b = tu::random_mixed_dm(3, rng);
    const auto w_joint = wigner_of_state(kron(rho_a, rho_b), d3);
    const auto w_out = apply_channel(we, w_joint);
    const auto w_expected = wigner_of_state(rho_a, d3);
    for (std::size_t i = 0; i < 9; ++i)
      CHECK(w_out[i] == doctest::Approx(w_expected[i]).epsilon(1e-11));
  }
  SUBCASE("non-CPTP Choi inputs are rejected") {
    CHECK_THROWS_AS(wigner_of_channel(1.2 * choi_identity(3), d3, 1, 1),
                    std::invalid_argument);
    CMat j = 1.3 * choi_identity(3) - 0.3 * choi_depolarizing(3);  // negative eigenvalue
    CHECK_THROWS_AS(wigner_of_channel(j, d3, 1, 1), std::invalid_argument);
    // right trace, PSD, but not trace preserving
    CMat tp_bad = CMat::Zero(9, 9);
    tp_bad(0, 0) = 1.0;
    CHECK_THROWS_AS(wigner_of_channel(tp_bad, d3, 1, 1), std::invalid_argument);
  }
}

TEST_CASE("apply_channel") {
  const auto w_in = wigner_of_state(strange_dm(), d3);
  SUBCASE("identity leaves input unchanged") {
    const auto we = wigner_of_channel(choi_identity(3), d3, 1, 1);
    const auto out = apply_channel(we, w_in);
    for (std::size_t i = 0; i < 9; ++i) CHECK(out[i] == doctest::Approx(w_in[i]).epsilon(1e-12));
  }
  SUBCASE("depolarizing by eps reproduces the noisy Strange vector") {
    for (double eps : {0.1, 0.3, 0.6}) {
      const auto we = wigner_of_channel(choi_depolarizing(3, eps), d3, 1, 1);
      const auto out = apply_channel(we, w_in);
      const auto expected = noisy_strange_wigner(eps);
      for (std::size_t i = 0; i < 9; ++i)
        CHECK(out[i] == doctest::Approx(expected[i]).epsilon(1e-12));
    }
  }
  SUBCASE("transition identity holds for arbitrary channels") {
    // W_{E(rho)} = W_E W_rho also for non-stochastic unitary channels
    std::mt19937_64 rng(29);
    for (const CMat& u : {qutrit_t_gate(), fourier_matrix(3)}) {
      const auto we = wigner_of_channel(choi_of_unitary(u), d3, 1, 1);
      for (int trial = 0; trial < 5; ++trial) {
        const CMat rho = tu::random_mixed_dm(3, rng);
        const auto lhs = wigner_of_state(CMat(u * rho * u.adjoint()), d3);
        const auto rhs = apply_channel(we, wigner_of_state(rho, d3));
        for (std::size_t i = 0; i < 9; ++i)
          CHECK(lhs[i] == doctest::Approx(rhs[i]).epsilon(1e-10));
      }
    }
  }
  SUBCASE("stochastic maps preserve nonnegativity of free states") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
      const auto we = tu::random_displacement_channel(d3, 1, rng);
      REQUIRE(is_stochastic(we));
      const auto w_free = wigner_of_state(tu::random_free_dm(rng), d3);
      CHECK(is_free(apply_channel(we, w_free)));
    }
  }
  SUBCASE("dimension mismatch throws") {
    const auto we = wigner_of_channel(choi_identity(3), d3, 1, 1);
    CHECK_THROWS_AS(apply_channel(we, QuasiDistribution::uniform(d3, 2)),
                    std::invalid_argument);
  }
}

TEST_CASE("negativity monotones") {
  CHECK(sum_negativity(wigner_of_state(strange_dm(), d3)) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  CHECK(mana(wigner_of_state(strange_dm(), d3)) ==
        doctest::Approx(std::log(5.0 / 3.0)).epsilon(1e-13));
  // noisy family: sn = v(eps) = 1/3 - 4 eps/9, mana = log(5/3 - 8 eps/9)
  for (double eps : {0.0, 0.1, 0.3, 0.6}) {
    const auto w = noisy_strange_wigner(eps);
    CHECK(sum_negativity(w) == doctest::Approx(1.0 / 3.0 - 4.0 * eps / 9.0).epsilon(1e-13));
    CHECK(mana(w) == doctest::Approx(std::log(5.0 / 3.0 - 8.0 * eps / 9.0)).epsilon(1e-13));
  }
  // every pure stabilizer state is free with zero mana
  for (const auto& s : tu::qutrit_stabilizer_states()) {
    const auto w = wigner_of_state(CMat(s * s.adjoint()), d3);
    CHECK(sum_negativity(w) < 1e-12);
    CHECK(is_free(w));
  }
  CHECK(tu::qutrit_stabilizer_states().size() == 12);
}

TEST_CASE("is_free boundary cases") {
  CHECK(is_free(wigner_of_state(mixed_dm(3), d3)));
  CHECK_FALSE(is_free(wigner_of_state(strange_dm(), d3)));
  // negativity vanishes exactly at eps = 3/4
  CHECK(is_free(wigner_of_state(noisy_strange_dm(0.75), d3)));
  CHECK_FALSE(is_free(wigner_of_state(noisy_strange_dm(0.74), d3)));
}

TEST_CASE("is_stochastic discriminates Clifford from non-Clifford unitaries") {
  const auto fourier = wigner_of_channel(choi_of_unitary(fourier_matrix(3)), d3, 1, 1);
  CHECK(is_stochastic(fourier));
  // a Clifford channel acts as a permutation: entries 0/1 only
  for (Eigen::Index i = 0; i < 9; ++i)
    for (Eigen::Index j = 0; j < 9; ++j)
      CHECK(std::min(std::abs(fourier.w(i, j)), std::abs(fourier.w(i, j) - 1.0)) < 1e-11);

  const auto tgate = wigner_of_channel(choi_of_unitary(qutrit_t_gate()), d3, 1, 1);
  CHECK_FALSE(is_stochastic(tgate));
  CHECK(tgate.w.minCoeff() < -1e-3);
}

TEST_CASE("multiplicativity under tensor products") {
  std::mt19937_64 rng(41);
  const CMat rho_a = tu::random_mixed_dm(3, rng);
  const CMat rho_b = tu::random_magic_dm(rng, d3);
  const auto wa = wigner_of_state(rho_a, d3);
  const auto wb = wigner_of_state(rho_b, d3);
  const auto wab = wigner_of_state(kron(rho_a, rho_b), d3);
  for (std::size_t i = 0; i < 9; ++i) {
    const PhasePoint za = PhasePoint::from_index(d3, 1, i);
    for (std::size_t j = 0; j < 9; ++j) {
      const PhasePoint zb = PhasePoint::from_index(d3, 1, j);
      CHECK(wab.values[za.concat(zb).index()] ==
            doctest::Approx(wa[i] * wb[j]).epsilon(1e-11));
    }
  }
  // QuasiDistribution::tensor matches the matrix route
  const auto wt = wa.tensor(wb);
  for (std::size_t i = 0; i < 81; ++i)
    CHECK(wt[i] == doctest::Approx(wab[i]).epsilon(1e-11));
}

TEST_CASE("mixing linearity") {
  std::mt19937_64 rng(43);
  const CMat a = tu::random_mixed_dm(3, rng), b = tu::random_pure_dm(3, rng);
  for (double p : {0.0, 0.25, 0.8}) {
    const auto w_mix = wigner_of_state(p * a + (1.0 - p) * b, d3);
    const auto wa = wigner_of_state(a, d3);
    const auto wb = wigner_of_state(b, d3);
    for (std::size_t i = 0; i < 9; ++i)
      CHECK(w_mix[i] == doctest::Approx(p * wa[i] + (1.0 - p) * wb[i]).epsilon(1e-12));
  }
}

TEST_CASE("mana is additive over tensor products") {
  std::mt19937_64 rng(47);
  const CMat a = tu::random_magic_dm(rng, d3);
  const CMat b = tu::random_mixed_dm(3, rng);
  const CMat c = strange_dm();
  const double ma = mana(wigner_of_state(a, d3));
  const double mb = mana(wigner_of_state(b, d3));
  const double mc = mana(wigner_of_state(c, d3));
  CHECK(mana(wigner_of_state(kron(a, b), d3)) == doctest::Approx(ma + mb).epsilon(1e-10));
  CHECK(mana(wigner_of_state(kron(kron(a, b), c), d3)) ==
        doctest::Approx(ma + mb + mc).epsilon(1e-10));
}

TEST_CASE("data processing: mana never increases under stochastic channels") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 200; ++trial) {
    const auto we = tu::random_displacement_channel(d3, 1, rng);
    const CMat rho = (trial % 2 == 0) ? tu::random_magic_dm(rng, d3)
                                      : tu::random_mixed_dm(3, rng);
    const auto w = wigner_of_state(rho, d3);
    CHECK(mana(apply_channel(we, w)) <= mana(w) + 1e-10);
  }
}

TEST_CASE("QuasiDistribution invariants are enforced") {
  std::vector<double> bad_sum(9, 0.2);
  CHECK_THROWS_AS(QuasiDistribution(d3, 1, bad_sum), std::invalid_argument);
  std::vector<double> too_big(9, -1.0 / 24.0);
  too_big[0] = 1.0 + 8.0 / 24.0;  // sums to 1 but exceeds the 1/3 bound
  CHECK_THROWS_AS(QuasiDistribution(d3, 1, too_big), std::invalid_argument);
  CHECK_THROWS_AS(QuasiDistribution(d3, 2, std::vector<double>(9, 1.0 / 9.0)),
                  std::invalid_argument);
}
