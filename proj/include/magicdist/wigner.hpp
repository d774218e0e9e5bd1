#pragma once

// Wigner representation of states and channels, and the negativity
// monotones defined on it.
//
// States:   W_rho(z) = (1/d^n) tr[A_z rho],  rho = sum_z W_rho(z) A_z.
// Channels: W_E(y|z) = d_A^2 W_{J(E)}(zbar ++ y) with J(E) the Choi state
//           (id x E)|phi+><phi+| and zbar the momentum-reversed input point;
//           the matrix acts on quasi-distributions as a transition matrix.

#include <magicdist/matrix.hpp>
#include <magicdist/phase_space.hpp>

#include <cmath>
#include <stdexcept>
#include <vector>

namespace magicdist {

namespace tol_default {
inline constexpr double normalization = 1e-10;
inline constexpr double choi_psd = 1e-8;
inline constexpr double free_state = 1e-10;
inline constexpr double stochastic = 1e-10;
}  // namespace tol_default

// Real quasi-distribution over the d^{2n} phase-space points of n qudits.
struct QuasiDistribution {
  PrimeDim dim{3};
  int copies = 1;
  std::vector<double> values;

  QuasiDistribution(PrimeDim d, int n, std::vector<double> v, bool validate = true)
      : dim(d), copies(n), values(std::move(v)) {
    if (values.size() != phase_space_size(dim, copies))
      throw std::invalid_argument("QuasiDistribution: wrong length");
    if (validate) {
      double sum = 0;
      for (double x : values) sum += x;
      if (std::abs(sum - 1.0) > tol_default::normalization)
        throw std::invalid_argument("QuasiDistribution: values do not sum to 1");
      const double bound = 1.0 / ipow(dim.d, copies) + 1e-9;
      for (double x : values)
        if (std::abs(x) > bound)
          throw std::invalid_argument("QuasiDistribution: component exceeds 1/d^n bound");
    }
  }

  int d() const { return dim.d; }
  std::size_t size() const { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
  double at(const PhasePoint& z) const { return values[z.index()]; }

  static QuasiDistribution uniform(PrimeDim d, int n) {
    const std::size_t s = phase_space_size(d, n);
    return {d, n, std::vector<double>(s, 1.0 / static_cast<double>(s))};
  }

  // Tensor product; composite points concatenate as (q_a,q_b,p_a,p_b).
  QuasiDistribution tensor(const QuasiDistribution& o) const {
    if (dim.d != o.dim.d) throw std::invalid_argument("tensor: dimension mismatch");
    const int n = copies + o.copies;
    std::vector<double> out(phase_space_size(dim, n));
    for (std::size_t i = 0; i < size(); ++i) {
      const PhasePoint zi = PhasePoint::from_index(dim, copies, i);
      for (std::size_t j = 0; j < o.size(); ++j) {
        const PhasePoint zj = PhasePoint::from_index(dim, o.copies, j);
        out[zi.concat(zj).index()] = values[i] * o.values[j];
      }
    }
    return {dim, n, std::move(out), false};
  }
};

inline int infer_copies(PrimeDim d, Eigen::Index hilbert_dim) {
  long acc = 1;
  for (int n = 1; n <= 24; ++n) {
    acc *= d.d;
    if (acc == hilbert_dim) return n;
    if (acc > hilbert_dim) break;
  }
  throw std::invalid_argument("matrix dimension is not a power of d");
}

// ---------------------------------------------------------------------------
// State transforms
// ---------------------------------------------------------------------------

inline QuasiDistribution wigner_of_state(const CMat& rho, PrimeDim d,
                                         bool check_psd = true) {
  if (rho.rows() != rho.cols()) throw std::invalid_argument("wigner_of_state: not square");
  const int n = infer_copies(d, rho.rows());
  if (!approx_hermitian(rho, tol_default::normalization))
    throw std::invalid_argument("wigner_of_state: input not Hermitian");
  if (std::abs(rho.trace().real() - 1.0) > tol_default::normalization ||
      std::abs(rho.trace().imag()) > tol_default::normalization)
    throw std::invalid_argument("wigner_of_state: input not unit trace");
  if (check_psd && min_eigenvalue(rho) < -tol_default::normalization)
    throw std::invalid_argument("wigner_of_state: input not positive semidefinite");

  const std::size_t npts = phase_space_size(d, n);
  const double scale = 1.0 / static_cast<double>(ipow(d.d, n));
  std::vector<double> w(npts);
  for (std::size_t i = 0; i < npts; ++i) {
    const CMat a = phase_point_operator(PhasePoint::from_index(d, n, i));
    const std::complex<double> tr = a.cwiseProduct(rho.transpose()).sum();
    if (std::abs(tr.imag()) > tol_default::normalization)
      throw std::runtime_error("wigner_of_state: non-real Wigner value");
    w[i] = tr.real() * scale;
  }
  return {d, n, std::move(w)};
}

inline CMat state_from_wigner(const QuasiDistribution& w) {
  const long dim = ipow(w.d(), w.copies);
  CMat rho = CMat::Zero(dim, dim);
  for (std::size_t i = 0; i < w.size(); ++i)
    rho += w[i] * phase_point_operator(PhasePoint::from_index(w.dim, w.copies, i));
  return rho;
}

// ---------------------------------------------------------------------------
// Channel transforms
// ---------------------------------------------------------------------------

// W_E(y|z) stored as a matrix with column index z (input) and row index y.
struct ChannelWigner {
  PrimeDim dim{3};
  int copies_in = 1, copies_out = 1;
  Eigen::MatrixXd w;

  ChannelWigner(PrimeDim d, int n_in, int n_out, Eigen::MatrixXd m, bool validate = true)
      : dim(d), copies_in(n_in), copies_out(n_out), w(std::move(m)) {
    if (w.rows() != static_cast<Eigen::Index>(phase_space_size(dim, copies_out)) ||
        w.cols() != static_cast<Eigen::Index>(phase_space_size(dim, copies_in)))
      throw std::invalid_argument("ChannelWigner: wrong shape");
    if (validate) {
      for (Eigen::Index c = 0; c < w.cols(); ++c)
        if (std::abs(w.col(c).sum() - 1.0) > tol_default::normalization)
          throw std::invalid_argument("ChannelWigner: column does not sum to 1");
      const double bound =
          static_cast<double>(ipow(dim.d, copies_in)) / ipow(dim.d, copies_out) + 1e-9;
      if (w.cwiseAbs().maxCoeff() > bound)
        throw std::invalid_argument("ChannelWigner: entry exceeds d_A/d_B bound");
    }
  }
};

inline ChannelWigner wigner_of_channel(const CMat& choi, PrimeDim d, int n_in, int n_out) {
  const long dim_in = ipow(d.d, n_in), dim_out = ipow(d.d, n_out);
  if (choi.rows() != dim_in * dim_out || choi.rows() != choi.cols())
    throw std::invalid_argument("wigner_of_channel: Choi dimension mismatch");
  if (std::abs(choi.trace().real() - 1.0) > tol_default::choi_psd)
    throw std::invalid_argument("wigner_of_channel: Choi trace violation");
  if (min_eigenvalue(choi) < -tol_default::choi_psd)
    throw std::invalid_argument("wigner_of_channel: Choi positivity violation");
  const CMat marginal = partial_trace_right(choi, static_cast<int>(dim_in),
                                            static_cast<int>(dim_out));
  if (max_abs(marginal - CMat::Identity(dim_in, dim_in) / static_cast<double>(dim_in)) >
      tol_default::choi_psd)
    throw std::invalid_argument("wigner_of_channel: Choi not trace preserving");

  const QuasiDistribution wj = wigner_of_state(choi, d, false);
  const double scale = static_cast<double>(ipow(d.d, 2 * n_in));
  const std::size_t in_pts = phase_space_size(d, n_in);
  const std::size_t out_pts = phase_space_size(d, n_out);
  Eigen::MatrixXd m(out_pts, in_pts);
  for (std::size_t zi = 0; zi < in_pts; ++zi) {
    const PhasePoint zbar = PhasePoint::from_index(d, n_in, zi).bar();
    for (std::size_t yi = 0; yi < out_pts; ++yi) {
      const PhasePoint y = PhasePoint::from_index(d, n_out, yi);
      m(static_cast<Eigen::Index>(yi), static_cast<Eigen::Index>(zi)) =
          scale * wj.values[zbar.concat(y).index()];
    }
  }
  return {d, n_in, n_out, std::move(m)};
}

inline QuasiDistribution apply_channel(const ChannelWigner& we, const QuasiDistribution& w) {
  if (we.dim.d != w.dim.d || we.copies_in != w.copies)
    throw std::invalid_argument("apply_channel: dimension mismatch");
  Eigen::VectorXd v(static_cast<Eigen::Index>(w.size()));
  for (std::size_t i = 0; i < w.size(); ++i) v[static_cast<Eigen::Index>(i)] = w[i];
  const Eigen::VectorXd out = we.w * v;
  std::vector<double> res(out.data(), out.data() + out.size());
  return {we.dim, we.copies_out, std::move(res)};
}

// ---------------------------------------------------------------------------
// Negativity monotones and membership tests
// ---------------------------------------------------------------------------

inline double sum_negativity(const QuasiDistribution& w) {
  double s = 0;
  for (double x : w.values)
    if (x < 0) s -= x;
  return s;
}

// mana = log(2 sn + 1) = log sum_i |w_i|, natural log.
inline double mana(const QuasiDistribution& w) {
  return std::log(2.0 * sum_negativity(w) + 1.0);
}

inline bool is_free(const QuasiDistribution& w, double tol = tol_default::free_state) {
  for (double x : w.values)
    if (x < -tol) return false;
  return true;
}

// Stochasticity is necessary for a channel that preserves the free states.
// Whether a given stochastic matrix is realizable by a quantum channel
// additionally depends on the symplectic structure of the phase space,
// which is not checked here.
inline bool is_stochastic(const ChannelWigner& we, double tol = tol_default::stochastic) {
  if (we.w.minCoeff() < -tol) return false;
  for (Eigen::Index c = 0; c < we.w.cols(); ++c)
    if (std::abs(we.w.col(c).sum() - 1.0) > tol) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Stock states and channels (qutrit unless noted)
// ---------------------------------------------------------------------------

inline CMat mixed_dm(int dim) { return CMat::Identity(dim, dim) / static_cast<double>(dim); }

inline CMat basis_dm(int dim, int k) {
  CMat rho = CMat::Zero(dim, dim);
  rho(k, k) = 1.0;
  return rho;
}

// Strange state: the parity -1 eigenstate (|1> - |2>)/sqrt(2), whose Wigner
// distribution is -1/3 at the origin and 1/6 at the other eight points.
inline CMat strange_dm() {
  CVec s = CVec::Zero(3);
  s[1] = 1.0 / std::sqrt(2.0);
  s[2] = -1.0 / std::sqrt(2.0);
  return s * s.adjoint();
}

inline CMat noisy_strange_dm(double eps) {
  if (eps < 0.0 || eps > 1.0)
    throw std::domain_error("noisy_strange_dm: eps outside [0, 1]");
  return (1.0 - eps) * strange_dm() + eps * mixed_dm(3);
}

inline CMat fourier_matrix(int d) {
  const auto w = omega_roots(d);
  CMat f(d, d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k)
      f(j, k) = w[static_cast<std::size_t>((j * k) % d)] / std::sqrt(static_cast<double>(d));
  return f;
}

// Diagonal non-Clifford unitary diag(1, zeta, zeta^{-1}) with zeta = e^{2pi i/9}.
inline CMat qutrit_t_gate() {
  CMat u = CMat::Zero(3, 3);
  u(0, 0) = 1.0;
  u(1, 1) = std::polar(1.0, 2.0 * std::numbers::pi / 9.0);
  u(2, 2) = std::polar(1.0, -2.0 * std::numbers::pi / 9.0);
  return u;
}

// Choi state (id x E)|phi+><phi+| for E(rho) = U rho U^dag.
inline CMat choi_of_unitary(const CMat& u) {
  const Eigen::Index d = u.rows();
  CMat j = CMat::Zero(d * d, d * d);
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index b = 0; b < d; ++b)
      for (Eigen::Index x = 0; x < d; ++x)
        for (Eigen::Index y = 0; y < d; ++y)
          j(a * d + x, b * d + y) += u(x, a) * std::conj(u(y, b)) / static_cast<double>(d);
  return j;
}

inline CMat choi_identity(int dim) { return choi_of_unitary(CMat::Identity(dim, dim)); }

// Choi of the depolarizing channel rho -> (1-lambda) rho + lambda 1/d.
inline CMat choi_depolarizing(int dim, double lambda = 1.0) {
  const Eigen::Index d2 = static_cast<Eigen::Index>(dim) * dim;
  return (1.0 - lambda) * choi_identity(dim) + lambda * CMat::Identity(d2, d2) /
                                                   static_cast<double>(d2);
}

// Stochastic ChannelWigner of a convex mixture of displacement channels;
// each displacement acts on phase space as the permutation z -> z + a.
inline ChannelWigner displacement_mixture_channel(
    PrimeDim d, int n, const std::vector<std::pair<PhasePoint, double>>& terms) {
  const std::size_t s = phase_space_size(d, n);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(s, s);
  for (const auto& [a, prob] : terms)
    for (std::size_t i = 0; i < s; ++i) {
      const PhasePoint z = PhasePoint::from_index(d, n, i);
      m(static_cast<Eigen::Index>((z + a).index()), static_cast<Eigen::Index>(i)) += prob;
    }
  return {d, n, n, std::move(m)};
}

}  // namespace magicdist
