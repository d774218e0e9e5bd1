#pragma once

// Discrete phase space for n qudits of odd prime dimension d.
//
// The displacement operators D_z = tau^{qp} X^q Z^p generate the
// Heisenberg-Weyl group, and the phase-point operators
//   A_z = (1/d^n) sum_y omega^{eta(z,y)} D_y
// form the Hermitian operator basis underlying the Wigner representation.
// For odd d the phase tau = -exp(i*pi/d) equals omega^{(d+1)/2}, so every
// matrix entry is a d-th root of unity; the roots are computed once per call
// from their exact angle instead of accumulating products.

#include <magicdist/matrix.hpp>

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace magicdist {

inline bool is_odd_prime(int d) {
  if (d < 3 || d % 2 == 0) return false;
  for (int f = 3; f * f <= d; f += 2)
    if (d % f == 0) return false;
  return true;
}

struct PrimeDim {
  int d = 3;
  PrimeDim() = default;
  explicit PrimeDim(int dim) : d(dim) {
    if (!is_odd_prime(d))
      throw std::invalid_argument("PrimeDim: d = " + std::to_string(d) +
                                  " is not an odd prime");
  }
  friend bool operator==(PrimeDim a, PrimeDim b) { return a.d == b.d; }
};

// Largest supported Hilbert-space dimension d^n for dense-matrix operations.
inline int& max_matrix_dim() {
  static int v = 729;
  return v;
}

inline long ipow(long b, int e) {
  long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// A point z = (q_1..q_n, p_1..p_n) of the phase space Z_d^{2n}.
struct PhasePoint {
  PrimeDim dim;
  std::vector<int> q, p;

  PhasePoint(PrimeDim d_, std::vector<int> q_, std::vector<int> p_)
      : dim(d_), q(std::move(q_)), p(std::move(p_)) {
    if (q.size() != p.size() || q.empty())
      throw std::invalid_argument("PhasePoint: q and p must have equal positive length");
    for (auto& c : q) c = mod(c);
    for (auto& c : p) c = mod(c);
  }

  static PhasePoint single(PrimeDim d, int q, int p) { return {d, {q}, {p}}; }
  static PhasePoint origin(PrimeDim d, int n) {
    return {d, std::vector<int>(n, 0), std::vector<int>(n, 0)};
  }

  int d() const { return dim.d; }
  int n() const { return static_cast<int>(q.size()); }

  int mod(int c) const {
    const int r = c % dim.d;
    return r < 0 ? r + dim.d : r;
  }

  // Linear index with coordinates ordered (q_1..q_n, p_1..p_n), last fastest.
  std::size_t index() const {
    std::size_t idx = 0;
    for (int c : q) idx = idx * dim.d + static_cast<std::size_t>(c);
    for (int c : p) idx = idx * dim.d + static_cast<std::size_t>(c);
    return idx;
  }

  static PhasePoint from_index(PrimeDim d, int n, std::size_t idx) {
    std::vector<int> q(n), p(n);
    for (int i = n - 1; i >= 0; --i) {
      p[i] = static_cast<int>(idx % d.d);
      idx /= d.d;
    }
    for (int i = n - 1; i >= 0; --i) {
      q[i] = static_cast<int>(idx % d.d);
      idx /= d.d;
    }
    return {d, std::move(q), std::move(p)};
  }

  // Momentum-reversed point (q, -p).
  PhasePoint bar() const {
    PhasePoint z = *this;
    for (auto& c : z.p) c = z.mod(-c);
    return z;
  }

  PhasePoint concat(const PhasePoint& o) const {
    if (dim.d != o.dim.d) throw std::invalid_argument("PhasePoint: dimension mismatch");
    PhasePoint z = *this;
    z.q.insert(z.q.end(), o.q.begin(), o.q.end());
    z.p.insert(z.p.end(), o.p.begin(), o.p.end());
    return z;
  }

  friend PhasePoint operator+(const PhasePoint& a, const PhasePoint& b) {
    if (a.dim.d != b.dim.d || a.n() != b.n())
      throw std::invalid_argument("PhasePoint: dimension mismatch");
    PhasePoint z = a;
    for (int i = 0; i < a.n(); ++i) {
      z.q[i] = z.mod(a.q[i] + b.q[i]);
      z.p[i] = z.mod(a.p[i] + b.p[i]);
    }
    return z;
  }

  friend bool operator==(const PhasePoint& a, const PhasePoint& b) {
    return a.dim.d == b.dim.d && a.q == b.q && a.p == b.p;
  }
};

inline std::size_t phase_space_size(PrimeDim d, int n) {
  std::size_t s = 1;
  for (int i = 0; i < 2 * n; ++i) s *= static_cast<std::size_t>(d.d);
  return s;
}

// Symplectic inner product eta(z, y) = q_y . p_z - p_y . q_z  (mod d).
inline int symplectic_product(const PhasePoint& z, const PhasePoint& y) {
  if (z.dim.d != y.dim.d || z.n() != y.n())
    throw std::invalid_argument("symplectic_product: dimension mismatch");
  long acc = 0;
  for (int i = 0; i < z.n(); ++i) acc += y.q[i] * z.p[i] - y.p[i] * z.q[i];
  const int d = z.d();
  const int r = static_cast<int>(acc % d);
  return r < 0 ? r + d : r;
}

inline std::vector<std::complex<double>> omega_roots(int d) {
  std::vector<std::complex<double>> w(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k)
    w[static_cast<std::size_t>(k)] =
        std::polar(1.0, 2.0 * std::numbers::pi * k / d);
  return w;
}

namespace detail {

inline void check_matrix_budget(PrimeDim d, int n) {
  long dim = 1;
  for (int i = 0; i < n; ++i) {
    dim *= d.d;
    if (dim > max_matrix_dim())
      throw std::domain_error("phase_space: d^n exceeds max_matrix_dim()");
  }
}

inline CMat displacement_single(PrimeDim dim, int q, int p) {
  const int d = dim.d;
  const auto w = omega_roots(d);
  const int half = (d + 1) / 2;  // tau = omega^{(d+1)/2}
  CMat m = CMat::Zero(d, d);
  for (int k = 0; k < d; ++k) {
    const int e = ((half * q % d) * p % d + p * k % d) % d;
    m((k + q) % d, k) = w[static_cast<std::size_t>(e)];
  }
  return m;
}

inline CMat phase_point_single(PrimeDim dim, int zq, int zp) {
  const int d = dim.d;
  const auto w = omega_roots(d);
  CMat acc = CMat::Zero(d, d);
  for (int yq = 0; yq < d; ++yq)
    for (int yp = 0; yp < d; ++yp) {
      int e = (yq * zp - yp * zq) % d;
      if (e < 0) e += d;
      acc += w[static_cast<std::size_t>(e)] * displacement_single(dim, yq, yp);
    }
  return acc / static_cast<double>(d);
}

}  // namespace detail

inline CMat displacement_operator(const PhasePoint& z) {
  detail::check_matrix_budget(z.dim, z.n());
  CMat m = detail::displacement_single(z.dim, z.q[0], z.p[0]);
  for (int i = 1; i < z.n(); ++i)
    m = kron(m, detail::displacement_single(z.dim, z.q[i], z.p[i]));
  return m;
}

inline CMat phase_point_operator(const PhasePoint& z) {
  detail::check_matrix_budget(z.dim, z.n());
  CMat m = detail::phase_point_single(z.dim, z.q[0], z.p[0]);
  for (int i = 1; i < z.n(); ++i)
    m = kron(m, detail::phase_point_single(z.dim, z.q[i], z.p[i]));
  return m;
}

// A_z evaluated straight from its defining 2n-dimensional sum.  Quadratic in
// the phase-space size; kept as the reference path for cross-checks.
inline CMat phase_point_operator_sum(const PhasePoint& z) {
  detail::check_matrix_budget(z.dim, z.n());
  const auto w = omega_roots(z.d());
  const std::size_t npts = phase_space_size(z.dim, z.n());
  const long dim = ipow(z.d(), z.n());
  CMat acc = CMat::Zero(dim, dim);
  for (std::size_t i = 0; i < npts; ++i) {
    const PhasePoint y = PhasePoint::from_index(z.dim, z.n(), i);
    acc += w[static_cast<std::size_t>(symplectic_product(z, y))] * displacement_operator(y);
  }
  return acc / static_cast<double>(dim);
}

}  // namespace magicdist
