#pragma once

// Exact n-copy machinery on component-multiplicity pairs.
//
// A quasi-distribution whose values repeat heavily is stored as pairs
// (value, multiplicity).  Tensor powers then reduce to a multinomial
// expansion over compositions: the n-copy list of {(w_i, m_i)} has entries
//   W_q = prod w_i^{q_i},  M_q = (n; q_1..q_D) prod m_i^{q_i}
// over all compositions q of n, which keeps d^{2n}-point distributions
// workable without d^{2n} storage.  Multiplicities are arbitrary-precision
// integers throughout; 8^n C(n,k) leaves 64 bits near n = 20.

#include <magicdist/majorization.hpp>
#include <magicdist/numeric.hpp>
#include <magicdist/wigner.hpp>

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <vector>

namespace magicdist {

template <class V>
struct PairList {
  PrimeDim dim{3};
  int copies = 1;
  std::vector<std::pair<V, BigInt>> pairs;  // (value, multiplicity)

  BigInt total_multiplicity() const {
    BigInt s = 0;
    for (const auto& [v, m] : pairs) s += m;
    return s;
  }

  V weighted_sum() const {
    V s = value_from_int<V>(0);
    for (const auto& [v, m] : pairs) s += value_times_big(v, m);
    return s;
  }

  // Sort by value descending and merge equal values (exact equality in
  // rational mode, relative tolerance 1e-12 in log-float mode).
  void sort_merge() {
    std::sort(pairs.begin(), pairs.end(),
              [](const auto& a, const auto& b) { return b.first < a.first; });
    std::vector<std::pair<V, BigInt>> out;
    for (auto& pr : pairs) {
      if (!out.empty() && approx_same(out.back().first, pr.first, 1e-12))
        out.back().second += pr.second;
      else
        out.push_back(std::move(pr));
    }
    pairs = std::move(out);
  }

  void validate() const {
    if (total_multiplicity() != big_pow(BigInt(dim.d), static_cast<unsigned>(2 * copies)))
      throw std::invalid_argument("PairList: multiplicities do not sum to d^{2n}");
    const double s = to_double(weighted_sum());
    if (std::abs(s - 1.0) > 1e-10)
      throw std::invalid_argument("PairList: weighted sum is not 1");
  }
};

// ---------------------------------------------------------------------------
// Noisy Strange state
// ---------------------------------------------------------------------------

inline Rational strange_v(const Rational& eps) { return Rational(1, 3) - Rational(4, 9) * eps; }
inline Rational strange_u(const Rational& eps) { return Rational(1, 6) - Rational(1, 18) * eps; }

inline void check_strange_eps(const Rational& eps) {
  if (eps < 0 || eps >= Rational(3, 4))
    throw std::domain_error("noisy_strange: eps outside [0, 3/4)");
}

// Component-multiplicity pairs {(-v, 1), (u, 8)} of the eps-noisy Strange
// state, with v = 1/3 - 4 eps/9 and u = 1/6 - eps/18.
template <class V = Rational>
PairList<V> noisy_strange_pairs(const Rational& eps) {
  check_strange_eps(eps);
  PairList<V> pl;
  pl.dim = PrimeDim(3);
  pl.copies = 1;
  pl.pairs = {{value_from_rational<V>(strange_u(eps)), BigInt(8)},
              {value_from_rational<V>(-strange_v(eps)), BigInt(1)}};
  pl.sort_merge();
  return pl;
}

// Same state as a dense 9-point quasi-distribution (negative value at the
// origin).
inline QuasiDistribution noisy_strange_wigner(double eps) {
  if (eps < 0.0 || eps >= 0.75)
    throw std::domain_error("noisy_strange: eps outside [0, 3/4)");
  const double v = 1.0 / 3.0 - 4.0 * eps / 9.0;
  const double u = 1.0 / 6.0 - eps / 18.0;
  std::vector<double> w(9, u);
  w[0] = -v;
  return {PrimeDim(3), 1, std::move(w)};
}

// ---------------------------------------------------------------------------
// Pair algebra
// ---------------------------------------------------------------------------

inline void for_each_composition(int n, int parts,
                                 const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> q(static_cast<std::size_t>(parts), 0);
  std::function<void(int, int)> rec = [&](int idx, int left) {
    if (idx == parts - 1) {
      q[static_cast<std::size_t>(idx)] = left;
      fn(q);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      q[static_cast<std::size_t>(idx)] = k;
      rec(idx + 1, left - k);
    }
  };
  rec(0, n);
}

template <class V>
PairList<V> pairs_product(const PairList<V>& a, const PairList<V>& b) {
  if (a.dim.d != b.dim.d) throw std::invalid_argument("pairs_product: dimension mismatch");
  PairList<V> out;
  out.dim = a.dim;
  out.copies = a.copies + b.copies;
  out.pairs.reserve(a.pairs.size() * b.pairs.size());
  for (const auto& [va, ma] : a.pairs)
    for (const auto& [vb, mb] : b.pairs) out.pairs.emplace_back(va * vb, ma * mb);
  out.sort_merge();
  return out;
}

template <class V>
PairList<V> pairs_power(const PairList<V>& a, int n) {
  if (n < 1) throw std::invalid_argument("pairs_power: n must be >= 1");
  const int parts = static_cast<int>(a.pairs.size());
  PairList<V> out;
  out.dim = a.dim;
  out.copies = a.copies * n;
  for_each_composition(n, parts, [&](const std::vector<int>& q) {
    V value = value_from_int<V>(1);
    BigInt mult = multinomial_big(q);
    for (int i = 0; i < parts; ++i) {
      if (q[static_cast<std::size_t>(i)] == 0) continue;
      const unsigned e = static_cast<unsigned>(q[static_cast<std::size_t>(i)]);
      value *= value_pow(a.pairs[static_cast<std::size_t>(i)].first, e);
      mult *= big_pow(a.pairs[static_cast<std::size_t>(i)].second, e);
    }
    out.pairs.emplace_back(value, mult);
  });
  out.sort_merge();
  return out;
}

// Lorenz curve of a pair list relative to the uniform distribution on the
// d^{2n} points.
template <class V>
LorenzCurve<V> lorenz_from_pairs(const PairList<V>& pl) {
  const BigInt total = big_pow(BigInt(pl.dim.d), static_cast<unsigned>(2 * pl.copies));
  PairList<V> sorted = pl;
  sorted.sort_merge();
  std::vector<std::pair<V, V>> segs;
  segs.reserve(sorted.pairs.size());
  for (const auto& [v, m] : sorted.pairs)
    segs.emplace_back(value_from_rational<V>(Rational(m, total)), value_times_big(v, m));
  return detail::curve_from_segments<V>(std::move(segs), true);
}

// ---------------------------------------------------------------------------
// Rescaled components (w, r, multiplicity) for non-uniform references
// ---------------------------------------------------------------------------

template <class V>
struct RescaledComponents {
  std::vector<std::tuple<V, V, BigInt>> entries;  // (w value, reference value, multiplicity)
};

template <class V>
RescaledComponents<V> rescaled_power(const RescaledComponents<V>& base, int n) {
  if (n < 1) throw std::invalid_argument("rescaled_power: n must be >= 1");
  const int parts = static_cast<int>(base.entries.size());
  RescaledComponents<V> out;
  for_each_composition(n, parts, [&](const std::vector<int>& q) {
    V w = value_from_int<V>(1), r = value_from_int<V>(1);
    BigInt mult = multinomial_big(q);
    for (int i = 0; i < parts; ++i) {
      const unsigned e = static_cast<unsigned>(q[static_cast<std::size_t>(i)]);
      if (e == 0) continue;
      w *= value_pow(std::get<0>(base.entries[static_cast<std::size_t>(i)]), e);
      r *= value_pow(std::get<1>(base.entries[static_cast<std::size_t>(i)]), e);
      mult *= big_pow(std::get<2>(base.entries[static_cast<std::size_t>(i)]), e);
    }
    out.entries.emplace_back(w, r, mult);
  });
  // Merge entries equal in both coordinates.
  std::sort(out.entries.begin(), out.entries.end(), [](const auto& a, const auto& b) {
    const int cw = std::get<0>(b) < std::get<0>(a) ? -1 : (std::get<0>(a) < std::get<0>(b) ? 1 : 0);
    if (cw != 0) return cw < 0;
    return std::get<1>(b) < std::get<1>(a);
  });
  RescaledComponents<V> merged;
  for (auto& e : out.entries) {
    if (!merged.entries.empty() &&
        approx_same(std::get<0>(merged.entries.back()), std::get<0>(e), 1e-12) &&
        approx_same(std::get<1>(merged.entries.back()), std::get<1>(e), 1e-12))
      std::get<2>(merged.entries.back()) += std::get<2>(e);
    else
      merged.entries.push_back(std::move(e));
  }
  return merged;
}

template <class V>
LorenzCurve<V> lorenz_from_rescaled(const RescaledComponents<V>& rc) {
  std::vector<std::tuple<V, V, BigInt>> entries = rc.entries;
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    return std::get<0>(b) / std::get<1>(b) < std::get<0>(a) / std::get<1>(a);
  });
  std::vector<std::pair<V, V>> segs;
  segs.reserve(entries.size());
  for (const auto& [w, r, m] : entries)
    segs.emplace_back(value_times_big(r, m), value_times_big(w, m));
  return detail::curve_from_segments<V>(std::move(segs), true);
}

// ---------------------------------------------------------------------------
// Partial binomial sums with parity
// ---------------------------------------------------------------------------

// Phi_+(m; n, p) = sum over even counts 2l <= m of C(n,2l) p^{2l}(1-p)^{n-2l};
// Phi_-(m; n, p) sums odd counts 2l+1 <= m.  m must carry the matching parity.
template <class V>
V phi_plus(int m, int n, const V& p) {
  if (m < 0 || m > n || m % 2 != 0)
    throw std::domain_error("phi_plus: m must be even in [0, n]");
  const V one = value_from_int<V>(1);
  V s = value_from_int<V>(0);
  for (int l = 0; 2 * l <= m; ++l) {
    V term = value_times_big(value_from_int<V>(1),
                             binomial_big(static_cast<unsigned>(n), static_cast<unsigned>(2 * l)));
    term *= value_pow(p, static_cast<unsigned>(2 * l));
    term *= value_pow(one - p, static_cast<unsigned>(n - 2 * l));
    s += term;
  }
  return s;
}

template <class V>
V phi_minus(int m, int n, const V& p) {
  if (m < 0 || m > n || m % 2 != 1)
    throw std::domain_error("phi_minus: m must be odd in [0, n]");
  const V one = value_from_int<V>(1);
  V s = value_from_int<V>(0);
  for (int l = 0; 2 * l + 1 <= m; ++l) {
    V term = value_times_big(
        value_from_int<V>(1),
        binomial_big(static_cast<unsigned>(n), static_cast<unsigned>(2 * l + 1)));
    term *= value_pow(p, static_cast<unsigned>(2 * l + 1));
    term *= value_pow(one - p, static_cast<unsigned>(n - 2 * l - 1));
    s += term;
  }
  return s;
}

// ---------------------------------------------------------------------------
// Closed-form Lorenz curve of n noisy Strange copies (unital reference)
// ---------------------------------------------------------------------------

// Peak coordinates: x* = 1/2 + (1/2)(7/9)^n, L* = 1/2 + (1/2)((15-8eps)/9)^n.
inline Rational strange_peak_x(int n) {
  return Rational(1, 2) + Rational(1, 2) * rational_pow(Rational(7, 9),
                                                        static_cast<unsigned>(n));
}

inline Rational strange_peak_l(int n, const Rational& eps) {
  const Rational base = (Rational(15) - Rational(8) * eps) / Rational(9);
  return Rational(1, 2) + Rational(1, 2) * rational_pow(base, static_cast<unsigned>(n));
}

// Elbow list of L_{rho_S(eps)^{(x) n} | uniform} assembled from the
// closed-form component family (+-) u^i v^{n-i} with multiplicity 8^i C(n,i),
// ordered by regime: for eps < 3/7 (v >= u) positive components descend with
// the power of u ascending and negative ones follow with it descending; for
// eps >= 3/7 the roles of u and v swap.  No enumeration of the 9^n points is
// involved, so this also serves as an independent cross-check of the pair
// algebra.
template <class V>
LorenzCurve<V> strange_elbows_unital(int n, const Rational& eps) {
  if (n < 1) throw std::domain_error("strange_elbows_unital: n must be >= 1");
  check_strange_eps(eps);
  const Rational v = strange_v(eps), u = strange_u(eps);
  const bool low_noise = eps < Rational(3, 7);  // v >= u

  // Powers of u; the power of v is n - i.
  std::vector<int> pos, neg;
  const int pos_start = (n % 2 == 0) ? 0 : 1;
  const int neg_start = (n % 2 == 0) ? 1 : 0;
  for (int i = pos_start; i <= n; i += 2) pos.push_back(i);
  for (int i = neg_start; i <= n; i += 2) neg.push_back(i);
  std::vector<int> order;
  if (low_noise) {
    order = pos;                                    // value u^i v^{n-i} decreasing in i
    order.insert(order.end(), neg.rbegin(), neg.rend());  // magnitudes decrease with i
  } else {
    order.insert(order.end(), pos.rbegin(), pos.rend());  // value increasing in i
    order.insert(order.end(), neg.begin(), neg.end());
  }

  const BigInt total = big_pow(BigInt(9), static_cast<unsigned>(n));
  std::vector<std::pair<V, V>> segs;
  segs.reserve(order.size());
  for (int i : order) {
    const BigInt mult = big_pow(BigInt(8), static_cast<unsigned>(i)) *
                        binomial_big(static_cast<unsigned>(n), static_cast<unsigned>(i));
    Rational value = rational_pow(u, static_cast<unsigned>(i)) *
                     rational_pow(v, static_cast<unsigned>(n - i));
    if ((n - i) % 2 == 1) value = -value;
    segs.emplace_back(value_from_rational<V>(Rational(mult, total)),
                      value_times_big(value_from_rational<V>(value), mult));
  }
  return detail::curve_from_segments<V>(std::move(segs), true);
}

}  // namespace magicdist
