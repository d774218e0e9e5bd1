#pragma once

// Relative majorization for quasi-distributions via Lorenz curves.
//
// (w, r) majorizes (w', r') exactly when the Lorenz curve of w relative to r
// never dips below that of w' relative to r'.  Because every curve here is
// concave (components sorted by ratio), dominance only needs to be checked
// at the elbows of the dominated curve.  The L1 criterion
//   sum_i |w_i - r_i t| >= sum_i |w'_i - r'_i t|  for all real t
// is an equivalent formulation; both sides are piecewise linear in t with
// breakpoints at the component ratios and coincide outside the breakpoint
// hull, so testing the finite breakpoint set plus one exterior point per
// side decides it.

#include <magicdist/numeric.hpp>

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace magicdist {

template <class V>
V default_dominance_tol() {
  if constexpr (is_exact_number_v<V>)
    return Rational(1, big_pow(10, 12));
  else
    return value_from_rational<V>(Rational(1, big_pow(10, 9)));
}

template <class V>
struct LorenzCurve {
  // Elbows (x, L) including the end points (0,0) and (1,1); x strictly
  // increasing, slopes non-increasing.
  std::vector<std::pair<V, V>> pts;
  static constexpr bool exact_values = is_exact_number_v<V>;

  std::size_t elbow_count() const { return pts.size() >= 2 ? pts.size() - 2 : 0; }

  V value_at(const V& x) const {
    const V zero = value_from_int<V>(0);
    const V one = value_from_int<V>(1);
    if (!(x > zero)) return zero;
    if (!(x < one)) return pts.back().second;
    std::size_t lo = 0, hi = pts.size() - 1;
    while (hi - lo > 1) {
      const std::size_t mid = (lo + hi) / 2;
      if (pts[mid].first <= x)
        lo = mid;
      else
        hi = mid;
    }
    const auto& [x0, l0] = pts[lo];
    const auto& [x1, l1] = pts[hi];
    const V dx = x1 - x0;
    // In log-float mode consecutive abscissae can be indistinguishable at
    // working precision; the segment values then differ below noise too.
    if (!(dx > value_from_int<V>(0))) return l0;
    return l0 + (l1 - l0) * (x - x0) / dx;
  }

  // Concave => the maximum sits on an elbow.
  V peak() const {
    V best = pts.front().second;
    for (const auto& [x, l] : pts)
      if (l > best) best = l;
    return best;
  }

  V peak_x() const {
    V best = pts.front().second, bx = pts.front().first;
    for (const auto& [x, l] : pts)
      if (l > best) {
        best = l;
        bx = x;
      }
    return bx;
  }

  // this(x) >= other(x) - tol at every elbow of the dominated curve, with
  // tol applied relative to the compared magnitudes (floor 1).
  bool dominates(const LorenzCurve& other, const V& tol) const {
    for (std::size_t i = 1; i < other.pts.size(); ++i) {
      const V& x = other.pts[i].first;
      const V& lb = other.pts[i].second;
      const V la = value_at(x);
      V scale = value_from_int<V>(1);
      if (num_abs(la) > scale) scale = num_abs(la);
      if (num_abs(lb) > scale) scale = num_abs(lb);
      if (la + tol * scale < lb) return false;
    }
    return true;
  }

  bool dominates(const LorenzCurve& other) const {
    return dominates(other, default_dominance_tol<V>());
  }

  // Area of the region between the curve and the line y = 1.
  V area_above_one() const {
    const V one = value_from_int<V>(1);
    const V two = value_from_int<V>(2);
    V area = value_from_int<V>(0);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      const auto& [x0, l0] = pts[i];
      const auto& [x1, l1] = pts[i + 1];
      const bool above0 = l0 > one, above1 = l1 > one;
      if (!above0 && !above1) continue;
      if (above0 && above1) {
        area += ((l0 - one) + (l1 - one)) * (x1 - x0) / two;
      } else {
        // Single crossing of y = 1 inside the segment.
        const V xc = x0 + (one - l0) * (x1 - x0) / (l1 - l0);
        if (above1)
          area += (l1 - one) * (x1 - xc) / two;
        else
          area += (l0 - one) * (xc - x0) / two;
      }
    }
    return area;
  }
};

namespace detail {

// Builds a curve from segments (dx, dL) listed in non-increasing slope
// order; consecutive equal-slope segments are merged so the elbow list is
// canonical.
template <class V>
LorenzCurve<V> curve_from_segments(std::vector<std::pair<V, V>> segs,
                                   bool require_unit_end = true) {
  LorenzCurve<V> c;
  c.pts.reserve(segs.size() + 1);
  const V zero = value_from_int<V>(0);
  const V one = value_from_int<V>(1);
  c.pts.emplace_back(zero, zero);
  std::vector<std::pair<V, V>> merged;
  std::size_t i = 0;
  while (i < segs.size()) {
    V dx = segs[i].first, dl = segs[i].second;
    std::size_t j = i + 1;
    while (j < segs.size() &&
           approx_same(segs[j].second * dx, dl * segs[j].first, 1e-12)) {
      dx += segs[j].first;
      dl += segs[j].second;
      ++j;
    }
    if (!(dx > zero)) throw std::invalid_argument("LorenzCurve: nonpositive x step");
    merged.emplace_back(dx, dl);
    i = j;
  }
  // Concavity sanity on the merged segments: slopes non-increasing up to
  // round-off.  Compared in the value domain; log-float magnitudes can
  // exceed double range for large copy counts.
  for (std::size_t k = 0; k + 1 < merged.size(); ++k) {
    const auto& [dx0, dl0] = merged[k];
    const auto& [dx1, dl1] = merged[k + 1];
    if constexpr (is_exact_number_v<V>) {
      if (dl1 * dx0 > dl0 * dx1)
        throw std::invalid_argument("LorenzCurve: slopes not non-increasing");
    } else {
      const V s0 = dl0 / dx0, s1 = dl1 / dx1;
      V scale = one;
      if (num_abs(s0) > scale) scale = num_abs(s0);
      if (num_abs(s1) > scale) scale = num_abs(s1);
      if (s1 > s0 + value_from_rational<V>(Rational(1, big_pow(10, 12))) * scale)
        throw std::invalid_argument("LorenzCurve: slopes not non-increasing");
    }
  }
  V x = zero, l = zero;
  for (const auto& [dx, dl] : merged) {
    x += dx;
    l += dl;
    c.pts.emplace_back(x, l);
  }
  if (require_unit_end) {
    if constexpr (is_exact_number_v<V>) {
      if (c.pts.back().first != one || c.pts.back().second != one)
        throw std::invalid_argument("LorenzCurve: curve does not end at (1,1)");
    } else {
      // In float modes the final cumulative L cancels huge positive and
      // negative partial sums, so the closure check is relative to the
      // curve's magnitude.
      V scale = one;
      for (const auto& [px, pl] : c.pts)
        if (num_abs(pl) > scale) scale = num_abs(pl);
      const V tol = value_from_rational<V>(Rational(1, big_pow(10, 9)));
      if (num_abs(c.pts.back().first - one) > tol ||
          num_abs(c.pts.back().second - one) > tol * scale)
        throw std::invalid_argument("LorenzCurve: curve does not end at (1,1)");
      c.pts.back() = {one, one};
    }
  }
  return c;
}

template <class V>
LorenzCurve<V> lorenz_curve_raw(const std::vector<V>& w, const std::vector<V>& r,
                                bool require_unit_end) {
  if (w.size() != r.size() || w.empty())
    throw std::invalid_argument("lorenz_curve: length mismatch");
  const V zero = value_from_int<V>(0);
  for (const V& x : r)
    if (!(x > zero)) throw std::invalid_argument("lorenz_curve: reference entry not positive");
  std::vector<std::size_t> order(w.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<V> ratio(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) ratio[i] = w[i] / r[i];
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return ratio[b] < ratio[a]; });
  std::vector<std::pair<V, V>> segs;
  segs.reserve(w.size());
  for (std::size_t i : order) segs.emplace_back(r[i], w[i]);
  return curve_from_segments<V>(std::move(segs), require_unit_end);
}

}  // namespace detail

// A quasi-distribution w paired with the strictly positive reference r.
template <class V>
struct ReferencedPair {
  std::vector<V> w, r;

  ReferencedPair(std::vector<V> w_, std::vector<V> r_)
      : w(std::move(w_)), r(std::move(r_)) {
    if (w.size() != r.size() || w.empty())
      throw std::invalid_argument("ReferencedPair: length mismatch");
    const V zero = value_from_int<V>(0);
    for (const V& x : r)
      if (!(x > zero)) throw std::invalid_argument("ReferencedPair: zero reference entry");
    double sw = 0, sr = 0;
    for (const V& x : w) sw += to_double(x);
    for (const V& x : r) sr += to_double(x);
    if (std::abs(sw - 1.0) > 1e-10 || std::abs(sr - 1.0) > 1e-10)
      throw std::invalid_argument("ReferencedPair: vectors must sum to 1");
  }
};

template <class V>
LorenzCurve<V> lorenz_curve(const ReferencedPair<V>& pair) {
  return detail::lorenz_curve_raw(pair.w, pair.r, true);
}

template <class V>
bool curve_dominates(const LorenzCurve<V>& a, const LorenzCurve<V>& b, const V& tol) {
  return a.dominates(b, tol);
}

template <class V>
bool relative_majorizes(const ReferencedPair<V>& in, const ReferencedPair<V>& out,
                        const V& tol) {
  return lorenz_curve(in).dominates(lorenz_curve(out), tol);
}

template <class V>
bool relative_majorizes(const ReferencedPair<V>& in, const ReferencedPair<V>& out) {
  return relative_majorizes(in, out, default_dominance_tol<V>());
}

// L1-norm criterion, checked at the finite breakpoint set {w_i/r_i} of both
// pairs plus one exterior point on each side.
template <class V>
bool l1_criterion(const ReferencedPair<V>& in, const ReferencedPair<V>& out,
                  const V& tol) {
  std::vector<V> ts;
  for (std::size_t i = 0; i < in.w.size(); ++i) ts.push_back(in.w[i] / in.r[i]);
  for (std::size_t i = 0; i < out.w.size(); ++i) ts.push_back(out.w[i] / out.r[i]);
  std::sort(ts.begin(), ts.end());
  const V one = value_from_int<V>(1);
  ts.insert(ts.begin(), ts.front() - one);
  ts.push_back(ts.back() + one);
  auto l1_at = [](const std::vector<V>& w, const std::vector<V>& r, const V& t) {
    V s = value_from_int<V>(0);
    for (std::size_t i = 0; i < w.size(); ++i) s += num_abs(w[i] - r[i] * t);
    return s;
  };
  for (const V& t : ts) {
    const V lhs = l1_at(in.w, in.r, t);
    const V rhs = l1_at(out.w, out.r, t);
    V scale = value_from_int<V>(1);
    if (num_abs(lhs) > scale) scale = num_abs(lhs);
    if (num_abs(rhs) > scale) scale = num_abs(rhs);
    if (lhs + tol * scale < rhs) return false;
  }
  return true;
}

template <class V>
bool l1_criterion(const ReferencedPair<V>& in, const ReferencedPair<V>& out) {
  return l1_criterion(in, out, default_dominance_tol<V>());
}

template <class V>
V area_monotone(const LorenzCurve<V>& c) {
  return c.area_above_one();
}

// Embedding Gamma_a: w_i becomes a block of a_i entries w_i/a_i.
template <class V>
std::vector<V> gamma_embed(const std::vector<V>& w, const std::vector<int>& a) {
  if (w.size() != a.size())
    throw std::invalid_argument("gamma_embed: length mismatch");
  std::vector<V> out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (a[i] <= 0) throw std::invalid_argument("gamma_embed: multiplicities must be positive");
    const V block = w[i] / value_from_int<V>(a[i]);
    for (int k = 0; k < a[i]; ++k) out.push_back(block);
  }
  return out;
}

// Verifies L_{a w + b r | r}(x) = a L_{w|r}(x) + b x at all elbow abscissae.
template <class V>
bool lorenz_linearity_check(const std::vector<V>& w, const std::vector<V>& r, const V& a,
                            const V& b, double tol = 1e-12) {
  if (!(a > value_from_int<V>(0)))
    throw std::invalid_argument("lorenz_linearity_check: a must be positive");
  std::vector<V> mixed(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) mixed[i] = a * w[i] + b * r[i];
  const auto base = detail::lorenz_curve_raw(w, r, false);
  const auto combo = detail::lorenz_curve_raw(mixed, r, false);
  std::vector<V> xs;
  for (const auto& [x, l] : base.pts) xs.push_back(x);
  for (const auto& [x, l] : combo.pts) xs.push_back(x);
  for (const V& x : xs) {
    const V lhs = combo.value_at(x);
    const V rhs = a * base.value_at(x) + b * x;
    if constexpr (is_exact_number_v<V>) {
      if (lhs != rhs) return false;
    } else {
      const double dl = to_double(lhs), dr = to_double(rhs);
      if (std::abs(dl - dr) > tol * std::max({1.0, std::abs(dl), std::abs(dr)})) return false;
    }
  }
  return true;
}

}  // namespace magicdist
