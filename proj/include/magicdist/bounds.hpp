#pragma once

// Upper bounds on the magic distillation rate R = m/n for noisy Strange
// states, plus the Renyi entropy/divergence family on quasi-distributions.
//
//   unital:     R <= log(3 - 4 eps) / log(3 - 4 eps')
//   mana:       R <= M(in)/M(out)
//   numeric:    R <= m*/n from the full Lorenz dominance constraint set
//   renyi:      R <= (2 log d - H_a(in)) / (2 log d - H_a(out))
//   thermal:    R <= [log(1 - 4eps/3) + beta(phi - F)] / [...']
//   divergence: R <= D_a(W_in || r_in) / D_a(W_out || r_out)
//
// Entropies use admissible orders alpha = 2a/(2b-1) with a >= b, for which
// w^alpha = |w|^alpha keeps everything real and Schur-concave even in the
// presence of negative components.  All sums run in the log domain so that
// |w|^alpha survives large alpha.
//
// Degenerate denominators (<= 0) yield an explicit "unbounded" sentinel
// instead of a negative rate; non-positive numerators clamp the rate to 0
// with a no_distillation flag.

#include <magicdist/numeric.hpp>
#include <magicdist/pair_list.hpp>
#include <magicdist/thermal.hpp>
#include <magicdist/wigner.hpp>

#include <json.hpp>

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace magicdist {

using json = nlohmann::ordered_json;

// Admissible Renyi order alpha = 2a/(2b-1), a >= b >= 1, so alpha > 1.
struct RenyiOrder {
  long a = 1, b = 1;

  RenyiOrder(long a_, long b_) : a(a_), b(b_) {
    if (a < 1 || b < 1 || a < b)
      throw std::domain_error("RenyiOrder: need a >= b >= 1");
  }

  double alpha() const { return 2.0 * static_cast<double>(a) / (2.0 * b - 1.0); }
  Rational alpha_exact() const { return Rational(2 * a, 2 * b - 1); }

  std::string str() const {
    const Rational r = alpha_exact();
    if (denominator(r) == 1) return numerator(r).convert_to<std::string>();
    return numerator(r).convert_to<std::string>() + "/" +
           denominator(r).convert_to<std::string>();
  }
};

// Dense near alpha = 1+ where the bounds tighten for high-negativity states.
inline std::vector<RenyiOrder> default_order_grid() {
  std::vector<RenyiOrder> grid;
  std::vector<Rational> seen;
  auto push = [&](long a, long b) {
    const Rational al(2 * a, 2 * b - 1);
    for (const auto& s : seen)
      if (s == al) return;
    seen.push_back(al);
    grid.emplace_back(a, b);
  };
  for (long b = 1; b <= 12; ++b)
    for (long a = b; a <= 12; ++a) push(a, b);
  push(5, 1);    // alpha = 10
  push(50, 50);  // alpha = 100/99
  return grid;
}

struct BoundResult {
  std::string method;
  double rate = 0;
  bool no_distillation = false;  // numerator <= 0: the bound forbids any output
  bool unbounded = false;        // denominator <= 0: no constraint from this bound
  json params = json::object();
  json diagnostics = json::object();

  json to_json() const {
    json j;
    j["method"] = method;
    j["params"] = params;
    if (unbounded)
      j["rate"] = "unbounded";
    else
      j["rate"] = rate;
    j["flags"] = {{"no_distillation", no_distillation}, {"unbounded", unbounded}};
    if (!diagnostics.empty()) j["diagnostics"] = diagnostics;
    return j;
  }
};

namespace detail {

inline BoundResult make_rate(std::string method, double num, double den, json params,
                             json diagnostics = json::object()) {
  BoundResult r;
  r.method = std::move(method);
  r.params = std::move(params);
  r.diagnostics = std::move(diagnostics);
  r.diagnostics["numerator"] = num;
  r.diagnostics["denominator"] = den;
  if (den <= 0) {
    r.unbounded = true;
    r.rate = std::numeric_limits<double>::infinity();
  } else if (num <= 0) {
    r.no_distillation = true;
    r.rate = 0;
  } else {
    r.rate = num / den;
  }
  return r;
}

inline void check_eps_range(double eps, double eps_prime, double eps_max) {
  if (!(eps_prime >= 0) || !(eps_prime <= eps) || !(eps <= eps_max))
    throw std::domain_error("bound: need 0 <= eps' <= eps <= " + fmt17(eps_max));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Closed-form unital and mana bounds
// ---------------------------------------------------------------------------

inline BoundResult bound_unital_inf(double eps, double eps_prime) {
  detail::check_eps_range(eps, eps_prime, 0.75 - 1e-15);
  const double num = std::log(3.0 - 4.0 * eps);
  const double den = std::log(3.0 - 4.0 * eps_prime);
  return detail::make_rate("unital_inf", num, den,
                           {{"eps", eps}, {"eps_prime", eps_prime}});
}

inline BoundResult bound_mana(const QuasiDistribution& w_in, const QuasiDistribution& w_out) {
  const double m_in = mana(w_in), m_out = mana(w_out);
  return detail::make_rate("mana", m_in, m_out, json::object(),
                           {{"mana_in", m_in}, {"mana_out", m_out}});
}

inline BoundResult bound_mana_strange(double eps, double eps_prime) {
  detail::check_eps_range(eps, eps_prime, 0.75 - 1e-15);
  BoundResult r = bound_mana(noisy_strange_wigner(eps), noisy_strange_wigner(eps_prime));
  r.params = {{"eps", eps}, {"eps_prime", eps_prime}};
  return r;
}

// ---------------------------------------------------------------------------
// Numerical majorization bound
// ---------------------------------------------------------------------------

namespace detail {

template <class V>
int numeric_m_star(const Rational& eps, const Rational& eps_prime, int n, int m_hi) {
  const auto in_curve = lorenz_from_pairs(pairs_power(noisy_strange_pairs<V>(eps), n));
  const auto base_out = noisy_strange_pairs<V>(eps_prime);
  for (int m = m_hi; m >= 1; --m) {
    const auto out_curve = lorenz_from_pairs(pairs_power(base_out, m));
    if (in_curve.dominates(out_curve)) return m;
  }
  return 0;
}

}  // namespace detail

enum class NumericMode { exact_rational, log_float };

// R_num(n) = m*/n with m* the largest output copy count whose n'-copy curve
// is dominated by the n-copy input curve.  The search descends from the
// first-elbow ceiling: the n-copy initial Lorenz slope is
// (9 max(u, v))^n, so dominance forces m <= n log(9 max(u,v)_in) /
// log(9 max(u,v)_out); for eps <= 3/7 this is exactly n log(3-4eps) /
// log(3-4eps').  The first-elbow constraint is one of the dominance checks,
// so no larger m can succeed.
inline BoundResult bound_numeric(const Rational& eps, const Rational& eps_prime, int n,
                                 NumericMode mode = NumericMode::exact_rational) {
  if (n < 1) throw std::domain_error("bound_numeric: n must be >= 1");
  check_strange_eps(eps);
  check_strange_eps(eps_prime);
  if (eps_prime > eps) throw std::domain_error("bound_numeric: need eps' <= eps");
  auto initial_slope = [](const Rational& e) {
    return 9.0 * std::max(to_double(strange_u(e)), to_double(strange_v(e)));
  };
  const double r_cap = std::log(initial_slope(eps)) / std::log(initial_slope(eps_prime));
  const int m_hi = static_cast<int>(std::floor(n * r_cap + 1.0 + 1e-12));
  const int m_star = (mode == NumericMode::exact_rational)
                         ? detail::numeric_m_star<Rational>(eps, eps_prime, n, m_hi)
                         : detail::numeric_m_star<SignedLog>(eps, eps_prime, n, m_hi);
  BoundResult r = detail::make_rate(
      "numeric", static_cast<double>(m_star), static_cast<double>(n),
      {{"eps", to_double(eps)}, {"eps_prime", to_double(eps_prime)}, {"n", n}},
      {{"m_star", m_star},
       {"m_ceiling", m_hi},
       {"mode", mode == NumericMode::exact_rational ? "exact_rational" : "log_float"}});
  return r;
}

// ---------------------------------------------------------------------------
// Renyi entropies and divergences on quasi-distributions
// ---------------------------------------------------------------------------

namespace detail {

inline double logsumexp(const std::vector<double>& terms) {
  double hi = -std::numeric_limits<double>::infinity();
  for (double t : terms) hi = std::max(hi, t);
  if (!std::isfinite(hi)) return hi;
  double s = 0;
  for (double t : terms) s += std::exp(t - hi);
  return hi + std::log(s);
}

}  // namespace detail

// H_alpha(w) = log(sum_i |w_i|^alpha) / (1 - alpha).
inline double renyi_entropy(std::span<const double> w, const RenyiOrder& order) {
  const double alpha = order.alpha();
  std::vector<double> terms;
  terms.reserve(w.size());
  for (double x : w)
    if (x != 0.0) terms.push_back(alpha * std::log(std::abs(x)));
  return detail::logsumexp(terms) / (1.0 - alpha);
}

inline double renyi_entropy(const QuasiDistribution& w, const RenyiOrder& order) {
  return renyi_entropy(std::span<const double>(w.values), order);
}

// D_alpha(w || r) = log(sum_i |w_i|^alpha r_i^{1-alpha}) / (alpha - 1).
inline double renyi_divergence(std::span<const double> w, std::span<const double> r,
                               const RenyiOrder& order) {
  if (w.size() != r.size())
    throw std::invalid_argument("renyi_divergence: length mismatch");
  const double alpha = order.alpha();
  std::vector<double> terms;
  terms.reserve(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!(r[i] > 0)) throw std::domain_error("renyi_divergence: reference entry not positive");
    if (w[i] != 0.0)
      terms.push_back(alpha * std::log(std::abs(w[i])) + (1.0 - alpha) * std::log(r[i]));
  }
  return detail::logsumexp(terms) / (alpha - 1.0);
}

// D_inf(w || r) = log max_i w_i/r_i; the log of the Lorenz curve's initial
// slope.
inline double d_infinity(std::span<const double> w, std::span<const double> r) {
  if (w.size() != r.size()) throw std::invalid_argument("d_infinity: length mismatch");
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!(r[i] > 0)) throw std::domain_error("d_infinity: reference entry not positive");
    best = std::max(best, w[i] / r[i]);
  }
  return std::log(best);
}

// -eps_b H_{1+eps_b}(w) = log sum_i |w_i|^{1+eps_b} along eps_b = 1/(2b-1),
// converging to mana(w) as b grows.
struct ManaResidueRecord {
  std::vector<std::pair<long, double>> sequence;  // (b, -eps_b * H_{1+eps_b})
  double final_value = 0;
};

inline ManaResidueRecord mana_residue(std::span<const double> w, long b_max) {
  if (b_max < 1) throw std::domain_error("mana_residue: b_max must be >= 1");
  ManaResidueRecord rec;
  rec.sequence.reserve(static_cast<std::size_t>(b_max));
  for (long b = 1; b <= b_max; ++b) {
    const RenyiOrder order(b, b);  // alpha = 2b/(2b-1) = 1 + 1/(2b-1)
    const double eps_b = 1.0 / (2.0 * b - 1.0);
    rec.sequence.emplace_back(b, -eps_b * renyi_entropy(w, order));
  }
  rec.final_value = rec.sequence.back().second;
  return rec;
}

inline ManaResidueRecord mana_residue(const QuasiDistribution& w, long b_max) {
  return mana_residue(std::span<const double>(w.values), b_max);
}

// ---------------------------------------------------------------------------
// Entropic bounds
// ---------------------------------------------------------------------------

inline BoundResult bound_renyi(double eps, double eps_prime, const RenyiOrder& order) {
  detail::check_eps_range(eps, eps_prime, 0.75 - 1e-15);
  const double two_log_d = 2.0 * std::log(3.0);
  const double h_in = renyi_entropy(noisy_strange_wigner(eps), order);
  const double h_out = renyi_entropy(noisy_strange_wigner(eps_prime), order);
  return detail::make_rate("renyi", two_log_d - h_in, two_log_d - h_out,
                           {{"eps", eps}, {"eps_prime", eps_prime}, {"alpha", order.str()}},
                           {{"H_in", h_in}, {"H_out", h_out}});
}

inline BoundResult bound_renyi_optimized(double eps, double eps_prime,
                                         const std::vector<RenyiOrder>& grid =
                                             default_order_grid()) {
  std::optional<BoundResult> best;
  for (const RenyiOrder& order : grid) {
    BoundResult cand = bound_renyi(eps, eps_prime, order);
    if (cand.unbounded) continue;
    if (!best || cand.rate < best->rate) best = std::move(cand);
  }
  if (!best) {
    BoundResult r = detail::make_rate("renyi", 1, 0,
                                      {{"eps", eps}, {"eps_prime", eps_prime}});
    r.diagnostics["note"] = "no admissible order gave a positive denominator";
    return r;
  }
  best->diagnostics["optimized_over"] = grid.size();
  return *best;
}

// General divergence bound with uncorrelated output references.
inline BoundResult bound_divergence(std::span<const double> w_in, std::span<const double> r_in,
                                    std::span<const double> w_out,
                                    std::span<const double> r_out, const RenyiOrder& order) {
  const double num = renyi_divergence(w_in, r_in, order);
  const double den = renyi_divergence(w_out, r_out, order);
  return detail::make_rate("divergence", num, den, {{"alpha", order.str()}},
                           {{"D_in", num}, {"D_out", den}});
}

// ---------------------------------------------------------------------------
// Temperature-dependent bounds
// ---------------------------------------------------------------------------

// R <= [log(1 - 4eps/3) + beta(phi - F)] / [log(1 - 4eps'/3) + beta(phi' - F')]
// evaluated through the beta-products, which stay finite at beta = 0 where
// the bound reduces to the unital one.
inline BoundResult bound_thermal(double eps, double eps_prime, const ThermalContext& in,
                                 const ThermalContext& out) {
  detail::check_eps_range(eps, eps_prime, 3.0 / 7.0 + 1e-12);
  if (std::abs(in.beta - out.beta) > 1e-12)
    throw std::domain_error("bound_thermal: contexts at different temperatures");
  const double num = std::log1p(-4.0 * eps / 3.0) + (in.beta_phi() - in.beta_f());
  const double den = std::log1p(-4.0 * eps_prime / 3.0) + (out.beta_phi() - out.beta_f());
  return detail::make_rate(
      "thermal", num, den,
      {{"eps", eps}, {"eps_prime", eps_prime}, {"beta", in.beta}},
      {{"beta_phi_in", in.beta_phi()},
       {"beta_F_in", in.beta_f()},
       {"beta_phi_out", out.beta_phi()},
       {"beta_F_out", out.beta_f()}});
}

// beta* = ln 2 / (E_max - E_s); infinite when E_max = E_s, in which case the
// threshold error stays at 3/7 for every temperature.
inline double beta_star_threshold(const std::array<double, 3>& energies) {
  const double e_s = energies[0];
  const double e_max = std::max({energies[0], energies[1], energies[2]});
  if (e_max == e_s) return std::numeric_limits<double>::infinity();
  return std::log(2.0) / (e_max - e_s);
}

// eps*(beta) = 3 - 9/(4 - 2^{beta/beta* - 1}) for beta <= beta*, else 0.
inline double eps_star_threshold(double beta, const std::array<double, 3>& energies) {
  const double bstar = beta_star_threshold(energies);
  if (std::isinf(bstar)) return 3.0 / 7.0;
  if (beta > bstar) return 0.0;
  return 3.0 - 9.0 / (4.0 - std::exp2(beta / bstar - 1.0));
}

// Four-case bound for Hamiltonians diagonal in the computational stabilizer
// basis, without Clifford pre/post-processing.  Energies are listed in
// computational order; the Strange-state negativity sits in the q = 0 column,
// so E_s = energies[0].
inline BoundResult bound_thermal_no_processing(double eps, double eps_prime, double beta,
                                               const std::array<double, 3>& e_in,
                                               const std::array<double, 3>& e_out) {
  detail::check_eps_range(eps, eps_prime, 3.0 / 7.0 + 1e-12);
  if (!(beta >= 0) || !std::isfinite(beta))
    throw std::domain_error("bound_thermal_no_processing: bad beta");

  auto side = [beta](double e, const std::array<double, 3>& energies) {
    const double e_s = energies[0];
    const double e_max = std::max({energies[0], energies[1], energies[2]});
    const double log_z = detail::logsumexp(
        {-beta * energies[0], -beta * energies[1], -beta * energies[2]});
    // Above beta* the largest rescaled component always carries E_max, so
    // every error value routes to the high-error case.
    const bool low_case =
        beta <= beta_star_threshold(energies) && e <= eps_star_threshold(beta, energies);
    if (low_case) return std::log1p(-4.0 * e / 3.0) + beta * e_s + log_z;
    return std::log(0.5 - e / 6.0) + beta * e_max + log_z;
  };

  const double num = side(eps, e_in);
  const double den = side(eps_prime, e_out);
  return detail::make_rate(
      "thermal_no_processing", num, den,
      {{"eps", eps}, {"eps_prime", eps_prime}, {"beta", beta}},
      {{"eps_star_in", eps_star_threshold(beta, e_in)},
       {"eps_star_out", eps_star_threshold(beta, e_out)},
       {"beta_star_in", beta_star_threshold(e_in)},
       {"beta_star_out", beta_star_threshold(e_out)}});
}

// Continuous-alpha extension of H_alpha for the eps-noisy Strange state;
// interpolates the admissible orders and locates the zero contour.
inline double strange_renyi_entropy_continuous(double alpha, double eps) {
  if (!(alpha > 1.0)) throw std::domain_error("alpha must exceed 1");
  const double v = 1.0 / 3.0 - 4.0 * eps / 9.0;
  const double u = 1.0 / 6.0 - eps / 18.0;
  const double s = detail::logsumexp({std::log(8.0) + alpha * std::log(u),
                                      alpha * std::log(std::abs(v))});
  return s / (1.0 - alpha);
}

}  // namespace magicdist
