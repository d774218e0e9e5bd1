#pragma once

// Sweep datasets behind the `figure` subcommand, and the deterministic CSV
// writer shared by all emitters: '#'-prefixed metadata lines, a mandatory
// header row, comma separators, %.17g floats, '\n' line endings.  Identical
// recipes produce byte-identical files.

#include <magicdist/bounds.hpp>
#include <magicdist/numeric.hpp>
#include <magicdist/pair_list.hpp>
#include <magicdist/thermal.hpp>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace magicdist {

struct CsvTable {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string to_string() const {
    std::string out;
    for (const auto& [k, v] : metadata) out += "# " + k + "=" + v + "\n";
    for (std::size_t i = 0; i < header.size(); ++i)
      out += (i ? "," : "") + header[i];
    out += "\n";
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + row[i];
      out += "\n";
    }
    return out;
  }
};

// Environment variable naming the default output directory.
inline constexpr const char* kOutdirEnvVar = "MAGICDIST_OUTDIR";

// Bare file names land in $MAGICDIST_OUTDIR when it is set.
inline std::filesystem::path resolve_output_path(const std::string& name) {
  std::filesystem::path p(name);
  if (p.is_absolute() || p.has_parent_path()) return p;
  if (const char* dir = std::getenv(kOutdirEnvVar); dir && *dir)
    return std::filesystem::path(dir) / p;
  return p;
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file " + path.string());
  f << text;
}

// Evaluates fn(i) for i in [0, count) across a small thread pool; results are
// stored by index so assembly order is deterministic regardless of timing.
inline void parallel_rows(std::size_t count, const std::function<void(std::size_t)>& fn) {
  const unsigned workers =
      std::min<std::size_t>(std::max(1U, std::thread::hardware_concurrency()), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  for (unsigned t = 0; t < workers; ++t)
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

// ---------------------------------------------------------------------------
// General method sweeps
// ---------------------------------------------------------------------------

// One row per eps value, one rate column per requested method.  Methods
// needing references use the Hamiltonians and temperature below; the
// divergence bound is excluded here since its reference configuration is
// richer than a single grid (use the bound subcommand).
struct SweepConfig {
  std::vector<std::string> methods{"unital"};
  std::vector<Rational> eps_grid{Rational(1, 10)};
  Rational eps_prime{0};
  double beta = 0;
  CMat h_in = diag_hamiltonian(0, 1, 2);
  CMat h_out = diag_hamiltonian(0, 1, 2);
  int numeric_n = 10;
  RenyiOrder order{5, 1};
};

namespace detail {

inline std::array<double, 3> computational_energies(const CMat& h) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j && std::abs(h(i, j)) > 1e-10)
        throw std::domain_error(
            "sweep: thermal-np needs a Hamiltonian diagonal in the computational basis");
  return {h(0, 0).real(), h(1, 1).real(), h(2, 2).real()};
}

inline BoundResult sweep_bound(const std::string& method, const SweepConfig& c,
                               const Rational& eps) {
  const double e = to_double(eps), ep = to_double(c.eps_prime);
  if (method == "unital") return bound_unital_inf(e, ep);
  if (method == "mana") return bound_mana_strange(e, ep);
  if (method == "numeric") return bound_numeric(eps, c.eps_prime, c.numeric_n);
  if (method == "renyi") return bound_renyi(e, ep, c.order);
  if (method == "renyi-opt") return bound_renyi_optimized(e, ep);
  if (method == "thermal")
    return bound_thermal(e, ep, thermal_state(c.h_in, c.beta), thermal_state(c.h_out, c.beta));
  if (method == "thermal-np")
    return bound_thermal_no_processing(e, ep, c.beta, computational_energies(c.h_in),
                                       computational_energies(c.h_out));
  throw std::domain_error("sweep: unknown method '" + method + "'");
}

}  // namespace detail

inline CsvTable sweep_table(const SweepConfig& cfg) {
  if (cfg.methods.empty() || cfg.eps_grid.empty())
    throw std::domain_error("sweep: methods and eps grid must be non-empty");
  CsvTable t;
  t.metadata = {{"sweep", "eps"},
                {"eps_prime", fmt17(to_double(cfg.eps_prime))},
                {"beta", fmt17(cfg.beta)},
                {"numeric_n", std::to_string(cfg.numeric_n)},
                {"alpha", cfg.order.str()}};
  t.header = {"eps"};
  for (const auto& m : cfg.methods) t.header.push_back(m);
  t.rows.resize(cfg.eps_grid.size());
  parallel_rows(cfg.eps_grid.size(), [&](std::size_t i) {
    const Rational& eps = cfg.eps_grid[i];
    std::vector<std::string> row{fmt17(to_double(eps))};
    for (const auto& m : cfg.methods)
      row.push_back(fmt17(detail::sweep_bound(m, cfg, eps).rate));
    t.rows[i] = std::move(row);
  });
  return t;
}

inline nlohmann::ordered_json sweep_json(const SweepConfig& cfg) {
  if (cfg.methods.empty() || cfg.eps_grid.empty())
    throw std::domain_error("sweep: methods and eps grid must be non-empty");
  nlohmann::ordered_json out;
  out["sweep"] = "eps";
  out["eps_prime"] = to_double(cfg.eps_prime);
  out["beta"] = cfg.beta;
  out["numeric_n"] = cfg.numeric_n;
  out["alpha"] = cfg.order.str();
  out["rows"] = nlohmann::ordered_json::array();
  std::vector<nlohmann::ordered_json> rows(cfg.eps_grid.size());
  parallel_rows(cfg.eps_grid.size(), [&](std::size_t i) {
    const Rational& eps = cfg.eps_grid[i];
    nlohmann::ordered_json row;
    row["eps"] = to_double(eps);
    for (const auto& m : cfg.methods) row[m] = detail::sweep_bound(m, cfg, eps).to_json();
    rows[i] = std::move(row);
  });
  for (auto& r : rows) out["rows"].push_back(std::move(r));
  return out;
}

// ---------------------------------------------------------------------------
// Figure recipes
// ---------------------------------------------------------------------------

struct FigureRecipe {
  std::string id;  // fig1 | fig3a | fig3b | fig4 | supp_entropy_contour

  // Grids are exact rationals so rows are reproducible bit for bit.
  Rational eps_min = Rational(1, 50);
  Rational eps_max = Rational(21, 50);
  Rational eps_step = Rational(1, 50);
  Rational beta_min = Rational(0);
  Rational beta_max = Rational(2);
  Rational beta_step = Rational(1, 20);
  Rational alpha_min = Rational(51, 50);
  Rational alpha_max = Rational(3);
  Rational alpha_step = Rational(1, 50);
  Rational pq_step = Rational(1, 20);
  int numeric_n = 10;
};

inline std::vector<Rational> rational_grid(const Rational& lo, const Rational& hi,
                                           const Rational& step) {
  if (step <= 0 || hi < lo) throw std::domain_error("grid: bad range");
  std::vector<Rational> g;
  for (Rational x = lo; x <= hi; x += step) g.push_back(x);
  if (g.empty()) throw std::domain_error("grid: empty");
  return g;
}

namespace detail {

inline ThermalContext diag012_context(double beta) {
  return thermal_state(diag_hamiltonian(0, 1, 2), beta);
}

// Bisection root of H_alpha(eps) = 0 in alpha over (lo, hi); requires a sign
// change.
inline std::optional<double> entropy_zero_alpha(double eps, double lo, double hi) {
  double flo = strange_renyi_entropy_continuous(lo, eps);
  double fhi = strange_renyi_entropy_continuous(hi, eps);
  if (flo == 0) return lo;
  if (fhi == 0) return hi;
  if ((flo < 0) == (fhi < 0)) return std::nullopt;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = strange_renyi_entropy_continuous(mid, eps);
    if (fm == 0) return mid;
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
    if (hi - lo < 1e-13) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

inline CsvTable figure_fig1(const FigureRecipe& rc) {
  const auto eps_grid = rational_grid(rc.eps_min, rc.eps_max, rc.eps_step);
  CsvTable t;
  t.metadata = {{"figure", "fig1"},
                {"eps_prime", "0"},
                {"numeric_n", std::to_string(rc.numeric_n)}};
  t.header = {"eps", "R_inf", "R_mana", "R_10", "R_num_n"};
  t.rows.resize(eps_grid.size());
  parallel_rows(eps_grid.size(), [&](std::size_t i) {
    const Rational& eps = eps_grid[i];
    const double e = to_double(eps);
    const double r_inf = bound_unital_inf(e, 0).rate;
    const double r_mana = bound_mana_strange(e, 0).rate;
    const double r_10 = bound_renyi(e, 0, RenyiOrder(5, 1)).rate;
    const double r_num = bound_numeric(eps, Rational(0), rc.numeric_n).rate;
    t.rows[i] = {fmt17(e), fmt17(r_inf), fmt17(r_mana), fmt17(r_10), fmt17(r_num)};
  });
  return t;
}

// Contour grids of the temperature-dependent bound for H = H' = diag(0,1,2)
// and eps' = 0.  fig3a: no Clifford processing, with the threshold overlay;
// fig3b: with Clifford processing.
inline CsvTable figure_fig3(const FigureRecipe& rc, bool with_processing) {
  const auto beta_grid = rational_grid(rc.beta_min, rc.beta_max, rc.beta_step);
  Rational eps_hi = rc.eps_max;
  if (eps_hi > Rational(3, 7)) eps_hi = Rational(3, 7);
  const auto eps_grid = rational_grid(rc.eps_min, eps_hi, rc.eps_step);
  const std::array<double, 3> energies{0, 1, 2};

  CsvTable t;
  t.metadata = {{"figure", with_processing ? "fig3b" : "fig3a"},
                {"hamiltonian", "diag012"},
                {"eps_prime", "0"}};
  if (with_processing)
    t.header = {"beta", "eps", "R"};
  else
    t.header = {"beta", "eps", "R", "eps_star", "beta_star"};
  t.rows.resize(beta_grid.size() * eps_grid.size());
  parallel_rows(t.rows.size(), [&](std::size_t idx) {
    const double beta = to_double(beta_grid[idx / eps_grid.size()]);
    const double eps = to_double(eps_grid[idx % eps_grid.size()]);
    if (with_processing) {
      const ThermalContext ctx = detail::diag012_context(beta);
      const double r = bound_thermal(eps, 0, ctx, ctx).rate;
      t.rows[idx] = {fmt17(beta), fmt17(eps), fmt17(r)};
    } else {
      const double r = bound_thermal_no_processing(eps, 0, beta, energies, energies).rate;
      t.rows[idx] = {fmt17(beta), fmt17(eps), fmt17(r),
                     fmt17(eps_star_threshold(beta, energies)),
                     fmt17(beta_star_threshold(energies))};
    }
  });
  return t;
}

// Variation of the bound with the output Hamiltonian
// H' = (1-p-q) A_0 + p A_(1,2) + q diag(0,1,2) at (eps, eps', beta) =
// (0.1, 0, 0.2), with the input fixed at H = A_0.
inline CsvTable figure_fig4(const FigureRecipe& rc) {
  const auto grid = rational_grid(Rational(0), Rational(1), rc.pq_step);
  const PrimeDim d3(3);
  const CMat a0 = phase_point_operator(PhasePoint::single(d3, 0, 0));
  const CMat a12 = phase_point_operator(PhasePoint::single(d3, 1, 2));
  const CMat hdiag = diag_hamiltonian(0, 1, 2);
  const double beta = 0.2, eps = 0.1, eps_prime = 0.0;
  const ThermalContext ctx_in = thermal_state(a0, beta);

  CsvTable t;
  t.metadata = {{"figure", "fig4"},
                {"eps", "0.1"},
                {"eps_prime", "0"},
                {"beta", "0.2"},
                {"hamiltonian_in", "A0"}};
  t.header = {"p", "q", "R"};
  t.rows.resize(grid.size() * grid.size());
  parallel_rows(t.rows.size(), [&](std::size_t idx) {
    const double p = to_double(grid[idx / grid.size()]);
    const double q = to_double(grid[idx % grid.size()]);
    double r = std::numeric_limits<double>::quiet_NaN();
    try {
      const CMat h_out = (1.0 - p - q) * a0 + p * a12 + q * hdiag;
      const ThermalContext ctx_out = thermal_state(h_out, beta);
      const BoundResult b = bound_thermal(eps, eps_prime, ctx_in, ctx_out);
      if (!b.unbounded) r = b.rate;
    } catch (const std::domain_error&) {
      // Gibbs state outside the free-set interior: the bound is undefined.
    }
    t.rows[idx] = {fmt17(p), fmt17(q), fmt17(r)};
  });
  return t;
}

// H_alpha of the eps-noisy Strange state over (alpha, eps), plus the zero
// contour rows (flag column = 1) giving the alpha root per eps value.
inline CsvTable figure_supp_entropy_contour(const FigureRecipe& rc) {
  const auto alpha_grid = rational_grid(rc.alpha_min, rc.alpha_max, rc.alpha_step);
  Rational eps_hi = rc.eps_max;
  if (eps_hi >= Rational(3, 4)) eps_hi = Rational(73, 100);
  const auto eps_grid = rational_grid(Rational(0), eps_hi, rc.eps_step);

  CsvTable t;
  t.metadata = {{"figure", "supp_entropy_contour"}};
  t.header = {"alpha", "eps", "H_alpha", "zero_contour"};
  t.rows.resize(alpha_grid.size() * eps_grid.size());
  parallel_rows(t.rows.size(), [&](std::size_t idx) {
    const double alpha = to_double(alpha_grid[idx / eps_grid.size()]);
    const double eps = to_double(eps_grid[idx % eps_grid.size()]);
    t.rows[idx] = {fmt17(alpha), fmt17(eps),
                   fmt17(strange_renyi_entropy_continuous(alpha, eps)), "0"};
  });
  const double alpha_hi = to_double(rc.alpha_max);
  for (const Rational& eps_r : eps_grid) {
    const double eps = to_double(eps_r);
    if (const auto root = detail::entropy_zero_alpha(eps, 1.0 + 1e-9, alpha_hi))
      t.rows.push_back({fmt17(*root), fmt17(eps), fmt17(0.0), "1"});
  }
  return t;
}

inline CsvTable figure_dataset(const FigureRecipe& rc) {
  if (rc.id == "fig1") return figure_fig1(rc);
  if (rc.id == "fig3a") return figure_fig3(rc, false);
  if (rc.id == "fig3b") return figure_fig3(rc, true);
  if (rc.id == "fig4") return figure_fig4(rc);
  if (rc.id == "supp_entropy_contour") return figure_supp_entropy_contour(rc);
  throw std::domain_error("figure_dataset: unknown recipe '" + rc.id + "'");
}

}  // namespace magicdist
