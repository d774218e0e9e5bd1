#pragma once

// Command-line front end.
//
// Subcommands:
//   wigner  -- table of W_rho(z) for a named state or density-matrix file
//   lorenz  -- CSV of Lorenz curve elbows for n-copy noisy Strange states
//   bound   -- single bound evaluation, JSON output
//   figure  -- sweep datasets (fig1, fig3a, fig3b, fig4, supp_entropy_contour)
//
// Every subcommand accepts --config FILE with flat key=value lines; command
// line flags override file values.  Exit codes: 0 success, 2 domain error,
// 3 parse error.

#include <magicdist/bounds.hpp>
#include <magicdist/figures.hpp>
#include <magicdist/pair_list.hpp>
#include <magicdist/thermal.hpp>
#include <magicdist/wigner.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace magicdist {

// Malformed input files and specs exit with code 3 (vs 2 for domain errors).
struct parse_failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace cli_detail {

inline std::vector<double> read_reals(const std::string& path, std::size_t count) {
  std::ifstream f(path);
  if (!f) throw parse_failure("cannot open file " + path);
  std::vector<double> vals;
  std::string tok;
  while (f >> tok) {
    if (!tok.empty() && tok.front() == '#') {
      std::getline(f, tok);
      continue;
    }
    for (char& c : tok)
      if (c == ',') c = ' ';
    std::istringstream ss(tok);
    double x;
    while (ss >> x) vals.push_back(x);
  }
  if (vals.size() != count)
    throw parse_failure("expected " + std::to_string(count) + " reals in " + path +
                        ", found " + std::to_string(vals.size()));
  return vals;
}

inline CMat matrix_from_reals(const std::vector<double>& v) {
  CMat m(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      m(i, j) = std::complex<double>(v[2 * (3 * i + j)], v[2 * (3 * i + j) + 1]);
  return m;
}

inline std::vector<double> split_reals(const std::string& s) {
  std::string t = s;
  for (char& c : t)
    if (c == ',') c = ' ';
  std::istringstream ss(t);
  std::vector<double> vals;
  double x;
  while (ss >> x) vals.push_back(x);
  if (!ss.eof()) throw parse_failure("bad numeric list '" + s + "'");
  return vals;
}

// Presets: diag012, A0, A12-mix(p,q); file:PATH or 18 inline reals
// (row-major, real/imag interleaved) for arbitrary 3x3 Hermitians.
inline CMat parse_hamiltonian(const std::string& spec) {
  const PrimeDim d3(3);
  CMat h;
  if (spec == "diag012") {
    h = diag_hamiltonian(0, 1, 2);
  } else if (spec == "A0") {
    h = phase_point_operator(PhasePoint::single(d3, 0, 0));
  } else if (spec.rfind("A12-mix(", 0) == 0 && spec.back() == ')') {
    const auto pq = split_reals(spec.substr(8, spec.size() - 9));
    if (pq.size() != 2) throw parse_failure("A12-mix expects two parameters");
    const CMat a0 = phase_point_operator(PhasePoint::single(d3, 0, 0));
    const CMat a12 = phase_point_operator(PhasePoint::single(d3, 1, 2));
    h = (1.0 - pq[0] - pq[1]) * a0 + pq[0] * a12 + pq[1] * diag_hamiltonian(0, 1, 2);
  } else if (spec.rfind("file:", 0) == 0) {
    h = matrix_from_reals(read_reals(spec.substr(5), 18));
  } else if (spec.find(',') != std::string::npos) {
    const auto vals = split_reals(spec);
    if (vals.size() != 18) throw parse_failure("expected 18 reals for a 3x3 Hermitian");
    h = matrix_from_reals(vals);
  } else {
    throw parse_failure("unknown Hamiltonian spec '" + spec + "'");
  }
  if (!approx_hermitian(h, 1e-9))
    throw std::domain_error("Hamiltonian is not Hermitian");
  return h;
}

inline std::array<double, 3> diagonal_energies(const CMat& h) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j && std::abs(h(i, j)) > 1e-10)
        throw std::domain_error(
            "thermal-np requires a Hamiltonian diagonal in the computational basis");
  return {h(0, 0).real(), h(1, 1).real(), h(2, 2).real()};
}

inline CMat parse_state(const std::string& spec, double eps) {
  if (spec == "strange") return noisy_strange_dm(eps);
  if (spec == "mixed") return mixed_dm(3);
  if (spec.rfind("basis", 0) == 0 && spec.size() == 6)
    return basis_dm(3, spec[5] - '0');
  if (spec.rfind("file:", 0) == 0)
    return matrix_from_reals(read_reals(spec.substr(5), 18));
  throw parse_failure("unknown state spec '" + spec + "'");
}

// "10" or "2a/(2b-1)" style literal like "10/9"; numerator must be even and
// denominator odd with a >= b.
inline RenyiOrder parse_order(const std::string& s) {
  long num = 0, den = 1;
  const auto slash = s.find('/');
  try {
    num = std::stol(s.substr(0, slash));
    if (slash != std::string::npos) den = std::stol(s.substr(slash + 1));
  } catch (...) {
    throw parse_failure("bad Renyi order '" + s + "'");
  }
  if (num <= 0 || den <= 0 || num % 2 != 0 || den % 2 != 1)
    throw std::domain_error("inadmissible Renyi order '" + s +
                            "': need alpha = 2a/(2b-1), a >= b >= 1");
  return RenyiOrder(num / 2, (den + 1) / 2);
}

inline double log_scale(const std::string& base) {
  if (base == "e") return 1.0;
  if (base == "2") return 1.0 / std::log(2.0);
  throw parse_failure("log base must be 'e' or '2'");
}

inline void emit(const std::string& text, const std::string& output) {
  if (output.empty())
    std::cout << text;
  else
    write_text_file(resolve_output_path(output), text);
}

inline std::string sanitize_token(std::string t) {
  for (char& c : t)
    if (c == '/' || c == '\\') c = '_';
  return t;
}

}  // namespace cli_detail

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

inline void cmd_wigner(const std::string& state, double eps, const std::string& output,
                       const std::string& log_base) {
  const double scale = cli_detail::log_scale(log_base);
  const CMat rho = cli_detail::parse_state(state, eps);
  const QuasiDistribution w = wigner_of_state(rho, PrimeDim(3));
  std::string out = "q,p,value\n";
  for (std::size_t i = 0; i < w.size(); ++i) {
    const PhasePoint z = PhasePoint::from_index(w.dim, w.copies, i);
    out += std::to_string(z.q[0]) + "," + std::to_string(z.p[0]) + "," + fmt17(w[i]) + "\n";
  }
  out += "# sum_negativity=" + fmt17(sum_negativity(w)) + "\n";
  out += "# mana=" + fmt17(mana(w) * scale) + "\n";
  out += "# log_base=" + log_base + "\n";
  cli_detail::emit(out, output);
}

inline void cmd_lorenz(const std::vector<int>& n_list, const std::vector<std::string>& eps_list,
                       const std::string& reference, double beta,
                       const std::string& hamiltonian, const std::string& output_prefix) {
  for (int n : n_list) {
    if (n < 1 || n > 64) throw std::domain_error("lorenz: n must be in [1, 64]");
    for (const std::string& eps_tok : eps_list) {
      const Rational eps = rational_from_decimal(eps_tok);
      CsvTable t;
      t.metadata = {{"state", "strange"},
                    {"eps", eps_tok},
                    {"n", std::to_string(n)},
                    {"reference", reference}};
      t.header = {"x", "L"};
      if (reference == "uniform") {
        const auto curve =
            lorenz_from_pairs(pairs_power(noisy_strange_pairs<Rational>(eps), n));
        for (const auto& [x, l] : curve.pts)
          t.rows.push_back({fmt17(to_double(x)), fmt17(to_double(l))});
      } else if (reference == "thermal") {
        const ThermalContext ctx = thermal_state(cli_detail::parse_hamiltonian(hamiltonian), beta);
        const QuasiDistribution w = noisy_strange_wigner(to_double(eps));
        RescaledComponents<SignedLog> base;
        for (std::size_t i = 0; i < w.size(); ++i)
          base.entries.emplace_back(SignedLog::from_double(w[i]),
                                    SignedLog::from_double(ctx.tau_wigner[i]), BigInt(1));
        t.metadata.emplace_back("beta", fmt17(beta));
        t.metadata.emplace_back("hamiltonian", hamiltonian);
        const auto curve = lorenz_from_rescaled(rescaled_power(base, n));
        for (const auto& [x, l] : curve.pts)
          t.rows.push_back({fmt17(to_double(x)), fmt17(to_double(l))});
      } else {
        throw parse_failure("reference must be 'uniform' or 'thermal'");
      }
      const std::string name = output_prefix + "_n" + std::to_string(n) + "_eps" +
                               cli_detail::sanitize_token(eps_tok) + ".csv";
      write_text_file(resolve_output_path(name), t.to_string());
    }
  }
}

struct BoundCliArgs {
  std::string method = "unital";
  std::string eps = "0", eps_prime = "0";
  int n = 10;
  bool float_mode = false;
  std::string order = "2";
  double beta = 0;
  std::string hamiltonian = "diag012";
  std::string hamiltonian_out;  // defaults to the input Hamiltonian
  std::string reference = "uniform";
  std::string output;
  std::string log_base = "e";
};

inline void cmd_bound(const BoundCliArgs& a) {
  const double eps = to_double(rational_from_decimal(a.eps));
  const double eps_prime = to_double(rational_from_decimal(a.eps_prime));
  const std::string h_out_spec = a.hamiltonian_out.empty() ? a.hamiltonian : a.hamiltonian_out;

  BoundResult r;
  if (a.method == "unital") {
    r = bound_unital_inf(eps, eps_prime);
  } else if (a.method == "mana") {
    r = bound_mana_strange(eps, eps_prime);
  } else if (a.method == "numeric") {
    r = bound_numeric(rational_from_decimal(a.eps), rational_from_decimal(a.eps_prime), a.n,
                      a.float_mode ? NumericMode::log_float : NumericMode::exact_rational);
  } else if (a.method == "renyi") {
    r = bound_renyi(eps, eps_prime, cli_detail::parse_order(a.order));
  } else if (a.method == "renyi-opt") {
    r = bound_renyi_optimized(eps, eps_prime);
  } else if (a.method == "thermal") {
    const ThermalContext in = thermal_state(cli_detail::parse_hamiltonian(a.hamiltonian), a.beta);
    const ThermalContext out = thermal_state(cli_detail::parse_hamiltonian(h_out_spec), a.beta);
    r = bound_thermal(eps, eps_prime, in, out);
  } else if (a.method == "thermal-np") {
    const auto e_in = cli_detail::diagonal_energies(cli_detail::parse_hamiltonian(a.hamiltonian));
    const auto e_out = cli_detail::diagonal_energies(cli_detail::parse_hamiltonian(h_out_spec));
    r = bound_thermal_no_processing(eps, eps_prime, a.beta, e_in, e_out);
  } else if (a.method == "divergence") {
    const QuasiDistribution w_in = noisy_strange_wigner(eps);
    const QuasiDistribution w_out = noisy_strange_wigner(eps_prime);
    std::vector<double> r_in, r_out;
    if (a.reference == "uniform") {
      r_in.assign(9, 1.0 / 9.0);
      r_out = r_in;
    } else if (a.reference == "thermal") {
      r_in = thermal_state(cli_detail::parse_hamiltonian(a.hamiltonian), a.beta)
                 .tau_wigner.values;
      r_out = thermal_state(cli_detail::parse_hamiltonian(h_out_spec), a.beta)
                  .tau_wigner.values;
    } else {
      throw parse_failure("reference must be 'uniform' or 'thermal'");
    }
    r = bound_divergence(w_in.values, r_in, w_out.values, r_out,
                         cli_detail::parse_order(a.order));
  } else {
    throw parse_failure("unknown bound method '" + a.method + "'");
  }

  json j = r.to_json();
  const double scale = cli_detail::log_scale(a.log_base);
  if (scale != 1.0) {
    for (const char* key : {"numerator", "denominator", "mana_in", "mana_out", "H_in", "H_out",
                            "D_in", "D_out", "beta_phi_in", "beta_F_in", "beta_phi_out",
                            "beta_F_out"})
      if (j.contains("diagnostics") && j["diagnostics"].contains(key))
        j["diagnostics"][key] = j["diagnostics"][key].get<double>() * scale;
  }
  j["log_base"] = a.log_base;
  cli_detail::emit(j.dump(2) + "\n", a.output);
}

inline void cmd_figure(const FigureRecipe& recipe, const std::string& output) {
  const CsvTable t = figure_dataset(recipe);
  const std::string name = output.empty() ? recipe.id + ".csv" : output;
  write_text_file(resolve_output_path(name), t.to_string());
}

struct SweepCliArgs {
  std::vector<std::string> methods{"unital", "mana"};
  std::vector<std::string> eps_list;
  std::string eps_min = "0.02", eps_max = "0.42", eps_step = "0.02";
  std::string eps_prime = "0";
  double beta = 0;
  std::string hamiltonian = "diag012";
  std::string hamiltonian_out;
  int n = 10;
  std::string order = "10";
  std::string format = "csv";
  std::string output;
};

inline void cmd_sweep(const SweepCliArgs& a) {
  SweepConfig cfg;
  cfg.methods = a.methods;
  if (a.eps_list.empty()) {
    cfg.eps_grid = rational_grid(rational_from_decimal(a.eps_min),
                                 rational_from_decimal(a.eps_max),
                                 rational_from_decimal(a.eps_step));
  } else {
    cfg.eps_grid.clear();
    for (const auto& tok : a.eps_list) cfg.eps_grid.push_back(rational_from_decimal(tok));
  }
  cfg.eps_prime = rational_from_decimal(a.eps_prime);
  cfg.beta = a.beta;
  cfg.h_in = cli_detail::parse_hamiltonian(a.hamiltonian);
  cfg.h_out = cli_detail::parse_hamiltonian(
      a.hamiltonian_out.empty() ? a.hamiltonian : a.hamiltonian_out);
  cfg.numeric_n = a.n;
  cfg.order = cli_detail::parse_order(a.order);
  if (a.format == "csv")
    cli_detail::emit(sweep_table(cfg).to_string(), a.output);
  else if (a.format == "json")
    cli_detail::emit(sweep_json(cfg).dump(2) + "\n", a.output);
  else
    throw parse_failure("format must be 'csv' or 'json'");
}

// ---------------------------------------------------------------------------
// Entry point
// ---------------------------------------------------------------------------

inline int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Wigner representations, quasi-distribution majorization and "
               "magic distillation bounds for odd-prime qudits"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "",
                 "flat key=value file; keys are dotted option names, e.g. bound.eps=0.1");

  // wigner
  auto wigner_opts = std::make_shared<std::tuple<std::string, double, std::string, std::string>>(
      "strange", 0.0, "", "e");
  auto* wig = app.add_subcommand("wigner", "Print the Wigner distribution of a state");
  wig->add_option("--state", std::get<0>(*wigner_opts),
                  "strange | mixed | basisK | file:PATH (18 reals)");
  wig->add_option("--eps", std::get<1>(*wigner_opts), "depolarizing error for 'strange'");
  wig->add_option("--output,-o", std::get<2>(*wigner_opts), "output file (default stdout)");
  wig->add_option("--log-base", std::get<3>(*wigner_opts), "e | 2")
      ->check(CLI::IsMember({"e", "2"}));
  wig->configurable();
  wig->callback([wigner_opts] {
    cmd_wigner(std::get<0>(*wigner_opts), std::get<1>(*wigner_opts), std::get<2>(*wigner_opts),
               std::get<3>(*wigner_opts));
  });

  // lorenz
  struct LorenzOpts {
    std::vector<int> n{1};
    std::vector<std::string> eps{"0"};
    std::string reference = "uniform";
    double beta = 0;
    std::string hamiltonian = "diag012";
    std::string output = "lorenz";
  };
  auto lorenz_opts = std::make_shared<LorenzOpts>();
  auto* lor = app.add_subcommand("lorenz", "Emit Lorenz curve elbows for n-copy Strange states");
  lor->add_option("--n", lorenz_opts->n, "copy counts")->delimiter(',');
  lor->add_option("--eps", lorenz_opts->eps, "depolarizing errors")->delimiter(',');
  lor->add_option("--reference", lorenz_opts->reference, "uniform | thermal")
      ->check(CLI::IsMember({"uniform", "thermal"}));
  lor->add_option("--beta", lorenz_opts->beta, "inverse temperature (thermal reference)");
  lor->add_option("--hamiltonian", lorenz_opts->hamiltonian,
                  "Hamiltonian spec (thermal reference)");
  lor->add_option("--output,-o", lorenz_opts->output, "output file prefix");
  lor->configurable();
  lor->callback([lorenz_opts] {
    cmd_lorenz(lorenz_opts->n, lorenz_opts->eps, lorenz_opts->reference, lorenz_opts->beta,
               lorenz_opts->hamiltonian, lorenz_opts->output);
  });

  // bound
  auto bound_opts = std::make_shared<BoundCliArgs>();
  auto* bnd = app.add_subcommand("bound", "Evaluate a single distillation bound (JSON)");
  bnd->add_option("--method", bound_opts->method,
                  "unital | mana | numeric | renyi | renyi-opt | thermal | thermal-np | "
                  "divergence");
  bnd->add_option("--eps", bound_opts->eps, "input depolarizing error");
  bnd->add_option("--eps-prime", bound_opts->eps_prime, "output depolarizing error");
  bnd->add_option("--n", bound_opts->n, "input copies (numeric)");
  bnd->add_flag("--float", bound_opts->float_mode, "log-float mode (numeric)");
  bnd->add_option("--alpha", bound_opts->order, "Renyi order, e.g. 10 or 10/9");
  bnd->add_option("--beta", bound_opts->beta, "inverse temperature");
  bnd->add_option("--hamiltonian", bound_opts->hamiltonian, "input Hamiltonian spec");
  bnd->add_option("--hamiltonian-out", bound_opts->hamiltonian_out,
                  "output Hamiltonian spec (default: input)");
  bnd->add_option("--reference", bound_opts->reference, "uniform | thermal (divergence)");
  bnd->add_option("--output,-o", bound_opts->output, "output file (default stdout)");
  bnd->add_option("--log-base", bound_opts->log_base, "e | 2")
      ->check(CLI::IsMember({"e", "2"}));
  bnd->configurable();
  bnd->callback([bound_opts] { cmd_bound(*bound_opts); });

  // sweep
  auto sweep_opts = std::make_shared<SweepCliArgs>();
  auto* swp = app.add_subcommand("sweep", "Sweep bound methods over a depolarizing-error grid");
  swp->add_option("--methods", sweep_opts->methods,
                  "any of unital,mana,numeric,renyi,renyi-opt,thermal,thermal-np")
      ->delimiter(',');
  swp->add_option("--eps-list", sweep_opts->eps_list, "explicit eps values")->delimiter(',');
  swp->add_option("--eps-min", sweep_opts->eps_min);
  swp->add_option("--eps-max", sweep_opts->eps_max);
  swp->add_option("--eps-step", sweep_opts->eps_step);
  swp->add_option("--eps-prime", sweep_opts->eps_prime);
  swp->add_option("--beta", sweep_opts->beta, "inverse temperature (thermal methods)");
  swp->add_option("--hamiltonian", sweep_opts->hamiltonian);
  swp->add_option("--hamiltonian-out", sweep_opts->hamiltonian_out);
  swp->add_option("--n", sweep_opts->n, "copies for the numeric bound");
  swp->add_option("--alpha", sweep_opts->order, "Renyi order for the renyi method");
  swp->add_option("--format", sweep_opts->format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
  swp->add_option("--output,-o", sweep_opts->output, "output file (default stdout)");
  swp->configurable();
  swp->callback([sweep_opts] { cmd_sweep(*sweep_opts); });

  // figure
  struct FigureOpts {
    std::string id;
    std::string output;
    std::string eps_min, eps_max, eps_step;
    std::string beta_min, beta_max, beta_step;
    std::string alpha_min, alpha_max, alpha_step;
    std::string pq_step;
    int n = 10;
  };
  auto fig_opts = std::make_shared<FigureOpts>();
  auto* fig = app.add_subcommand("figure", "Emit a sweep dataset as CSV");
  fig->add_option("--id", fig_opts->id, "fig1 | fig3a | fig3b | fig4 | supp_entropy_contour")
      ->required()
      ->check(CLI::IsMember({"fig1", "fig3a", "fig3b", "fig4", "supp_entropy_contour"}));
  fig->add_option("--output,-o", fig_opts->output, "output file (default <id>.csv)");
  fig->add_option("--eps-min", fig_opts->eps_min);
  fig->add_option("--eps-max", fig_opts->eps_max);
  fig->add_option("--eps-step", fig_opts->eps_step);
  fig->add_option("--beta-min", fig_opts->beta_min);
  fig->add_option("--beta-max", fig_opts->beta_max);
  fig->add_option("--beta-step", fig_opts->beta_step);
  fig->add_option("--alpha-min", fig_opts->alpha_min);
  fig->add_option("--alpha-max", fig_opts->alpha_max);
  fig->add_option("--alpha-step", fig_opts->alpha_step);
  fig->add_option("--pq-step", fig_opts->pq_step);
  fig->add_option("--n", fig_opts->n, "copies for the numeric bound (fig1)");
  fig->configurable();
  fig->callback([fig_opts] {
    FigureRecipe rc;
    rc.id = fig_opts->id;
    rc.numeric_n = fig_opts->n;
    auto maybe = [](const std::string& s, Rational& target) {
      if (!s.empty()) target = rational_from_decimal(s);
    };
    maybe(fig_opts->eps_min, rc.eps_min);
    maybe(fig_opts->eps_max, rc.eps_max);
    maybe(fig_opts->eps_step, rc.eps_step);
    maybe(fig_opts->beta_min, rc.beta_min);
    maybe(fig_opts->beta_max, rc.beta_max);
    maybe(fig_opts->beta_step, rc.beta_step);
    maybe(fig_opts->alpha_min, rc.alpha_min);
    maybe(fig_opts->alpha_max, rc.alpha_max);
    maybe(fig_opts->alpha_step, rc.alpha_step);
    maybe(fig_opts->pq_step, rc.pq_step);
    cmd_figure(rc, fig_opts->output);
  });

  try {
    app.parse(argc, const_cast<char**>(argv));
    return 0;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  } catch (const parse_failure& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 3;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace magicdist
