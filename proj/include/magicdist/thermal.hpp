#pragma once

// Gibbs reference states and the derived quantities entering the
// temperature-dependent distillation bound:
//   F    = -log(Z)/beta             (free energy per qudit)
//   z*   = argmin_z W_tau(z)        (lexicographic tie-break in (q, p))
//   a_k  = <E_k| A_{z*} |E_k>
//   zeta = sum_k a_k e^{-beta E_k},  phi = -log(zeta)/beta.
// The products beta*F and beta*phi stay finite as beta -> 0 and are what the
// bounds consume, so they are stored directly.

#include <magicdist/matrix.hpp>
#include <magicdist/phase_space.hpp>
#include <magicdist/wigner.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace magicdist {

struct ThermalContext {
  double beta = 0;
  std::vector<double> energies;  // ascending
  CMat eigenvectors;             // columns matching energies
  CMat tau;                      // Gibbs state e^{-beta H}/Z
  QuasiDistribution tau_wigner{PrimeDim(3), 1, std::vector<double>(9, 1.0 / 9.0), false};
  PhasePoint z_star{PrimeDim(3), {0}, {0}};
  std::vector<double> alpha;  // <E_k| A_{z*} |E_k>
  double log_z = 0;           // log sum_k e^{-beta E_k}
  double log_zeta = 0;        // log sum_k alpha_k e^{-beta E_k}

  double beta_f() const { return -log_z; }
  double beta_phi() const { return -log_zeta; }
  double zeta() const { return std::exp(log_zeta); }
  double free_energy() const {
    return beta > 0 ? beta_f() / beta : -std::numeric_limits<double>::infinity();
  }
  double phi() const {
    return beta > 0 ? beta_phi() / beta : std::numeric_limits<double>::quiet_NaN();
  }
};

// Builds the Gibbs state of H at inverse temperature beta and populates the
// context.  Throws if the state is not in the interior of the free set
// (min W_tau <= 0) or if zeta fails to be positive, where phi is undefined.
inline ThermalContext thermal_state(const CMat& h, double beta, PrimeDim d = PrimeDim(3)) {
  if (!(beta >= 0) || !std::isfinite(beta))
    throw std::domain_error("thermal_state: beta must be finite and nonnegative");
  if (!approx_hermitian(h, 1e-10))
    throw std::invalid_argument("thermal_state: Hamiltonian not Hermitian");
  const int n = infer_copies(d, h.rows());

  ThermalContext ctx;
  ctx.beta = beta;
  auto [evals, evecs] = hermitian_eig(h);
  ctx.energies.assign(evals.data(), evals.data() + evals.size());
  ctx.eigenvectors = evecs;

  // Partition function relative to the ground state for stability.
  const double e0 = ctx.energies.front();
  double zs = 0;
  for (double e : ctx.energies) zs += std::exp(-beta * (e - e0));
  ctx.log_z = std::log(zs) - beta * e0;

  Eigen::VectorXd boltz(evals.size());
  for (Eigen::Index k = 0; k < evals.size(); ++k)
    boltz[k] = std::exp(-beta * (evals[k] - e0)) / zs;
  ctx.tau = evecs * boltz.asDiagonal() * evecs.adjoint();

  ctx.tau_wigner = wigner_of_state(ctx.tau, d, false);
  std::size_t best = 0;
  for (std::size_t i = 1; i < ctx.tau_wigner.size(); ++i)
    if (ctx.tau_wigner[i] < ctx.tau_wigner[best]) best = i;
  if (ctx.tau_wigner[best] <= 0)
    throw std::domain_error("thermal_state: Gibbs state not interior to the free set");
  ctx.z_star = PhasePoint::from_index(d, n, best);

  const CMat a_star = phase_point_operator(ctx.z_star);
  double zeta_shifted = 0;  // sum_k alpha_k e^{-beta (E_k - e0)}
  ctx.alpha.resize(ctx.energies.size());
  for (std::size_t k = 0; k < ctx.energies.size(); ++k) {
    const CVec vec = evecs.col(static_cast<Eigen::Index>(k));
    ctx.alpha[k] = (vec.adjoint() * a_star * vec)(0, 0).real();
    zeta_shifted += ctx.alpha[k] * std::exp(-beta * (ctx.energies[k] - e0));
  }
  if (zeta_shifted <= 0)
    throw std::domain_error("thermal_state: zeta not positive, phi undefined");
  ctx.log_zeta = std::log(zeta_shifted) - beta * e0;
  return ctx;
}

inline CMat diag_hamiltonian(double e0, double e1, double e2) {
  CMat h = CMat::Zero(3, 3);
  h(0, 0) = e0;
  h(1, 1) = e1;
  h(2, 2) = e2;
  return h;
}

}  // namespace magicdist
