#pragma once

#include <span>
#include <vector>

namespace loopsoup {

// Exact solution of the non-interacting variational problem at density rho:
// minimizing length distribution m_k = q_k e^{alpha k}, its entropy, and the
// free-energy value. Serves as the analytic ground truth for the samplers.
struct FreeGasSolution {
  double rho = 0.0;
  double alpha = 0.0;  // Lagrange parameter in [-inf, 0]
  std::vector<double> m;  // m_k for k = 1..m.size()
  double stored_mass_tail = 0.0;  // sum_{k > m.size()} k m_k
  double interlacement_density = 0.0;  // max(0, rho - rho_c)
  double entropy = 0.0;  // H(m | q) over all k
  double chibar = 0.0;
  double qbar = 0.0;
  double beta_f = 0.0;  // -qbar + chibar
  double residual = 0.0;  // |sum_k k m_k - min(rho, rho_c)| achieved
};

// Per-length rate density of the free loop soup, q_k = (1/k) (4 pi beta k)^{-d/2}.
double free_rate(int k, double beta, int d);

// Riemann zeta for s > 1 by partial sum plus a tail expansion whose
// remainder is rigorously bounded below tol. Throws for s <= 1.
double zeta_partial(double s, double tol = 1e-13);

// Critical density (4 pi beta)^{-d/2} zeta(d/2); +infinity for d <= 2.
double rho_c(double beta, int d);

// qbar = sum_k q_k = (4 pi beta)^{-d/2} zeta(1 + d/2), via the zeta route.
double qbar(double beta, int d);

// Same quantity by direct summation of q_k with an integral tail bracket;
// an independent route used to validate qbar.
double qbar_direct(double beta, int d, double tol = 1e-13);

// Li_s(e^alpha) for alpha <= 0: the building block of the k-sums.
// Direct summation when the tail can be bounded, small-|alpha| expansion
// otherwise. Exposed for tests.
double polylog_exp(double s, double alpha);

// Solve sum_k k q_k e^{alpha k} = min(rho, rho_c) for alpha in (-inf, 0];
// for rho >= rho_c sets alpha = 0 and routes the excess density to the
// interlacement part. tol is the rho-residual target.
FreeGasSolution solve_alpha(double rho, double beta, int d, double tol = 1e-12,
                            int k_store = 64);

// H(m|q) = sum_k (q_k - m_k + m_k log(m_k/q_k)) with 0 log 0 = 0;
// +infinity if some m_k > 0 where q_k = 0. Arrays must have equal length.
double entropy_sequence(std::span<const double> m, std::span<const double> q);

// chibar^{v=0}(rho) = inf { H(m|q) : sum_k k m_k = rho } together with the
// free energy beta_f = -qbar + chibar; returns the full solution record.
FreeGasSolution chibar_free(double rho, double beta, int d);

// Relative entropy of finite measures on a common finite support.
double rel_entropy_discrete(std::span<const double> mu, std::span<const double> nu);

// Dual (variational) lower bound: max over the supplied test functions f of
// <f, mu_hat> - log <e^f, nu>. For probability measures this never exceeds
// the direct relative entropy.
double dual_lower_bound(std::span<const double> mu_hat, std::span<const double> nu,
                        const std::vector<std::vector<double>>& test_functions);

}  // namespace loopsoup
