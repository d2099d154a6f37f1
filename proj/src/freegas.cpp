#include "loopsoup/freegas.hpp"

#include <boost/math/special_functions/zeta.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace loopsoup {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double heat_prefactor(double beta, int d) {
  return std::pow(4.0 * std::numbers::pi * beta, -0.5 * d);
}

void check_beta_d(double beta, int d) {
  if (beta <= 0.0) throw std::invalid_argument("beta must be positive");
  if (d < 1) throw std::invalid_argument("dimension must be >= 1");
}

// Direct evaluation of Li_s(e^alpha) = sum_k k^{-s} e^{alpha k}. Returns NaN
// when the geometric-decay tail bound cannot be pushed below the tolerance
// within the term cap.
double polylog_direct(double s, double alpha, double tol) {
  const std::size_t cap = 1u << 24;
  double sum = 0.0;
  for (std::size_t k = 1; k <= cap; ++k) {
    const double dk = static_cast<double>(k);
    sum += std::pow(dk, -s) * std::exp(alpha * dk);
    if (k >= 16 && (k & (k - 1)) == 0) {  // check at powers of two
      // sum_{j>k} j^{-s} e^{alpha j} <= (k+1)^{-s} e^{alpha(k+1)} / (1-e^alpha)
      const double tail =
          std::pow(dk + 1.0, -s) * std::exp(alpha * (dk + 1.0)) / (-std::expm1(alpha));
      if (tail < tol) return sum + 0.5 * tail;
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

// Series expansion of Li_s(e^mu) around mu = 0 (mu < 0), valid for |mu| < 2 pi:
//   s not an integer: Gamma(1-s) (-mu)^{s-1} + sum_j zeta(s-j) mu^j / j!
//   s integer >= 1:   mu^{s-1}/(s-1)! (H_{s-1} - log(-mu)) + sum_{j != s-1} ...
double polylog_series(double s, double mu) {
  const double eps = std::abs(s - std::round(s));
  const bool integer_s = eps < 1e-12;
  double sum = 0.0;
  if (integer_s) {
    const int si = static_cast<int>(std::round(s));
    double harmonic = 0.0;
    for (int i = 1; i < si; ++i) harmonic += 1.0 / i;
    sum += std::pow(mu, si - 1) / std::tgamma(static_cast<double>(si)) *
           (harmonic - std::log(-mu));
  } else {
    sum += std::tgamma(1.0 - s) * std::pow(-mu, s - 1.0);
  }
  double power = 1.0;     // mu^j
  double factorial = 1.0; // j!
  for (int j = 0; j <= 60; ++j) {
    if (j > 0) {
      power *= mu;
      factorial *= j;
    }
    if (integer_s && j == static_cast<int>(std::round(s)) - 1) continue;
    const double term = boost::math::zeta(s - j) * power / factorial;
    sum += term;
    if (j > 3 && std::abs(term) < 1e-18 * std::max(1.0, std::abs(sum))) break;
  }
  return sum;
}

}  // namespace

double polylog_exp(double s, double alpha) {
  if (alpha > 0.0) throw std::invalid_argument("polylog_exp: alpha must be <= 0");
  if (alpha == 0.0) {
    if (s <= 1.0) return kInf;
    return zeta_partial(s, 1e-14);
  }
  // The direct sum needs O(1/|alpha|) terms; the Robinson expansion around 0
  // needs |alpha| small. Crossover at 0.01 keeps both branches cheap and
  // accurate, with the direct sum as a fallback for the series.
  if (alpha > -0.01) {
    const double series = polylog_series(s, alpha);
    if (!std::isnan(series)) return series;
  }
  const double direct = polylog_direct(s, alpha, 1e-15);
  if (!std::isnan(direct)) return direct;
  return polylog_series(s, alpha);
}

double free_rate(int k, double beta, int d) {
  check_beta_d(beta, d);
  if (k < 1) throw std::invalid_argument("free_rate: k must be >= 1");
  return std::pow(4.0 * std::numbers::pi * beta * k, -0.5 * d) / k;
}

double zeta_partial(double s, double tol) {
  if (s <= 1.0) throw std::domain_error("zeta_partial: series diverges for s <= 1");
  if (tol <= 0.0) throw std::invalid_argument("zeta_partial: tol must be positive");
  // Partial sum to K-1 plus the Euler-Maclaurin tail expansion at K.
  // For the completely monotone x^{-s} the remainder is bounded by the first
  // omitted term, s(s+1)(s+2)(s+3)(s+4)/30240 * K^{-s-5}.
  for (std::size_t K = 64; K <= (1u << 22); K *= 2) {
    const double dK = static_cast<double>(K);
    const double remainder_bound =
        s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) / 30240.0 * std::pow(dK, -s - 5.0);
    if (remainder_bound >= tol) continue;
    double sum = 0.0;
    for (std::size_t k = K - 1; k >= 1; --k) sum += std::pow(static_cast<double>(k), -s);
    sum += std::pow(dK, 1.0 - s) / (s - 1.0);  // integral tail
    sum += 0.5 * std::pow(dK, -s);
    sum += s / 12.0 * std::pow(dK, -s - 1.0);
    sum -= s * (s + 1.0) * (s + 2.0) / 720.0 * std::pow(dK, -s - 3.0);
    return sum;
  }
  throw std::runtime_error("zeta_partial: tolerance unreachable");
}

double rho_c(double beta, int d) {
  check_beta_d(beta, d);
  if (d <= 2) return kInf;
  return heat_prefactor(beta, d) * zeta_partial(0.5 * d, 1e-13);
}

double qbar(double beta, int d) {
  check_beta_d(beta, d);
  return heat_prefactor(beta, d) * zeta_partial(1.0 + 0.5 * d, 1e-13);
}

double qbar_direct(double beta, int d, double tol) {
  check_beta_d(beta, d);
  // sum_{k >= K} q_k approximated by the midpoint rule,
  //   integral_{K-1/2}^{inf} c x^{-s} dx = c (K-1/2)^{1-s} / (s-1),
  // whose error for the convex integrand is bounded by
  //   (1/24) integral_{K-3/2}^{inf} |f''| = (1/24) c s (K-3/2)^{-s-1}.
  const double c = heat_prefactor(beta, d);
  const double s = 1.0 + 0.5 * d;
  for (std::size_t K = 256; K <= (1u << 26); K *= 2) {
    const double dK = static_cast<double>(K);
    const double err = c * s / 24.0 * std::pow(dK - 1.5, -s - 1.0);
    if (err >= tol) continue;
    double sum = 0.0;
    for (std::size_t k = K - 1; k >= 1; --k) sum += free_rate(static_cast<int>(k), beta, d);
    return sum + c * std::pow(dK - 0.5, 1.0 - s) / (s - 1.0);
  }
  throw std::runtime_error("qbar_direct: tolerance unreachable");
}

namespace {

// sum_k k q_k e^{alpha k} = c Li_{d/2}(e^alpha)
double mass_at(double alpha, double c, int d) {
  if (alpha == -kInf) return 0.0;
  return c * polylog_exp(0.5 * d, alpha);
}

// H(m^alpha | q) = c [ zeta(1+d/2) - Li_{1+d/2}(e^alpha) + alpha Li_{d/2}(e^alpha) ]
double entropy_at(double alpha, double c, int d) {
  const double s = 0.5 * d;
  if (alpha == -kInf) return c * zeta_partial(s + 1.0, 1e-14);
  if (alpha == 0.0) return 0.0;
  return c * (zeta_partial(s + 1.0, 1e-14) - polylog_exp(s + 1.0, alpha) +
              alpha * polylog_exp(s, alpha));
}

}  // namespace

FreeGasSolution solve_alpha(double rho, double beta, int d, double tol, int k_store) {
  check_beta_d(beta, d);
  if (rho < 0.0) throw std::invalid_argument("solve_alpha: rho must be >= 0");
  if (tol <= 0.0) throw std::invalid_argument("solve_alpha: tol must be positive");
  if (k_store < 0) throw std::invalid_argument("solve_alpha: k_store must be >= 0");

  const double c = heat_prefactor(beta, d);
  FreeGasSolution sol;
  sol.rho = rho;
  sol.qbar = qbar(beta, d);

  const double rhoc = rho_c(beta, d);
  const double target = std::min(rho, rhoc);

  if (rho == 0.0) {
    sol.alpha = -kInf;
    sol.entropy = sol.qbar;  // H(0 | q) = sum_k q_k
    sol.chibar = sol.entropy;
    sol.beta_f = -sol.qbar + sol.chibar;
    sol.m.assign(static_cast<std::size_t>(k_store), 0.0);
    return sol;
  }

  if (rho >= rhoc) {
    sol.alpha = 0.0;
    sol.interlacement_density = rho - rhoc;
    sol.residual = 0.0;
  } else {
    // Bisect in t with alpha = -exp(t), so that solutions exponentially close
    // to 0 (d <= 2 at high density) keep full relative resolution in alpha.
    double lo = -50.0;
    while (mass_at(lo, c, d) > target) lo *= 2.0;
    double t_lo = std::log(1e-320);  // alpha -> 0-, mass -> min(rho_c, huge)
    double t_hi = std::log(-lo);
    double residual = kInf;
    for (int iter = 0; iter < 400; ++iter) {
      const double t = 0.5 * (t_lo + t_hi);
      const double alpha = -std::exp(t);
      const double mass = mass_at(alpha, c, d);
      const double r = std::abs(mass - target);
      if (r < residual) {
        residual = r;
        sol.alpha = alpha;
      }
      if (r <= tol * std::min(1.0, target)) break;
      if (mass < target) {
        t_hi = t;  // need alpha closer to 0
      } else {
        t_lo = t;
      }
      if (t_hi - t_lo < 1e-15) break;
    }
    sol.residual = residual;
  }

  sol.entropy = entropy_at(sol.alpha, c, d);
  sol.chibar = sol.entropy;
  sol.beta_f = -sol.qbar + sol.chibar;

  sol.m.resize(static_cast<std::size_t>(k_store));
  double stored = 0.0;
  for (int k = 1; k <= k_store; ++k) {
    const double mk = free_rate(k, beta, d) * std::exp(sol.alpha * k);
    sol.m[static_cast<std::size_t>(k - 1)] = mk;
    stored += k * mk;
  }
  sol.stored_mass_tail = std::max(0.0, mass_at(sol.alpha, c, d) - stored);
  return sol;
}

double entropy_sequence(std::span<const double> m, std::span<const double> q) {
  if (m.size() != q.size()) throw std::invalid_argument("entropy_sequence: length mismatch");
  double h = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const double mk = m[i];
    const double qk = q[i];
    if (mk < 0.0 || qk < 0.0) throw std::invalid_argument("entropy_sequence: negative entry");
    if (mk == 0.0) {
      h += qk;  // 0 log 0 = 0
      continue;
    }
    if (qk == 0.0) return kInf;
    h += qk - mk + mk * std::log(mk / qk);
  }
  return h;
}

FreeGasSolution chibar_free(double rho, double beta, int d) {
  return solve_alpha(rho, beta, d);
}

double rel_entropy_discrete(std::span<const double> mu, std::span<const double> nu) {
  return entropy_sequence(mu, nu);
}

double dual_lower_bound(std::span<const double> mu_hat, std::span<const double> nu,
                        const std::vector<std::vector<double>>& test_functions) {
  if (mu_hat.size() != nu.size()) throw std::invalid_argument("dual_lower_bound: length mismatch");
  double best = -kInf;
  for (const auto& f : test_functions) {
    if (f.size() != mu_hat.size()) {
      throw std::invalid_argument("dual_lower_bound: test function length mismatch");
    }
    double pairing = 0.0;
    double exp_moment = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (mu_hat[i] > 0.0) pairing += f[i] * mu_hat[i];
      exp_moment += std::exp(f[i]) * nu[i];
    }
    best = std::max(best, pairing - std::log(exp_moment));
  }
  return best;
}

}  // namespace loopsoup
