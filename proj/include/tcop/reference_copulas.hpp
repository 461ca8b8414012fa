#ifndef TCOP_REFERENCE_COPULAS_HPP
#define TCOP_REFERENCE_COPULAS_HPP

#include <cstddef>

#include "tcop/empirical.hpp"
#include "tcop/errors.hpp"
#include "tcop/rng.hpp"

namespace tcop {

struct GaussianParams {
  double r12;  // |r12| < 1
};

struct GumbelParams {
  double theta;  // >= 1
};

// Gaussian copula CDF; boundary values are returned exactly rather than
// pushing +-infinity through the normal quantile.
double gauss_cdf(const GaussianParams& p, double u, double v);

// r12 = sin(pi * tau_hat / 2); valid only for |tau_hat| < 1.
GaussianParams gauss_fit_from_tau(double tau_hat);

// Pairs (Phi(Z1), Phi(Z2)) with corr(Z1, Z2) = r12.
PseudoSample gauss_sample(const GaussianParams& p, std::size_t n, RngStream& rng);

// C(u,v) = exp(-[(-ln u)^theta + (-ln v)^theta]^(1/theta)).
double gumbel_cdf(const GumbelParams& p, double u, double v);

// theta = 1/(1 - tau_hat); valid only for 0 <= tau_hat < 1.
GumbelParams gumbel_fit_from_tau(double tau_hat);

// Upper tail dependence 2 - 2^(1/theta).
double gumbel_lambda_u(const GumbelParams& p);

// Exact Gumbel pairs via the positive-stable frailty construction
// (Chambers-Mallows-Stuck stable generator, index 1/theta).
// Draw order per pair: Theta, W, E1, E2.
PseudoSample gumbel_sample(const GumbelParams& p, std::size_t n, RngStream& rng);

// Pickands dependence function of the Gumbel copula,
// A(t) = (t^theta + (1-t)^theta)^(1/theta), t in [0,1].
double pickands_gumbel(double theta, double t);

}  // namespace tcop

#endif  // TCOP_REFERENCE_COPULAS_HPP
