#ifndef TCOP_TWO_COMPONENT_HPP
#define TCOP_TWO_COMPONENT_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "tcop/empirical.hpp"
#include "tcop/errors.hpp"
#include "tcop/rng.hpp"

namespace tcop {

// Copula shape parameters: the margins' Pareto II shapes. Both > 0.
struct TwoComponentParams {
  double alpha1;
  double alpha2;
};

// Full loss model X_i = sigma_i * W * Y_i with W ~ Exp(1) and
// 1/Y_i ~ Gamma(alpha_i, 1). The sigmas scale the margins only; the copula
// depends on the alphas alone.
struct ModelParams {
  TwoComponentParams tc;
  double sigma1;
  double sigma2;
};

// Copula CDF. Exact on the boundary (C(u,1)=u, C(1,v)=v, grounded at 0);
// interior via adaptive quadrature of the shared-factor integral, absolute
// error well below 1e-8.
double tc_cdf(const TwoComponentParams& p, double u, double v);

// Copula density on the open unit square, closed form evaluated in
// log space. Throws std::domain_error on the boundary.
double tc_density(const TwoComponentParams& p, double u, double v);
double tc_log_density(const TwoComponentParams& p, double u, double v);

// n i.i.d. loss pairs; each pair shares one W draw. Margins are
// P(II)(0, sigma_i, alpha_i). Draw order per pair: W, G1, G2.
LossSample tc_sample(const ModelParams& m, std::size_t n, RngStream& rng);

// Uniform-margin pairs with the same copula: U_i = F_{X_i}(X_i). Identical
// draw order to tc_sample, so the two samplers produce rank-identical output
// from the same stream state.
PseudoSample tc_sample_uniform(const TwoComponentParams& p, std::size_t n,
                               RngStream& rng);

// Clayton pairs with parameter theta > 0 (Marshall-Olkin frailty
// construction, uniform-margin form U = (1 + W_i/S)^(-1/theta)).
// Draw order per pair: S, W1, W2.
PseudoSample clayton_sample(double theta, std::size_t n, RngStream& rng);

struct TailPoint {
  double t;
  double lambda;
};

// Upper-tail-dependence function lambda_U(t) (the limit's argument, not the
// limit) on a grid of t in (0, 0.5]. Each value is the sum of two
// conditional-probability-like integrals, quadrature error below 1e-6.
std::vector<TailPoint> tc_lambda_u_curve(const TwoComponentParams& p,
                                         std::span<const double> t_grid);

// 40 log-spaced points in [1e-6, 0.5].
std::vector<double> default_tail_grid();

enum class TailVerdict { zero, undetermined };

// Graphical-estimate heuristic: "zero" when the curve decreases
// monotonically towards 0 as t falls from the curve's maximum and the value
// at the smallest t is within 1e-3 of 0; otherwise "undetermined".
TailVerdict tail_verdict(const std::vector<TailPoint>& curve);
std::string to_string(TailVerdict v);

// Margin-based estimate: alpha_i = 1/xi_i from marginal GPD maximum
// likelihood. Throws FitError if either fitted xi is <= 0.
TwoComponentParams tc_fit_margins(const LossSample& data);

// Pseudo-likelihood estimate: maximize the sum of log copula densities over
// pseudo-observations. Nelder-Mead in log-parameter space restarted from
// three initial points, search box [0.05, 100]^2; throws FitError if the
// optimum sits on the box boundary or n < 10.
TwoComponentParams tc_fit_pseudo_likelihood(const PseudoSample& ps);

}  // namespace tcop

#endif  // TCOP_TWO_COMPONENT_HPP
