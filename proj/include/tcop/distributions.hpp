#ifndef TCOP_DISTRIBUTIONS_HPP
#define TCOP_DISTRIBUTIONS_HPP

#include <cstddef>
#include <span>

#include "tcop/errors.hpp"
#include "tcop/rng.hpp"

namespace tcop {

// Generalised Pareto with location fixed at 0 (losses are nonnegative).
struct GpdParams {
  double xi;     // shape
  double sigma;  // scale, > 0
};

// Pareto Type II with location 0; the xi > 0 face of the GPD,
// alpha = 1/xi, sigma_P = sigma_GPD / xi.
struct ParetoIIParams {
  double sigma;  // scale, > 0
  double alpha;  // shape, > 0
};

struct GpdFit {
  GpdParams params;
  double log_likelihood;
  std::size_t n;
};

double gpd_cdf(const GpdParams& p, double x);
double pareto2_cdf(const ParetoIIParams& p, double x);

// Inverse of pareto2_cdf; u in (0,1).
double pareto2_quantile(const ParetoIIParams& p, double u);

double sample_exp1(RngStream& rng);

// One standard normal draw (Box-Muller, two uniforms per call).
double sample_std_normal(RngStream& rng);

// Gamma(alpha, 1) via Marsaglia-Tsang, with the U^(1/alpha) boost for
// alpha < 1. alpha > 0.
double sample_gamma(double alpha, RngStream& rng);

// Maximum-likelihood GPD fit with mu = 0: profile likelihood over xi on a
// grid in (-0.99, 5], golden-section polish to 1e-8, sigma profiled by an
// inner one-dimensional search. Requires n >= 10 and strictly positive data.
// Throws FitError for degenerate data or when no interior maximum exists.
GpdFit fit_gpd_mle(std::span<const double> data);

// GPD(xi, 0, sigma) ~ P(II)(0, sigma/xi, 1/xi) for xi > 0; throws FitError
// for xi <= 0 (margin not heavy tailed, copula shape undefined).
ParetoIIParams pareto_from_gpd(const GpdParams& g);

}  // namespace tcop

#endif  // TCOP_DISTRIBUTIONS_HPP
