#include "tcop/reference_copulas.hpp"

#include <cmath>
#include <stdexcept>

#include "tcop/distributions.hpp"
#include "tcop/special.hpp"

namespace tcop {

double gauss_cdf(const GaussianParams& p, double u, double v) {
  if (!(std::fabs(p.r12) < 1.0))
    throw std::domain_error("gauss_cdf: |r12| must be < 1");
  if (!(u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0))
    throw std::domain_error("gauss_cdf: (u,v) must lie in the unit square");
  if (u == 0.0 || v == 0.0) return 0.0;
  if (v == 1.0) return u;
  if (u == 1.0) return v;
  return bivariate_normal_cdf(std_normal_quantile(u), std_normal_quantile(v),
                              p.r12);
}

GaussianParams gauss_fit_from_tau(double tau_hat) {
  if (!(tau_hat > -1.0 && tau_hat < 1.0))
    throw FitError("gauss_fit_from_tau: requires |tau_hat| < 1");
  return GaussianParams{std::sin(0.5 * M_PI * tau_hat)};
}

PseudoSample gauss_sample(const GaussianParams& p, std::size_t n,
                          RngStream& rng) {
  if (!(std::fabs(p.r12) < 1.0))
    throw std::domain_error("gauss_sample: |r12| must be < 1");
  if (n == 0) throw std::invalid_argument("gauss_sample: n must be >= 1");
  const double root = std::sqrt(1.0 - p.r12 * p.r12);
  PseudoSample out;
  out.u1.resize(n);
  out.u2.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    // Box-Muller pair from two uniforms
    const double r = std::sqrt(-2.0 * std::log(rng.uniform_open()));
    const double phi = 2.0 * M_PI * rng.uniform();
    const double z1 = r * std::cos(phi);
    const double z2 = r * std::sin(phi);
    out.u1[i] = std_normal_cdf(z1);
    out.u2[i] = std_normal_cdf(p.r12 * z1 + root * z2);
  }
  return out;
}

namespace {

void check_gumbel(const GumbelParams& p) {
  if (!(p.theta >= 1.0)) throw std::domain_error("gumbel: theta must be >= 1");
}

// (a^theta + b^theta)^(1/theta) with the larger term factored out so that
// large theta cannot overflow.
double power_mean(double a, double b, double theta) {
  const double m = std::max(a, b);
  if (m == 0.0) return 0.0;
  const double q = std::min(a, b) / m;
  return m * std::exp(std::log1p(std::pow(q, theta)) / theta);
}

}  // namespace

double gumbel_cdf(const GumbelParams& p, double u, double v) {
  check_gumbel(p);
  if (!(u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0))
    throw std::domain_error("gumbel_cdf: (u,v) must lie in the unit square");
  if (u == 0.0 || v == 0.0) return 0.0;
  if (v == 1.0) return u;
  if (u == 1.0) return v;
  if (p.theta == 1.0) return u * v;
  return std::exp(-power_mean(-std::log(u), -std::log(v), p.theta));
}

GumbelParams gumbel_fit_from_tau(double tau_hat) {
  if (!(tau_hat >= 0.0 && tau_hat < 1.0))
    throw FitError("gumbel_fit_from_tau: requires 0 <= tau_hat < 1");
  return GumbelParams{1.0 / (1.0 - tau_hat)};
}

double gumbel_lambda_u(const GumbelParams& p) {
  check_gumbel(p);
  return 2.0 - std::pow(2.0, 1.0 / p.theta);
}

PseudoSample gumbel_sample(const GumbelParams& p, std::size_t n,
                           RngStream& rng) {
  check_gumbel(p);
  if (n == 0) throw std::invalid_argument("gumbel_sample: n must be >= 1");
  PseudoSample out;
  out.u1.resize(n);
  out.u2.resize(n);
  const double a = 1.0 / p.theta;  // stable index in (0,1]
  for (std::size_t i = 0; i < n; ++i) {
    if (p.theta == 1.0) {
      out.u1[i] = rng.uniform_open();
      out.u2[i] = rng.uniform_open();
      continue;
    }
    // positive stable S with Laplace transform exp(-s^a)
    const double th = M_PI * rng.uniform_open();
    const double w = sample_exp1(rng);
    const double s = std::pow(std::sin((1.0 - a) * th) / w, (1.0 - a) / a) *
                     std::sin(a * th) / std::pow(std::sin(th), 1.0 / a);
    const double e1 = sample_exp1(rng);
    const double e2 = sample_exp1(rng);
    out.u1[i] = std::exp(-std::pow(e1 / s, a));
    out.u2[i] = std::exp(-std::pow(e2 / s, a));
  }
  return out;
}

double pickands_gumbel(double theta, double t) {
  if (!(theta >= 1.0)) throw std::domain_error("pickands_gumbel: theta must be >= 1");
  if (!(t >= 0.0 && t <= 1.0))
    throw std::domain_error("pickands_gumbel: t must lie in [0,1]");
  if (t == 0.0 || t == 1.0) return 1.0;
  return power_mean(t, 1.0 - t, theta);
}

}  // namespace tcop
