#include "tcop/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace tcop {

double gpd_cdf(const GpdParams& p, double x) {
  if (!(p.sigma > 0.0)) throw std::domain_error("gpd_cdf: sigma must be > 0");
  if (x <= 0.0) return 0.0;
  if (p.xi == 0.0) return -std::expm1(-x / p.sigma);
  const double z = 1.0 + p.xi * x / p.sigma;
  if (p.xi < 0.0 && z <= 0.0) return 1.0;  // beyond the upper endpoint -sigma/xi
  return -std::expm1(-std::log1p(p.xi * x / p.sigma) / p.xi);
}

double pareto2_cdf(const ParetoIIParams& p, double x) {
  if (!(p.sigma > 0.0) || !(p.alpha > 0.0))
    throw std::domain_error("pareto2_cdf: sigma and alpha must be > 0");
  if (x <= 0.0) return 0.0;
  return -std::expm1(-p.alpha * std::log1p(x / p.sigma));
}

double pareto2_quantile(const ParetoIIParams& p, double u) {
  if (!(p.sigma > 0.0) || !(p.alpha > 0.0))
    throw std::domain_error("pareto2_quantile: sigma and alpha must be > 0");
  if (!(u > 0.0) || !(u < 1.0))
    throw std::domain_error("pareto2_quantile: u must be in (0,1)");
  return p.sigma * std::expm1(-std::log1p(-u) / p.alpha);
}

double sample_exp1(RngStream& rng) { return -std::log(rng.uniform_open()); }

double sample_std_normal(RngStream& rng) {
  const double r = std::sqrt(-2.0 * std::log(rng.uniform_open()));
  return r * std::cos(2.0 * M_PI * rng.uniform());
}

double sample_gamma(double alpha, RngStream& rng) {
  if (!(alpha > 0.0)) throw std::domain_error("sample_gamma: alpha must be > 0");
  if (alpha < 1.0) {
    const double boost = std::pow(rng.uniform_open(), 1.0 / alpha);
    return boost * sample_gamma(alpha + 1.0, rng);
  }
  const double d = alpha - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = sample_std_normal(rng);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform_open();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

namespace {

// Negative GPD log-likelihood at (xi, sigma), mu = 0; +inf outside support.
double gpd_negll(double xi, double sigma, std::span<const double> x) {
  if (!(sigma > 0.0)) return std::numeric_limits<double>::infinity();
  const double n = static_cast<double>(x.size());
  if (std::fabs(xi) < 1e-12) {
    double s = 0.0;
    for (double v : x) s += v;
    return n * std::log(sigma) + s / sigma;
  }
  double s = 0.0;
  for (double v : x) {
    const double z = 1.0 + xi * v / sigma;
    if (z <= 0.0) return std::numeric_limits<double>::infinity();
    s += std::log1p(xi * v / sigma);
  }
  return n * std::log(sigma) + (1.0 + 1.0 / xi) * s;
}

template <typename F>
double golden_min(F&& f, double a, double b, double tol, int iters = 200) {
  const double g = 0.6180339887498949;
  double c = b - g * (b - a);
  double d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iters && (b - a) > tol; ++i) {
    if (fc < fd) {
      b = d; d = c; fd = fc;
      c = b - g * (b - a); fc = f(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + g * (b - a); fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

// Profile optimum over sigma for a fixed xi; returns {sigma, negll}.
std::pair<double, double> profile_sigma(double xi, std::span<const double> x,
                                        double mean_x, double max_x) {
  double lo = std::log(mean_x) - 15.0;
  const double hi = std::log(mean_x) + 15.0;
  if (xi < 0.0) {
    // support requires sigma > -xi * max(x)
    lo = std::max(lo, std::log(-xi * max_x) + 1e-10);
  }
  auto f = [&](double ls) { return gpd_negll(xi, std::exp(ls), x); };
  const double ls = golden_min(f, lo, hi, 1e-12);
  return {std::exp(ls), f(ls)};
}

}  // namespace

GpdFit fit_gpd_mle(std::span<const double> data) {
  if (data.size() < 10) throw FitError("fit_gpd_mle: need at least 10 observations");
  double mn = data[0], mx = data[0], sum = 0.0;
  for (double v : data) {
    if (!(v > 0.0)) throw FitError("fit_gpd_mle: data must be strictly positive");
    mn = std::min(mn, v);
    mx = std::max(mx, v);
    sum += v;
  }
  if (mx - mn <= 1e-12 * mx) throw FitError("fit_gpd_mle: degenerate data (all equal)");
  const double mean_x = sum / static_cast<double>(data.size());

  constexpr double kXiLo = -0.98;
  constexpr double kXiHi = 5.0;
  constexpr int kGrid = 64;
  double best_before = std::numeric_limits<double>::infinity();
  int best_i = -1;
  std::vector<double> grid(kGrid);
  for (int i = 0; i < kGrid; ++i) {
    grid[i] = kXiLo + (kXiHi - kXiLo) * i / (kGrid - 1);
    const double v = profile_sigma(grid[i], data, mean_x, mx).second;
    if (v < best_before) {
      best_before = v;
      best_i = i;
    }
  }
  if (best_i < 0 || !std::isfinite(best_before))
    throw FitError("fit_gpd_mle: failed to bracket a likelihood maximum");

  const double lo = grid[std::max(0, best_i - 1)];
  const double hi = grid[std::min(kGrid - 1, best_i + 1)];
  auto prof = [&](double xi) { return profile_sigma(xi, data, mean_x, mx).second; };
  const double xi_hat = golden_min(prof, lo, hi, 1e-8);
  const auto [sigma_hat, negll] = profile_sigma(xi_hat, data, mean_x, mx);
  if (!std::isfinite(negll))
    throw FitError("fit_gpd_mle: failed to bracket a likelihood maximum");
  return GpdFit{GpdParams{xi_hat, sigma_hat}, -negll, data.size()};
}

ParetoIIParams pareto_from_gpd(const GpdParams& g) {
  if (!(g.xi > 0.0))
    throw FitError("pareto_from_gpd: xi must be > 0 (margin not heavy-tailed)");
  return ParetoIIParams{g.sigma / g.xi, 1.0 / g.xi};
}

}  // namespace tcop
