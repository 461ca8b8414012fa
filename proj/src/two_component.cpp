#include "tcop/two_component.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "tcop/distributions.hpp"
#include "tcop/quadrature.hpp"
#include "tcop/special.hpp"

namespace tcop {

namespace {

void check_params(const TwoComponentParams& p) {
  if (!(p.alpha1 > 0.0) || !(p.alpha2 > 0.0))
    throw std::domain_error("two-component copula requires alpha1, alpha2 > 0");
}

// t(u) = (1-u)^(-1/alpha) - 1, the inverse-margin scale entering the
// shared-factor integral.
double margin_scale(double u, double alpha) {
  return std::expm1(-std::log1p(-u) / alpha);
}

}  // namespace

double tc_cdf(const TwoComponentParams& p, double u, double v) {
  check_params(p);
  if (!(u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0))
    throw std::domain_error("tc_cdf: (u,v) must lie in the unit square");
  if (u == 0.0 || v == 0.0) return 0.0;
  if (v == 1.0) return u;
  if (u == 1.0) return v;

  const double t1 = margin_scale(u, p.alpha1);
  const double t2 = margin_scale(v, p.alpha2);
  const double a1 = p.alpha1;
  const double a2 = p.alpha2;
  auto integrand = [&](double w) {
    return reg_lower_gamma(a1, w / t1) * reg_lower_gamma(a2, w / t2) *
           std::exp(-w);
  };
  // Truncation at 40 leaves a tail below e^-40 ~ 4e-18. Breakpoints mark the
  // lift-off of each gamma CDF factor (center alpha*t, width sqrt(alpha)*t)
  // so narrow transitions cannot slip between quadrature nodes.
  constexpr double kUpper = 40.0;
  std::vector<double> cand = {1.0, 4.0, 16.0};
  for (const auto& [a, t] : {std::pair{a1, t1}, std::pair{a2, t2}}) {
    const double m = a * t;
    const double s = std::sqrt(a) * t;
    for (double k : {-8.0, -3.0, 0.0, 3.0, 8.0, 20.0}) cand.push_back(m + k * s);
  }
  const double integral =
      integrate_adaptive(integrand, make_breakpoints(cand, 0.0, kUpper), 1e-10);
  const double c = u + v - 1.0 + integral;
  // clamp to the Frechet bounds; quadrature noise may poke past them
  return std::min(std::min(u, v), std::max(c, std::max(0.0, u + v - 1.0)));
}

double tc_log_density(const TwoComponentParams& p, double u, double v) {
  check_params(p);
  if (!(u > 0.0 && u < 1.0 && v > 0.0 && v < 1.0))
    throw std::domain_error("tc_density: (u,v) must lie in the open unit square");
  const double a1 = p.alpha1;
  const double a2 = p.alpha2;
  const double a = -std::log1p(-u);  // (1-u)^(-1/a1) = exp(a/a1)
  const double b = -std::log1p(-v);
  const double e1 = std::expm1(a / a1);
  const double e2 = std::expm1(b / a2);
  const double e12 = std::expm1(a / a1 + b / a2);
  return (1.0 / a1 + 1.0) * a + (1.0 / a2 + 1.0) * b + a2 * std::log(e1) +
         a1 * std::log(e2) - std::log(a1 + a2 + 1.0) -
         ln_beta(a1 + 1.0, a2 + 1.0) - (a1 + a2 + 1.0) * std::log(e12);
}

double tc_density(const TwoComponentParams& p, double u, double v) {
  return std::exp(tc_log_density(p, u, v));
}

LossSample tc_sample(const ModelParams& m, std::size_t n, RngStream& rng) {
  check_params(m.tc);
  if (!(m.sigma1 > 0.0) || !(m.sigma2 > 0.0))
    throw std::domain_error("tc_sample: sigma1, sigma2 must be > 0");
  if (n == 0) throw std::invalid_argument("tc_sample: n must be >= 1");
  LossSample out;
  out.x1.resize(n);
  out.x2.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double w = sample_exp1(rng);
    const double g1 = sample_gamma(m.tc.alpha1, rng);
    const double g2 = sample_gamma(m.tc.alpha2, rng);
    out.x1[i] = m.sigma1 * w / g1;
    out.x2[i] = m.sigma2 * w / g2;
  }
  return out;
}

PseudoSample tc_sample_uniform(const TwoComponentParams& p, std::size_t n,
                               RngStream& rng) {
  check_params(p);
  if (n == 0) throw std::invalid_argument("tc_sample_uniform: n must be >= 1");
  PseudoSample out;
  out.u1.resize(n);
  out.u2.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double w = sample_exp1(rng);
    const double g1 = sample_gamma(p.alpha1, rng);
    const double g2 = sample_gamma(p.alpha2, rng);
    // U = 1 - (1 + W/G)^(-alpha) = F_X(X), uniform on (0,1)
    out.u1[i] = -std::expm1(-p.alpha1 * std::log1p(w / g1));
    out.u2[i] = -std::expm1(-p.alpha2 * std::log1p(w / g2));
  }
  return out;
}

PseudoSample clayton_sample(double theta, std::size_t n, RngStream& rng) {
  if (!(theta > 0.0)) throw std::domain_error("clayton_sample: theta must be > 0");
  if (n == 0) throw std::invalid_argument("clayton_sample: n must be >= 1");
  PseudoSample out;
  out.u1.resize(n);
  out.u2.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = sample_gamma(1.0 / theta, rng);
    const double w1 = sample_exp1(rng);
    const double w2 = sample_exp1(rng);
    out.u1[i] = std::exp(-std::log1p(w1 / s) / theta);
    out.u2[i] = std::exp(-std::log1p(w2 / s) / theta);
  }
  return out;
}

namespace {

// One term of the tail-dependence function with the t-power prefactor folded
// into the integrand:
//   (1/Gamma(aa+1)) * int_0^inf w^aa exp(-w(1+t^(1/aa))) P(ab, w t^(1/ab)) dw
double lambda_term(double aa, double ab, double t) {
  const double ta = std::pow(t, 1.0 / aa);
  const double tb = std::pow(t, 1.0 / ab);
  const double lgn = ln_gamma(aa + 1.0);
  auto integrand = [&](double w) {
    if (w <= 0.0) return 0.0;
    return std::exp(aa * std::log(w) - w * (1.0 + ta) - lgn) *
           reg_lower_gamma(ab, w * tb);
  };
  const double upper = aa + 1.0 + 12.0 * std::sqrt(aa + 1.0) + 40.0;
  std::vector<double> cand = {1.0, 4.0, 16.0, aa / (1.0 + ta)};
  if (tb > 0.0) {
    const double m = ab / tb;  // lift-off of the CDF factor in w
    const double s = std::sqrt(ab) / tb;
    for (double k : {-8.0, -3.0, 0.0, 3.0, 8.0}) cand.push_back(m + k * s);
  }
  return integrate_adaptive(integrand, make_breakpoints(cand, 0.0, upper), 1e-8);
}

}  // namespace

std::vector<TailPoint> tc_lambda_u_curve(const TwoComponentParams& p,
                                         std::span<const double> t_grid) {
  check_params(p);
  std::vector<TailPoint> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    if (!(t > 0.0 && t <= 0.5))
      throw std::domain_error("tc_lambda_u_curve: t must lie in (0, 0.5]");
    out.push_back(
        {t, lambda_term(p.alpha1, p.alpha2, t) + lambda_term(p.alpha2, p.alpha1, t)});
  }
  return out;
}

std::vector<double> default_tail_grid() {
  constexpr int kPoints = 40;
  constexpr double kLo = 1e-6;
  constexpr double kHi = 0.5;
  std::vector<double> grid(kPoints);
  for (int i = 0; i < kPoints; ++i)
    grid[i] = kLo * std::pow(kHi / kLo, static_cast<double>(i) / (kPoints - 1));
  return grid;
}

TailVerdict tail_verdict(const std::vector<TailPoint>& curve) {
  if (curve.size() < 2) return TailVerdict::undetermined;
  std::size_t peak = 0;
  for (std::size_t i = 1; i < curve.size(); ++i)
    if (curve[i].lambda >= curve[peak].lambda) peak = i;
  // decreasing towards 0 as t falls away from the peak
  for (std::size_t i = 0; i < peak; ++i)
    if (curve[i].lambda > curve[i + 1].lambda + 1e-9)
      return TailVerdict::undetermined;
  if (!(curve.front().lambda < 1e-3)) return TailVerdict::undetermined;
  return TailVerdict::zero;
}

std::string to_string(TailVerdict v) {
  return v == TailVerdict::zero ? "zero" : "undetermined";
}

TwoComponentParams tc_fit_margins(const LossSample& data) {
  const GpdFit f1 = fit_gpd_mle(data.x1);
  const GpdFit f2 = fit_gpd_mle(data.x2);
  if (!(f1.params.xi > 0.0) || !(f2.params.xi > 0.0))
    throw FitError("tc_fit_margins: fitted xi <= 0, copula shape undefined");
  return TwoComponentParams{1.0 / f1.params.xi, 1.0 / f2.params.xi};
}

namespace {

using Point2 = std::array<double, 2>;

// Nelder-Mead on a 2-d objective, tolerance on simplex spread.
Point2 nelder_mead(const std::function<double(const Point2&)>& f, Point2 start,
                   double scale, int max_iter, double tol) {
  std::array<Point2, 3> simplex{start,
                                Point2{start[0] + scale, start[1]},
                                Point2{start[0], start[1] + scale}};
  std::array<double, 3> fv{f(simplex[0]), f(simplex[1]), f(simplex[2])};
  for (int it = 0; it < max_iter; ++it) {
    std::array<int, 3> idx{0, 1, 2};
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return fv[a] < fv[b]; });
    const std::array<Point2, 3> sx{simplex[idx[0]], simplex[idx[1]], simplex[idx[2]]};
    const std::array<double, 3> sf{fv[idx[0]], fv[idx[1]], fv[idx[2]]};
    simplex = sx;
    fv = sf;

    double spread = 0.0;
    for (int d = 0; d < 2; ++d)
      spread = std::max(spread, std::fabs(simplex[2][d] - simplex[0][d]));
    if (spread < tol && std::fabs(fv[2] - fv[0]) < tol) break;

    const Point2 centroid{0.5 * (simplex[0][0] + simplex[1][0]),
                          0.5 * (simplex[0][1] + simplex[1][1])};
    auto along = [&](double coef) {
      return Point2{centroid[0] + coef * (centroid[0] - simplex[2][0]),
                    centroid[1] + coef * (centroid[1] - simplex[2][1])};
    };
    const Point2 xr = along(1.0);
    const double fr = f(xr);
    if (fr < fv[0]) {
      const Point2 xe = along(2.0);
      const double fe = f(xe);
      if (fe < fr) {
        simplex[2] = xe; fv[2] = fe;
      } else {
        simplex[2] = xr; fv[2] = fr;
      }
    } else if (fr < fv[1]) {
      simplex[2] = xr; fv[2] = fr;
    } else {
      const Point2 xc = along(fr < fv[2] ? 0.5 : -0.5);
      const double fc = f(xc);
      if (fc < std::min(fr, fv[2])) {
        simplex[2] = xc; fv[2] = fc;
      } else {
        for (int k = 1; k < 3; ++k) {
          for (int d = 0; d < 2; ++d)
            simplex[k][d] = 0.5 * (simplex[k][d] + simplex[0][d]);
          fv[k] = f(simplex[k]);
        }
      }
    }
  }
  const int best = fv[0] <= fv[1] ? (fv[0] <= fv[2] ? 0 : 2) : (fv[1] <= fv[2] ? 1 : 2);
  return simplex[best];
}

}  // namespace

TwoComponentParams tc_fit_pseudo_likelihood(const PseudoSample& ps) {
  const std::size_t n = ps.size();
  if (n < 10)
    throw FitError("tc_fit_pseudo_likelihood: need at least 10 observations");
  for (std::size_t i = 0; i < n; ++i)
    if (!(ps.u1[i] > 0.0 && ps.u1[i] < 1.0 && ps.u2[i] > 0.0 && ps.u2[i] < 1.0))
      throw FitError("tc_fit_pseudo_likelihood: pseudo-observations must lie in (0,1)");

  const double lo = std::log(0.05);
  const double hi = std::log(100.0);
  auto negll = [&](const Point2& q) {
    if (q[0] < lo || q[0] > hi || q[1] < lo || q[1] > hi)
      return std::numeric_limits<double>::infinity();
    const TwoComponentParams p{std::exp(q[0]), std::exp(q[1])};
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s -= tc_log_density(p, ps.u1[i], ps.u2[i]);
    return s;
  };

  const std::array<Point2, 3> starts{
      Point2{0.0, 0.0},                              // (1, 1)
      Point2{std::log(5.0), std::log(5.0)},          // (5, 5)
      Point2{std::log(0.4), std::log(2.0)}};
  Point2 best{0.0, 0.0};
  double best_f = std::numeric_limits<double>::infinity();
  for (const auto& s0 : starts) {
    const Point2 q = nelder_mead(negll, s0, 0.4, 500, 1e-6);
    const double fq = negll(q);
    if (fq < best_f) {
      best_f = fq;
      best = q;
    }
  }
  if (!std::isfinite(best_f))
    throw FitError("tc_fit_pseudo_likelihood: optimizer failed");
  constexpr double kEdge = 1e-4;
  if (best[0] < lo + kEdge || best[0] > hi - kEdge || best[1] < lo + kEdge ||
      best[1] > hi - kEdge)
    throw FitError("tc_fit_pseudo_likelihood: optimum on search-box boundary");
  return TwoComponentParams{std::exp(best[0]), std::exp(best[1])};
}

}  // namespace tcop
