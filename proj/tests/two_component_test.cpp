#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <cmath>
#include <vector>

#include "tcop/distributions.hpp"
#include "tcop/empirical.hpp"
#include "tcop/rng.hpp"
#include "tcop/two_component.hpp"

using namespace tcop;

namespace {

double closed_cdf11(double u, double v) { return u * v / (u + v - u * v); }
double closed_pdf11(double u, double v) {
  const double d = u + v - u * v;
  return 2.0 * u * v / (d * d * d);
}

double ks_uniform(std::vector<double> x) {
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    d = std::max(d, std::fabs((i + 1) / n - x[i]));
    d = std::max(d, std::fabs(x[i] - i / n));
  }
  return d;
}

}  // namespace

TEST_CASE("tc_cdf boundary branches are exact") {
  const TwoComponentParams p{2.3, 0.8};
  CHECK(tc_cdf(p, 0.7, 1.0) == 0.7);
  CHECK(tc_cdf(p, 1.0, 0.42) == 0.42);
  CHECK(tc_cdf(p, 0.0, 0.4) == 0.0);
  CHECK(tc_cdf(p, 0.4, 0.0) == 0.0);
  CHECK(tc_cdf(p, 1.0, 1.0) == 1.0);
  CHECK(tc_cdf(p, 0.0, 0.0) == 0.0);
  CHECK_THROWS_AS(tc_cdf(p, -0.1, 0.5), std::domain_error);
  CHECK_THROWS_AS(tc_cdf(p, 0.5, 1.2), std::domain_error);
  CHECK_THROWS_AS(tc_cdf({0.0, 1.0}, 0.5, 0.5), std::domain_error);
}

TEST_CASE("tc_cdf matches the alpha=1 closed form") {
  const TwoComponentParams p{1.0, 1.0};
  CHECK(tc_cdf(p, 0.5, 0.5) == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
  for (int i = 1; i <= 10; ++i)
    for (int j = 1; j <= 10; ++j) {
      const double u = i / 11.0;
      const double v = j / 11.0;
      CHECK(std::fabs(tc_cdf(p, u, v) - closed_cdf11(u, v)) < 1e-9);
    }
}

TEST_CASE("tc_cdf matches independent adaptive-quadrature references") {
  // values computed with adaptive quadrature of the defining integral at
  // tolerance 1e-13
  CHECK(tc_cdf({3.387732, 1.181292}, 0.3, 0.6) ==
        doctest::Approx(0.26729306893898).epsilon(1e-9));
  CHECK(tc_cdf({3.387732, 1.181292}, 0.85, 0.85) ==
        doctest::Approx(0.75372613551944).epsilon(1e-9));
  CHECK(tc_cdf({0.5, 0.7}, 0.4, 0.2) ==
        doctest::Approx(0.13230129678149).epsilon(1e-9));
  CHECK(tc_cdf({30.0, 35.0}, 0.5, 0.5) ==
        doctest::Approx(0.46577479361681).epsilon(1e-9));
  CHECK(tc_cdf({1.0, 35.0}, 0.25, 0.75) ==
        doctest::Approx(0.24867935211666).epsilon(1e-9));
  CHECK(tc_cdf({2.0, 3.0}, 0.01, 0.99) ==
        doctest::Approx(0.00999999993522).epsilon(1e-8));
}

TEST_CASE("tc_density closed form and domain") {
  const TwoComponentParams p{1.0, 1.0};
  CHECK(tc_density(p, 0.5, 0.5) == doctest::Approx(closed_pdf11(0.5, 0.5)).epsilon(1e-12));
  CHECK(tc_density(p, 0.9, 0.1) == doctest::Approx(0.23886269508778862).epsilon(1e-12));
  for (int i = 1; i <= 8; ++i)
    for (int j = 1; j <= 8; ++j) {
      const double u = i / 9.0;
      const double v = j / 9.0;
      CHECK(tc_density(p, u, v) == doctest::Approx(closed_pdf11(u, v)).epsilon(1e-10));
      CHECK(tc_density({27.0, 4.5}, u, v) > 0.0);
      CHECK(tc_density({0.5, 0.7}, u, v) > 0.0);
    }
  CHECK_THROWS_AS(tc_density(p, 0.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(tc_density(p, 0.5, 1.0), std::domain_error);
}

TEST_CASE("tc density is the mixed second difference of the cdf") {
  RngStream rng(6001);
  const double h = 1e-4;
  for (int trial = 0; trial < 100; ++trial) {
    const TwoComponentParams p{0.3 + 4.7 * rng.uniform(), 0.3 + 4.7 * rng.uniform()};
    const double u = 0.05 + 0.9 * rng.uniform();
    const double v = 0.05 + 0.9 * rng.uniform();
    const double mixed =
        (tc_cdf(p, u + h, v + h) - tc_cdf(p, u + h, v - h) -
         tc_cdf(p, u - h, v + h) + tc_cdf(p, u - h, v - h)) /
        (4.0 * h * h);
    CHECK(mixed == doctest::Approx(tc_density(p, u, v)).epsilon(2e-3));
  }
}

TEST_CASE("tc_cdf is 2-increasing") {
  RngStream rng(6002);
  for (int trial = 0; trial < 1000; ++trial) {
    const TwoComponentParams p{0.3 + 30.0 * rng.uniform(), 0.3 + 30.0 * rng.uniform()};
    const double u1 = rng.uniform();
    const double v1 = rng.uniform();
    const double u2 = u1 + (1.0 - u1) * rng.uniform();
    const double v2 = v1 + (1.0 - v1) * rng.uniform();
    const double vol = tc_cdf(p, u2, v2) - tc_cdf(p, u2, v1) -
                       tc_cdf(p, u1, v2) + tc_cdf(p, u1, v1);
    CHECK(vol >= -1e-10);
  }
}

TEST_CASE("tc_cdf symmetry holds iff the shapes are equal") {
  const TwoComponentParams asym{1.0, 35.0};
  double max_gap = 0.0;
  for (int i = 1; i <= 9; ++i)
    for (int j = 1; j <= 9; ++j) {
      const double u = i / 10.0;
      const double v = j / 10.0;
      max_gap = std::max(max_gap, std::fabs(tc_cdf(asym, u, v) - tc_cdf(asym, v, u)));
    }
  CHECK(max_gap > 1e-4);

  const TwoComponentParams sym{2.4, 2.4};
  for (int i = 1; i <= 9; ++i)
    for (int j = i + 1; j <= 9; ++j) {
      const double u = i / 10.0;
      const double v = j / 10.0;
      CHECK(std::fabs(tc_cdf(sym, u, v) - tc_cdf(sym, v, u)) < 1e-10);
    }
}

TEST_CASE("tc_sample margins and determinism") {
  const ModelParams m{{3.387732, 1.181292}, 1.0, 0.9};
  RngStream rng(6003);
  const std::size_t n = 10000;
  const LossSample s = tc_sample(m, n, rng);

  std::vector<double> f1(n), f2(n);
  for (std::size_t i = 0; i < n; ++i) {
    f1[i] = pareto2_cdf({m.sigma1, m.tc.alpha1}, s.x1[i]);
    f2[i] = pareto2_cdf({m.sigma2, m.tc.alpha2}, s.x2[i]);
  }
  const double band = 1.63 / std::sqrt(static_cast<double>(n));
  CHECK(ks_uniform(f1) < band);
  CHECK(ks_uniform(f2) < band);

  RngStream rng2(6003);
  const LossSample s2 = tc_sample(m, n, rng2);
  CHECK(s.x1 == s2.x1);
  CHECK(s.x2 == s2.x2);

  RngStream rng3(6003);
  CHECK_THROWS_AS(tc_sample(m, 0, rng3), std::invalid_argument);
}

TEST_CASE("tc_sample_uniform is the probability integral transform of tc_sample") {
  const TwoComponentParams p{3.387732, 1.181292};
  RngStream ru(6004);
  const std::size_t n = 10000;
  const PseudoSample u = tc_sample_uniform(p, n, ru);
  const double band = 1.63 / std::sqrt(static_cast<double>(n));
  CHECK(ks_uniform(u.u1) < band);
  CHECK(ks_uniform(u.u2) < band);

  // same stream state => rank-identical with tc_sample, so tau agrees exactly
  RngStream rx(6004);
  const LossSample x = tc_sample({p, 1.0, 0.9}, n, rx);
  CHECK(kendall_tau(u) == doctest::Approx(kendall_tau(x)).epsilon(1e-14));
}

TEST_CASE("large equal shapes concentrate mass on the diagonal") {
  RngStream rng(6005);
  const PseudoSample u = tc_sample_uniform({30.0, 35.0}, 10000, rng);
  std::size_t near = 0;
  for (std::size_t i = 0; i < u.size(); ++i)
    if (std::fabs(u.u1[i] - u.u2[i]) < 0.1) ++near;
  // independence would give P(|U-V| < 0.1) = 0.19
  CHECK(static_cast<double>(near) / u.size() > 0.19);
}

TEST_CASE("empirical copula of the sampler tracks tc_cdf") {
  const TwoComponentParams p{3.387732, 1.181292};
  RngStream rng(6006);
  const PseudoSample u = tc_sample_uniform(p, 10000, rng);
  const PseudoSample ps = pseudo_observations(u.u1, u.u2);
  double worst = 0.0;
  for (int i = 1; i <= 20; ++i)
    for (int j = 1; j <= 20; ++j) {
      const double a = i / 21.0;
      const double b = j / 21.0;
      worst = std::max(worst, std::fabs(empirical_copula(ps, a, b) - tc_cdf(p, a, b)));
    }
  CHECK(worst < 0.025);
}

TEST_CASE("pseudo-observations are invariant under squaring the losses") {
  const ModelParams m{{2.0, 1.5}, 1.0, 0.9};
  RngStream rng(6014);
  const LossSample s = tc_sample(m, 500, rng);
  LossSample squared;
  squared.x1 = s.x1;
  squared.x2 = s.x2;
  for (double& v : squared.x1) v = v * v;
  for (double& v : squared.x2) v = v * v;
  const PseudoSample a = pseudo_observations(s);
  const PseudoSample b = pseudo_observations(squared);
  CHECK(a.u1 == b.u1);
  CHECK(a.u2 == b.u2);
}

TEST_CASE("clayton_sample hits the Clayton tau") {
  RngStream r1(6007);
  const PseudoSample weak = clayton_sample(0.05, 10000, r1);
  CHECK(std::fabs(kendall_tau(weak) - 0.05 / 2.05) < 0.03);

  RngStream r2(6008);
  const PseudoSample strong = clayton_sample(2.0, 10000, r2);
  CHECK(std::fabs(kendall_tau(strong) - 0.5) < 0.03);

  RngStream r3(6009), r4(6009);
  const PseudoSample a = clayton_sample(1.3, 100, r3);
  const PseudoSample b = clayton_sample(1.3, 100, r4);
  CHECK(a.u1 == b.u1);
  CHECK_THROWS_AS(clayton_sample(0.0, 10, r3), std::domain_error);
}

TEST_CASE("lambda_U curve: exact closed form at alpha = (1,1)") {
  const TwoComponentParams p{1.0, 1.0};
  const auto grid = default_tail_grid();
  const auto curve = tc_lambda_u_curve(p, grid);
  REQUIRE(curve.size() == grid.size());
  for (const auto& pt : curve) {
    const double exact =
        2.0 * (1.0 / ((1.0 + pt.t) * (1.0 + pt.t)) -
               1.0 / ((1.0 + 2.0 * pt.t) * (1.0 + 2.0 * pt.t)));
    CHECK(pt.lambda == doctest::Approx(exact).epsilon(1e-8));
    CHECK(pt.lambda >= 0.0);
    CHECK(pt.lambda <= 2.0);
  }
  CHECK(tail_verdict(curve) == TailVerdict::zero);
}

TEST_CASE("lambda_U curve at the study shapes decays to zero") {
  const TwoComponentParams p{3.387732, 1.181292};
  const auto curve = tc_lambda_u_curve(p, default_tail_grid());
  CHECK(curve.front().lambda < 1e-3);
  CHECK(tail_verdict(curve) == TailVerdict::zero);
  CHECK_THROWS_AS(tc_lambda_u_curve(p, std::vector<double>{0.0}), std::domain_error);
  CHECK_THROWS_AS(tc_lambda_u_curve(p, std::vector<double>{0.6}), std::domain_error);
}

TEST_CASE("lambda_U curve agrees with the diagonal-derivative form near t=1") {
  // both expressions tend to the same tail limit; at alpha=(1,1) that limit
  // is 0 and they agree to 1e-3 for small 1-t'
  const TwoComponentParams p{1.0, 1.0};
  const double tp = 1.0 - 1e-4;
  const double c = tc_cdf(p, tp, tp);
  const double diag_form = 2.0 - (1.0 - 2.0 * c + 2.0 * tp - 1.0) / (1.0 - tp);
  const auto curve = tc_lambda_u_curve(p, std::vector<double>{1.0 - tp});
  CHECK(std::fabs(diag_form - curve[0].lambda) < 1e-3);
}

TEST_CASE("tail_verdict flags non-vanishing curves as undetermined") {
  // synthetic curve converging to 0.4
  std::vector<TailPoint> plateau;
  for (double t : default_tail_grid()) plateau.push_back({t, 0.4 + t});
  CHECK(tail_verdict(plateau) == TailVerdict::undetermined);
  // dip towards zero that is not monotone on the way down
  std::vector<TailPoint> wiggly;
  int i = 0;
  for (double t : default_tail_grid())
    wiggly.push_back({t, (i++ % 2 == 0) ? 1e-4 : 0.2});
  CHECK(tail_verdict(wiggly) == TailVerdict::undetermined);
}

TEST_CASE("tc_fit_margins recovers shapes from model data") {
  const ModelParams m{{3.387732, 1.181292}, 1.0, 0.9};
  RngStream rng(6010);
  const LossSample s = tc_sample(m, 1000, rng);
  const TwoComponentParams fitted = tc_fit_margins(s);
  CHECK(std::fabs(fitted.alpha1 - m.tc.alpha1) < 0.9);
  CHECK(std::fabs(fitted.alpha2 - m.tc.alpha2) < 0.35);
}

TEST_CASE("tc_fit_margins rejects light-tailed margins") {
  // bounded data has negative fitted xi
  RngStream rng(6011);
  LossSample s;
  for (int i = 0; i < 400; ++i) {
    s.x1.push_back(rng.uniform_open());
    s.x2.push_back(rng.uniform_open());
  }
  CHECK_THROWS_AS(tc_fit_margins(s), FitError);
}

TEST_CASE("tc_fit_pseudo_likelihood recovers shapes from uniform pairs") {
  RngStream r1(6012);
  const PseudoSample a = tc_sample_uniform({1.0, 1.0}, 5000, r1);
  const TwoComponentParams f1 = tc_fit_pseudo_likelihood(pseudo_observations(a.u1, a.u2));
  CHECK(f1.alpha1 > 0.85);
  CHECK(f1.alpha1 < 1.15);
  CHECK(f1.alpha2 > 0.85);
  CHECK(f1.alpha2 < 1.15);

  RngStream r2(6013);
  const PseudoSample b = tc_sample_uniform({3.387732, 1.181292}, 5000, r2);
  const TwoComponentParams f2 = tc_fit_pseudo_likelihood(pseudo_observations(b.u1, b.u2));
  CHECK(std::fabs(f2.alpha1 - 3.387732) < 0.2 * 3.387732);
  CHECK(std::fabs(f2.alpha2 - 1.181292) < 0.2 * 1.181292);

  PseudoSample tiny{{0.2, 0.4, 0.6, 0.8, 0.5}, {0.2, 0.4, 0.6, 0.8, 0.5}};
  CHECK_THROWS_AS(tc_fit_pseudo_likelihood(tiny), FitError);
}
