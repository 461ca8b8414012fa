#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <cmath>
#include <vector>

#include "tcop/empirical.hpp"
#include "tcop/reference_copulas.hpp"
#include "tcop/rng.hpp"

using namespace tcop;

namespace {

// O(n^2) reference for kendall_tau: tau-a, ties contribute 0.
double tau_brute(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  long long num = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double s = (x[i] - x[j]) * (y[i] - y[j]);
      if (s > 0) ++num;
      else if (s < 0) --num;
    }
  return static_cast<double>(num) / (0.5 * n * (n - 1));
}

}  // namespace

TEST_CASE("pseudo_observations rank fixture") {
  const PseudoSample ps =
      pseudo_observations(std::vector<double>{5, 1, 3}, std::vector<double>{2, 4, 6});
  CHECK(ps.u1 == std::vector<double>{0.75, 0.25, 0.5});
  CHECK(ps.u2 == std::vector<double>{0.25, 0.5, 0.75});
}

TEST_CASE("pseudo_observations edge cases") {
  const PseudoSample one =
      pseudo_observations(std::vector<double>{42.0}, std::vector<double>{7.0});
  CHECK(one.u1[0] == 0.5);
  CHECK(one.u2[0] == 0.5);

  // ties take the max rank (Fhat counts with <=)
  const PseudoSample tied =
      pseudo_observations(std::vector<double>{1, 1, 2}, std::vector<double>{3, 2, 1});
  CHECK(tied.u1 == std::vector<double>{0.5, 0.5, 0.75});

  // invariance under a strictly increasing transform of one margin
  const std::vector<double> x{0.3, 2.0, 1.1, 5.2};
  std::vector<double> xsq(x);
  for (double& v : xsq) v = v * v;
  const std::vector<double> y{4, 3, 2, 1};
  CHECK(pseudo_observations(x, y).u1 == pseudo_observations(xsq, y).u1);

  CHECK_THROWS_AS(pseudo_observations(std::vector<double>{}, std::vector<double>{}),
                  std::invalid_argument);
}

TEST_CASE("empirical copula fixture and margins") {
  const PseudoSample ps{{0.25, 0.5, 0.75}, {0.25, 0.75, 0.5}};
  CHECK(empirical_copula(ps, 0.5, 0.5) == doctest::Approx(1.0 / 3.0));
  CHECK(empirical_copula(ps, 1.0, 1.0) == 1.0);
  CHECK(empirical_copula(ps, 0.0, 0.7) == 0.0);

  // discrete uniform margins: C_n(k/(n+1), 1) = k/n
  RngStream rng(5001);
  const std::size_t n = 37;
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = rng.uniform_open();
    y[i] = rng.uniform_open();
  }
  const PseudoSample q = pseudo_observations(x, y);
  for (std::size_t k = 1; k <= n; ++k)
    CHECK(empirical_copula(q, static_cast<double>(k) / (n + 1), 1.0) ==
          doctest::Approx(static_cast<double>(k) / n));
}

TEST_CASE("empirical_copula_at_sample equals the direct evaluation") {
  RngStream rng(5002);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(60 * rng.uniform());
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      // coarse values so ties occur
      x[i] = std::floor(rng.uniform() * 8) / 8.0;
      y[i] = std::floor(rng.uniform() * 8) / 8.0;
    }
    const PseudoSample ps = pseudo_observations(x, y);
    const auto fast = empirical_copula_at_sample(ps);
    for (std::size_t i = 0; i < n; ++i)
      CHECK(fast[i] == doctest::Approx(empirical_copula(ps, ps.u1[i], ps.u2[i]))
                           .epsilon(1e-14));
  }
}

TEST_CASE("kendall_tau fixtures") {
  CHECK(kendall_tau(std::vector<double>{1, 2, 3}, std::vector<double>{1, 2, 3}) == 1.0);
  CHECK(kendall_tau(std::vector<double>{1, 2, 3}, std::vector<double>{3, 2, 1}) == -1.0);
  CHECK(kendall_tau(std::vector<double>{1, 2, 3}, std::vector<double>{1, 3, 2}) ==
        doctest::Approx(1.0 / 3.0));
  CHECK_THROWS_AS(kendall_tau(std::vector<double>{1}, std::vector<double>{1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(kendall_tau(std::vector<double>{2, 2, 2}, std::vector<double>{1, 2, 3}),
                  std::invalid_argument);
}

TEST_CASE("kendall_tau equals brute force, including ties") {
  RngStream rng(5003);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(198 * rng.uniform());
    std::vector<double> x(n), y(n);
    bool ok = false;
    while (!ok) {
      for (std::size_t i = 0; i < n; ++i) {
        x[i] = std::floor(rng.uniform() * 12);
        y[i] = std::floor(rng.uniform() * 12);
      }
      ok = *std::max_element(x.begin(), x.end()) != *std::min_element(x.begin(), x.end()) &&
           *std::max_element(y.begin(), y.end()) != *std::min_element(y.begin(), y.end());
    }
    CHECK(kendall_tau(x, y) == doctest::Approx(tau_brute(x, y)).epsilon(1e-13));
  }
}

TEST_CASE("kendall_tau is rank invariant and consistent for the Gaussian copula") {
  RngStream rng(5004);
  const double r = std::sin(M_PI * 0.4 / 2.0);
  const PseudoSample s = gauss_sample({r}, 10000, rng);
  const double tau = kendall_tau(s);
  CHECK(std::fabs(tau - 0.4) < 0.03);

  // strictly increasing transform leaves tau unchanged
  std::vector<double> cubed(s.u1);
  for (double& v : cubed) v = v * v * v;
  CHECK(kendall_tau(cubed, s.u2) == doctest::Approx(tau).epsilon(1e-14));
}

TEST_CASE("cvm_statistic fixtures") {
  const PseudoSample ps{{0.25, 0.5, 0.75}, {0.25, 0.75, 0.5}};
  // against the empirical copula itself the statistic vanishes
  const CopulaFn self = [&](double u, double v) { return empirical_copula(ps, u, v); };
  CHECK(cvm_statistic(ps, self) == 0.0);

  // against independence uv, by hand:
  //   C_n(0.25,0.25) = 1/3 (the point itself)
  //   C_n(0.50,0.75) = 2/3 (itself and (0.25,0.25))
  //   C_n(0.75,0.50) = 2/3 (itself and (0.25,0.25))
  //   sum = (1/3 - 1/16)^2 + (2/3 - 3/8)^2 + (2/3 - 3/8)^2 = 187/768
  const CopulaFn indep = [](double u, double v) { return u * v; };
  CHECK(cvm_statistic(ps, indep) == doctest::Approx(187.0 / 768.0).epsilon(1e-14));

  // order invariance
  const PseudoSample shuffled{{0.75, 0.25, 0.5}, {0.5, 0.25, 0.75}};
  CHECK(cvm_statistic(shuffled, indep) ==
        doctest::Approx(cvm_statistic(ps, indep)).epsilon(1e-14));
}

TEST_CASE("empirical copula converges to the generator") {
  RngStream rng(5005);
  const PseudoSample s = gauss_sample({0.6}, 10000, rng);
  const PseudoSample ps = pseudo_observations(s.u1, s.u2);
  double worst = 0.0;
  for (int i = 1; i <= 20; ++i)
    for (int j = 1; j <= 20; ++j) {
      const double u = i / 21.0;
      const double v = j / 21.0;
      worst = std::max(worst, std::fabs(empirical_copula(ps, u, v) -
                                        gauss_cdf({0.6}, u, v)));
    }
  CHECK(worst < 0.03);
}
