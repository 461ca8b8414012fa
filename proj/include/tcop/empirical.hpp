#ifndef TCOP_EMPIRICAL_HPP
#define TCOP_EMPIRICAL_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace tcop {

// Paired loss observations (x1_i, x2_i).
struct LossSample {
  std::vector<double> x1;
  std::vector<double> x2;
  std::size_t size() const { return x1.size(); }
};

// Paired pseudo-observations on (0,1)^2: scaled ranks n/(n+1) * Fhat.
struct PseudoSample {
  std::vector<double> u1;
  std::vector<double> u2;
  std::size_t size() const { return u1.size(); }
};

// Any bivariate copula CDF evaluator C(u,v).
using CopulaFn = std::function<double(double, double)>;

// Rank transform u_ji = rank(x_ji)/(n+1) with max rank on ties
// (Fhat counts with <=). Invariant under strictly increasing margin maps.
PseudoSample pseudo_observations(std::span<const double> x1,
                                 std::span<const double> x2);
PseudoSample pseudo_observations(const LossSample& s);

// Deheuvels' empirical copula C_n(v1,v2) = (1/n) sum 1(u1i<=v1, u2i<=v2).
double empirical_copula(const PseudoSample& ps, double v1, double v2);

// C_n evaluated at every sample point at once (each point included in its
// own count). O(n log n) dominance counting via a Fenwick tree.
std::vector<double> empirical_copula_at_sample(const PseudoSample& ps);

// Sample Kendall tau, tau-a convention: (concordant - discordant) / C(n,2);
// pairs tied in either coordinate contribute zero to the numerator.
// O(n log n) merge-sort inversion counting. Throws std::invalid_argument if
// n < 2 or either coordinate is constant.
double kendall_tau(std::span<const double> x, std::span<const double> y);
double kendall_tau(const LossSample& s);
double kendall_tau(const PseudoSample& s);

// Cramer-von-Mises statistic: sum over sample points of
// (C_n(u_i) - C_fitted(u_i))^2.
double cvm_statistic(const PseudoSample& ps, const CopulaFn& fitted);

}  // namespace tcop

#endif  // TCOP_EMPIRICAL_HPP
