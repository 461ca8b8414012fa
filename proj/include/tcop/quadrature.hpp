#ifndef TCOP_QUADRATURE_HPP
#define TCOP_QUADRATURE_HPP

#include <cmath>
#include <cstddef>
#include <vector>

namespace tcop {

// 15-point Gauss-Legendre rule on [a,b].
template <typename F>
double gauss15(F&& f, double a, double b) {
  static const double xg[8] = {0.0,
                               0.201194093997434522,
                               0.394151347077563370,
                               0.570972172608538848,
                               0.724417731360170047,
                               0.848206583410427216,
                               0.937273392400705904,
                               0.987992518020485428};
  static const double wg[8] = {0.202578241925561273, 0.198431485327111576,
                               0.186161000015562211, 0.166269205816993934,
                               0.139570677926154314, 0.107159220467171935,
                               0.0703660474881081247, 0.0307532419961172684};
  const double h = 0.5 * (b - a);
  const double m = 0.5 * (a + b);
  double s = wg[0] * f(m);
  for (int i = 1; i < 8; ++i)
    s += wg[i] * (f(m - h * xg[i]) + f(m + h * xg[i]));
  return h * s;
}

namespace detail {

template <typename F>
double refine(F& f, double a, double b, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double left = gauss15(f, a, m);
  const double right = gauss15(f, m, b);
  if (std::fabs(left + right - whole) <= tol || depth >= 30)
    return left + right;
  return refine(f, a, m, left, 0.5 * tol, depth + 1) +
         refine(f, m, b, right, 0.5 * tol, depth + 1);
}

}  // namespace detail

// Adaptive quadrature over the panels defined by the sorted breakpoint list.
// Each panel is accepted once halving it moves the 15-point estimate by less
// than its share of `tol`; the halved comparison is what guards against
// features narrower than the node spacing.
template <typename F>
double integrate_adaptive(F&& f, const std::vector<double>& breakpoints,
                          double tol) {
  double total = 0.0;
  const std::size_t npanel = breakpoints.size() - 1;
  for (std::size_t i = 0; i < npanel; ++i) {
    const double a = breakpoints[i];
    const double b = breakpoints[i + 1];
    total += detail::refine(f, a, b, gauss15(f, a, b), tol / npanel, 0);
  }
  return total;
}

// Sorted breakpoints from candidate feature locations clipped to (lo, hi),
// with near-duplicates merged.
std::vector<double> make_breakpoints(std::vector<double> candidates, double lo,
                                     double hi);

}  // namespace tcop

#endif  // TCOP_QUADRATURE_HPP
