#include "tcop/quadrature.hpp"

#include <algorithm>

namespace tcop {

std::vector<double> make_breakpoints(std::vector<double> candidates, double lo,
                                     double hi) {
  std::vector<double> pts;
  pts.push_back(lo);
  for (double c : candidates)
    if (c > lo && c < hi) pts.push_back(c);
  pts.push_back(hi);
  std::sort(pts.begin(), pts.end());
  std::vector<double> out;
  out.push_back(pts.front());
  for (double p : pts)
    if (p - out.back() > 1e-13 * std::max(1.0, std::fabs(p))) out.push_back(p);
  if (out.size() < 2) out.push_back(hi);
  return out;
}

}  // namespace tcop
