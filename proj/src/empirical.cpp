#include "tcop/empirical.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace tcop {

namespace {

// rank(v) = #{x_k <= v}, computed against a sorted copy.
std::vector<double> scaled_ranks(std::span<const double> x) {
  const std::size_t n = x.size();
  std::vector<double> sorted(x.begin(), x.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> out(n);
  const double denom = static_cast<double>(n) + 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto rank = std::upper_bound(sorted.begin(), sorted.end(), x[i]) -
                      sorted.begin();
    out[i] = static_cast<double>(rank) / denom;
  }
  return out;
}

class Fenwick {
 public:
  explicit Fenwick(std::size_t n) : tree_(n + 1, 0) {}
  void add(std::size_t i) {  // 1-based
    for (; i < tree_.size(); i += i & (~i + 1)) ++tree_[i];
  }
  std::int64_t prefix(std::size_t i) const {  // count of indices <= i
    std::int64_t s = 0;
    for (; i > 0; i -= i & (~i + 1)) s += tree_[i];
    return s;
  }

 private:
  std::vector<std::int64_t> tree_;
};

// Dense 1-based ranks of v (ties share a rank).
std::vector<std::size_t> dense_ranks(const std::vector<double>& v) {
  std::vector<double> sorted(v);
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<std::size_t> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    r[i] = 1 + (std::lower_bound(sorted.begin(), sorted.end(), v[i]) -
                sorted.begin());
  return r;
}

// Strict inversion count of a by merge sort (pairs i<j with a[i] > a[j]).
std::int64_t count_inversions(std::vector<double>& a, std::vector<double>& buf,
                              std::size_t lo, std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::int64_t inv = count_inversions(a, buf, lo, mid) +
                     count_inversions(a, buf, mid, hi);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (a[j] < a[i]) {
      inv += static_cast<std::int64_t>(mid - i);
      buf[k++] = a[j++];
    } else {
      buf[k++] = a[i++];
    }
  }
  while (i < mid) buf[k++] = a[i++];
  while (j < hi) buf[k++] = a[j++];
  std::copy(buf.begin() + lo, buf.begin() + hi, a.begin() + lo);
  return inv;
}

// Sum over equal-value groups of C(g,2).
std::int64_t tie_pairs(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  std::int64_t s = 0, run = 1;
  for (std::size_t i = 1; i <= v.size(); ++i) {
    if (i < v.size() && v[i] == v[i - 1]) {
      ++run;
    } else {
      s += run * (run - 1) / 2;
      run = 1;
    }
  }
  return s;
}

}  // namespace

PseudoSample pseudo_observations(std::span<const double> x1,
                                 std::span<const double> x2) {
  if (x1.size() != x2.size())
    throw std::invalid_argument("pseudo_observations: column length mismatch");
  if (x1.empty())
    throw std::invalid_argument("pseudo_observations: empty sample");
  return PseudoSample{scaled_ranks(x1), scaled_ranks(x2)};
}

PseudoSample pseudo_observations(const LossSample& s) {
  return pseudo_observations(s.x1, s.x2);
}

double empirical_copula(const PseudoSample& ps, double v1, double v2) {
  const std::size_t n = ps.size();
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (ps.u1[i] <= v1 && ps.u2[i] <= v2) ++count;
  return static_cast<double>(count) / static_cast<double>(n);
}

std::vector<double> empirical_copula_at_sample(const PseudoSample& ps) {
  const std::size_t n = ps.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return ps.u1[a] < ps.u1[b]; });
  const auto r2 = dense_ranks(ps.u2);
  std::size_t maxr = 0;
  for (auto r : r2) maxr = std::max(maxr, r);
  Fenwick fw(maxr);
  std::vector<double> out(n);
  std::size_t i = 0;
  while (i < n) {
    // insert a whole tie group in u1 before querying any of its members
    std::size_t j = i;
    while (j < n && ps.u1[order[j]] == ps.u1[order[i]]) ++j;
    for (std::size_t k = i; k < j; ++k) fw.add(r2[order[k]]);
    for (std::size_t k = i; k < j; ++k)
      out[order[k]] = static_cast<double>(fw.prefix(r2[order[k]])) /
                      static_cast<double>(n);
    i = j;
  }
  return out;
}

double kendall_tau(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n != y.size()) throw std::invalid_argument("kendall_tau: length mismatch");
  if (n < 2) throw std::invalid_argument("kendall_tau: need at least 2 points");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (x[a] != x[b]) return x[a] < x[b];
    return y[a] < y[b];
  });
  std::vector<double> ysorted(n);
  for (std::size_t i = 0; i < n; ++i) ysorted[i] = y[order[i]];

  const std::vector<double> xv(x.begin(), x.end());
  const std::vector<double> yv(y.begin(), y.end());
  const std::int64_t tx = tie_pairs(xv);
  const std::int64_t ty = tie_pairs(yv);
  const std::int64_t total =
      static_cast<std::int64_t>(n) * static_cast<std::int64_t>(n - 1) / 2;
  if (tx == total || ty == total)
    throw std::invalid_argument("kendall_tau: a coordinate is constant");

  // pairs tied in both coordinates
  std::vector<double> key(n);
  std::int64_t txy = 0;
  {
    std::vector<std::pair<double, double>> pairs(n);
    for (std::size_t i = 0; i < n; ++i) pairs[i] = {xv[i], yv[i]};
    std::sort(pairs.begin(), pairs.end());
    std::int64_t run = 1;
    for (std::size_t i = 1; i <= n; ++i) {
      if (i < n && pairs[i] == pairs[i - 1]) {
        ++run;
      } else {
        txy += run * (run - 1) / 2;
        run = 1;
      }
    }
  }

  std::vector<double> buf(n);
  const std::int64_t discordant = count_inversions(ysorted, buf, 0, n);
  // numerator = concordant - discordant = total - tx - ty + txy - 2*discordant
  const double numer =
      static_cast<double>(total - tx - ty + txy - 2 * discordant);
  return numer / static_cast<double>(total);
}

double kendall_tau(const LossSample& s) { return kendall_tau(s.x1, s.x2); }
double kendall_tau(const PseudoSample& s) { return kendall_tau(s.u1, s.u2); }

double cvm_statistic(const PseudoSample& ps, const CopulaFn& fitted) {
  const auto cn = empirical_copula_at_sample(ps);
  double s = 0.0;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const double d = cn[i] - fitted(ps.u1[i], ps.u2[i]);
    s += d * d;
  }
  return s;
}

}  // namespace tcop
