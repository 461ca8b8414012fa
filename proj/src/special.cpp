#include "tcop/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tcop {

double ln_gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("ln_gamma: argument must be > 0");
  static const double cof[14] = {
      57.1562356658629235,     -59.5979603554754912,
      14.1360979747417471,     -0.491913816097620199,
      0.339946499848118887e-4, 0.465236289270485756e-4,
      -0.983744753048795646e-4, 0.158088703224912494e-3,
      -0.210264441724104883e-3, 0.217439618115212643e-3,
      -0.164318106536763890e-3, 0.844182239838527433e-4,
      -0.261908384015814087e-4, 0.368991826595316234e-5};
  double y = x;
  double tmp = x + 5.24218750000000000;
  tmp = (x + 0.5) * std::log(tmp) - tmp;
  double ser = 0.999999999999997092;
  for (int j = 0; j < 14; ++j) ser += cof[j] / ++y;
  return tmp + std::log(2.5066282746310005 * ser / x);
}

namespace {

constexpr int kGammaMaxIter = 500;
constexpr double kGammaTol = 1e-14;

// Series representation of P(a,x), valid (fast) for x < a+1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double del = 1.0 / a;
  double sum = del;
  for (int i = 0; i < kGammaMaxIter; ++i) {
    ++ap;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * kGammaTol) break;
  }
  return sum * std::exp(-x + a * std::log(x) - ln_gamma(a));
}

// Continued fraction for Q(a,x) = 1 - P(a,x), modified Lentz, for x >= a+1.
double gamma_q_contfrac(double a, double x) {
  const double fpmin = std::numeric_limits<double>::min() / kGammaTol;
  double b = x + 1.0 - a;
  double c = 1.0 / fpmin;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kGammaMaxIter; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < fpmin) d = fpmin;
    c = b + an / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) <= kGammaTol) break;
  }
  return std::exp(-x + a * std::log(x) - ln_gamma(a)) * h;
}

}  // namespace

double reg_lower_gamma(double alpha, double x) {
  if (!(alpha > 0.0)) throw std::domain_error("reg_lower_gamma: alpha must be > 0");
  if (!(x >= 0.0)) throw std::domain_error("reg_lower_gamma: x must be >= 0");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  if (x < alpha + 1.0) return gamma_p_series(alpha, x);
  return 1.0 - gamma_q_contfrac(alpha, x);
}

double ln_beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::domain_error("ln_beta: arguments must be > 0");
  return ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b);
}

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x * M_SQRT1_2); }

namespace {
double std_normal_pdf(double x) {
  return std::exp(-0.5 * x * x) * 0.3989422804014326779;
}
}  // namespace

double std_normal_quantile(double p) {
  if (!(p > 0.0) || !(p < 1.0))
    throw std::domain_error("std_normal_quantile: p must be in (0,1)");
  // Abramowitz & Stegun 26.2.22 starting point (|error| < 3e-3), then Newton.
  const double pm = std::min(p, 1.0 - p);
  const double t = std::sqrt(-2.0 * std::log(pm));
  double x = t - (2.30753 + 0.27061 * t) / (1.0 + t * (0.99229 + 0.04481 * t));
  if (p < 0.5) x = -x;
  for (int i = 0; i < 8; ++i) {
    const double err = std_normal_cdf(x) - p;
    const double dens = std_normal_pdf(x);
    if (dens <= 0.0) break;
    const double dx = err / dens;
    x -= dx;
    if (std::fabs(dx) < 1e-15 * (1.0 + std::fabs(x))) break;
  }
  return x;
}

namespace {

// P(X > dh, Y > dk) for standard bivariate normal, correlation r.
// Port of Alan Genz's BVNU (Drezner & Wesolowsky single integral with
// Gauss-Legendre rules of order 6/12/20, plus the |r| > 0.925 expansion).
double bvnu(double dh, double dk, double r) {
  static const double w6[3] = {0.1713244923791705, 0.3607615730481384,
                               0.4679139345726904};
  static const double x6[3] = {0.9324695142031522, 0.6612093864662647,
                               0.2386191860831970};
  static const double w12[6] = {0.04717533638651177, 0.1069393259953183,
                                0.1600783285433464,  0.2031674267230659,
                                0.2334925365383547,  0.2491470458134029};
  static const double x12[6] = {0.9815606342467191, 0.9041172563704750,
                                0.7699026741943050, 0.5873179542866171,
                                0.3678314989981802, 0.1252334085114692};
  static const double w20[10] = {0.01761400713915212, 0.04060142980038694,
                                 0.06267204833410906, 0.08327674157670475,
                                 0.1019301198172404,  0.1181945319615184,
                                 0.1316886384491766,  0.1420961093183821,
                                 0.1491729864726037,  0.1527533871307259};
  static const double x20[10] = {0.9931285991850949,  0.9639719272779138,
                                 0.9122344282513259,  0.8391169718222188,
                                 0.7463319064601508,  0.6360536807265150,
                                 0.5108670019508271,  0.3737060887154196,
                                 0.2277858511416451,  0.07652652113349733};

  const double* wq;
  const double* xq;
  int nq;
  const double ar = std::fabs(r);
  if (ar < 0.3) {
    wq = w6; xq = x6; nq = 3;
  } else if (ar < 0.75) {
    wq = w12; xq = x12; nq = 6;
  } else {
    wq = w20; xq = x20; nq = 10;
  }

  const double tp = 2.0 * M_PI;
  double h = dh;
  double k = dk;
  double hk = h * k;
  double bvn = 0.0;

  if (ar < 0.925) {
    if (ar > 0.0) {
      const double hs = 0.5 * (h * h + k * k);
      const double asr = 0.5 * std::asin(r);
      for (int i = 0; i < nq; ++i) {
        for (int sgn = -1; sgn <= 1; sgn += 2) {
          const double sn = std::sin(asr * (1.0 + sgn * xq[i]));
          bvn += wq[i] * std::exp((sn * hk - hs) / (1.0 - sn * sn));
        }
      }
      bvn *= asr / tp;
    }
    return bvn + std_normal_cdf(-h) * std_normal_cdf(-k);
  }

  if (r < 0.0) {
    k = -k;
    hk = -hk;
  }
  if (ar < 1.0) {
    const double as = 1.0 - r * r;
    double a = std::sqrt(as);
    const double bs = (h - k) * (h - k);
    const double c = (4.0 - hk) / 8.0;
    const double d = (12.0 - hk) / 80.0;
    const double asr = -0.5 * (bs / as + hk);
    if (asr > -100.0)
      bvn = a * std::exp(asr) *
            (1.0 - c * (bs - as) * (1.0 - d * bs) / 3.0 + c * d * as * as);
    if (hk > -100.0) {
      const double b = std::sqrt(bs);
      const double sp = std::sqrt(tp) * std_normal_cdf(-b / a);
      bvn -= std::exp(-0.5 * hk) * sp * b * (1.0 - c * bs * (1.0 - d * bs) / 3.0);
    }
    a *= 0.5;
    double quad = 0.0;
    for (int i = 0; i < nq; ++i) {
      for (int sgn = -1; sgn <= 1; sgn += 2) {
        const double xi = a * (1.0 + sgn * xq[i]);
        const double xs = xi * xi;
        const double asr2 = -0.5 * (bs / xs + hk);
        if (asr2 > -100.0) {
          const double rs = std::sqrt(1.0 - xs);
          const double sp2 = 1.0 + c * xs * (1.0 + 5.0 * d * xs);
          const double ep = std::exp(-0.5 * hk * xs / ((1.0 + rs) * (1.0 + rs))) / rs;
          quad += wq[i] * std::exp(asr2) * (sp2 - ep);
        }
      }
    }
    bvn = (a * quad - bvn) / tp;
  }
  if (r > 0.0) return bvn + std_normal_cdf(-std::max(h, k));
  if (h >= k) return -bvn;
  const double l = (h < 0.0) ? std_normal_cdf(k) - std_normal_cdf(h)
                             : std_normal_cdf(-h) - std_normal_cdf(-k);
  return l - bvn;
}

}  // namespace

double bivariate_normal_cdf(double x, double y, double rho) {
  if (!(std::fabs(rho) < 1.0))
    throw std::domain_error("bivariate_normal_cdf: |rho| must be < 1");
  if (std::isnan(x) || std::isnan(y))
    return std::numeric_limits<double>::quiet_NaN();
  if (std::isinf(x) && x < 0.0) return 0.0;
  if (std::isinf(y) && y < 0.0) return 0.0;
  if (std::isinf(x)) return std_normal_cdf(y);
  if (std::isinf(y)) return std_normal_cdf(x);
  if (rho == 0.0) return std_normal_cdf(x) * std_normal_cdf(y);
  const double p = bvnu(-x, -y, rho);
  return std::min(1.0, std::max(0.0, p));
}

}  // namespace tcop
