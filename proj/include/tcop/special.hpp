#ifndef TCOP_SPECIAL_HPP
#define TCOP_SPECIAL_HPP

namespace tcop {

// ln Gamma(x) for x > 0. Lanczos approximation, relative error below 1e-13
// over [1e-3, 1e6]. Throws std::domain_error for x <= 0.
double ln_gamma(double x);

// Regularized lower incomplete gamma P(alpha, x) = gamma(alpha,x)/Gamma(alpha),
// the Gamma(alpha,1) CDF. Series for x < alpha+1, continued fraction
// otherwise; relative tolerance 1e-14, iteration cap 500.
double reg_lower_gamma(double alpha, double x);

// ln B(a,b) = ln Gamma(a) + ln Gamma(b) - ln Gamma(a+b), a,b > 0.
double ln_beta(double a, double b);

// Standard normal CDF and its inverse. quantile requires p in (0,1) and
// satisfies cdf(quantile(p)) = p to machine accuracy.
double std_normal_cdf(double x);
double std_normal_quantile(double p);

// P(X <= x, Y <= y) for standard bivariate normal with correlation rho,
// |rho| < 1. Genz's single-integral reduction of the Drezner-Wesolowsky
// method; absolute error below 5e-16. Infinite arguments marginalize.
double bivariate_normal_cdf(double x, double y, double rho);

}  // namespace tcop

#endif  // TCOP_SPECIAL_HPP
