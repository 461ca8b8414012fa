#ifndef TCOP_ERRORS_HPP
#define TCOP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tcop {

// Raised when a parameter estimate violates the validity rules of its family
// (e.g. tau_hat >= 1 for Gumbel, xi_hat <= 0 for a Pareto margin) or when an
// optimizer cannot locate an interior maximum.
class FitError : public std::runtime_error {
 public:
  explicit FitError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tcop

#endif  // TCOP_ERRORS_HPP
