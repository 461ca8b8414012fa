#ifndef TCOP_GOF_HPP
#define TCOP_GOF_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tcop/distributions.hpp"
#include "tcop/empirical.hpp"
#include "tcop/reference_copulas.hpp"
#include "tcop/two_component.hpp"

namespace tcop {

enum class CopulaFamily { gaussian, gumbel, two_component };

std::string to_string(CopulaFamily f);
std::optional<CopulaFamily> parse_family(const std::string& name);

// How the two-component shape is re-estimated inside the bootstrap.
// pseudo_likelihood works directly on the rank-transformed sample;
// margin_mle routes each bootstrap sample through the fitted Pareto margins
// and refits the marginal GPDs (the rank transform keeps the test itself
// independent of that marginal choice).
enum class TcEstimator { pseudo_likelihood, margin_mle };

std::string to_string(TcEstimator e);
std::optional<TcEstimator> parse_tc_estimator(const std::string& name);

using CopulaParams =
    std::variant<GaussianParams, GumbelParams, TwoComponentParams>;

// Copula CDF evaluator for a fitted parameter set.
CopulaFn copula_cdf(const CopulaParams& params);

struct GofConfig {
  CopulaFamily family = CopulaFamily::two_component;
  std::size_t bootstrap_k = 1000;
  std::uint64_t seed = 0;
  TcEstimator tc_estimator = TcEstimator::pseudo_likelihood;
  unsigned threads = 1;
};

struct GofReport {
  CopulaFamily family;
  CopulaParams fitted;
  double observed_statistic = 0.0;
  double p_value = 0.0;
  std::size_t valid_iterations = 0;
  std::size_t bootstrap_k = 0;
  std::vector<double> bootstrap_statistics;  // valid iterations, in k order
};

// Parametric-bootstrap goodness-of-fit test:
//   1. rank-transform the sample; 2. fit the family (FitError here means no
//   valid member fits and the test fails); 3-4. observed CvM statistic
//   against the fitted copula; 5. K bootstrap rounds, each sampling n pairs
//   from the fitted copula, re-ranking, refitting (invalid refits are
//   skipped) and recomputing the statistic; 6. p = #(boot >= observed)/(V+1).
// Iteration k always uses the stream (seed, k), so the report is identical
// for any thread count.
GofReport gof_test(const LossSample& sample, const GofConfig& cfg);

struct BhDecision {
  std::string name;
  double p_value;
  bool reject;
};

struct BhResult {
  double threshold;  // beta / sum_{j=1..m} 1/j
  std::vector<BhDecision> decisions;
};

// Generalised Benjamini-Hochberg: reject H0_i iff p_i < beta / H_m.
BhResult bh_correct(const std::vector<std::pair<std::string, double>>& p_values,
                    double beta);

struct FamilyOutcome {
  CopulaFamily family;
  bool fit_ok = false;
  std::string fit_error;
  CopulaParams fitted;               // headline fit
  std::vector<GpdFit> margin_fits;   // two-component only
  std::optional<GofReport> gof;
  std::string gof_error;
  // upper tail dependence: a number for Gaussian/Gumbel, a curve plus
  // heuristic verdict for the two-component family
  double lambda_u = 0.0;
  std::vector<TailPoint> lambda_curve;
  std::optional<TailVerdict> lambda_verdict;
};

struct StudyConfig {
  std::size_t bootstrap_k = 1000;
  double beta = 0.05;
  TcEstimator tc_estimator = TcEstimator::pseudo_likelihood;
  unsigned threads = 1;
  std::vector<CopulaFamily> families = {
      CopulaFamily::gaussian, CopulaFamily::gumbel, CopulaFamily::two_component};
  // hook for a p-value computed by an external test so the multiple-testing
  // correction can cover m = 4 hypotheses
  std::optional<std::pair<std::string, double>> external_test;
};

struct StudyReport {
  double tau_hat = 0.0;
  std::vector<FamilyOutcome> families;
  std::size_t m_tests = 0;  // completed tests entering the BH correction
  BhResult bh;
};

// Fits and tests every configured family against one sample. Headline fits:
// Gaussian via sin(pi tau/2), Gumbel via 1/(1-tau), two-component via
// marginal GPD maximum likelihood. Family-level FitError is recorded, not
// propagated. gof seeds are derived deterministically from `seed` per family.
StudyReport run_gof_suite(const LossSample& sample, const StudyConfig& cfg,
                          std::uint64_t seed);

// Simulates n observations from the model (stream (seed, 0)) and runs the
// suite on them. Requires n >= 50.
StudyReport run_study(const ModelParams& model, std::size_t n,
                      const StudyConfig& cfg, std::uint64_t seed);

}  // namespace tcop

#endif  // TCOP_GOF_HPP
