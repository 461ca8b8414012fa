#include "tcop/gof.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace tcop {

std::string to_string(CopulaFamily f) {
  switch (f) {
    case CopulaFamily::gaussian: return "gaussian";
    case CopulaFamily::gumbel: return "gumbel";
    case CopulaFamily::two_component: return "two-component";
  }
  return "unknown";
}

std::optional<CopulaFamily> parse_family(const std::string& name) {
  if (name == "gaussian") return CopulaFamily::gaussian;
  if (name == "gumbel") return CopulaFamily::gumbel;
  if (name == "two-component" || name == "two_component")
    return CopulaFamily::two_component;
  return std::nullopt;
}

std::string to_string(TcEstimator e) {
  return e == TcEstimator::pseudo_likelihood ? "pseudo-likelihood" : "margin-mle";
}

std::optional<TcEstimator> parse_tc_estimator(const std::string& name) {
  if (name == "pseudo-likelihood" || name == "pseudo_likelihood")
    return TcEstimator::pseudo_likelihood;
  if (name == "margin-mle" || name == "margin_mle") return TcEstimator::margin_mle;
  return std::nullopt;
}

CopulaFn copula_cdf(const CopulaParams& params) {
  return std::visit(
      [](const auto& p) -> CopulaFn {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, GaussianParams>) {
          return [p](double u, double v) { return gauss_cdf(p, u, v); };
        } else if constexpr (std::is_same_v<T, GumbelParams>) {
          return [p](double u, double v) { return gumbel_cdf(p, u, v); };
        } else {
          return [p](double u, double v) { return tc_cdf(p, u, v); };
        }
      },
      params);
}

namespace {

PseudoSample sample_copula_uniform(const CopulaParams& params, std::size_t n,
                                   RngStream& rng) {
  return std::visit(
      [&](const auto& p) -> PseudoSample {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, GaussianParams>) {
          return gauss_sample(p, n, rng);
        } else if constexpr (std::is_same_v<T, GumbelParams>) {
          return gumbel_sample(p, n, rng);
        } else {
          return tc_sample_uniform(p, n, rng);
        }
      },
      params);
}

// Step-2 / step-5(ii) estimation from a rank-transformed sample. For the
// two-component margin-mle route, `uniforms` (the raw generated pairs) are
// mapped through the fitted Pareto margins to recreate raw-scale data; at
// step 2 the original sample itself is supplied instead.
CopulaParams fit_family(CopulaFamily family, const PseudoSample& ps,
                        TcEstimator estimator, const LossSample* raw_scale) {
  switch (family) {
    case CopulaFamily::gaussian:
      return gauss_fit_from_tau(kendall_tau(ps));
    case CopulaFamily::gumbel:
      return gumbel_fit_from_tau(kendall_tau(ps));
    case CopulaFamily::two_component:
      if (estimator == TcEstimator::pseudo_likelihood)
        return tc_fit_pseudo_likelihood(ps);
      if (raw_scale == nullptr)
        throw FitError("two-component margin-mle requires raw-scale data");
      return tc_fit_margins(*raw_scale);
  }
  throw std::logic_error("fit_family: unknown family");
}

LossSample pareto_transform(const PseudoSample& u, const TwoComponentParams& p) {
  LossSample out;
  out.x1.resize(u.size());
  out.x2.resize(u.size());
  const ParetoIIParams m1{1.0, p.alpha1};
  const ParetoIIParams m2{1.0, p.alpha2};
  for (std::size_t i = 0; i < u.size(); ++i) {
    out.x1[i] = pareto2_quantile(m1, u.u1[i]);
    out.x2[i] = pareto2_quantile(m2, u.u2[i]);
  }
  return out;
}

}  // namespace

GofReport gof_test(const LossSample& sample, const GofConfig& cfg) {
  const std::size_t n = sample.size();
  if (n < 2) throw std::invalid_argument("gof_test: sample too small");
  if (cfg.bootstrap_k < 1) throw std::invalid_argument("gof_test: K must be >= 1");

  const PseudoSample ps = pseudo_observations(sample);
  const CopulaParams fitted =
      fit_family(cfg.family, ps, cfg.tc_estimator, &sample);
  const double observed = cvm_statistic(ps, copula_cdf(fitted));

  const std::size_t K = cfg.bootstrap_k;
  std::vector<double> stats(K, 0.0);
  std::vector<char> valid(K, 0);

  auto run_iteration = [&](std::size_t k) {  // k is 1-based
    RngStream stream(cfg.seed, k);
    const PseudoSample null_u = sample_copula_uniform(fitted, n, stream);
    const PseudoSample ps0 = pseudo_observations(null_u.u1, null_u.u2);
    CopulaParams refit;
    try {
      if (cfg.family == CopulaFamily::two_component &&
          cfg.tc_estimator == TcEstimator::margin_mle) {
        const LossSample raw =
            pareto_transform(null_u, std::get<TwoComponentParams>(fitted));
        refit = fit_family(cfg.family, ps0, cfg.tc_estimator, &raw);
      } else {
        refit = fit_family(cfg.family, ps0, cfg.tc_estimator, nullptr);
      }
    } catch (const FitError&) {
      return;  // invalid refit: pass over this iteration
    }
    stats[k - 1] = cvm_statistic(ps0, copula_cdf(refit));
    valid[k - 1] = 1;
  };

  const unsigned threads = std::max(1u, cfg.threads);
  if (threads == 1 || K < 2) {
    for (std::size_t k = 1; k <= K; ++k) run_iteration(k);
  } else {
    std::atomic<std::size_t> next{1};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&]() {
      for (;;) {
        const std::size_t k = next.fetch_add(1);
        if (k > K) return;
        try {
          run_iteration(k);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    };
    std::vector<std::thread> pool;
    const unsigned nt = std::min<std::size_t>(threads, K);
    pool.reserve(nt);
    for (unsigned i = 0; i < nt; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
  }

  GofReport report;
  report.family = cfg.family;
  report.fitted = fitted;
  report.observed_statistic = observed;
  report.bootstrap_k = K;
  std::size_t exceed = 0;
  for (std::size_t k = 0; k < K; ++k) {
    if (!valid[k]) continue;
    ++report.valid_iterations;
    report.bootstrap_statistics.push_back(stats[k]);
    if (stats[k] >= observed) ++exceed;
  }
  report.p_value = static_cast<double>(exceed) /
                   static_cast<double>(report.valid_iterations + 1);
  return report;
}

BhResult bh_correct(const std::vector<std::pair<std::string, double>>& p_values,
                    double beta) {
  if (p_values.empty()) throw std::invalid_argument("bh_correct: no p-values");
  if (!(beta > 0.0 && beta < 1.0))
    throw std::invalid_argument("bh_correct: beta must be in (0,1)");
  double harmonic = 0.0;
  for (std::size_t j = 1; j <= p_values.size(); ++j)
    harmonic += 1.0 / static_cast<double>(j);
  BhResult res;
  res.threshold = beta / harmonic;
  for (const auto& [name, p] : p_values)
    res.decisions.push_back({name, p, p < res.threshold});
  return res;
}

StudyReport run_gof_suite(const LossSample& sample, const StudyConfig& cfg,
                          std::uint64_t seed) {
  if (cfg.families.empty())
    throw std::invalid_argument("run_gof_suite: no families configured");
  StudyReport report;
  report.tau_hat = kendall_tau(sample);

  for (std::size_t fi = 0; fi < cfg.families.size(); ++fi) {
    const CopulaFamily family = cfg.families[fi];
    FamilyOutcome out;
    out.family = family;

    try {
      switch (family) {
        case CopulaFamily::gaussian:
          out.fitted = gauss_fit_from_tau(report.tau_hat);
          out.lambda_u = 0.0;  // Gaussian copulas have no upper tail dependence
          break;
        case CopulaFamily::gumbel: {
          const GumbelParams g = gumbel_fit_from_tau(report.tau_hat);
          out.fitted = g;
          out.lambda_u = gumbel_lambda_u(g);
          break;
        }
        case CopulaFamily::two_component: {
          out.margin_fits.push_back(fit_gpd_mle(sample.x1));
          out.margin_fits.push_back(fit_gpd_mle(sample.x2));
          if (!(out.margin_fits[0].params.xi > 0.0) ||
              !(out.margin_fits[1].params.xi > 0.0))
            throw FitError("fitted xi <= 0, copula shape undefined");
          const TwoComponentParams tc{1.0 / out.margin_fits[0].params.xi,
                                      1.0 / out.margin_fits[1].params.xi};
          out.fitted = tc;
          const auto grid = default_tail_grid();
          out.lambda_curve = tc_lambda_u_curve(tc, grid);
          out.lambda_verdict = tail_verdict(out.lambda_curve);
          out.lambda_u = *out.lambda_verdict == TailVerdict::zero
                             ? 0.0
                             : std::numeric_limits<double>::quiet_NaN();
          break;
        }
      }
      out.fit_ok = true;
    } catch (const FitError& e) {
      out.fit_error = e.what();
    }

    if (out.fit_ok) {
      GofConfig gcfg;
      gcfg.family = family;
      gcfg.bootstrap_k = cfg.bootstrap_k;
      gcfg.tc_estimator = cfg.tc_estimator;
      gcfg.threads = cfg.threads;
      gcfg.seed = RngStream(seed, 1 + fi).next_u64();
      try {
        out.gof = gof_test(sample, gcfg);
      } catch (const FitError& e) {
        out.gof_error = e.what();
      }
    }
    report.families.push_back(std::move(out));
  }

  std::vector<std::pair<std::string, double>> ps;
  for (const auto& fam : report.families)
    if (fam.gof) ps.emplace_back(to_string(fam.family), fam.gof->p_value);
  if (cfg.external_test) ps.push_back(*cfg.external_test);
  report.m_tests = ps.size();
  if (!ps.empty()) report.bh = bh_correct(ps, cfg.beta);
  return report;
}

StudyReport run_study(const ModelParams& model, std::size_t n,
                      const StudyConfig& cfg, std::uint64_t seed) {
  if (n < 50) throw std::invalid_argument("run_study: n must be >= 50");
  RngStream data_stream(seed, 0);
  const LossSample sample = tc_sample(model, n, data_stream);
  return run_gof_suite(sample, cfg, seed);
}

}  // namespace tcop
