// tcop: simulate heavy-tailed dependent losses, fit copulas, run
// goodness-of-fit studies and emit plot-ready grid data.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "tcop/distributions.hpp"
#include "tcop/empirical.hpp"
#include "tcop/gof.hpp"
#include "tcop/io.hpp"
#include "tcop/two_component.hpp"

namespace {

using namespace tcop;

struct CommonSettings {
  // default simulate setup: the bundled simulation-study model
  double alpha1 = 3.387732;
  double alpha2 = 1.181292;
  double sigma1 = 1.0;
  double sigma2 = 0.9;
  std::size_t n = 1000;
  std::uint64_t seed = 0;
  std::size_t bootstrap_k = 1000;
  double beta = 0.05;
  unsigned threads = 0;  // 0 = hardware concurrency
  std::vector<std::string> families = {"gaussian", "gumbel", "two-component"};
  std::string tc_estimator = "pseudo-likelihood";
  std::string out;
  std::string hist_out;
  std::optional<std::pair<std::string, double>> external_test;
};

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config key " + key + ": malformed number \"" + v + "\"");
  }
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const unsigned long long x = std::stoull(v, &used);
    if (used != v.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config key " + key + ": malformed integer \"" + v + "\"");
  }
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

void apply_config(CommonSettings& s, const std::string& path) {
  const auto cfg = read_config(path);
  std::optional<std::string> ext_name;
  std::optional<double> ext_p;
  for (const auto& [key, value] : cfg) {
    if (key == "alpha1") s.alpha1 = parse_double(key, value);
    else if (key == "alpha2") s.alpha2 = parse_double(key, value);
    else if (key == "sigma1") s.sigma1 = parse_double(key, value);
    else if (key == "sigma2") s.sigma2 = parse_double(key, value);
    else if (key == "n") s.n = parse_u64(key, value);
    else if (key == "seed") s.seed = parse_u64(key, value);
    else if (key == "bootstrap_k") s.bootstrap_k = parse_u64(key, value);
    else if (key == "beta") s.beta = parse_double(key, value);
    else if (key == "threads") s.threads = static_cast<unsigned>(parse_u64(key, value));
    else if (key == "families") s.families = split_list(value);
    else if (key == "tc_estimator") s.tc_estimator = value;
    else if (key == "out") s.out = value;
    else if (key == "hist_out") s.hist_out = value;
    else if (key == "external_test_name") ext_name = value;
    else if (key == "external_test_p") ext_p = parse_double(key, value);
  }
  if (ext_name.has_value() != ext_p.has_value())
    throw ConfigError("external_test_name and external_test_p must be given together");
  if (ext_name) s.external_test = {*ext_name, *ext_p};
}

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

std::vector<CopulaFamily> resolve_families(const std::vector<std::string>& names) {
  if (names.empty()) throw ConfigError("family list is empty");
  std::vector<CopulaFamily> out;
  for (const auto& name : names) {
    const auto f = parse_family(name);
    if (!f) throw ConfigError("unknown copula family \"" + name + "\"");
    out.push_back(*f);
  }
  return out;
}

TcEstimator resolve_estimator(const std::string& name) {
  const auto e = parse_tc_estimator(name);
  if (!e) throw ConfigError("unknown tc_estimator \"" + name + "\"");
  return *e;
}

std::string require_out(const CommonSettings& s) {
  if (s.out.empty()) throw ConfigError("an output path is required (--out)");
  return s.out;
}

// ---------------------------------------------------------------- simulate
void cmd_simulate(const CommonSettings& s) {
  if (s.n == 0) throw ConfigError("n must be >= 1");
  const ModelParams model{{s.alpha1, s.alpha2}, s.sigma1, s.sigma2};
  RngStream rng(s.seed, 0);
  const LossSample sample = tc_sample(model, s.n, rng);
  write_loss_csv(require_out(s), sample);
}

// --------------------------------------------------------------------- fit
void fit_report_tc(std::ostream& os, const LossSample& sample) {
  const GpdFit f1 = fit_gpd_mle(sample.x1);
  const GpdFit f2 = fit_gpd_mle(sample.x2);
  if (!(f1.params.xi > 0.0) || !(f2.params.xi > 0.0))
    throw FitError("fitted xi <= 0, copula shape undefined (requires alpha > 0)");
  const TwoComponentParams tc{1.0 / f1.params.xi, 1.0 / f2.params.xi};
  os << "alpha1=" << format_full(tc.alpha1) << '\n'
     << "alpha2=" << format_full(tc.alpha2) << '\n'
     << "margin1.xi=" << format_full(f1.params.xi) << '\n'
     << "margin1.sigma=" << format_full(f1.params.sigma) << '\n'
     << "margin1.loglik=" << format_full(f1.log_likelihood) << '\n'
     << "margin2.xi=" << format_full(f2.params.xi) << '\n'
     << "margin2.sigma=" << format_full(f2.params.sigma) << '\n'
     << "margin2.loglik=" << format_full(f2.log_likelihood) << '\n';
  const auto curve = tc_lambda_u_curve(tc, default_tail_grid());
  const TailVerdict verdict = tail_verdict(curve);
  os << "lambda_u_verdict=" << to_string(verdict) << '\n'
     << "lambda_u_at_tmin=" << format_full(curve.front().lambda) << '\n';
  if (verdict == TailVerdict::zero) os << "lambda_u=0\n";
}

void cmd_fit(const std::string& data_path, const std::string& family_name,
             const CommonSettings& s) {
  const auto family = parse_family(family_name);
  if (!family) throw ConfigError("unknown copula family \"" + family_name + "\"");
  const LossSample sample = read_loss_csv(data_path);
  std::ostringstream os;
  os << "command=fit\n"
     << "data=" << data_path << '\n'
     << "family=" << to_string(*family) << '\n'
     << "n=" << sample.size() << '\n';
  const double tau = kendall_tau(sample);
  os << "tau_hat=" << format_full(tau) << '\n';
  switch (*family) {
    case CopulaFamily::gaussian: {
      const GaussianParams g = gauss_fit_from_tau(tau);
      os << "r12=" << format_full(g.r12) << '\n' << "lambda_u=0\n";
      break;
    }
    case CopulaFamily::gumbel: {
      const GumbelParams g = gumbel_fit_from_tau(tau);
      os << "theta=" << format_full(g.theta) << '\n'
         << "lambda_u=" << format_full(gumbel_lambda_u(g)) << '\n';
      break;
    }
    case CopulaFamily::two_component:
      fit_report_tc(os, sample);
      break;
  }
  write_text_file(require_out(s), os.str());
}

// --------------------------------------------------------------------- gof
void write_gof_report(const std::string& path, const StudyReport& report,
                      const CommonSettings& s, const std::string& data_path) {
  std::ostringstream os;
  os << "command=gof\n"
     << "data=" << data_path << '\n'
     << "seed=" << s.seed << '\n'
     << "bootstrap_k=" << s.bootstrap_k << '\n'
     << "beta=" << format_full(s.beta) << '\n'
     << "tc_estimator=" << s.tc_estimator << '\n'
     << "tau_hat=" << format_full(report.tau_hat) << '\n'
     << "m_tests=" << report.m_tests << '\n';
  if (report.m_tests > 0)
    os << "bh_threshold=" << format_full(report.bh.threshold) << '\n';
  for (const auto& fam : report.families) {
    const std::string key = to_string(fam.family);
    os << key << ".fit_ok=" << (fam.fit_ok ? "true" : "false") << '\n';
    if (!fam.fit_ok) {
      os << key << ".fit_error=" << fam.fit_error << '\n';
      continue;
    }
    if (const auto* g = std::get_if<GaussianParams>(&fam.fitted))
      os << key << ".r12=" << format_full(g->r12) << '\n';
    if (const auto* g = std::get_if<GumbelParams>(&fam.fitted))
      os << key << ".theta=" << format_full(g->theta) << '\n';
    if (const auto* g = std::get_if<TwoComponentParams>(&fam.fitted))
      os << key << ".alpha1=" << format_full(g->alpha1) << '\n'
         << key << ".alpha2=" << format_full(g->alpha2) << '\n';
    if (fam.lambda_verdict)
      os << key << ".lambda_u_verdict=" << to_string(*fam.lambda_verdict) << '\n';
    os << key << ".lambda_u=" << format_full(fam.lambda_u) << '\n';
    if (!fam.gof) {
      os << key << ".gof_error=" << fam.gof_error << '\n';
      continue;
    }
    os << key << ".observed_statistic=" << format_full(fam.gof->observed_statistic)
       << '\n'
       << key << ".p_value=" << format_full(fam.gof->p_value) << '\n'
       << key << ".valid_iterations=" << fam.gof->valid_iterations << '\n'
       << key << ".skipped_iterations="
       << fam.gof->bootstrap_k - fam.gof->valid_iterations << '\n';
  }
  for (const auto& d : report.bh.decisions)
    os << "reject." << d.name << "=" << (d.reject ? "true" : "false") << '\n';
  write_text_file(path, os.str());
}

void write_gof_histogram(const std::string& path, const StudyReport& report) {
  std::ostringstream os;
  os << "family,statistic\n";
  for (const auto& fam : report.families) {
    if (!fam.gof) continue;
    const std::string key = to_string(fam.family);
    for (double stat : fam.gof->bootstrap_statistics)
      os << key << ',' << format_full(stat) << '\n';
    os << key << ".observed," << format_full(fam.gof->observed_statistic) << '\n';
  }
  write_text_file(path, os.str());
}

void cmd_gof(const std::string& data_path, const CommonSettings& s) {
  if (s.bootstrap_k == 0) throw ConfigError("bootstrap_k must be >= 1");
  const LossSample sample = read_loss_csv(data_path);
  StudyConfig cfg;
  cfg.bootstrap_k = s.bootstrap_k;
  cfg.beta = s.beta;
  cfg.tc_estimator = resolve_estimator(s.tc_estimator);
  cfg.threads = resolve_threads(s.threads);
  cfg.families = resolve_families(s.families);
  cfg.external_test = s.external_test;
  const StudyReport report = run_gof_suite(sample, cfg, s.seed);
  write_gof_report(require_out(s), report, s, data_path);
  const std::string hist =
      s.hist_out.empty() ? require_out(s) + ".hist.csv" : s.hist_out;
  write_gof_histogram(hist, report);
  std::size_t completed = 0;
  for (const auto& fam : report.families)
    if (fam.gof) ++completed;
  if (completed == 0)
    throw FitError("no family completed the goodness-of-fit test");
}

// ------------------------------------------------------------ density-grid
void cmd_density_grid(double alpha1, double alpha2, std::size_t grid_n,
                      const CommonSettings& s) {
  if (!(alpha1 > 0.0) || !(alpha2 > 0.0))
    throw ConfigError("alpha1 and alpha2 must be > 0");
  if (grid_n < 2) throw ConfigError("grid-n must be >= 2");
  const TwoComponentParams p{alpha1, alpha2};
  std::ostringstream os;
  os << "u,v,c\n";
  for (std::size_t i = 1; i <= grid_n; ++i) {
    const double u = static_cast<double>(i) / (grid_n + 1);
    for (std::size_t j = 1; j <= grid_n; ++j) {
      const double v = static_cast<double>(j) / (grid_n + 1);
      os << format_full(u) << ',' << format_full(v) << ','
         << format_full(tc_density(p, u, v)) << '\n';
    }
  }
  write_text_file(require_out(s), os.str());
}

// -------------------------------------------------------------- tail-curve
void cmd_tail_curve(double alpha1, double alpha2, double t_min, double t_max,
                    std::size_t points, const CommonSettings& s) {
  if (!(alpha1 > 0.0) || !(alpha2 > 0.0))
    throw ConfigError("alpha1 and alpha2 must be > 0");
  if (!(t_min > 0.0 && t_min < t_max && t_max <= 0.5))
    throw ConfigError("require 0 < t-min < t-max <= 0.5");
  if (points < 2) throw ConfigError("points must be >= 2");
  std::vector<double> grid(points);
  for (std::size_t i = 0; i < points; ++i)
    grid[i] = t_min * std::pow(t_max / t_min,
                               static_cast<double>(i) / (points - 1));
  const auto curve = tc_lambda_u_curve({alpha1, alpha2}, grid);
  std::ostringstream os;
  os << "t,lambda_u_t\n";
  for (const auto& pt : curve)
    os << format_full(pt.t) << ',' << format_full(pt.lambda) << '\n';
  os << "verdict," << to_string(tail_verdict(curve)) << '\n';
  write_text_file(require_out(s), os.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"copula toolkit for heavy-tailed dependent losses"};
  app.require_subcommand(1);

  CommonSettings settings;
  std::string config_path;
  std::string data_path;
  std::string family_name = "two-component";
  double alpha1 = 1.0, alpha2 = 1.0;
  std::size_t grid_n = 30;
  double t_min = 1e-6, t_max = 0.5;
  std::size_t points = 40;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "flat key=value configuration file");
    cmd->add_option("--seed", settings.seed, "random seed (64-bit)");
    cmd->add_option("--out", settings.out, "output path");
    cmd->add_option("--threads", settings.threads, "worker threads (0 = auto)");
  };

  CLI::App* simulate = app.add_subcommand(
      "simulate", "draw loss pairs from the two-component model");
  add_common(simulate);

  CLI::App* fit = app.add_subcommand("fit", "fit one copula family to a CSV");
  fit->add_option("data", data_path, "input CSV (header x1,x2)")->required();
  fit->add_option("--family", family_name, "gaussian | gumbel | two-component")
      ->required();
  add_common(fit);

  CLI::App* gof = app.add_subcommand(
      "gof", "parametric-bootstrap goodness-of-fit per family");
  gof->add_option("data", data_path, "input CSV (header x1,x2)")->required();
  gof->add_option("--family", settings.families,
                  "family to test (repeatable; default all three)");
  gof->add_option("--bootstrap-k", settings.bootstrap_k, "bootstrap iterations");
  gof->add_option("--beta", settings.beta, "significance level");
  gof->add_option("--tc-estimator", settings.tc_estimator,
                  "pseudo-likelihood | margin-mle");
  gof->add_option("--hist-out", settings.hist_out,
                  "bootstrap-statistic histogram CSV path");
  add_common(gof);

  CLI::App* density = app.add_subcommand(
      "density-grid", "copula density on an interior grid, CSV u,v,c");
  density->add_option("--alpha1", alpha1, "first shape")->required();
  density->add_option("--alpha2", alpha2, "second shape")->required();
  density->add_option("--grid-n", grid_n, "points per axis");
  add_common(density);

  CLI::App* tail = app.add_subcommand(
      "tail-curve", "upper-tail-dependence curve and verdict, CSV t,lambda");
  tail->add_option("--alpha1", alpha1, "first shape")->required();
  tail->add_option("--alpha2", alpha2, "second shape")->required();
  tail->add_option("--t-min", t_min, "smallest t (> 0)");
  tail->add_option("--t-max", t_max, "largest t (<= 0.5)");
  tail->add_option("--points", points, "grid size");
  add_common(tail);

  try {
    app.parse(argc, argv);

    // config first, then explicit flags take precedence
    CommonSettings flag_values = settings;
    if (!config_path.empty()) {
      CommonSettings from_config;
      apply_config(from_config, config_path);
      CLI::App* sub = app.get_subcommands().front();
      auto flag_given = [&](const std::string& name) {
        const CLI::Option* opt = sub->get_option_no_throw(name);
        return opt != nullptr && opt->count() > 0;
      };
      settings = from_config;
      if (flag_given("--seed")) settings.seed = flag_values.seed;
      if (flag_given("--out") || settings.out.empty())
        settings.out = flag_values.out;
      if (flag_given("--threads")) settings.threads = flag_values.threads;
      if (flag_given("--family")) settings.families = flag_values.families;
      if (flag_given("--bootstrap-k"))
        settings.bootstrap_k = flag_values.bootstrap_k;
      if (flag_given("--beta")) settings.beta = flag_values.beta;
      if (flag_given("--tc-estimator"))
        settings.tc_estimator = flag_values.tc_estimator;
      if (flag_given("--hist-out")) settings.hist_out = flag_values.hist_out;
    }

    if (simulate->parsed()) cmd_simulate(settings);
    if (fit->parsed()) cmd_fit(data_path, family_name, settings);
    if (gof->parsed()) cmd_gof(data_path, settings);
    if (density->parsed()) cmd_density_grid(alpha1, alpha2, grid_n, settings);
    if (tail->parsed()) cmd_tail_curve(alpha1, alpha2, t_min, t_max, points, settings);
    return 0;
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const FitError& e) {
    std::cerr << "fit error: " << e.what() << '\n';
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
