#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "impred/assoc.hpp"
#include "impred/datasets.hpp"
#include "impred/errors.hpp"
#include "impred/io.hpp"
#include "impred/parallel.hpp"
#include "impred/plaus.hpp"
#include "impred/validity.hpp"
#include "impred/version.hpp"

namespace {

using impred::PredictionRegion;
using impred::UniformStream;
using impred::assoc::Model;
using impred::assoc::PredictionTarget;
using impred::prs::AssertionKind;

constexpr std::uint64_t kDefaultSeed = 1729;

// Flag/shape problems the user can fix by rereading --help.
struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AnalysisOpts {
  std::string model;
  std::string data;
  int count = -1;
  int trials = -1;
  double arrival_time = 0.0;
  int arrivals = 0;
  std::string target;
  int future_trials = 0;
  std::string assertion = "singleton";
  double alpha = 0.05;
  std::uint64_t draws = 10000;
  std::uint64_t seed = kDefaultSeed;
  bool seed_given = false;
  std::uint64_t stream = 0;
  std::string solver = "gamma-matched";
  int solver_draws = 100000;
  std::string binom_method;
  std::string format = "json";
  std::string out;
  int workers = 0;
  std::size_t grid_points = 512;
};

struct StudyOpts {
  std::string model;
  double mu = 0.0, sigma = 1.0, theta1 = 1.0, theta2 = 1.0, theta = 0.5;
  int n = 10;
  std::string target = "next";
  std::string assertion = "singleton";
  double alpha = 0.1;
  int reps = 1000;
  std::uint64_t draws = 10000;
  std::uint64_t seed = kDefaultSeed;
  bool seed_given = false;
  std::uint64_t cell = 1;
  std::string binom_method = "modified";
  std::string solver = "gamma-matched";
  std::string format = "json";
  std::string out;
  int workers = 0;
};

Model parse_model(const std::string& s) {
  if (s == "normal") return Model::normal;
  if (s == "lognormal") return Model::lognormal;
  if (s == "gamma") return Model::gamma;
  if (s == "binomial") return Model::binomial;
  if (s == "poisson_process") return Model::poisson_process;
  throw usage_error("unknown model '" + s +
                    "' (choose normal, lognormal, gamma, binomial, poisson_process)");
}

AssertionKind parse_assertion(const std::string& s) {
  if (s == "right") return AssertionKind::right_sided;
  if (s == "left") return AssertionKind::left_sided;
  if (s == "singleton") return AssertionKind::singleton;
  throw usage_error("unknown assertion '" + s + "' (choose right, left, singleton)");
}

PredictionTarget parse_target_string(const std::string& s) {
  auto tail_of = [&](const std::string& prefix) { return s.substr(prefix.size()); };
  try {
    if (s == "next") return PredictionTarget::next();
    if (s.rfind("mean-of-m:", 0) == 0)
      return PredictionTarget::mean_of(std::stoi(tail_of("mean-of-m:")));
    if (s.rfind("max-of-m:", 0) == 0)
      return PredictionTarget::max_of(std::stoi(tail_of("max-of-m:")));
    if (s.rfind("count-of-m:", 0) == 0)
      return PredictionTarget::future_count(std::stoi(tail_of("count-of-m:")));
    if (s.rfind("arrival:", 0) == 0)
      return PredictionTarget::arrival(std::stoi(tail_of("arrival:")));
    if (s.rfind("kth-of-m:", 0) == 0) {
      std::string t = tail_of("kth-of-m:");
      auto comma = t.find(',');
      if (comma == std::string::npos) throw usage_error("kth-of-m needs M,K");
      return PredictionTarget::kth_largest_of(std::stoi(t.substr(0, comma)),
                                              std::stoi(t.substr(comma + 1)));
    }
  } catch (const std::invalid_argument&) {
    throw usage_error("cannot parse target '" + s + "'");
  } catch (const std::out_of_range&) {
    throw usage_error("cannot parse target '" + s + "'");
  }
  throw usage_error("unknown target '" + s +
                    "' (next, mean-of-m:M, max-of-m:M, kth-of-m:M,K, count-of-m:M, arrival:K)");
}

PredictionTarget resolve_target(const AnalysisOpts& o, Model model) {
  if (model == Model::binomial) {
    if (o.future_trials > 0) {
      if (!o.target.empty() && o.target != "count-of-m:" + std::to_string(o.future_trials))
        throw usage_error("--future-trials conflicts with --target");
      return PredictionTarget::future_count(o.future_trials);
    }
    if (o.target.empty()) throw usage_error("binomial needs --future-trials M (or --target count-of-m:M)");
    return parse_target_string(o.target);
  }
  if (o.target.empty()) {
    if (model == Model::poisson_process)
      throw usage_error("poisson_process needs --target arrival:K");
    return PredictionTarget::next();
  }
  return parse_target_string(o.target);
}

void check_compatibility(Model model, const PredictionTarget& t) {
  using Kind = PredictionTarget::Kind;
  bool ok = false;
  switch (model) {
    case Model::normal:
      ok = t.kind == Kind::next_observation || t.kind == Kind::kth_largest_of_m;
      break;
    case Model::lognormal:
      ok = t.kind == Kind::next_observation || t.kind == Kind::mean_of_m;
      break;
    case Model::gamma:
      ok = t.kind == Kind::next_observation || t.kind == Kind::max_of_m;
      break;
    case Model::binomial:
      ok = t.kind == Kind::future_count;
      break;
    case Model::poisson_process:
      ok = t.kind == Kind::arrival;
      break;
  }
  if (!ok)
    throw usage_error("target '" + impred::io::target_name(t) + "' is not available for model '" +
                      impred::io::model_name(model) + "'");
}

impred::gamma_solver::GammaSolveConfig solver_config(const std::string& name, int mc_draws) {
  impred::gamma_solver::GammaSolveConfig cfg;
  if (name == "gamma-matched")
    cfg.method = impred::gamma_solver::Method::gamma_matched_approx;
  else if (name == "normal")
    cfg.method = impred::gamma_solver::Method::normal_approx;
  else if (name == "mc")
    cfg.method = impred::gamma_solver::Method::mc_bisection;
  else
    throw usage_error("unknown solver '" + name + "' (gamma-matched, normal, mc)");
  cfg.mc_draws = mc_draws;
  return cfg;
}

std::uint64_t resolve_seed(std::uint64_t flag_value, bool flag_given) {
  if (flag_given) return flag_value;
  if (const char* env = std::getenv("IMPRED_SEED")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return v;
  }
  return flag_value;  // the documented default constant
}

std::vector<double> load_values(const std::string& source) {
  if (source.empty()) throw usage_error("this model needs --data <bundled-name-or-path>");
  if (auto bundled = impred::data::by_name(source)) return *bundled;
  return impred::io::ingest(source);
}

void write_output(const std::string& out, const std::string& text) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw impred::domain_error("cannot open output file " + out);
  f << text;
}

// Closed-form region for the k-th future arrival.
PredictionRegion poisson_region(int n, int k, double t_n, AssertionKind kind, double alpha) {
  PredictionRegion r;
  r.kind = kind;
  r.alpha = alpha;
  switch (kind) {
    case AssertionKind::right_sided:
      r.upper = impred::assoc::poisson_arrival_quantile(n, k, 1.0 - alpha, t_n);
      break;
    case AssertionKind::left_sided:
      r.lower = impred::assoc::poisson_arrival_quantile(n, k, alpha, t_n);
      break;
    case AssertionKind::singleton:
      r.lower = impred::assoc::poisson_arrival_quantile(n, k, 0.5 * alpha, t_n);
      r.upper = impred::assoc::poisson_arrival_quantile(n, k, 1.0 - 0.5 * alpha, t_n);
      break;
  }
  return r;
}

int run_analysis(const AnalysisOpts& o, bool want_curve) {
  Model model = parse_model(o.model);
  PredictionTarget target = resolve_target(o, model);
  check_compatibility(model, target);
  AssertionKind kind = parse_assertion(o.assertion);
  if (!(o.alpha > 0 && o.alpha < 1)) throw usage_error("--alpha must be in (0,1)");
  if (o.format != "json" && o.format != "csv" && o.format != "svg")
    throw usage_error("unknown format '" + o.format + "'");
  if (o.format == "svg" && !want_curve) throw usage_error("svg output is for the plaus command");
  std::uint64_t seed = resolve_seed(o.seed, o.seed_given);

  impred::io::ResultMeta meta;
  meta.model = impred::io::model_name(model);
  meta.target = impred::io::target_name(target);
  meta.assertion = impred::io::assertion_name(kind);
  meta.alpha = o.alpha;
  meta.seed = seed;
  meta.stream = o.stream;

  // Closed-form path: no Monte Carlo at all.
  if (model == Model::poisson_process) {
    if (!(o.arrival_time > 0) || o.arrivals < 1)
      throw usage_error("poisson_process needs --arrival-time T (> 0) and --arrivals N (>= 1)");
    meta.method = "closed_form";
    meta.draws = 0;
    int n = o.arrivals, k = target.k;
    double t_n = o.arrival_time;
    if (!want_curve) {
      auto region = poisson_region(n, k, t_n, kind, o.alpha);
      if (o.format == "csv")
        write_output(o.out, impred::io::region_csv(meta, region, false));
      else
        write_output(o.out, impred::io::region_result_json(meta, region, false).dump(2) + "\n");
      return 0;
    }
    double hi = impred::assoc::poisson_arrival_quantile(n, k, 0.999, t_n);
    impred::plaus::PlausibilityCurve curve;
    curve.kind = kind;
    curve.draws = 0;
    curve.grid.resize(o.grid_points);
    double step = (hi - t_n) / static_cast<double>(o.grid_points - 1);
    for (std::size_t i = 0; i < o.grid_points; ++i)
      curve.grid[i] = t_n + step * static_cast<double>(i);
    curve.plausibility.reserve(o.grid_points);
    for (double y : curve.grid)
      curve.plausibility.push_back(impred::prs::plausibility_from_g(
          impred::assoc::poisson_arrival_cdf(n, k, y, t_n), kind));
    if (o.format == "svg")
      write_output(o.out, impred::io::curve_svg(curve, o.alpha));
    else if (o.format == "csv")
      write_output(o.out, impred::io::curve_csv(curve));
    else
      write_output(o.out, impred::io::curve_result_json(meta, curve).dump(2) + "\n");
    return 0;
  }

  meta.method = "monte_carlo";
  meta.draws = o.draws;
  if (o.draws < 1) throw usage_error("--draws must be >= 1");
  UniformStream base(seed, o.stream);

  if (model == Model::binomial) {
    if (o.count < 0 || o.trials < 1)
      throw usage_error("binomial needs --count Y and --trials N");
    if (o.count > o.trials) throw usage_error("--count cannot exceed --trials");
    std::string method = o.binom_method.empty() ? (want_curve ? "modified" : "endpoints")
                                                : o.binom_method;
    if (method != "endpoints" && method != "modified")
      throw usage_error("unknown binomial method '" + method + "'");
    if (want_curve && method == "endpoints")
      throw usage_error("plausibility curves need --binom-method modified");
    meta.method = "monte_carlo_" + method;

    if (method == "endpoints") {
      auto sampler = impred::assoc::binomial_endpoint_sampler(o.count, o.trials, target.m);
      auto [glo, ghi] = impred::plaus::build_endpoint_pairs(sampler, o.draws, base, o.workers);
      auto region = impred::plaus::region_from_endpoint_pairs(glo, ghi, kind, o.alpha);
      if (o.format == "csv")
        write_output(o.out, impred::io::region_csv(meta, region, true));
      else
        write_output(o.out, impred::io::region_result_json(meta, region, true).dump(2) + "\n");
      return 0;
    }
    auto sampler = impred::assoc::binomial_modified_sampler(o.count, o.trials, target.m);
    auto g = impred::plaus::build_empirical_g(sampler, o.draws, base, o.workers);
    if (!want_curve) {
      auto region = impred::plaus::region(g, kind, o.alpha);
      if (o.format == "csv")
        write_output(o.out, impred::io::region_csv(meta, region, true));
      else
        write_output(o.out, impred::io::region_result_json(meta, region, true).dump(2) + "\n");
      return 0;
    }
    std::vector<double> grid(static_cast<std::size_t>(target.m) + 1);
    for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = static_cast<double>(i);
    auto curve = impred::plaus::curve(g, kind, grid);
    if (o.format == "svg")
      write_output(o.out, impred::io::curve_svg(curve, o.alpha));
    else if (o.format == "csv")
      write_output(o.out, impred::io::curve_csv(curve));
    else
      write_output(o.out, impred::io::curve_result_json(meta, curve).dump(2) + "\n");
    return 0;
  }

  // Continuous models share the build: data -> stats -> sampler -> ECDF.
  auto values = load_values(o.data);
  auto stats =
      impred::assoc::SufficientStats::from(impred::assoc::SampleData::continuous(model, values));
  impred::assoc::MarginalSampler sampler = [&] {
    switch (model) {
      case Model::normal:
        return impred::assoc::normal_sampler(stats, target);
      case Model::lognormal:
        return impred::assoc::lognormal_sampler(stats, target);
      default:
        return impred::assoc::gamma_sampler(stats, target,
                                            solver_config(o.solver, o.solver_draws));
    }
  }();
  auto g = impred::plaus::build_empirical_g(sampler, o.draws, base, o.workers);
  if (!want_curve) {
    auto region = impred::plaus::region(g, kind, o.alpha);
    if (o.format == "csv")
      write_output(o.out, impred::io::region_csv(meta, region, false));
    else
      write_output(o.out, impred::io::region_result_json(meta, region, false).dump(2) + "\n");
    return 0;
  }
  auto curve = impred::plaus::curve(g, kind, impred::plaus::default_grid(g, o.grid_points));
  if (o.format == "svg")
    write_output(o.out, impred::io::curve_svg(curve, o.alpha));
  else if (o.format == "csv")
    write_output(o.out, impred::io::curve_csv(curve));
  else
    write_output(o.out, impred::io::curve_result_json(meta, curve).dump(2) + "\n");
  return 0;
}

impred::validity::SimScenario build_scenario(const StudyOpts& o, bool needs_assertion) {
  impred::validity::SimScenario sc;
  sc.model = parse_model(o.model);
  if (sc.model == Model::poisson_process)
    throw usage_error("arrival predictions are closed-form; there is nothing to simulate");
  sc.params.mu = o.mu;
  sc.params.sigma = o.sigma;
  sc.params.theta1 = o.theta1;
  sc.params.theta2 = o.theta2;
  sc.params.theta = o.theta;
  sc.n = o.n;
  sc.target = parse_target_string(o.target);
  check_compatibility(sc.model, sc.target);
  if (needs_assertion) sc.assertion = parse_assertion(o.assertion);
  if (!(o.alpha > 0 && o.alpha < 1)) throw usage_error("--alpha must be in (0,1)");
  sc.alpha = o.alpha;
  sc.replications = o.reps;
  sc.mc_draws_per_rep = static_cast<int>(o.draws);
  sc.base_seed = resolve_seed(o.seed, o.seed_given);
  sc.cell_id = o.cell;
  if (o.binom_method == "endpoints")
    sc.binom_method = impred::validity::BinomialMethod::endpoints;
  else if (o.binom_method == "modified")
    sc.binom_method = impred::validity::BinomialMethod::modified;
  else
    throw usage_error("unknown binomial method '" + o.binom_method + "'");
  sc.solver = solver_config(o.solver, 100000);
  return sc;
}

impred::io::ResultMeta study_meta(const impred::validity::SimScenario& sc, std::uint64_t draws) {
  impred::io::ResultMeta meta;
  meta.model = impred::io::model_name(sc.model);
  meta.target = impred::io::target_name(sc.target);
  meta.assertion = impred::io::assertion_name(sc.assertion);
  meta.method = "monte_carlo";
  meta.alpha = sc.alpha;
  meta.draws = draws;
  meta.seed = sc.base_seed;
  meta.stream = sc.cell_id;
  return meta;
}

int run_pit(const StudyOpts& o) {
  if (o.format != "json" && o.format != "csv") throw usage_error("pit formats: json, csv");
  auto sc = build_scenario(o, false);
  auto report = impred::validity::pit_study(sc, o.workers);
  if (o.format == "csv")
    write_output(o.out, impred::io::pit_csv(report));
  else
    write_output(o.out,
                 impred::io::pit_result_json(study_meta(sc, o.draws), sc, report).dump(2) + "\n");
  return 0;
}

int run_coverage(const StudyOpts& o) {
  if (o.format != "json" && o.format != "csv") throw usage_error("coverage formats: json, csv");
  auto sc = build_scenario(o, true);
  auto report = impred::validity::coverage_study(sc, o.workers);
  if (o.format == "csv")
    write_output(o.out, impred::io::coverage_csv(sc, report));
  else
    write_output(
        o.out,
        impred::io::coverage_result_json(study_meta(sc, o.draws), sc, report).dump(2) + "\n");
  return 0;
}

int run_datasets(const std::string& name, const std::string& format, const std::string& out) {
  if (name.empty()) {
    std::ostringstream os;
    for (auto n : impred::data::names()) {
      auto v = impred::data::by_name(n);
      os << n << " (" << v->size() << " values)\n";
    }
    write_output(out, os.str());
    return 0;
  }
  auto v = impred::data::by_name(name);
  if (!v) throw usage_error("unknown dataset '" + name + "' (see: impred datasets)");
  if (format == "json") {
    nlohmann::json j;
    j["name"] = std::string(name);
    j["values"] = *v;
    write_output(out, j.dump(2) + "\n");
  } else if (format == "csv") {
    std::ostringstream os;
    os << "value\n";
    for (double x : *v) {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", x);
      os << buf << '\n';
    }
    write_output(out, os.str());
  } else {
    throw usage_error("dataset formats: json, csv");
  }
  return 0;
}

void add_analysis_options(CLI::App* cmd, AnalysisOpts& o, bool curve_cmd) {
  cmd->add_option("--model", o.model, "normal, lognormal, gamma, binomial, poisson_process")
      ->required();
  cmd->add_option("--data", o.data, "bundled dataset name or path to a single-column file");
  cmd->add_option("--count", o.count, "observed success count (binomial)");
  cmd->add_option("--trials", o.trials, "observed trial count (binomial)");
  cmd->add_option("--arrival-time", o.arrival_time, "time of the last observed arrival");
  cmd->add_option("--arrivals", o.arrivals, "number of observed arrivals");
  cmd->add_option("--target", o.target,
                  "next | mean-of-m:M | max-of-m:M | kth-of-m:M,K | count-of-m:M | arrival:K");
  cmd->add_option("--future-trials", o.future_trials, "future trial count (binomial shorthand)");
  cmd->add_option("--assertion", o.assertion, "right, left, or singleton (default singleton)");
  cmd->add_option("--alpha", o.alpha, "plausibility threshold (default 0.05)");
  cmd->add_option("--draws", o.draws, "Monte Carlo draws (default 10000)");
  auto* seed = cmd->add_option("--seed", o.seed, "RNG seed (default 1729; IMPRED_SEED overrides)");
  cmd->parse_complete_callback([&o, seed] { o.seed_given = seed->count() > 0; });
  cmd->add_option("--stream", o.stream, "RNG stream id (default 0)");
  cmd->add_option("--solver", o.solver, "gamma shape solver: gamma-matched, normal, mc");
  cmd->add_option("--solver-draws", o.solver_draws, "draws per CDF evaluation for --solver mc");
  cmd->add_option("--binom-method", o.binom_method,
                  "binomial construction: endpoints or modified");
  cmd->add_option("--format", o.format,
                  curve_cmd ? "json, csv, or svg (default json)" : "json or csv (default json)");
  cmd->add_option("--out", o.out, "write to this file instead of stdout");
  cmd->add_option("--workers", o.workers, "worker threads (default: IMPRED_THREADS or hardware)");
  if (curve_cmd)
    cmd->add_option("--grid-points", o.grid_points, "curve grid resolution (default 512)");
}

void add_study_options(CLI::App* cmd, StudyOpts& o, bool needs_assertion) {
  cmd->add_option("--model", o.model, "normal, lognormal, gamma, binomial")->required();
  cmd->add_option("--mu", o.mu, "true mean (normal) / log-scale mean (lognormal)");
  cmd->add_option("--sigma", o.sigma, "true SD (normal) / log-scale SD (lognormal)");
  cmd->add_option("--theta1", o.theta1, "true gamma shape");
  cmd->add_option("--theta2", o.theta2, "true gamma scale");
  cmd->add_option("--theta", o.theta, "true binomial success rate");
  cmd->add_option("--n", o.n, "observed sample size / trials")->required();
  cmd->add_option("--target", o.target, "prediction target (default next)");
  if (needs_assertion)
    cmd->add_option("--assertion", o.assertion, "right, left, or singleton");
  cmd->add_option("--alpha", o.alpha, "plausibility threshold (default 0.1)");
  cmd->add_option("--reps", o.reps, "replications (default 1000)");
  cmd->add_option("--draws", o.draws, "Monte Carlo draws per replication (default 10000)");
  auto* seed = cmd->add_option("--seed", o.seed, "RNG seed (default 1729; IMPRED_SEED overrides)");
  cmd->parse_complete_callback([&o, seed] { o.seed_given = seed->count() > 0; });
  cmd->add_option("--cell", o.cell, "cell id folded into the replication streams (default 1)");
  cmd->add_option("--binom-method", o.binom_method, "endpoints or modified (default modified)");
  cmd->add_option("--solver", o.solver, "gamma shape solver: gamma-matched, normal, mc");
  cmd->add_option("--format", o.format, "json or csv (default json)");
  cmd->add_option("--out", o.out, "write to this file instead of stdout");
  cmd->add_option("--workers", o.workers, "worker threads (default: IMPRED_THREADS or hardware)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"impred: prediction of future observables with valid plausibility"};
  app.set_version_flag("--version", std::string(impred::kVersion));
  app.require_subcommand(1);

  AnalysisOpts plaus_opts, interval_opts;
  StudyOpts pit_opts, coverage_opts;
  std::string ds_name, ds_format = "json", ds_out;

  auto* plaus_cmd = app.add_subcommand("plaus", "plausibility curve for a future observable");
  add_analysis_options(plaus_cmd, plaus_opts, true);
  auto* interval_cmd = app.add_subcommand("interval", "prediction region at level alpha");
  add_analysis_options(interval_cmd, interval_opts, false);
  auto* pit_cmd = app.add_subcommand("pit", "PIT uniformity study under a known truth");
  add_study_options(pit_cmd, pit_opts, false);
  auto* coverage_cmd = app.add_subcommand("coverage", "region coverage study under a known truth");
  add_study_options(coverage_cmd, coverage_opts, true);
  auto* ds_cmd = app.add_subcommand("datasets", "list or print the bundled datasets");
  ds_cmd->add_option("--name", ds_name, "dataset to print");
  ds_cmd->add_option("--format", ds_format, "json or csv (default json)");
  ds_cmd->add_option("--out", ds_out, "write to this file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (plaus_cmd->parsed()) return run_analysis(plaus_opts, true);
    if (interval_cmd->parsed()) return run_analysis(interval_opts, false);
    if (pit_cmd->parsed()) return run_pit(pit_opts);
    if (coverage_cmd->parsed()) return run_coverage(coverage_opts);
    if (ds_cmd->parsed()) return run_datasets(ds_name, ds_format, ds_out);
  } catch (const usage_error& e) {
    std::cerr << "error: " << e.what() << "\n(see impred --help)\n";
    return 2;
  } catch (const impred::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const impred::numeric_error& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
