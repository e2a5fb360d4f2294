#include "bksat/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include "bksat/bounds.hpp"
#include "bksat/dpll.hpp"
#include "bksat/harness.hpp"
#include "bksat/kk.hpp"
#include "bksat/liquid.hpp"
#include "bksat/parallel.hpp"
#include "bksat/rng.hpp"
#include "bksat/solvers.hpp"
#include "bksat/ucp.hpp"

namespace bksat {
namespace {

using json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One result: config and summary scalars plus an optional table.
struct Report {
  std::string schema;
  json config = json::object();
  json result = json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
};

std::string cell(const json &v) {
  if (v.is_null())
    return "";
  if (v.is_string())
    return v.get<std::string>();
  if (v.is_number_float())
    return format_double(v.get<double>());
  return v.dump();
}

void write_csv(std::ostream &os, const Report &r) {
  os << "# schema=" << r.schema << '\n';
  for (const auto &[key, value] : r.config.items())
    os << "# config " << key << '=' << cell(value) << '\n';
  for (const auto &[key, value] : r.result.items())
    os << "# result " << key << '=' << cell(value) << '\n';
  for (std::size_t i = 0; i < r.columns.size(); ++i)
    os << (i ? "," : "") << r.columns[i];
  if (!r.columns.empty())
    os << '\n';
  for (const auto &row : r.rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      os << (i ? "," : "") << cell(row[i]);
    os << '\n';
  }
}

void write_json(std::ostream &os, const Report &r) {
  json doc;
  doc["schema"] = r.schema;
  doc["config"] = r.config;
  doc["result"] = r.result;
  if (!r.columns.empty()) {
    json table = json::array();
    for (const auto &row : r.rows) {
      json obj = json::object();
      for (std::size_t i = 0; i < r.columns.size(); ++i)
        obj[r.columns[i]] = row[i];
      table.push_back(std::move(obj));
    }
    doc["table"] = std::move(table);
  }
  os << doc.dump(2) << '\n';
}

void emit_text(const std::string &text, const std::string &path, std::ostream &out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file)
    throw Error("cannot open '" + path + "' for writing");
  file << text;
  if (!file)
    throw Error("failed writing '" + path + "'");
}

void emit(const Report &r, const std::string &format, const std::string &path,
          std::ostream &out) {
  std::ostringstream os;
  if (format == "csv")
    write_csv(os, r);
  else
    write_json(os, r);
  emit_text(os.str(), path, out);
}

// Shared flag set. Each subcommand binds the fields it uses.
struct Options {
  std::int32_t k = 3;
  std::optional<double> p, b;
  std::int32_t n = 40;
  std::optional<double> m;
  std::uint64_t trials = 100;
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "json";
  std::string solver;
  std::string mode = "discrete";
  std::string policy = "pseudocode";
  unsigned threads = 0;
};

void add_bias(CLI::App *sub, Options &o, double default_p) {
  auto *p = sub->add_option("--p", o.p,
                            "probability that a literal is positive (default " +
                                format_double(default_p) + ")");
  auto *b = sub->add_option("--b", o.b, "bias b = 1/2 - p");
  p->excludes(b);
}

void add_output(CLI::App *sub, Options &o) {
  sub->add_option("--out", o.out, "output path (default stdout)");
  sub->add_option("--format", o.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

void add_threads(CLI::App *sub, Options &o) {
  sub->add_option("--threads", o.threads, "worker threads, 0 = all cores; never changes results");
}

template <class F> auto usage_check(F &&f) {
  try {
    return f();
  } catch (const InvalidParameters &e) {
    throw UsageError(e.what());
  }
}

BiasParams bias_of(const Options &o, double default_p) {
  return usage_check([&] {
    if (o.b)
      return BiasParams::from_b(*o.b);
    return BiasParams::from_p(o.p.value_or(default_p));
  });
}

SampleMode mode_of(const Options &o) {
  return usage_check([&] { return parse_sample_mode(o.mode); });
}

void put_bias(json &config, BiasParams bias) {
  config["p"] = bias.p();
  config["b"] = bias.b();
}

std::string read_input(const std::string &path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), {});
  }
  std::ifstream file(path, std::ios::binary);
  if (!file)
    throw Error("cannot open '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(file), {});
}

bounds::Rational parse_rational(const std::string &text) {
  // Accepts "a/b" or a plain decimal such as 0.05, converted exactly.
  try {
    if (auto slash = text.find('/'); slash != std::string::npos)
      return bounds::Rational(bounds::Rational::value_type(text.substr(0, slash)),
                              bounds::Rational::value_type(text.substr(slash + 1)));
    std::string digits = text;
    bool negative = false;
    if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) {
      negative = digits[0] == '-';
      digits.erase(0, 1);
    }
    bounds::Rational::value_type denom = 1;
    if (auto dot = digits.find('.'); dot != std::string::npos) {
      for (std::size_t i = dot + 1; i < digits.size(); ++i)
        denom *= 10;
      digits.erase(dot, 1);
    }
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      throw UsageError("not a rational number: '" + text + "'");
    bounds::Rational r(bounds::Rational::value_type(digits), denom);
    return negative ? bounds::Rational(-r) : r;
  } catch (const std::runtime_error &) {
    throw UsageError("not a rational number: '" + text + "'");
  }
}

std::vector<double> parse_list(const std::string &text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size())
        throw std::invalid_argument(item);
    } catch (const std::exception &) {
      throw UsageError("bad number '" + item + "' in list '" + text + "'");
    }
  }
  return out;
}

harness::SolverKind solver_of(const Options &o, std::int32_t k) {
  if (o.solver.empty())
    return k == 2 ? harness::SolverKind::two_sat : harness::SolverKind::dpll;
  return usage_check([&] { return harness::parse_solver(o.solver); });
}

harness::ExperimentConfig experiment_config(const Options &o, double default_p) {
  harness::ExperimentConfig cfg;
  cfg.k = o.k;
  cfg.bias = bias_of(o, default_p);
  cfg.n = o.n;
  cfg.trials = o.trials;
  cfg.solver = solver_of(o, o.k);
  cfg.mode = mode_of(o);
  cfg.base_seed = o.seed;
  cfg.output = o.out;
  cfg.policy = usage_check([&] { return parse_free_step_policy(o.policy); });
  cfg.threads = o.threads;
  return cfg;
}

json experiment_json(const harness::ExperimentConfig &cfg) {
  json c;
  c["k"] = cfg.k;
  put_bias(c, cfg.bias);
  c["n"] = cfg.n;
  c["trials"] = cfg.trials;
  c["solver"] = std::string(harness::to_string(cfg.solver));
  c["mode"] = std::string(to_string(cfg.mode));
  c["seed"] = cfg.base_seed;
  if (cfg.solver == harness::SolverKind::ucp)
    c["policy"] = std::string(to_string(cfg.policy));
  return c;
}

json interval_json(const Interval &iv) { return json::array({iv.lo, iv.hi}); }

void threshold_rows(Report &r, const harness::ThresholdEstimate &est) {
  r.columns = {"density", "sat", "trials", "frequency", "ci_lo", "ci_hi", "fitted"};
  for (std::size_t i = 0; i < est.table.size(); ++i) {
    const auto &pt = est.table[i];
    const auto ci = pt.ci();
    r.rows.push_back({pt.density, pt.sat, pt.trials, pt.frequency(), ci.lo, ci.hi, est.fitted[i]});
  }
}

// Subcommands ---------------------------------------------------------------

struct Command {
  CLI::App *app;
  std::function<void(std::ostream &)> run;
};

Command add_gen(CLI::App &app, Options &o) {
  auto *sub = app.add_subcommand("gen", "sample a biased k-SAT formula and write DIMACS");
  sub->footer("Output: DIMACS with a 'c biased-ksat k= p= seed= mode=' metadata line.");
  o.n = 100;
  sub->add_option("--n", o.n, "variables")->capture_default_str();
  sub->add_option("--k", o.k, "clause width")->capture_default_str();
  add_bias(sub, o, 0.5);
  sub->add_option("--m", o.m, "clauses (Poisson mean in poisson mode)")->required();
  sub->add_option("--seed", o.seed, "generator seed")->capture_default_str();
  sub->add_option("--mode", o.mode, "discrete or poisson")->capture_default_str();
  sub->add_option("--out", o.out, "output path (default stdout)");
  return {sub, [&o](std::ostream &out) {
            const auto bias = bias_of(o, 0.5);
            const auto mode = mode_of(o);
            auto f = usage_check([&] {
              if (!(*o.m >= 0.0))
                throw InvalidParameters("m must be non-negative");
              return generate_formula(o.n, o.k, bias, *o.m, mode, o.seed);
            });
            emit_text(write_dimacs(f), o.out, out);
          }};
}

Command add_solve(CLI::App &app, Options &o, std::string &input) {
  auto *sub = app.add_subcommand("solve", "solve a DIMACS formula");
  sub->footer("CSV columns: var,value (value is 1 for TRUE, -1 for FALSE).\n"
              "brute also reports per-layer solution counts Z and locally minimal counts M.");
  sub->add_option("--in", input, "DIMACS file, '-' for stdin")->required();
  sub->add_option("--solver", o.solver, "dpll, two_sat, ucp or brute");
  sub->add_option("--seed", o.seed, "seed for ucp free steps")->capture_default_str();
  sub->add_option("--policy", o.policy, "ucp free-step rule: pseudocode or sign_matched")
      ->capture_default_str();
  add_output(sub, o);
  return {sub, [&o, &input](std::ostream &out) {
            auto f = read_dimacs(read_input(input));
            const std::string solver = o.solver.empty() ? "dpll" : o.solver;
            Report r;
            r.schema = "bksat.solve/1";
            r.config["input"] = input;
            r.config["solver"] = solver;
            r.config["n"] = f.n;
            r.config["k"] = f.k;
            r.config["m"] = f.size();
            put_bias(r.config, f.bias);
            r.config["formula_seed"] = f.seed;
            std::optional<Assignment> solution;
            std::string verdict;
            if (solver == "dpll") {
              solution = dpll_sat(f.view(), kDpllHardLimit);
              verdict = solution ? "sat" : "unsat";
            } else if (solver == "two_sat") {
              solution = two_sat_solve(f.view());
              verdict = solution ? "sat" : "unsat";
            } else if (solver == "ucp") {
              r.config["seed"] = o.seed;
              r.config["policy"] = o.policy;
              Rng rng(o.seed);
              UcpOptions opts;
              opts.policy = usage_check([&] { return parse_free_step_policy(o.policy); });
              opts.record_trajectory = false;
              auto outcome = ucp_run(f.view(), f.bias, rng, opts);
              if (outcome.success)
                solution = outcome.assignment;
              verdict = outcome.success ? "sat" : "unknown";
              r.result["unit_steps"] = outcome.unit_steps;
              r.result["free_steps"] = outcome.free_steps;
            } else if (solver == "brute") {
              auto counts = brute_force_sat(f.view());
              verdict = counts.satisfiable() ? "sat" : "unsat";
              r.result["solutions"] = counts.total();
              r.result["locally_minimal"] = counts.total_minimal();
              r.result["Z"] = counts.Z;
              r.result["M"] = counts.M;
              if (counts.satisfiable())
                solution = dpll_sat(f.view(), kDpllHardLimit);
            } else {
              throw UsageError("unknown solver '" + solver + "'");
            }
            json summary{{"verdict", verdict}};
            summary.update(r.result);
            r.result = std::move(summary);
            if (solution) {
              r.columns = {"var", "value"};
              for (std::int32_t v = 1; v <= f.n; ++v)
                r.rows.push_back({v, solution->at(v)});
            }
            emit(r, o.format, o.out, out);
          }};
}

Command add_ucp(CLI::App &app, Options &o, bool &occurring_only) {
  auto *sub = app.add_subcommand("ucp", "unit clause propagation success and FALSE-count statistics");
  sub->footer("CSV columns: trial,success,false_count,unit_steps,free_steps,first_failure_step");
  o.n = 1000;
  o.trials = 1000;
  sub->add_option("--n", o.n, "variables")->capture_default_str();
  sub->add_option("--k", o.k, "clause width")->capture_default_str();
  add_bias(sub, o, 0.5);
  sub->add_option("--m", o.m, "clauses")->required();
  sub->add_option("--trials", o.trials, "independent runs")->capture_default_str();
  sub->add_option("--seed", o.seed, "base seed")->capture_default_str();
  sub->add_option("--mode", o.mode, "discrete or poisson")->capture_default_str();
  sub->add_option("--policy", o.policy, "free-step rule: pseudocode or sign_matched")
      ->capture_default_str();
  sub->add_flag("--occurring-only", occurring_only,
                "draw free variables only from those occurring in the formula");
  add_output(sub, o);
  add_threads(sub, o);
  return {sub, [&o, &occurring_only](std::ostream &out) {
            const auto bias = bias_of(o, 0.5);
            const auto mode = mode_of(o);
            UcpOptions opts;
            opts.policy = usage_check([&] { return parse_free_step_policy(o.policy); });
            opts.occurring_only = occurring_only;
            opts.record_trajectory = false;
            if (o.k < 1 || o.n < o.k || o.trials == 0 || !(*o.m >= 0.0))
              throw UsageError("need 1 <= k <= n, trials > 0 and m >= 0");
            struct Run {
              bool success;
              std::int64_t false_count, unit_steps, free_steps, first_failure;
            };
            auto runs = parallel_map(
                o.trials,
                [&](std::size_t i) {
                  Rng rng(derive_seed(o.seed, i));
                  auto f = sample_formula(o.n, o.k, bias, *o.m, mode, rng);
                  auto res = ucp_run(f.view(), bias, rng, opts);
                  const auto layer = static_cast<std::int64_t>(res.assignment.layer());
                  return Run{res.success, o.n - layer, res.unit_steps, res.free_steps,
                             res.first_failure_step.value_or(-1)};
                },
                o.threads);
            Report r;
            r.schema = "bksat.ucp/1";
            r.config["k"] = o.k;
            put_bias(r.config, bias);
            r.config["n"] = o.n;
            r.config["m"] = *o.m;
            r.config["trials"] = o.trials;
            r.config["seed"] = o.seed;
            r.config["mode"] = o.mode;
            r.config["policy"] = o.policy;
            r.config["occurring_only"] = occurring_only;
            RunningMoments falses;
            std::uint64_t successes = 0;
            r.columns = {"trial", "success", "false_count", "unit_steps", "free_steps",
                         "first_failure_step"};
            for (std::size_t i = 0; i < runs.size(); ++i) {
              const auto &x = runs[i];
              if (x.success) {
                ++successes;
                falses.add(static_cast<double>(x.false_count));
              }
              r.rows.push_back({i, x.success, x.false_count, x.unit_steps, x.free_steps,
                                x.first_failure < 0 ? json() : json(x.first_failure)});
            }
            const auto fm = falses.result();
            const auto ci = wilson_interval(successes, o.trials);
            r.result["successes"] = successes;
            r.result["success_rate"] = static_cast<double>(successes) / o.trials;
            r.result["success_ci"] = interval_json(ci);
            r.result["false_count_mean"] = fm.mean;
            r.result["false_count_variance"] = fm.variance;
            r.result["reference_mean"] = o.n * bias.p();
            r.result["reference_variance"] = o.n * bias.p() * (1.0 - bias.p());
            emit(r, o.format, o.out, out);
          }};
}

struct BoundsFlags {
  bounds::BoundConfig cfg;
  std::optional<double> alpha, delta0, Kk;
};

Command add_bounds(CLI::App &app, Options &o, BoundsFlags &bf) {
  auto *sub = app.add_subcommand("bounds", "closed-form and numeric threshold bounds at (k, p)");
  sub->footer("CSV: one row keyed by (k,p) with every BoundReport field as a column.");
  sub->add_option("--k", o.k, "clause width (>= 3)")->capture_default_str();
  add_bias(sub, o, 0.5);
  bf.cfg.n = 1000000;
  sub->add_option("--n", bf.cfg.n, "n for the finite-n quantities")->capture_default_str();
  sub->add_option("--K", bf.cfg.K, "K for x_star")->capture_default_str();
  sub->add_option("--alpha-half", bf.alpha, "alpha_k(1/2) (default 2^k ln 2)");
  sub->add_option("--delta0", bf.delta0, "delta0 (default e^-5k)");
  sub->add_option("--Kk", bf.Kk, "K_k (default 2^8k)");
  sub->add_option("--cs-t", bf.cfg.cs_t, "density t for the sparsity radius")->capture_default_str();
  sub->add_option("--cs-y", bf.cfg.cs_y, "edge ratio y for the sparsity radius")->capture_default_str();
  add_output(sub, o);
  return {sub, [&o, &bf](std::ostream &out) {
            const auto bias = bias_of(o, 0.5);
            bf.cfg.alpha_k_half = bf.alpha;
            bf.cfg.delta0 = bf.delta0;
            bf.cfg.K_k = bf.Kk;
            if (o.k < 3 || bias.p() <= 0.0 || bias.p() > 0.5)
              throw UsageError("bounds need k >= 3 and 0 < p <= 1/2");
            const auto rep = bounds::bound_report(o.k, bias, bf.cfg);
            Report r;
            r.schema = "bksat.bounds/1";
            r.config["k"] = o.k;
            put_bias(r.config, bias);
            r.config["n"] = bf.cfg.n;
            r.config["K"] = bf.cfg.K;
            r.config["cs_t"] = bf.cfg.cs_t;
            r.config["cs_y"] = bf.cfg.cs_y;
            json &x = r.result;
            x["k"] = rep.k;
            x["p"] = rep.bias.p();
            x["n"] = rep.n;
            x["q_exact"] = rep.q_exact;
            x["q_asym"] = rep.q_asym;
            x["c_px_exact"] = rep.c_px_exact;
            x["c_px_exact_poisson"] = rep.c_px_exact_poisson;
            x["c_px_asym"] = rep.c_px_asym;
            x["x_minus"] = rep.x_minus;
            x["x_plus"] = rep.x_plus;
            x["x_star"] = rep.x_star;
            x["x0"] = rep.x0;
            x["c_p"] = rep.c_p;
            x["alpha2"] = rep.alpha2;
            x["ucp_bound"] = rep.ucp_bound;
            x["single_flip_bound"] = rep.single_flip_bound;
            x["parabola_lo"] = rep.parabola_lo;
            x["parabola_hi"] = rep.parabola_hi;
            x["parabola_lo_exp"] = rep.parabola_lo_exp;
            x["parabola_hi_exp"] = rep.parabola_hi_exp;
            x["cs_x"] = rep.cs_x;
            x["alpha_k_half"] = rep.alpha_k_half;
            x["delta0"] = rep.delta0;
            x["K_k"] = rep.K_k;
            if (o.format == "csv") {
              std::vector<json> row;
              for (const auto &[key, value] : x.items()) {
                r.columns.push_back(key);
                row.push_back(value);
              }
              r.rows.push_back(std::move(row));
              r.result = json::object();
            }
            emit(r, o.format, o.out, out);
          }};
}

struct TrajectoryFlags {
  double c = 1.0;
  double step = 1e-3;
  double t_end = 0.9;
  double grid_step = 0.05;
};

Command add_trajectory(CLI::App &app, Options &o, TrajectoryFlags &tf) {
  auto *sub = app.add_subcommand("trajectory", "UCP clause-size census against the density ODE");
  sub->footer("CSV columns: t,i,empirical,stddev,closed_form,ode (ode is empty for i < 2)");
  o.n = 100000;
  o.trials = 10;
  sub->add_option("--n", o.n, "variables")->capture_default_str();
  sub->add_option("--k", o.k, "clause width")->capture_default_str();
  add_bias(sub, o, 0.5);
  sub->add_option("--c", tf.c, "initial clause density m/n")->capture_default_str();
  sub->add_option("--trials", o.trials, "UCP runs averaged")->capture_default_str();
  sub->add_option("--seed", o.seed, "base seed")->capture_default_str();
  sub->add_option("--step", tf.step, "RK4 step")->capture_default_str();
  sub->add_option("--t-end", tf.t_end, "last time")->capture_default_str();
  sub->add_option("--grid-step", tf.grid_step, "spacing of reported times")->capture_default_str();
  sub->add_option("--policy", o.policy, "free-step rule")->capture_default_str();
  add_output(sub, o);
  add_threads(sub, o);
  return {sub, [&o, &tf](std::ostream &out) {
            liquid::LiquidParams params{o.k, bias_of(o, 0.5), tf.c};
            if (!(tf.grid_step > 0.0) || !(tf.t_end > 0.0) || o.trials == 0)
              throw UsageError("need grid-step > 0, t-end > 0 and trials > 0");
            auto ode = usage_check([&] { return liquid::integrate(params, tf.t_end, tf.step); });
            std::vector<double> grid;
            for (std::int64_t g = 0;; ++g) {
              const double t = static_cast<double>(g) * tf.grid_step;
              if (t > tf.t_end + 1e-12)
                break;
              grid.push_back(std::min(t, tf.t_end));
            }
            UcpOptions opts;
            opts.policy = usage_check([&] { return parse_free_step_policy(o.policy); });
            auto emp = liquid::empirical_trajectory(o.n, params, static_cast<std::int32_t>(o.trials),
                                                    o.seed, grid, opts, o.threads);
            // ODE value at the nearest integration node to each grid time.
            auto ode_at = [&](double t, std::int32_t i) -> json {
              if (i < 2)
                return json();
              const auto &best = *std::min_element(
                  ode.begin(), ode.end(), [t](const auto &a, const auto &b) {
                    return std::abs(a.t - t) < std::abs(b.t - t);
                  });
              return best.at(i);
            };
            Report r;
            r.schema = "bksat.trajectory/1";
            r.config["k"] = o.k;
            put_bias(r.config, params.bias);
            r.config["n"] = o.n;
            r.config["c"] = tf.c;
            r.config["runs"] = o.trials;
            r.config["seed"] = o.seed;
            r.config["step"] = tf.step;
            r.config["t_end"] = tf.t_end;
            r.config["grid_step"] = tf.grid_step;
            r.config["policy"] = o.policy;
            r.result["ode_max_deviation"] = liquid::max_deviation(params, ode);
            r.result["sup_error"] = emp.sup_error();
            r.result["m"] = emp.m;
            r.result["successes"] = emp.successes;
            r.result["conservation_violations"] = emp.conservation_violations;
            r.columns = {"t", "i", "empirical", "stddev", "closed_form", "ode"};
            for (const auto &row : emp.rows)
              r.rows.push_back({row.t, row.i, row.empirical, row.stddev,
                                row.i >= 2 ? json(row.closed_form) : json(), ode_at(row.t, row.i)});
            emit(r, o.format, o.out, out);
          }};
}

struct ThresholdFlags {
  double tol = 0.02;
  std::optional<double> lo, hi;
};

void add_experiment_flags(CLI::App *sub, Options &o, double default_p) {
  sub->add_option("--k", o.k, "clause width")->capture_default_str();
  add_bias(sub, o, default_p);
  sub->add_option("--n", o.n, "variables")->capture_default_str();
  sub->add_option("--trials", o.trials, "formulas per probe")->capture_default_str();
  sub->add_option("--seed", o.seed, "base seed")->capture_default_str();
  sub->add_option("--mode", o.mode, "discrete or poisson")->capture_default_str();
  add_output(sub, o);
  add_threads(sub, o);
}

Command add_threshold(CLI::App &app, Options &o, ThresholdFlags &tf) {
  auto *sub = app.add_subcommand("threshold", "bisect for the density where Pr(sat) crosses 1/2");
  sub->footer("CSV columns: density,sat,trials,frequency,ci_lo,ci_hi,fitted\n"
              "(fitted is the non-increasing isotonic fit used for the crossing)");
  add_experiment_flags(sub, o, 0.5);
  sub->add_option("--solver", o.solver, "dpll, two_sat or ucp (default two_sat for k=2, else dpll)");
  sub->add_option("--policy", o.policy, "ucp free-step rule")->capture_default_str();
  sub->add_option("--tol", tf.tol, "bracket width at which bisection stops")->capture_default_str();
  sub->add_option("--lo", tf.lo, "lower density of the bracket");
  sub->add_option("--hi", tf.hi, "upper density of the bracket");
  return {sub, [&o, &tf](std::ostream &out) {
            auto cfg = experiment_config(o, 0.5);
            cfg.tolerance = tf.tol;
            cfg.lo = tf.lo;
            cfg.hi = tf.hi;
            usage_check([&] { cfg.validate(); });
            auto est = harness::threshold_bisect(cfg);
            Report r;
            r.schema = "bksat.threshold/1";
            r.config = experiment_json(cfg);
            r.config["tol"] = cfg.tolerance;
            if (cfg.lo)
              r.config["lo"] = *cfg.lo;
            if (cfg.hi)
              r.config["hi"] = *cfg.hi;
            r.result["alpha_hat"] = est.alpha_hat;
            r.result["ci"] = est.ci;
            r.result["bracket"] = json::array({est.bracket_lo, est.bracket_hi});
            threshold_rows(r, est);
            emit(r, o.format, o.out, out);
          }};
}

Command add_spine(CLI::App &app, Options &o, double &t) {
  auto *sub = app.add_subcommand("spine", "spine (backbone) statistics of satisfiable formulas");
  sub->footer("CSV columns: spine_size,formulas (histogram over satisfiable formulas)");
  o.n = 30;
  add_experiment_flags(sub, o, 0.45);
  sub->add_option("--t", t, "clause density m/n")->capture_default_str();
  return {sub, [&o, &t](std::ostream &out) {
            auto cfg = experiment_config(o, 0.45);
            cfg.solver = harness::SolverKind::dpll;
            cfg.t = t;
            usage_check([&] { cfg.validate(); });
            auto rep = harness::spine_experiment(cfg);
            Report r;
            r.schema = "bksat.spine/1";
            r.config = experiment_json(cfg);
            r.config["t"] = cfg.t;
            r.result["satisfiable"] = rep.satisfiable;
            r.result["formulas_with_spine"] = rep.formulas_with_spine;
            r.result["locked_true"] = rep.locked_true;
            r.result["locked_false"] = rep.locked_false;
            r.result["true_fraction"] = rep.true_fraction;
            r.result["true_fraction_ci"] = rep.true_fraction_ci;
            r.result["aligned_fraction"] = rep.aligned_fraction;
            r.result["aligned_fraction_ci"] = rep.aligned_fraction_ci;
            r.result["target"] = 0.5 + std::abs(cfg.bias.b());
            r.result["aligned_meets_target"] =
                rep.aligned_fraction >= 0.5 + std::abs(cfg.bias.b()) - rep.aligned_fraction_ci;
            r.columns = {"spine_size", "formulas"};
            for (std::size_t s = 0; s < rep.histogram.size(); ++s)
              r.rows.push_back({s, rep.histogram[s]});
            emit(r, o.format, o.out, out);
          }};
}

struct KkFlags {
  std::int64_t N = 10;
  std::int32_t r = 2;
  std::optional<std::int32_t> d;
  std::string b = "1/10";
};

Command add_kk(CLI::App &app, Options &o, KkFlags &kf) {
  auto *sub = app.add_subcommand("kk", "cascades, shadow bounds and the minimum of w over sign functions");
  sub->footer("CSV: result lines only (no table).");
  sub->add_option("--N", kf.N, "number to decompose")->capture_default_str();
  sub->add_option("--r", kf.r, "cascade rank")->capture_default_str();
  sub->add_option("--d", kf.d, "dimension (<= 4) for the minimum of w");
  sub->add_option("--b", kf.b, "bias b as a fraction or decimal, e.g. 1/20 or 0.05")
      ->capture_default_str();
  add_output(sub, o);
  return {sub, [&o, &kf](std::ostream &out) {
            Report r;
            r.schema = "bksat.kk/1";
            r.config["N"] = kf.N;
            r.config["r"] = kf.r;
            auto cascade = usage_check([&] { return kk::cascade_decompose(kf.N, kf.r); });
            r.result["cascade"] = cascade.a;
            r.result["textbook"] = cascade.textbook();
            r.result["value"] = kk::cascade_value(cascade);
            r.result["shadow_bound"] = kk::shadow_bound(cascade);
            if (kf.d) {
              const auto b = parse_rational(kf.b);
              r.config["d"] = *kf.d;
              r.config["b"] = kf.b;
              auto mw = usage_check([&] { return kk::min_w_brute(*kf.d, b); });
              r.result["min_w"] = mw.value.str();
              r.result["min_w_double"] = mw.value_double;
              r.result["min_w_equals_2b"] = mw.value == 2 * b;
              r.result["functions"] = mw.functions;
              r.result["dictator_attains"] = mw.dictator_attains;
              std::vector<int> g(mw.argmin.g.begin(), mw.argmin.g.end());
              r.result["argmin"] = g;
            }
            emit(r, o.format, o.out, out);
          }};
}

Command add_russo(CLI::App &app, Options &o, kk::PivotalConfig &pc) {
  auto *sub = app.add_subcommand("russo", "pivotal-event rates for one added clause");
  sub->footer("CSV: result lines only (no table).");
  o.n = pc.n;
  o.trials = pc.trials;
  sub->add_option("--n", o.n, "variables (dpll scale)")->capture_default_str();
  sub->add_option("--k", o.k, "clause width")->capture_default_str();
  add_bias(sub, o, 0.45);
  sub->add_option("--t", pc.t, "Poisson clause density")->capture_default_str();
  sub->add_option("--trials", o.trials, "trials")->capture_default_str();
  sub->add_option("--seed", o.seed, "base seed")->capture_default_str();
  sub->add_option("--spine-checks", pc.full_spine_checks,
                  "trials whose spine prediction is checked in both directions")
      ->capture_default_str();
  add_output(sub, o);
  add_threads(sub, o);
  return {sub, [&o, &pc](std::ostream &out) {
            pc.n = o.n;
            pc.k = o.k;
            pc.bias = bias_of(o, 0.45);
            pc.trials = o.trials;
            pc.base_seed = o.seed;
            pc.threads = o.threads;
            if (pc.n > kDpllDefaultLimit || pc.k < 1 || pc.n < pc.k || pc.trials == 0)
              throw UsageError("need 1 <= k <= n <= 60 and trials > 0");
            auto est = kk::pivotal_rho_estimate(pc);
            Report r;
            r.schema = "bksat.russo/1";
            r.config["n"] = pc.n;
            r.config["k"] = pc.k;
            put_bias(r.config, pc.bias);
            r.config["t"] = pc.t;
            r.config["trials"] = pc.trials;
            r.config["seed"] = pc.base_seed;
            r.config["spine_checks"] = pc.full_spine_checks;
            auto &x = r.result;
            x["sat"] = est.sat;
            x["events"] = est.events;
            x["events_plus"] = est.events_plus;
            x["events_minus"] = est.events_minus;
            x["rho"] = est.rho;
            x["rho_ci"] = interval_json(est.rho_ci);
            x["rho_plus"] = est.rho_plus;
            x["rho_plus_ci"] = interval_json(est.rho_plus_ci);
            x["rho_minus"] = est.rho_minus;
            x["rho_minus_ci"] = interval_json(est.rho_minus_ci);
            x["ratio"] = est.ratio;
            x["ratio_half_width"] = est.ratio_half_width;
            x["ratio_target_4b"] = 4.0 * pc.bias.b();
            x["identity_residual"] = est.identity_residual;
            x["identity_half_width"] = est.identity_half_width;
            x["swapped_identity_residual"] = est.swapped_identity_residual;
            x["swapped_identity_half_width"] = est.swapped_identity_half_width;
            x["spine_checks"] = est.spine_checks;
            x["spine_violations"] = est.spine_violations;
            emit(r, o.format, o.out, out);
          }};
}

struct ParabolaFlags {
  std::string bs = "0,0.1,0.2";
  double tol = 0.02;
};

Command add_parabola(CLI::App &app, Options &o, ParabolaFlags &pf) {
  auto *sub = app.add_subcommand("parabola", "threshold ratio alpha(1/2 - b) / alpha(1/2) over b");
  sub->footer("CSV columns: b,alpha_hat,ci,ratio,ratio_ci,exact,lower_bound\n"
              "(exact is 1/(1-4b^2), reported for k=2 only; lower_bound is 1+2kb^2)");
  o.k = 2;
  o.n = 100000;
  o.trials = 200;
  sub->add_option("--k", o.k, "clause width")->capture_default_str();
  sub->add_option("--n", o.n, "variables")->capture_default_str();
  sub->add_option("--trials", o.trials, "formulas per probe")->capture_default_str();
  sub->add_option("--seed", o.seed, "base seed")->capture_default_str();
  sub->add_option("--mode", o.mode, "discrete or poisson")->capture_default_str();
  sub->add_option("--solver", o.solver, "dpll, two_sat or ucp (default two_sat for k=2, else dpll)");
  sub->add_option("--bs", pf.bs, "comma-separated b values")->capture_default_str();
  sub->add_option("--tol", pf.tol, "bisection tolerance")->capture_default_str();
  add_output(sub, o);
  add_threads(sub, o);
  return {sub, [&o, &pf](std::ostream &out) {
            auto cfg = experiment_config(o, 0.5);
            cfg.tolerance = pf.tol;
            usage_check([&] { cfg.validate(); });
            const auto bs = parse_list(pf.bs);
            for (double b : bs)
              if (!(b >= 0.0 && b < 0.5))
                throw UsageError("b values must lie in [0, 1/2)");
            auto rows = harness::parabola_experiment(cfg, bs);
            Report r;
            r.schema = "bksat.parabola/1";
            r.config = experiment_json(cfg);
            r.config.erase("p");
            r.config.erase("b");
            r.config["bs"] = bs;
            r.config["tol"] = cfg.tolerance;
            r.columns = {"b", "alpha_hat", "ci", "ratio", "ratio_ci", "exact", "lower_bound"};
            for (const auto &row : rows)
              r.rows.push_back({row.b, row.estimate.alpha_hat, row.estimate.ci, row.ratio,
                                row.ratio_ci, row.exact ? json(*row.exact) : json(),
                                row.lower_bound});
            emit(r, o.format, o.out, out);
          }};
}

} // namespace

int cli_main(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app("Biased random k-SAT experiments", "bksat");
  app.require_subcommand(1);

  // Every subcommand gets its own option storage so defaults do not leak.
  Options gen_o, solve_o, ucp_o, bounds_o, traj_o, thr_o, spine_o, kk_o, russo_o, para_o;
  std::string input;
  bool occurring_only = false;
  BoundsFlags bf;
  TrajectoryFlags trf;
  ThresholdFlags thf;
  double spine_t = 4.0;
  KkFlags kf;
  kk::PivotalConfig pc;
  ParabolaFlags pf;
  const std::vector<Command> commands = {
      add_gen(app, gen_o),          add_solve(app, solve_o, input),
      add_ucp(app, ucp_o, occurring_only), add_bounds(app, bounds_o, bf),
      add_trajectory(app, traj_o, trf),    add_threshold(app, thr_o, thf),
      add_spine(app, spine_o, spine_t),    add_kk(app, kk_o, kf),
      add_russo(app, russo_o, pc),         add_parabola(app, para_o, pf),
  };

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError &e) {
    app.exit(e, out, err);
    return 2;
  }

  for (const auto &cmd : commands) {
    if (!cmd.app->parsed())
      continue;
    try {
      cmd.run(out);
      out.flush();
      return 0;
    } catch (const UsageError &e) {
      err << "usage error: " << e.what() << '\n' << cmd.app->help();
      return 2;
    } catch (const std::exception &e) {
      err << "error: " << e.what() << '\n';
      return 1;
    }
  }
  err << app.help();
  return 2;
}

int cli_main(int argc, const char *const *argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i)
    args.emplace_back(argv[i]);
  return cli_main(args, std::cout, std::cerr);
}

} // namespace bksat
