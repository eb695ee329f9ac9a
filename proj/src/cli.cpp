#include "epslab/cli.hpp"

#include <cmath>
#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"

#include "epslab/io.hpp"
#include "epslab/report.hpp"

namespace epslab {
namespace {

namespace fs = std::filesystem;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string id_suffix(std::size_t i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04zu", i);
  return buf;
}

std::map<Index, Index> parse_r_min(const std::vector<std::string>& items) {
  std::map<Index, Index> out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ConfigError("--r-min items look like k=r, got '" + item + "'");
    try {
      out[std::stoul(item.substr(0, eq))] = std::stoul(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw ConfigError("cannot parse --r-min item '" + item + "'");
    }
  }
  return out;
}

BlockPlan load_plan(const RunConfig& cfg) {
  if (cfg.plan_path.empty()) throw ConfigError("--plan is required");
  return plan_from_json(read_json_file(cfg.plan_path));
}

OperatorT load_operator(const RunConfig& cfg) {
  BlockPlan plan = load_plan(cfg);
  const NormSpec spec_y = cfg.norm_y.empty() ? plan.spec_x() : NormSpec::parse(cfg.norm_y);
  return OperatorT(std::move(plan), spec_y);
}

DirectSumVector load_vector(const RunConfig& cfg) {
  if (cfg.vector_path.empty()) throw ConfigError("--vector is required");
  return direct_sum_from_json(read_json_file(cfg.vector_path));
}

fs::path csv_path_for(const RunConfig& cfg) {
  if (!cfg.csv_path.empty()) return cfg.csv_path;
  if (cfg.out_path.empty()) return {};
  return fs::path(cfg.out_path).replace_extension(".csv");
}

CheckRow upper_check(std::string id, long long k_or_n, double value, double bound, double tol) {
  const double slack = bound - value;
  return {std::move(id), k_or_n, value, bound, slack, slack >= -tol};
}

int emit(const RunConfig& cfg, const std::string& hash, Json results, const std::vector<CheckRow>& rows,
         std::ostream& out, std::ostream& err) {
  bool pass = true;
  for (const auto& r : rows) pass = pass && r.pass;
  const std::string text = report_envelope(cfg.command, hash, pass, std::move(results)).dump(2) + "\n";
  if (cfg.out_path.empty()) {
    out << text;
  } else {
    write_text_file(cfg.out_path, text);
  }
  if (const fs::path csv = csv_path_for(cfg); !csv.empty()) write_text_file(csv, rows_to_csv(rows));

  for (const auto& r : rows) {
    if (!r.pass) err << "FAILED " << r.check_id << " k_or_n=" << r.k_or_n << " value=" << r.value
                     << " bound=" << r.bound << " slack=" << r.slack << "\n";
  }
  return pass ? kExitPass : kExitCheckFailed;
}

int cmd_omega(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const NormSpec spec = NormSpec::parse(cfg.norm);
  const GeoSolution g = solve_omega(cfg.eps, spec, cfg.tol);
  Json results = to_json(g);
  results["eps"] = cfg.eps;
  results["norm"] = to_json(spec);
  const double omega_bar = cfg.eps / (1.0 - cfg.eps);
  std::vector<CheckRow> rows{
      upper_check("omega.residual", 0, g.residual, cfg.tol, 0.0),
      {"omega.bracket", 0, g.omega, omega_bar, std::min(g.omega - cfg.eps, omega_bar - g.omega),
       g.omega >= cfg.eps && g.omega <= omega_bar},
  };
  return emit(cfg, "", std::move(results), rows, out, err);
}

int cmd_plan(const RunConfig& cfg, std::ostream& out) {
  const BlockPlan plan = plan_blocks(cfg.eps, NormSpec::parse(cfg.norm), cfg.blocks, parse_r_min(cfg.r_min), cfg.tol);
  const std::string text = to_json(plan).dump(2) + "\n";
  if (cfg.out_path.empty()) {
    out << text;
  } else {
    write_text_file(cfg.out_path, text);
  }
  return kExitPass;
}

int cmd_orbit(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const OperatorT T = load_operator(cfg);
  const DirectSumVector u = load_vector(cfg);
  if (cfg.powers.empty()) throw ConfigError("--powers needs at least one power");
  Json orbit = Json::array();
  std::vector<CheckRow> rows;
  for (Index n : cfg.powers) {
    const DirectSumVector image = apply_T_pow(T, u, n);
    const double norm = T.norm(image);
    orbit.push_back(Json{{"n", n}, {"norm", norm}, {"vector", to_json(image)}});
    rows.push_back({"orbit.norm", static_cast<long long>(n), norm, T.plan().constants().kappa, 0.0, true});
  }
  Json results{{"input_norm", T.norm(u)}, {"orbit", std::move(orbit)}};
  return emit(cfg, plan_hash(T.plan()), std::move(results), rows, out, err);
}

int cmd_verify_witness(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const OperatorT T = load_operator(cfg);
  const BlockPlan& plan = T.plan();
  std::vector<Target> raw;
  if (!cfg.targets_path.empty()) raw = targets_from_json(read_json_file(cfg.targets_path));
  if (cfg.random > 0) {
    Rng rng(cfg.seed);
    for (std::size_t i = 0; i < cfg.random; ++i) {
      for (Index k = 1; k <= plan.block_count(); ++k) raw.push_back(random_target(rng, k, plan.spec_x()));
    }
  }
  if (raw.empty()) throw ConfigError("verify-witness needs --targets and/or --random N");

  std::vector<Target> admitted;
  Json admissions = Json::array();
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i].k < 1 || raw[i].k > plan.block_count()) {
      throw ConfigError("target " + std::to_string(i) + " has k outside 1.." + std::to_string(plan.block_count()));
    }
    AdmittedTarget a = admit_target(raw[i].u, raw[i].k, plan.spec_x());
    admissions.push_back(Json{{"target", i},
                              {"k", raw[i].k},
                              {"scale", a.scale},
                              {"dropped", a.dropped},
                              {"max_block_norm", a.max_block_norm},
                              {"original", to_json(raw[i].u)}});
    admitted.push_back({raw[i].k, std::move(a.target)});
  }

  const CriterionReport rep = criterion_report(T, admitted, 20, cfg.seed, cfg.check_tol);
  std::vector<CheckRow> rows;
  for (std::size_t i = 0; i < rep.witnesses.size(); ++i) {
    const WitnessResult& w = rep.witnesses[i];
    const auto k = static_cast<long long>(w.k);
    rows.push_back(upper_check("witness.approx.t" + id_suffix(i), k, w.approx_error, w.eps * w.target_norm,
                               cfg.check_tol));
    rows.push_back(upper_check("witness.decay.t" + id_suffix(i), k, w.v_norm, 1.0 / static_cast<double>(w.k),
                               cfg.check_tol));
  }
  for (std::size_t i = 0; i < rep.annihilation.size(); ++i) {
    const AnnihilationCheck& a = rep.annihilation[i];
    const double residue = a.exact_zero ? 0.0 : 1.0;
    rows.push_back({"criterion.annihilation.c" + id_suffix(i), static_cast<long long>(a.power), residue, 0.0,
                    0.0 - residue, a.exact_zero});
  }
  Json results = to_json(rep);
  results["admissions"] = std::move(admissions);
  return emit(cfg, plan_hash(plan), std::move(results), rows, out, err);
}

int cmd_verify_lower(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const OperatorT T = load_operator(cfg);
  const DirectSumVector u = load_vector(cfg);
  const LowerBoundResult res = lower_bound_check(T, u, cfg.delta, cfg.horizon, cfg.check_tol);
  std::vector<CheckRow> rows;
  for (std::size_t i = 0; i < res.per_n_slack.size(); ++i) {
    const double s = res.per_n_slack[i];
    rows.push_back({"lower.slack", static_cast<long long>(i + 1), s, 0.0, s, s >= -cfg.check_tol});
  }
  rows.push_back({"lower.min_ratio", static_cast<long long>(res.horizon), res.min_ratio, res.delta,
                  res.min_ratio - res.delta, res.min_ratio > res.delta});
  return emit(cfg, plan_hash(T.plan()), to_json(res), rows, out, err);
}

int cmd_l1_intervals(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const OperatorT T = load_operator(cfg);
  const DirectSumVector u = load_vector(cfg);
  const IntervalReport rep = l1_interval_report(T, u, cfg.horizon, cfg.probe);
  const SupersetCheck sup = check_interval_superset(T, u, rep, cfg.grid);

  const double c = 2.0 * rep.eps / (1.0 - rep.eps * rep.eps);
  std::vector<CheckRow> rows;
  for (const auto& e : rep.intervals) {
    if (!e.has_superset) continue;
    const double expect = e.u_n0.real() * c;
    const double diff = std::abs(e.superset_length() - expect);
    rows.push_back({"l1.interval_length", static_cast<long long>(e.n), e.superset_length(), expect, -diff,
                    diff <= cfg.check_tol});
  }
  rows.push_back(upper_check("l1.total_length", static_cast<long long>(rep.horizon), rep.total_length, rep.bound,
                             cfg.check_tol));
  const bool need_gap = rep.probe_length > rep.bound;
  rows.push_back({"l1.uncovered_point", static_cast<long long>(rep.horizon),
                  rep.uncovered_point.value_or(std::nan("")), rep.ray_start + rep.probe_length,
                  rep.probe_length - rep.bound, rep.uncovered_point.has_value() || !need_gap});
  rows.push_back({"l1.superset", static_cast<long long>(sup.points), static_cast<double>(sup.violations), 0.0,
                  0.0 - static_cast<double>(sup.violations), sup.violations == 0});

  Json results = to_json(rep);
  results["superset_check"] =
      Json{{"points", sup.points}, {"violations", sup.violations}, {"worst_excess", sup.worst_excess}};
  return emit(cfg, plan_hash(T.plan()), std::move(results), rows, out, err);
}

int cmd_report(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.out_dir.empty()) throw ConfigError("report needs --out-dir");
  const fs::path dir(cfg.out_dir);
  std::vector<CheckRow> rows;
  Json results = Json::object();

  const std::vector<std::pair<std::string, NormSpec>> norms{
      {"l1", NormSpec::lp(1.0)}, {"l2", NormSpec::lp(2.0)}, {"l3", NormSpec::lp(3.0)}, {"sup", NormSpec::sup()}};
  std::ostringstream omega_csv;
  omega_csv.precision(17);
  omega_csv << "eps";
  for (const auto& [name, spec] : norms) omega_csv << ",omega_" << name;
  omega_csv << ",omega_l2_closed_form\n";
  for (std::size_t i = 1; i <= cfg.eps_grid; ++i) {
    const double eps = static_cast<double>(i) / static_cast<double>(cfg.eps_grid + 1);
    omega_csv << eps;
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& [name, spec] : norms) {
      const double omega = solve_omega(eps, spec, cfg.tol).omega;
      omega_csv << ',' << omega;
      worst = std::min({worst, omega - eps, eps / (1.0 - eps) - omega});
    }
    omega_csv << ',' << closed_form_omega(eps, 2.0).omega << '\n';
    rows.push_back({"omega_curve.bracket", static_cast<long long>(i), eps, eps / (1.0 - eps), worst, worst >= -1e-12});
  }
  write_text_file(dir / "omega_curve.csv", omega_csv.str());
  results["omega_curve"] = "omega_curve.csv";

  std::string hash;
  if (!cfg.plan_path.empty() || !cfg.vector_path.empty()) {
    const OperatorT T = load_operator(cfg);
    const DirectSumVector u = load_vector(cfg);
    hash = plan_hash(T.plan());
    const double eps = T.plan().constants().eps;
    const Index horizon = cfg.horizon > 0 ? cfg.horizon : T.plan().max_weight();
    std::ostringstream delta_csv;
    delta_csv.precision(17);
    delta_csv << "delta,K,min_ratio,min_slack,pass\n";
    for (std::size_t i = 1; i <= cfg.deltas; ++i) {
      const double delta = eps * static_cast<double>(i) / static_cast<double>(cfg.deltas + 1);
      const LowerBoundResult r = lower_bound_check(T, u, delta, horizon, cfg.check_tol);
      delta_csv << delta << ',' << r.K_scalar << ',' << r.min_ratio << ',' << r.min_slack << ','
                << (r.pass ? "true" : "false") << '\n';
      rows.push_back({"delta_curve.min_ratio", static_cast<long long>(i), r.min_ratio, delta, r.min_ratio - delta,
                      r.pass});
    }
    write_text_file(dir / "delta_curve.csv", delta_csv.str());
    results["delta_curve"] = "delta_curve.csv";
  }

  RunConfig inner = cfg;
  inner.out_path = (dir / "report.json").string();
  inner.csv_path = (dir / "checks.csv").string();
  const int code = emit(inner, hash, std::move(results), rows, out, err);
  out << "wrote " << dir.string() << "\n";
  return code;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.command == "omega") return cmd_omega(cfg, out, err);
    if (cfg.command == "plan") return cmd_plan(cfg, out);
    if (cfg.command == "orbit") return cmd_orbit(cfg, out, err);
    if (cfg.command == "verify-witness") return cmd_verify_witness(cfg, out, err);
    if (cfg.command == "verify-lower") return cmd_verify_lower(cfg, out, err);
    if (cfg.command == "l1-intervals") return cmd_l1_intervals(cfg, out, err);
    if (cfg.command == "report") return cmd_report(cfg, out, err);
    err << "error: unknown command '" << cfg.command << "'\n";
    return kExitConfigError;
  } catch (const BracketError& e) {
    err << "check failed: " << e.what() << "\n";
    return kExitCheckFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Desk-scale construction and certificate checks for an operator-weighted shift with an "
               "eps-hypercyclicity threshold",
               "epslab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out_path, "JSON output path (stdout when omitted)");
    sub->add_option("--csv", cfg.csv_path, "CSV summary path (default: --out with .csv)");
  };
  auto add_plan_inputs = [&](CLI::App* sub) {
    sub->add_option("--plan", cfg.plan_path, "plan JSON from `epslab plan`")->required();
    sub->add_option("--norm-y", cfg.norm_y, "norm of Y (lp:P or sup; default: the plan's X norm)");
    sub->add_option("--check-tol", cfg.check_tol, "absolute tolerance on norm comparisons");
  };

  auto* omega = app.add_subcommand("omega", "solve for omega and the minimizer y");
  omega->add_option("--eps", cfg.eps, "eps in (0,1)")->required();
  omega->add_option("--norm", cfg.norm, "lp:P or sup");
  omega->add_option("--tol", cfg.tol, "residual tolerance");
  add_out(omega);

  auto* plan = app.add_subcommand("plan", "build a block plan");
  plan->add_option("--eps", cfg.eps, "eps in (0,1)")->required();
  plan->add_option("--norm", cfg.norm, "norm of X: lp:P or sup");
  plan->add_option("--blocks", cfg.blocks, "number of blocks K");
  plan->add_option("--r-min", cfg.r_min, "lower bounds on r_k as k=r")->delimiter(',');
  plan->add_option("--tol", cfg.tol, "omega residual tolerance");
  plan->add_option("--out", cfg.out_path, "plan JSON path (stdout when omitted)");

  auto* orbit = app.add_subcommand("orbit", "compute T^n u for a list of powers");
  add_plan_inputs(orbit);
  orbit->add_option("--vector", cfg.vector_path, "vector JSON")->required();
  orbit->add_option("--powers", cfg.powers, "comma separated powers")->delimiter(',')->required();
  add_out(orbit);

  auto* witness = app.add_subcommand("verify-witness", "build and check witness vectors v(k)");
  add_plan_inputs(witness);
  witness->add_option("--targets", cfg.targets_path, "targets JSON");
  witness->add_option("--random", cfg.random, "random targets per block k");
  witness->add_option("--seed", cfg.seed, "seed for random targets and annihilation samples");
  add_out(witness);

  auto* lower = app.add_subcommand("verify-lower", "check the lower bound ||v - T^n u|| >= eps |K - u_n0|");
  add_plan_inputs(lower);
  lower->add_option("--vector", cfg.vector_path, "vector JSON")->required();
  lower->add_option("--delta", cfg.delta, "delta in (0, eps)")->required();
  lower->add_option("--horizon", cfg.horizon, "largest power n")->required();
  add_out(lower);

  auto* intervals = app.add_subcommand("l1-intervals", "interval cover report on X = Y = l1");
  add_plan_inputs(intervals);
  intervals->add_option("--vector", cfg.vector_path, "vector JSON")->required();
  intervals->add_option("--horizon", cfg.horizon, "largest power n")->required();
  intervals->add_option("--probe", cfg.probe, "length of the probe window on the ray")->required();
  intervals->add_option("--grid", cfg.grid, "grid points for the superset check");
  add_out(intervals);

  auto* report = app.add_subcommand("report", "plot-ready data: omega vs eps, min-ratio vs delta");
  report->add_option("--out-dir", cfg.out_dir, "output directory")->required();
  report->add_option("--eps-grid", cfg.eps_grid, "eps grid points");
  report->add_option("--tol", cfg.tol, "omega residual tolerance");
  report->add_option("--plan", cfg.plan_path, "plan JSON for the delta curve");
  report->add_option("--norm-y", cfg.norm_y, "norm of Y");
  report->add_option("--vector", cfg.vector_path, "vector JSON for the delta curve");
  report->add_option("--horizon", cfg.horizon, "largest power (default m_{K+1})");
  report->add_option("--deltas", cfg.deltas, "number of delta values in (0, eps)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitConfigError;
  }
  for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
  return run(cfg, out, err);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace epslab
