// orbitlab: periodic-orbit census, genericity sampling, degenerate splitting
// and exact elimination for polynomial maps.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "orbitlab/error.hpp"
#include "orbitlab/io.hpp"

using namespace orbitlab;

namespace {

constexpr const char* kVersion = "0.1.0";

enum Exit { kOk = 0, kOther = 1, kUsage = 2, kAssert = 3, kInfeasible = 4 };

struct Mode {
  bool capture = false;  // replay: keep output in memory, write no files
};

struct RunResult {
  int code = kOk;
  std::string output;
  std::string map_hash;
  std::uint64_t rng_seed = 0;
  std::string config;
};

struct SolveFlags {
  SolveConfig solve;
  ClassifyOptions classify;
  std::string method = "auto";
};

void add_solve_flags(CLI::App* app, SolveFlags& f) {
  app->add_option("--residual-tol", f.solve.tol.residual, "Acceptance residual for P^k(x) - x")->capture_default_str();
  app->add_option("--polish-tol", f.solve.tol.polish, "Newton polishing target")->capture_default_str();
  app->add_option("--dedup-tol", f.solve.tol.dedup, "Distance under which points coincide")->capture_default_str();
  app->add_option("--singular-tol", f.solve.tol.singular, "Smallest singular value for isolation")->capture_default_str();
  app->add_option("--eta", f.classify.eta, "Hyperbolicity threshold on ||lambda| - 1|")->capture_default_str();
  app->add_option("--closure-tol", f.classify.closure_tolerance, "Cycle closure tolerance")->capture_default_str();
  app->add_option("--degree-cap", f.solve.degree_cap, "Largest iterate degree D^k expanded explicitly")->capture_default_str();
  app->add_option("--companion-cap", f.solve.companion_cap, "Largest degree solved by companion matrix")
      ->capture_default_str();
  app->add_option("--seed-grid", f.solve.seeds.grid, "Newton seeds per real axis")->capture_default_str();
  app->add_option("--seed-random", f.solve.seeds.random, "Random Newton seeds")->capture_default_str();
  app->add_option("--seed-lower", f.solve.seeds.lower, "Seed box lower bound")->capture_default_str();
  app->add_option("--seed-upper", f.solve.seeds.upper, "Seed box upper bound")->capture_default_str();
  app->add_option("--newton-iterations", f.solve.max_newton_iterations, "Newton iteration limit")->capture_default_str();
  app->add_option("--method", f.method, "auto | univariate | newton")->capture_default_str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path);
  out << text;
}

Scalar parse_lambda(const std::string& s) {
  const GaussianRational g = gaussian_from_string(s);
  return {g.re.get_d(), g.im.get_d()};
}

std::function<long long(int)> sequence_from_name(const std::string& name) {
  if (name == "one") return [](int) { return 1LL; };
  if (name == "n") return [](int n) { return static_cast<long long>(n); };
  if (name == "n^n") {
    return [](int n) {
      long long v = 1;
      for (int i = 0; i < n; ++i) {
        if (v > (1LL << 40)) return v;
        v *= n;
      }
      return v;
    };
  }
  throw InvalidInput("unknown sequence '" + name + "' (one | n | n^n)");
}

ordered_json envelope(const std::string& schema) { return {{"schema", schema}, {"version", kVersion}}; }

std::vector<OrbitRecord> classify_all(const SolveReport& report, const PolyMap& map, const SolveFlags& f) {
  std::vector<OrbitRecord> out;
  for (const Orbit& o : orbit_partition(report.points, map, f.solve.tol.dedup)) out.push_back(multipliers(map, o, f.classify));
  return out;
}

RunResult run(const std::vector<std::string>& args, const Mode& mode);

int replay(const std::string& record_path, int index, std::string& output) {
  std::ifstream in(record_path);
  if (!in) throw InvalidInput("cannot open run record " + record_path);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) lines.push_back(line);
  if (lines.empty()) throw InvalidInput("run record file is empty");
  const int n = static_cast<int>(lines.size());
  const int pick = index < 0 ? n + index : index;
  if (pick < 0 || pick >= n) throw InvalidInput("record index out of range");
  const ordered_json rec = ordered_json::parse(lines[static_cast<std::size_t>(pick)]);
  std::vector<std::string> argv = rec.at("argv").get<std::vector<std::string>>();
  const RunResult again = run(argv, Mode{true});
  const std::string hash = hex64(fnv1a64(again.output));
  const bool match = hash == rec.at("output_hash").get<std::string>() && again.code == rec.at("exit_code").get<int>();
  ordered_json out = envelope("orbitlab.replay/1");
  out["record"] = pick;
  out["argv"] = argv;
  out["recorded_hash"] = rec.at("output_hash");
  out["replayed_hash"] = hash;
  out["recorded_exit_code"] = rec.at("exit_code");
  out["replayed_exit_code"] = again.code;
  out["match"] = match;
  output = out.dump(2) + "\n";
  return match ? kOk : kAssert;
}

RunResult run(const std::vector<std::string>& args, const Mode& mode) {
  RunResult result;
  CLI::App app{"Periodic orbits of polynomial maps: census, genericity sampling, splitting, elimination", "orbitlab"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", kVersion);
  std::string out_path;
  std::string log_dir;
  app.add_option("--out", out_path, "Write the JSON result here instead of stdout");
  app.add_option("--log-dir", log_dir, "Append a run record to DIR/runs.jsonl (fallback: ORBITLAB_LOG_DIR)");
  app.footer(
      "Exit codes: 0 success, 1 other error, 2 usage or invalid input, 3 assertion failure, 4 infeasible scale.\n"
      "CSV columns: census -> n,P_n,Q_n,log_P_n_over_n; sample -> epsilon,frequency.");

  std::function<ordered_json()> action;
  std::string csv_path, csv_text;
  bool strict_failed = false;
  std::string strict_message;

  // census
  auto* census = app.add_subcommand("census", "Count period-n points for n = 1..n_max and expand the zeta function");
  std::string census_map;
  int n_max = 0, zeta_order = 0, window = 0;
  bool strict = false;
  SolveFlags census_flags;
  census->add_option("--map", census_map, "Map JSON file")->required();
  census->add_option("--n-max", n_max, "Largest period")->required()->check(CLI::PositiveNumber);
  census->add_option("--zeta-order", zeta_order, "Zeta truncation order (default n_max)");
  census->add_option("--window", window, "Trailing window for the growth proxy (default ceil(n_max/2))");
  census->add_option("--csv", csv_path, "CSV: n,P_n,Q_n,log_P_n_over_n");
  census->add_flag("--strict", strict, "Exit 3 when any row is flagged or unavailable");
  add_solve_flags(census, census_flags);
  census->callback([&] {
    action = [&] {
      const PolyMap map = load_map(census_map);
      result.map_hash = map_hash(map);
      result.rng_seed = census_flags.solve.rng_seed;
      CensusConfig cfg{census_flags.solve, solve_method_from_string(census_flags.method), census_flags.classify};
      const CensusTable table = build_census(map, n_max, cfg);
      ordered_json out = envelope("orbitlab.census/1");
      out["map_hash"] = result.map_hash;
      out["solve"] = to_json(cfg.solve);
      out["census"] = to_json(table);
      const int order = zeta_order > 0 ? zeta_order : n_max;
      try {
        const ZetaTruncation z = zeta_truncation(table, order);
        std::vector<double> counts;
        for (int n = 1; n <= order; ++n) counts.push_back(static_cast<double>(table.row(n).P));
        out["zeta"] = to_json(z);
        out["log_derivative_mismatch"] = log_derivative_mismatch(z, counts);
      } catch (const InvalidInput& e) {
        out["zeta"] = nullptr;
        out["zeta_error"] = e.what();
      }
      out["growth"] = to_json(growth_stats(table, window));
      out["mobius_violations"] = mobius_violations(table);
      csv_text = census_csv(table);
      if (strict) {
        for (const CensusRow& r : table.rows) {
          if (!r.available) strict_message += "row " + std::to_string(r.n) + " unavailable: " + r.error + "\n";
          for (const std::string& f : r.flags) strict_message += "row " + std::to_string(r.n) + " flagged: " + f + "\n";
        }
        strict_failed = !strict_message.empty();
      }
      return out;
    };
  });

  // sample
  auto* sample = app.add_subcommand("sample", "Monte-Carlo hyperbolicity margins and lambda0 avoidance");
  SampleConfig scfg;
  std::vector<std::string> lambda_text;
  std::string orbit_field = "complex";
  bool no_controls = false;
  SolveFlags sample_flags;
  sample->add_option("--n", scfg.dimension, "Dimension N")->capture_default_str();
  sample->add_option("--degree", scfg.degree, "Degree D")->capture_default_str();
  sample->add_option("--k-max", scfg.k_max, "Largest least period examined")->capture_default_str();
  sample->add_option("--trials", scfg.trials, "Number of random maps T")->capture_default_str();
  sample->add_option("--seed", scfg.rng_seed, "RNG seed")->capture_default_str();
  sample->add_option("--eps", scfg.eps_ladder, "Decreasing margin ladder, comma separated")->delimiter(',')->capture_default_str();
  sample->add_option("--lambda0", lambda_text, "Unit-circle values as RE,IM (repeatable)");
  sample->add_option("--lambda0-tol", scfg.lambda0_tol, "Distance counted as a lambda0 hit")->capture_default_str();
  sample->add_option("--orbit-field", orbit_field, "complex | real: where orbits of the real map are enumerated")
      ->capture_default_str();
  sample->add_flag("--no-controls", no_controls, "Skip the planted parabolic and hyperbolic controls");
  sample->add_option("--csv", csv_path, "CSV: epsilon,frequency");
  add_solve_flags(sample, sample_flags);
  sample->callback([&] {
    action = [&] {
      if (!lambda_text.empty()) {
        scfg.lambda0s.clear();
        for (const std::string& s : lambda_text) scfg.lambda0s.push_back(parse_lambda(s));
      }
      scfg.orbit_field = field_from_string(orbit_field);
      scfg.planted_controls = !no_controls;
      scfg.solve = sample_flags.solve;
      scfg.classify = sample_flags.classify;
      result.rng_seed = scfg.rng_seed;
      const GenericityReport rep = run_sampler(scfg);
      ordered_json out = envelope("orbitlab.sample/1");
      out["report"] = to_json(rep);
      out["margin_scaling"] = to_json(margin_scaling(rep));
      csv_text = genericity_csv(rep);
      return out;
    };
  });

  // split
  auto* split_cmd = app.add_subcommand("split", "Split a degenerate fixed point x + l x^(k+1) into M hyperbolic ones");
  NormalForm seed;
  int count = 0;
  SplitOptions sopt;
  double amplitude = 0.0;
  split_cmd->add_option("--order", seed.order, "Degeneracy order k")->required()->check(CLI::PositiveNumber);
  split_cmd->add_option("--count", count, "Target number of fixed points M")->required();
  split_cmd->add_option("--leading", seed.leading, "Leading coefficient l_(k+1)")->capture_default_str();
  split_cmd->add_option("--delta", sopt.delta, "Root spacing")->capture_default_str();
  split_cmd->add_option("--amplitude", amplitude, "Amplitude c (default l_(k+1))");
  split_cmd->add_option("--cap", sopt.cap, "Largest M")->capture_default_str();
  split_cmd->add_option("--retries", sopt.retries, "Halvings of delta after a failed verification")->capture_default_str();
  split_cmd->add_option("--eta", sopt.eta, "Hyperbolicity threshold")->capture_default_str();
  split_cmd->add_option("--min-slope", sopt.min_slope, "Floor on |g'| at the roots")->capture_default_str();
  split_cmd->callback([&] {
    action = [&] {
      if (amplitude != 0.0) sopt.amplitude = amplitude;
      const SplitPlan plan = split(seed, count, sopt);
      result.map_hash = map_hash(plan.map);
      ordered_json out = envelope("orbitlab.split/1");
      out["plan"] = to_json(plan);
      ordered_json round_trip = ordered_json::array();
      const SolveReport fixed = solve_univariate(plan.map, 1, SolveConfig{});
      for (const PeriodicPoint& p : fixed.points) {
        const double x = p.location(0).real();
        if (std::abs(x) >= plan.window) continue;
        round_trip.push_back({{"x", x}, {"detect", to_json(detect_degeneracy(plan.map, x, sopt.eta, 1e-9))}});
      }
      out["round_trip"] = round_trip;
      return out;
    };
  });

  // demand
  auto* demand = app.add_subcommand("demand", "Split with M = n1 * a(n1) and census the result through period n1");
  std::string seq_name = "n";
  int n1 = 0, demand_grid = 4001;
  SplitOptions dopt;
  demand->add_option("--sequence", seq_name, "a_n: one | n | n^n")->capture_default_str();
  demand->add_option("--n1", n1, "Period n1")->required();
  demand->add_option("--cap", dopt.cap, "Largest M")->capture_default_str();
  demand->add_option("--delta", dopt.delta, "Root spacing")->capture_default_str();
  demand->add_option("--seed-grid", demand_grid, "Newton seeds across the window for periods above the degree cap")
      ->capture_default_str();
  demand->callback([&] {
    action = [&] {
      const DemandResult d = demand_schedule(sequence_from_name(seq_name), n1, NormalForm{}, dopt, demand_grid);
      result.map_hash = map_hash(d.plan.map);
      ordered_json out = envelope("orbitlab.demand/1");
      out["sequence"] = seq_name;
      out["plan"] = to_json(d.plan);
      out["census"] = to_json(d.census);
      const CensusRow& row = d.census.row(n1);
      out["P_n1"] = row.available ? ordered_json(row.P) : ordered_json(nullptr);
      out["demand_met"] = row.available && static_cast<long long>(row.P) >= *d.plan.n1 * *d.plan.a_n1;
      return out;
    };
  });

  // lemma2
  auto* lemma2 = app.add_subcommand("lemma2", "Solve the model map z_i -> z_i^D over C and check the exact D^(kN) count");
  int l_n = 1, l_d = 2, l_k = 1;
  double min_margin = 0.5;
  SolveFlags lemma_flags;
  lemma_flags.solve.seeds = {-1.5, 1.5, 0, 3000};
  lemma2->add_option("--n", l_n, "Dimension N")->capture_default_str();
  lemma2->add_option("--degree", l_d, "Degree D")->capture_default_str();
  lemma2->add_option("--period", l_k, "Period k")->capture_default_str();
  lemma2->add_option("--min-margin", min_margin, "Required hyperbolicity margin")->capture_default_str();
  add_solve_flags(lemma2, lemma_flags);
  lemma2->callback([&] {
    action = [&] {
      if (l_n < 1 || l_d < 1 || l_k < 1) throw InvalidInput("n, degree and period must be >= 1");
      const PolyMap map = PolyMap::power_map(l_n, l_d, Field::Complex);
      result.map_hash = map_hash(map);
      result.rng_seed = lemma_flags.solve.rng_seed;
      const SolveReport rep = solve(map, l_k, lemma_flags.solve, solve_method_from_string(lemma_flags.method));
      const std::vector<OrbitRecord> orbits = classify_all(rep, map, lemma_flags);
      const std::size_t expected = checked_power(static_cast<std::size_t>(l_d),
                                                 static_cast<std::size_t>(l_k) * static_cast<std::size_t>(l_n));
      double worst_residual = 0.0, worst_margin = INFINITY;
      bool all_hyperbolic = true;
      for (const PeriodicPoint& p : rep.points) worst_residual = std::max(worst_residual, p.residual);
      for (const OrbitRecord& o : orbits) {
        worst_margin = std::min(worst_margin, o.margin);
        all_hyperbolic = all_hyperbolic && o.classification == Classification::Hyperbolic;
      }
      const bool ok = rep.points.size() == expected && rep.isolated_count() == expected && all_hyperbolic &&
                      worst_margin >= min_margin && worst_residual <= lemma_flags.solve.tol.residual;
      ordered_json out = envelope("orbitlab.lemma2/1");
      out["n"] = l_n;
      out["degree"] = l_d;
      out["period"] = l_k;
      out["expected"] = expected;
      out["found"] = rep.points.size();
      out["all_hyperbolic"] = all_hyperbolic;
      out["min_margin"] = finite_or_null(worst_margin);
      out["max_residual"] = worst_residual;
      out["passed"] = ok;
      out["solve"] = to_json(lemma_flags.solve);
      out["report"] = to_json(rep, map, orbits);
      if (!ok) {
        strict_failed = true;
        strict_message = "lemma2: expected " + std::to_string(expected) + " hyperbolic points, found " +
                         std::to_string(rep.points.size()) + "\n";
      }
      return out;
    };
  });

  // eliminate
  auto* elim = app.add_subcommand("eliminate", "Exact resultant of the period-k system in x (N = 1, D <= 2, k <= 2)");
  int e_d = 2, e_k = 1;
  std::string lambda0 = "1,0";
  std::uint64_t e_seed = 0;
  elim->add_option("--degree", e_d, "Degree D")->capture_default_str();
  elim->add_option("--period", e_k, "Period k")->capture_default_str();
  elim->add_option("--lambda0", lambda0, "Rational unit-modulus lambda0 as RE,IM (e.g. 3/5,4/5)")->capture_default_str();
  elim->add_option("--seed", e_seed, "Seed of the certificate search")->capture_default_str();
  elim->callback([&] {
    action = [&] {
      result.rng_seed = e_seed;
      const PeriodicSystem sys = build_system(e_d, e_k);
      const EliminationResult r = eliminate(sys, e_seed);
      const LambdaSlice s = lambda0_slice(r, gaussian_from_string(lambda0), e_seed);
      ordered_json out = envelope("orbitlab.eliminate/1");
      out["f1"] = to_json(sys.f1);
      out["f2"] = to_json(sys.f2);
      out["result"] = to_json(r);
      out["result"]["certificate_valid"] = validate_certificate(r.resultant, r.certificate);
      out["slice"] = to_json(s);
      return out;
    };
  });

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "All period-k points of a map, with orbit classification");
  std::string solve_map;
  int s_k = 1;
  SolveFlags solve_flags;
  solve_cmd->add_option("--map", solve_map, "Map JSON file")->required();
  solve_cmd->add_option("--period", s_k, "Period k")->capture_default_str();
  solve_cmd->add_option("--rng-seed", solve_flags.solve.rng_seed, "Seed for random Newton seeds")->capture_default_str();
  add_solve_flags(solve_cmd, solve_flags);
  solve_cmd->callback([&] {
    action = [&] {
      const PolyMap map = load_map(solve_map);
      result.map_hash = map_hash(map);
      result.rng_seed = solve_flags.solve.rng_seed;
      const SolveReport rep = solve(map, s_k, solve_flags.solve, solve_method_from_string(solve_flags.method));
      ordered_json out = envelope("orbitlab.solve/1");
      out["solve"] = to_json(solve_flags.solve);
      out["report"] = to_json(rep, map, classify_all(rep, map, solve_flags));
      return out;
    };
  });

  // replay
  auto* replay_cmd = app.add_subcommand("replay", "Re-run a logged command and compare output hashes");
  std::string record;
  int index = -1;
  replay_cmd->add_option("--record", record, "runs.jsonl file")->required();
  replay_cmd->add_option("--index", index, "Record index; negative counts from the end")->capture_default_str();
  int replay_code = kOk;
  replay_cmd->callback([&] {
    action = [&] {
      std::string text;
      replay_code = replay(record, index, text);
      return ordered_json::parse(text);
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    result.code = app.exit(e);
    return result;
  } catch (const CLI::CallForAllHelp& e) {
    result.code = app.exit(e);
    return result;
  } catch (const CLI::CallForVersion& e) {
    result.code = app.exit(e);
    return result;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    result.code = kUsage;
    return result;
  }

  for (CLI::App* sub : app.get_subcommands()) result.config = sub->config_to_str(true, false);
  const auto start = std::chrono::steady_clock::now();
  try {
    const ordered_json out = action();
    result.output = out.dump(2) + "\n";
    if (strict_failed) {
      std::cerr << strict_message;
      result.code = kAssert;
    }
    if (replay_code != kOk) result.code = replay_code;
  } catch (const CertificationFailure& e) {
    std::cerr << "certification failure: " << e.what() << "\n";
    result.code = kAssert;
  } catch (const Infeasible& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    result.code = kInfeasible;
  } catch (const InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    result.code = kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    result.code = kOther;
  } catch (const ordered_json::exception& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    result.code = kUsage;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (mode.capture) return result;

  if (!result.output.empty()) {
    if (out_path.empty()) std::cout << result.output;
    else write_file(out_path, result.output);
    if (!csv_path.empty() && !csv_text.empty()) write_file(csv_path, csv_text);
  }

  if (log_dir.empty())
    if (const char* env = std::getenv("ORBITLAB_LOG_DIR")) log_dir = env;
  if (!log_dir.empty() && app.got_subcommand("replay") == false) {
    std::filesystem::create_directories(log_dir);
    std::vector<std::string> logged;
    // Output paths are dropped so a replay never overwrites files.
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (args[i] == "--out" || args[i] == "--csv" || args[i] == "--log-dir") {
        ++i;
        continue;
      }
      if (args[i].rfind("--out=", 0) == 0 || args[i].rfind("--csv=", 0) == 0 || args[i].rfind("--log-dir=", 0) == 0)
        continue;
      logged.push_back(args[i]);
    }
    ordered_json rec = envelope("orbitlab.runrecord/1");
    rec["command"] = app.get_subcommands().empty() ? "" : app.get_subcommands().front()->get_name();
    rec["argv"] = logged;
    rec["config"] = result.config;
    rec["map_hash"] = result.map_hash.empty() ? ordered_json(nullptr) : ordered_json(result.map_hash);
    rec["rng_seed"] = result.rng_seed;
    rec["exit_code"] = result.code;
    rec["output_hash"] = hex64(fnv1a64(result.output));
    rec["output_file"] = out_path.empty() ? ordered_json(nullptr) : ordered_json(out_path);
    rec["duration_s"] = seconds;
    std::ofstream log(std::filesystem::path(log_dir) / "runs.jsonl", std::ios::app);
    log << rec.dump() << "\n";
  }
  return result;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    return run(args, Mode{}).code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kOther;
  }
}
