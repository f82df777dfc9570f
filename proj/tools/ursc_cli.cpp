// Command-line front end: construct/verify codes, run the beeping and
// contention simulators, and run statistical checks.
//
// Exit codes: 0 success/pass, 1 property violation, 2 input error,
// 3 budget exceeded.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ursc/beeping.hpp"
#include "ursc/cbp.hpp"
#include "ursc/contention.hpp"
#include "ursc/matrix.hpp"
#include "ursc/oracle.hpp"
#include "ursc/scenario.hpp"
#include "ursc/stats.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInput = 2;
constexpr int kExitBudget = 3;

ursc::Rational parse_rational_flag(const std::string& text, const char* name) {
  try {
    return ursc::Rational::parse(text);
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string("invalid rational for --") + name +
                                ": '" + text + "'");
  }
}

std::optional<std::uint64_t> env_seed() {
  const char* raw = std::getenv("URSC_SEED");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(raw, &pos);
    if (pos != std::string(raw).size()) throw std::invalid_argument("junk");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("URSC_SEED is not an unsigned integer");
  }
}

std::uint64_t require_seed(const std::optional<std::uint64_t>& flag) {
  if (flag.has_value()) return *flag;
  const auto env = env_seed();
  if (env.has_value()) return *env;
  throw std::invalid_argument("seed required: pass --seed or set URSC_SEED");
}

ursc::CodeMatrix load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open code file: " + path);
  return ursc::read_matrix(in);
}

void store_matrix(const ursc::CodeMatrix& m, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write code file: " + path);
  ursc::write_matrix(m, out);
  if (!out) throw std::invalid_argument("failed writing code file: " + path);
}

/// The code_file of a scenario, tried as-is first and then next to the
/// scenario file itself.
std::string resolve_code_path(const std::string& scenario_path,
                              const std::string& code_file) {
  namespace fs = std::filesystem;
  if (fs::exists(code_file)) return code_file;
  const fs::path sibling = fs::path(scenario_path).parent_path() / code_file;
  if (fs::exists(sibling)) return sibling.string();
  throw std::invalid_argument("code file not found: " + code_file);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string join_ids(const std::vector<std::int64_t>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i > 0) out += ';';
    out += std::to_string(ids[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// construct

struct ConstructArgs {
  std::int64_t n = 0;
  std::string alpha, eps, c;
  std::optional<std::uint64_t> seed;
  std::int64_t max_iters = 100;
  std::string output;
  int parallelism = 1;
};

int cmd_construct(const ConstructArgs& a) {
  const auto params = ursc::make_params(
      a.n, parse_rational_flag(a.alpha, "alpha"), parse_rational_flag(a.eps, "eps"),
      parse_rational_flag(a.c, "c"), require_seed(a.seed));
  const auto res = ursc::construct_ursc(params, a.max_iters, a.parallelism);
  if (!res.matrix.has_value()) {
    std::cerr << "construction failed: no valid matrix within " << res.iterations
              << " iterations; last attempt had " << res.last_report.violations.size()
              << " recorded violation(s)\n";
    return kExitViolation;
  }
  store_matrix(*res.matrix, a.output);
  std::cout << "iterations," << res.iterations << "\n";
  std::cout << "t," << res.matrix->t << "\n";
  std::cout << "k,tau1,tau2\n";
  for (std::int64_t k = 2; k <= params.n; ++k) {
    const auto e = ursc::elongation_bounds(params, k, res.matrix->t);
    std::cout << k << "," << e.tau1 << "," << e.tau2 << "\n";
  }
  return kExitPass;
}

// ---------------------------------------------------------------------------
// check

struct CheckArgs {
  std::string file;
  std::string alpha;  // empty -> header value
  bool fail_fast = false;
  std::int64_t k_max = 0;
  std::int64_t max_print = 100;
  int parallelism = 1;
};

int cmd_check(const CheckArgs& a) {
  const auto m = load_matrix(a.file);
  ursc::Rational alpha = m.params.alpha;
  ursc::ConstructionParams p = m.params;
  if (!a.alpha.empty()) {
    alpha = parse_rational_flag(a.alpha, "alpha");
    p = ursc::make_params(m.params.n, alpha, m.params.eps, m.params.c,
                          m.params.seed);
  }
  ursc::CheckOptions opt;
  opt.fail_fast = a.fail_fast;
  opt.workers = a.parallelism;
  opt.k_max = a.k_max;
  const auto rep = ursc::check_cbp(
      m, alpha,
      [&](std::int64_t k) { return ursc::elongation_bounds(p, k, m.t); }, opt);
  std::int64_t printed = 0;
  for (const auto& v : rep.violations) {
    if (printed >= a.max_print) {
      std::cout << "violation,... " << (rep.violations.size() - printed)
                << " more suppressed\n";
      break;
    }
    if (v.which == ursc::Inequality::weight) {
      std::cout << "violation,weight," << v.k << "," << v.j << "\n";
    } else {
      std::cout << "violation,collision," << v.k << "," << v.j << "," << v.j_prime
                << "," << v.i << "\n";
    }
    ++printed;
  }
  std::cout << "result," << (rep.passed ? "pass" : "fail") << ",cells,"
            << rep.cells_checked << ",violations," << rep.violations.size()
            << "\n";
  return rep.passed ? kExitPass : kExitViolation;
}

// ---------------------------------------------------------------------------
// verify-oracle / verify-classic

struct OracleArgs {
  std::string file;
  std::string alpha;
  std::int64_t k_max = 0;
  std::optional<std::int64_t> tau;
  std::int64_t budget = 10'000'000;
};

int cmd_verify_oracle(const OracleArgs& a) {
  const auto m = load_matrix(a.file);
  const ursc::Rational alpha =
      a.alpha.empty() ? m.params.alpha : parse_rational_flag(a.alpha, "alpha");
  ursc::OracleOptions opt;
  opt.k_max = a.k_max;
  opt.max_configs = a.budget;
  const std::int64_t tau = a.tau.value_or(m.t - 1);
  const auto rep = ursc::verify_ursc_bruteforce(m, alpha, tau, opt);
  if (rep.budget_exhausted) {
    std::cout << "result,budget-exceeded,configs," << rep.configs_checked << "\n";
    return kExitBudget;
  }
  if (rep.witness.has_value()) {
    const auto& w = *rep.witness;
    std::cout << "witness,k," << w.k << "\n";
    std::cout << "witness,T," << join_ids(w.T) << "\n";
    std::cout << "witness,designated," << w.designated << "\n";
    std::string shifts;
    for (std::size_t i = 0; i < w.shifts.size(); ++i) {
      if (i > 0) shifts += ';';
      shifts += std::to_string(w.shifts[i].first) + ":" +
                std::to_string(w.shifts[i].second);
    }
    std::cout << "witness,shifts," << shifts << "\n";
    std::cout << "witness,lhs," << w.lhs << "\n";
    std::cout << "witness,threshold," << w.rhs_threshold.to_string() << "\n";
  }
  std::cout << "result," << (rep.passed ? "pass" : "fail") << ",configs,"
            << rep.configs_checked << "\n";
  return rep.passed ? kExitPass : kExitViolation;
}

struct ClassicArgs {
  std::string file;
  std::int64_t k = 2;
  std::int64_t budget = 10'000'000;
};

int cmd_verify_classic(const ClassicArgs& a) {
  const auto m = load_matrix(a.file);
  const auto rep = ursc::verify_classic(m, a.k, a.budget);
  if (rep.budget_exhausted) {
    std::cout << "result,budget-exceeded,configs," << rep.configs_checked << "\n";
    return kExitBudget;
  }
  if (rep.witness.has_value()) {
    std::cout << "witness,T," << join_ids(rep.witness->T) << "\n";
    std::cout << "witness,designated," << rep.witness->designated << "\n";
  }
  std::cout << "result," << (rep.passed ? "pass" : "fail") << ",configs,"
            << rep.configs_checked << "\n";
  return rep.passed ? kExitPass : kExitViolation;
}

// ---------------------------------------------------------------------------
// sim-beep

int cmd_sim_beep(const std::string& scenario_path) {
  const auto sc = ursc::parse_beep_scenario(read_text_file(scenario_path));
  const auto code =
      load_matrix(resolve_code_path(scenario_path, sc.code_file));
  const auto g = ursc::scenario_graph(sc);

  if (sc.messages.empty()) {
    const auto result =
        ursc::simulate_neighborhood_learning(g, sc.wake, code, sc.horizon);
    // Hard Safety check: a learned id must be a graph neighbor.
    std::map<std::int64_t, std::set<std::int64_t>> nbrs;
    for (const auto& e : g.edges) {
      nbrs[e.first].insert(e.second);
      nbrs[e.second].insert(e.first);
    }
    std::vector<std::tuple<std::int64_t, std::int64_t, std::int64_t>> events;
    for (const auto& [node, learns] : result) {
      for (const auto& [round, learned] : learns) {
        if (nbrs[node].count(learned) == 0) {
          std::cerr << "SAFETY VIOLATION: node " << node << " learned non-neighbor "
                    << learned << " at round " << round << "\n";
          return kExitViolation;
        }
        events.emplace_back(round, node, learned);
      }
    }
    std::sort(events.begin(), events.end());
    for (const auto& [round, node, learned] : events) {
      std::cout << round << "," << node << ",learn," << learned << "\n";
    }
    nlohmann::json learned_json = nlohmann::json::object();
    for (const auto& [node, learns] : result) {
      nlohmann::json per = nlohmann::json::object();
      for (const auto& [round, learned] : learns) {
        per[std::to_string(learned)] = round;
      }
      learned_json[std::to_string(node)] = per;
    }
    nlohmann::json summary;
    summary["mode"] = "neighborhood";
    summary["learned"] = learned_json;
    std::cout << summary.dump() << "\n";
    return kExitPass;
  }

  const auto result =
      ursc::simulate_local_broadcast(g, sc.wake, code, sc.messages, sc.horizon);
  for (const auto& ev : result.events) {
    std::cout << ev.round << "," << ev.receiver << ",chunk," << ev.sender << "\n";
  }
  nlohmann::json received = nlohmann::json::object();
  for (const auto& [receiver, per_sender] : result.received) {
    nlohmann::json per = nlohmann::json::object();
    for (const auto& [sender, msg] : per_sender) {
      per[std::to_string(sender)] = {{"complete", msg.complete},
                                     {"bits", msg.bits}};
    }
    received[std::to_string(receiver)] = per;
  }
  nlohmann::json summary;
  summary["mode"] = "broadcast";
  summary["received"] = received;
  std::cout << summary.dump() << "\n";
  return kExitPass;
}

// ---------------------------------------------------------------------------
// sim-cr

int cmd_sim_cr(const std::string& scenario_path, const std::string& alpha_flag) {
  const auto sc = ursc::parse_cr_scenario(read_text_file(scenario_path));
  const auto code = load_matrix(resolve_code_path(scenario_path, sc.code_file));
  const ursc::Rational alpha = alpha_flag.empty()
                                   ? code.params.alpha
                                   : parse_rational_flag(alpha_flag, "alpha");
  ursc::CrInstance inst;
  inst.n = code.params.n;
  inst.stations = sc.stations;
  std::sort(inst.stations.begin(), inst.stations.end());
  inst.delta = sc.delta;
  inst.s = sc.s;
  ursc::validate_instance(inst);
  std::map<std::int64_t, ursc::TransmissionVector> vectors;
  for (const auto v : inst.stations) {
    vectors.insert_or_assign(v, ursc::transmission_vector(code, v, sc.s, alpha));
  }
  const auto log = ursc::simulate_channel(inst, vectors, sc.horizon);
  for (std::size_t r = 0; r < log.size(); ++r) {
    const char* kind = log[r].kind == ursc::RoundKind::Silence ? "silence"
                       : log[r].kind == ursc::RoundKind::Success ? "success"
                                                                 : "collision";
    std::cout << r << "," << kind << "," << join_ids(log[r].transmitters) << "\n";
  }
  const auto rep = ursc::latency_report(log, inst);
  std::cout << "latency,station,latency_to_s,successes\n";
  for (const auto& [v, st] : rep.stations) {
    std::cout << "latency," << v << ",";
    if (st.latency_to_s.has_value()) {
      std::cout << *st.latency_to_s;
    } else {
      std::cout << "none";
    }
    std::cout << "," << join_ids(st.success_local_rounds) << "\n";
  }
  return kExitPass;
}

// ---------------------------------------------------------------------------
// stats

struct StatsArgs {
  std::int64_t n = 0;
  std::string alpha, eps, c;
  std::optional<std::uint64_t> seed;
  std::int64_t k = 2;
  long long shift = 1;
  std::int64_t trials = 0;
};

int cmd_stats(const StatsArgs& a) {
  const auto params = ursc::make_params(
      a.n, parse_rational_flag(a.alpha, "alpha"), parse_rational_flag(a.eps, "eps"),
      parse_rational_flag(a.c, "c"), require_seed(a.seed));
  const auto st = ursc::empirical_segment_stats(params, a.k, a.shift, a.trials);
  const auto up = ursc::upper_segment_interval(params, a.k);
  const auto lo = ursc::lower_segment_interval(params, a.k);
  const long double mean_up = ursc::to_long_double(st.mean_upper);
  const long double mean_lo = ursc::to_long_double(st.mean_lower);
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(6);
  out << "trials," << st.trials << "\n";
  out << "window," << st.window.tau1 << "," << st.window.tau2 << "\n";
  out << "mean_upper," << st.mean_upper.to_string() << ","
      << static_cast<double>(mean_up) << "\n";
  out << "mean_lower," << st.mean_lower.to_string() << ","
      << static_cast<double>(mean_lo) << "\n";
  out << "mean_collision," << st.mean_collision.to_string() << ","
      << st.mean_collision.to_double() << "\n";
  const bool up_in = up.contains(mean_up);
  const bool lo_in = lo.contains(mean_lo);
  out << "interval_upper," << static_cast<double>(up.lower) << ","
      << static_cast<double>(up.upper) << "," << (up_in ? "in" : "out") << "\n";
  out << "interval_lower," << static_cast<double>(lo.lower) << ","
      << static_cast<double>(lo.upper) << "," << (lo_in ? "in" : "out") << "\n";
  std::cout << out.str();
  return (up_in && lo_in) ? kExitPass : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ultra-resilient superimposed codes: construction, checking, "
               "verification, and protocol simulators"};
  app.require_subcommand(1);

  ConstructArgs ca;
  auto* construct = app.add_subcommand("construct", "Sample a code until the "
                                       "collision-bound check passes and write it");
  construct->add_option("--n", ca.n, "Number of codewords")->required();
  construct->add_option("--alpha", ca.alpha, "Collision budget p/q")->required();
  construct->add_option("--eps", ca.eps, "Elongation slack p/q")->required();
  construct->add_option("--c", ca.c, "Length multiplier p/q")->required();
  construct->add_option("--seed", ca.seed, "RNG seed (default: URSC_SEED)");
  construct->add_option("--max-iters", ca.max_iters, "Sampling attempts")
      ->check(CLI::PositiveNumber);
  construct->add_option("-o,--output", ca.output, "Output code file")->required();
  construct->add_option("--parallelism", ca.parallelism, "Worker count")
      ->check(CLI::PositiveNumber);

  CheckArgs ka;
  auto* check = app.add_subcommand("check", "Run the collision-bound checker");
  check->add_option("file", ka.file, "Code file")->required();
  check->add_option("--alpha", ka.alpha, "Override header alpha (p/q)");
  check->add_flag("--fail-fast", ka.fail_fast, "Stop at the first violation");
  check->add_option("--k-max", ka.k_max, "Largest set size to check (0 = all)");
  check->add_option("--max-print", ka.max_print, "Violation lines to print");
  check->add_option("--parallelism", ka.parallelism, "Worker count")
      ->check(CLI::PositiveNumber);

  OracleArgs oa;
  auto* oracle = app.add_subcommand("verify-oracle",
                                    "Exhaustive shift/designation oracle");
  oracle->add_option("file", oa.file, "Code file")->required();
  oracle->add_option("--alpha", oa.alpha, "Override header alpha (p/q)");
  oracle->add_option("--k-max", oa.k_max, "Largest set size (0 = all)");
  oracle->add_option("--tau", oa.tau, "Constant prefix bound (default t-1)");
  oracle->add_option("--budget", oa.budget, "Configuration budget");
  int oracle_par = 1;
  oracle->add_option("--parallelism", oracle_par, "Worker count (accepted; the "
                     "scan is canonical-serial)")->check(CLI::PositiveNumber);

  ClassicArgs la;
  auto* classic = app.add_subcommand("verify-classic",
                                     "Baseline cover-free check (no shifts)");
  classic->add_option("file", la.file, "Code file")->required();
  classic->add_option("--k", la.k, "Set size")->required();
  classic->add_option("--budget", la.budget, "Configuration budget");
  int classic_par = 1;
  classic->add_option("--parallelism", classic_par, "Worker count (accepted)")
      ->check(CLI::PositiveNumber);

  std::string beep_scenario;
  auto* beep = app.add_subcommand("sim-beep", "Run a beeping scenario file");
  beep->add_option("scenario", beep_scenario, "Scenario JSON")->required();
  int beep_par = 1;
  beep->add_option("--parallelism", beep_par, "Worker count (accepted)")
      ->check(CLI::PositiveNumber);

  std::string cr_scenario;
  std::string cr_alpha;
  auto* cr = app.add_subcommand("sim-cr", "Run a contention-resolution scenario");
  cr->add_option("scenario", cr_scenario, "Scenario JSON")->required();
  cr->add_option("--alpha", cr_alpha, "Override header alpha (p/q)");
  int cr_par = 1;
  cr->add_option("--parallelism", cr_par, "Worker count (accepted)")
      ->check(CLI::PositiveNumber);

  StatsArgs sa;
  auto* stats = app.add_subcommand("stats", "Monte-Carlo segment statistics");
  stats->add_option("--n", sa.n, "Number of codewords")->required();
  stats->add_option("--alpha", sa.alpha, "Collision budget p/q")->required();
  stats->add_option("--eps", sa.eps, "Elongation slack p/q")->required();
  stats->add_option("--c", sa.c, "Length multiplier p/q")->required();
  stats->add_option("--seed", sa.seed, "RNG seed (default: URSC_SEED)");
  stats->add_option("--k", sa.k, "Set size the window refers to")->required();
  stats->add_option("--shift", sa.shift, "Relative shift for collisions");
  stats->add_option("--trials", sa.trials, "Trial count")
      ->required()
      ->check(CLI::PositiveNumber);
  int stats_par = 1;
  stats->add_option("--parallelism", stats_par, "Worker count (accepted)")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (app.got_subcommand(construct)) return cmd_construct(ca);
    if (app.got_subcommand(check)) return cmd_check(ka);
    if (app.got_subcommand(oracle)) return cmd_verify_oracle(oa);
    if (app.got_subcommand(classic)) return cmd_verify_classic(la);
    if (app.got_subcommand(beep)) return cmd_sim_beep(beep_scenario);
    if (app.got_subcommand(cr)) return cmd_sim_cr(cr_scenario, cr_alpha);
    if (app.got_subcommand(stats)) return cmd_stats(sa);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
