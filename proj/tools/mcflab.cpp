#include <CLI11.hpp>

#include <chrono>
#include <iostream>
#include <string>

#include "mcf/errors.hpp"
#include "mcf/lab.hpp"

namespace {

using namespace mcf;

struct Options {
  std::string algo = "selmer";
  std::string mode = "exact";
  std::string x;
  std::string beta = "64";
  std::string k = "64";
  std::string diameter;
  std::string out;
  std::string dot;
  std::size_t d = 3;
  lab::ExperimentConfig cfg;
};

lab::ExperimentConfig finish(Options& o) {
  lab::ExperimentConfig cfg = o.cfg;
  cfg.algo = lab::parse_algo(o.algo);
  if (o.mode == "exact") {
    cfg.mode = lab::Mode::Exact;
  } else if (o.mode == "probe") {
    cfg.mode = lab::Mode::Probe;
  } else {
    throw Error(ErrorKind::ParseError, "--mode must be exact or probe");
  }
  cfg.d = o.d;
  if (!o.x.empty()) {
    cfg.x = parse_cone_vector(o.x);
    cfg.d = cfg.x->dim();
  }
  cfg.beta = parse_rational(o.beta);
  cfg.k = parse_rational(o.k);
  if (!o.diameter.empty()) cfg.diameter = parse_rational(o.diameter);
  return cfg;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--out", o.out, "Output path (stdout when omitted)");
  sub->add_option("--threads", o.cfg.threads, "Worker threads; never changes results")->check(CLI::PositiveNumber);
  sub->add_option("--seed", o.cfg.seed, "RNG seed (default: $MCFLAB_SEED or 0)");
}

void add_experiment(CLI::App* sub, Options& o) {
  add_common(sub, o);
  sub->add_option("--algo", o.algo, "euclid|rauzy|graph|selmer|jacobi_perron|poincare|km");
  sub->add_option("--mode", o.mode, "exact|probe");
  sub->add_option("--d", o.d, "Dimension (implied by --x)");
  sub->add_option("--x", o.x, "Comma-separated exact rationals");
  sub->add_option("--budget", o.cfg.budget, "Step budget");
  sub->add_option("--trials", o.cfg.trials, "Monte Carlo trials");
  sub->add_option("--eps", o.cfg.eps, "Probe threshold");
  sub->add_option("--perm", o.cfg.perm, "Rauzy permutation, e.g. 321");
  sub->add_option("--graph", o.cfg.graph_path, "Induction graph JSON spec");
  sub->add_option("--node", o.cfg.node, "Start node of the graph");
}

int emit(const std::string& command, const lab::ExperimentConfig& cfg, const lab::CommandResult& r,
         const Options& o, std::chrono::system_clock::time_point started) {
  if (o.out.empty()) {
    if (!r.outputs.empty()) std::cout << r.outputs.front().content;
    if (!o.dot.empty()) {
      for (const auto& out : r.outputs) {
        if (out.name == ".dot") lab::write_atomic(o.dot, out.content);
      }
    }
  } else {
    lab::persist(command, cfg.to_json(), r, o.out, started);
  }
  if (!r.summary.empty()) std::cerr << command << ": " << r.summary << '\n';
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multidimensional continued fraction laboratory"};
  app.set_version_flag("--version", std::string(lab::kVersion));
  app.require_subcommand(1);

  Options o;
  try {
    o.cfg.seed = lab::default_seed();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return lab::kUsage;
  }

  auto* orbit = app.add_subcommand("orbit", "Exact orbit as a trajectory CSV");
  add_experiment(orbit, o);
  orbit->add_flag("--subtractive", o.cfg.subtractive, "Jacobi-Perron: subtractive map instead of accelerated");

  auto* rauzy = app.add_subcommand("rauzy-class", "Rauzy class of a permutation as JSON (and DOT)");
  add_common(rauzy, o);
  rauzy->add_option("--perm", o.cfg.perm, "Irreducible permutation")->required();
  rauzy->add_option("--dot", o.dot, "DOT output path when --out is omitted");

  auto* validate = app.add_subcommand("validate-graph", "Check an induction graph against the four assumptions");
  add_common(validate, o);
  validate->add_option("--graph", o.cfg.graph_path, "Induction graph JSON spec")->required();

  auto* balance = app.add_subcommand("balance-stats", "Estimate the balance hitting probability");
  add_experiment(balance, o);
  balance->add_option("--beta", o.beta, "Balance constant (rational > 1)");
  balance->add_option("--K", o.k, "Column growth constant (rational > 1)");
  balance->add_option("--past-max", o.cfg.past_max, "Longest random past");
  balance->add_flag("--identity-past", o.cfg.identity_past, "Start from the identity matrix");

  auto* probe = app.add_subcommand("probe", "Per-trial probe-mode CSV");
  add_experiment(probe, o);
  probe->add_option("--diameter", o.diameter, "Rauzy/graph: projective diameter threshold instead of decay");

  auto* suite = app.add_subcommand("property-suite", "Selmer property suite as JSON");
  add_experiment(suite, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : lab::kUsage;
  }

  const auto started = std::chrono::system_clock::now();
  try {
    if (orbit->parsed()) {
      const auto cfg = finish(o);
      return emit("orbit", cfg, lab::cmd_orbit(cfg), o, started);
    }
    if (rauzy->parsed()) {
      const auto cfg = o.cfg;
      return emit("rauzy-class", cfg, lab::cmd_rauzy_class(o.cfg.perm), o, started);
    }
    if (validate->parsed()) {
      const auto cfg = o.cfg;
      return emit("validate-graph", cfg, lab::cmd_validate_graph(o.cfg.graph_path), o, started);
    }
    if (balance->parsed()) {
      if (balance->count("--trials") == 0) o.cfg.trials = 10000;
      const auto cfg = finish(o);
      return emit("balance-stats", cfg, lab::cmd_balance_stats(cfg), o, started);
    }
    if (probe->parsed()) {
      if (probe->count("--mode") == 0) o.mode = "probe";
      const auto cfg = finish(o);
      return emit("probe", cfg, lab::cmd_probe(cfg), o, started);
    }
    if (suite->parsed()) {
      if (suite->count("--budget") == 0) o.cfg.budget = 200;
      const auto cfg = finish(o);
      return emit("property-suite", cfg, lab::cmd_property_suite(cfg), o, started);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::InvariantViolation ? lab::kFailed : lab::kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return lab::kUsage;
  }
  return lab::kUsage;
}
