#include "mcf/lab.hpp"

#include <openssl/evp.h>
#include <unistd.h>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "mcf/classical.hpp"
#include "mcf/iet.hpp"
#include "mcf/parallel.hpp"
#include "mcf/random.hpp"
#include "mcf/selmer.hpp"

namespace mcf::lab {

namespace {

constexpr std::pair<Algo, std::string_view> kAlgoNames[] = {
    {Algo::Euclid, "euclid"},         {Algo::Rauzy, "rauzy"},       {Algo::Graph, "graph"},
    {Algo::Selmer, "selmer"},         {Algo::JacobiPerron, "jacobi_perron"},
    {Algo::Poincare, "poincare"},     {Algo::Km, "km"},
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string iso_time(std::chrono::system_clock::time_point t) {
  const std::time_t raw = std::chrono::system_clock::to_time_t(t);
  std::tm utc{};
  gmtime_r(&raw, &utc);
  std::ostringstream out;
  out << std::put_time(&utc, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

ProbeReal parse_eps(const std::string& text) {
  ProbeReal eps;
  try {
    eps = ProbeReal(text);
  } catch (const std::exception&) {
    throw Error(ErrorKind::ParseError, "bad eps '" + text + "'");
  }
  if (!(eps > 0)) throw Error(ErrorKind::InvalidArgument, "eps must be positive");
  return eps;
}

std::string format_probe(const ProbeReal& r) { return r.str(20, std::ios_base::scientific); }

// Accumulated matrix must reproduce the start and stay unimodular.
void check_invariants(const Trajectory& t) {
  if (!t.identity_holds()) throw Error(ErrorKind::InvariantViolation, "accumulated matrix does not map back");
  if (!t.accumulated.nonnegative()) throw Error(ErrorKind::InvariantViolation, "accumulated matrix has a negative entry");
  const Integer det = t.accumulated.determinant();
  if (det != 1 && det != -1) throw Error(ErrorKind::InvariantViolation, "accumulated determinant is not +-1");
}

iet::Permutation rauzy_perm(const ExperimentConfig& cfg) {
  if (!cfg.perm.empty()) return iet::Permutation::from_display(cfg.perm);
  std::vector<int> images(cfg.d);
  for (std::size_t i = 0; i < cfg.d; ++i) images[i] = static_cast<int>(cfg.d - i);
  return iet::Permutation(std::move(images));
}

std::vector<ProbeReal> random_positive(std::size_t d, CounterRng& rng) {
  std::vector<ProbeReal> x;
  x.reserve(d);
  for (std::size_t i = 0; i < d; ++i) {
    std::uint64_t k;
    do {
      k = rng();
    } while (k == 0);
    x.push_back(ldexp(ProbeReal(k), -64));
  }
  return x;
}

struct ProbeRow {
  bool converged = false;
  std::string axis_value;
  std::size_t steps = 0;
  std::string residual;
};

// Graph-driven probe: decay of the largest coordinate, or the projective
// diameter of the accumulated matrix after `budget` steps.
ProbeRow graph_probe(const graph::InductionGraph& g, std::size_t start, const ExperimentConfig& cfg,
                     const ProbeReal& eps, std::size_t trial) {
  CounterRng rng(cfg.seed, trial, 0);
  std::vector<ProbeReal> x = random_positive(g.dim(), rng);
  ProbeRow row;
  if (!cfg.diameter) {
    const auto r = graph::probe_orbit(g, ProbeVector(std::move(x)), g.node(start).id, cfg.budget, 0, eps);
    const auto c = r.state.coords();
    const auto [lo, hi] = std::minmax_element(c.begin(), c.end());
    row.converged = r.halt == HaltReason::Decayed;
    row.axis_value = format_probe(r.decay);
    row.steps = r.steps;
    row.residual = format_probe(*hi > 0 ? ProbeReal(*lo / *hi) : ProbeReal(0));
    return row;
  }
  IntMatrix m = IntMatrix::identity(g.dim());
  std::size_t at = start;
  const ProbeReal start_max = *std::max_element(x.begin(), x.end());
  for (; row.steps < cfg.budget; ++row.steps) {
    if (*std::min_element(x.begin(), x.end()) == 0) break;
    const auto& node = g.node(at);
    bool ge = false;
    at = graph::step_in_place(g, x, at, &ge);
    const auto i = static_cast<std::size_t>(node.i - 1);
    const auto j = static_cast<std::size_t>(node.j - 1);
    if (ge) {
      m.add_column(j, i);
    } else {
      m.add_column(i, j);
    }
  }
  const auto diam = projective_diameter(m);
  row.converged = diam.below(*cfg.diameter);
  row.axis_value = diam.infinite ? "inf" : format_probe(to_probe(diam.value));
  row.residual = format_probe(*std::max_element(x.begin(), x.end()) / start_max);
  return row;
}

}  // namespace

std::string_view to_string(Algo a) noexcept {
  for (const auto& [algo, name] : kAlgoNames) {
    if (algo == a) return name;
  }
  return "?";
}

Algo parse_algo(std::string_view name) {
  for (const auto& [algo, n] : kAlgoNames) {
    if (n == name) return algo;
  }
  throw Error(ErrorKind::ParseError, "unknown algorithm '" + std::string(name) + "'");
}

void ExperimentConfig::validate() const {
  if (d < 2) throw Error(ErrorKind::InvalidArgument, "d must be at least 2");
  if (trials < 1) throw Error(ErrorKind::InvalidArgument, "trials must be at least 1");
  if (mode == Mode::Probe) parse_eps(eps);
  if (x && x->dim() != d) throw Error(ErrorKind::InvalidArgument, "--x has a different dimension than --d");
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json j = {
      {"algo", to_string(algo)},
      {"d", d},
      {"mode", mode == Mode::Exact ? "exact" : "probe"},
      {"trials", trials},
      {"budget", budget},
      {"seed", seed},
      {"eps", eps},
      {"beta", format_rational(beta)},
      {"K", format_rational(k)},
      {"x", x ? nlohmann::json(format_cone_vector(*x)) : nlohmann::json(nullptr)},
      {"perm", perm},
      {"graph", graph_path},
      {"node", node},
      {"subtractive", subtractive},
      {"diameter", diameter ? nlohmann::json(format_rational(*diameter)) : nlohmann::json(nullptr)},
      {"past_max", past_max},
      {"identity_past", identity_past},
  };
  return j;
}

std::uint64_t default_seed() {
  const char* env = std::getenv("MCFLAB_SEED");
  if (env == nullptr || *env == '\0') return 0;
  const std::string_view text(env);
  std::uint64_t seed = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), seed);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(ErrorKind::ParseError, "MCFLAB_SEED is not an unsigned 64-bit integer");
  }
  return seed;
}

graph::InductionGraph load_graph(const std::string& path) {
  const std::string text = read_file(path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, "graph spec: " + std::string(e.what()));
  }
  return graph::InductionGraph::from_json(j);
}

CommandResult cmd_orbit(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.mode != Mode::Exact) throw Error(ErrorKind::InvalidArgument, "orbit runs in exact mode; use probe");
  if (!cfg.x) throw Error(ErrorKind::InvalidArgument, "orbit needs --x");
  const ConeVector& x = *cfg.x;
  Trajectory traj;
  switch (cfg.algo) {
    case Algo::Euclid:
      traj = classical::euclid_orbit(x, cfg.budget);
      break;
    case Algo::Rauzy:
      traj = iet::rauzy_orbit(x, rauzy_perm(cfg), cfg.budget);
      break;
    case Algo::Graph: {
      const auto g = load_graph(cfg.graph_path);
      traj = graph::orbit(g, x, cfg.node.empty() ? g.node(0).id : cfg.node, cfg.budget);
      break;
    }
    case Algo::Selmer:
      traj = selmer::selmer_orbit(selmer::SortedConeVector(x), cfg.budget);
      break;
    case Algo::JacobiPerron:
      traj = cfg.subtractive ? classical::jp_subtractive_orbit(classical::GammaVector(x), cfg.budget)
                             : classical::jp_accelerated_orbit(classical::GammaVector(x), cfg.budget);
      break;
    case Algo::Poincare:
      traj = classical::poincare_orbit(classical::LambdaVector(x), cfg.budget);
      break;
    case Algo::Km:
      traj = classical::km_orbit(classical::LambdaVector(x), cfg.budget);
      break;
  }
  check_invariants(traj);
  CommandResult r;
  r.outputs.push_back({"", trajectory_csv(traj)});
  r.exit_code = traj.halt == HaltReason::Tie ? kTieHalt : kOk;
  r.summary = "halt=" + std::string(to_string(traj.halt)) + " steps=" + std::to_string(traj.steps.size()) +
              " final=" + format_cone_vector(traj.final_state());
  if (!traj.halt_detail.empty()) r.summary += " (" + traj.halt_detail + ")";
  return r;
}

CommandResult cmd_rauzy_class(std::string_view perm) {
  const auto p = iet::Permutation::from_display(perm);
  if (!iet::is_irreducible(p)) throw Error(ErrorKind::NotIrreducible, p.display() + " is reducible");
  const auto c = iet::rauzy_class(p);
  CommandResult r;
  r.outputs.push_back({"", c.to_json().dump(2) + "\n"});
  r.outputs.push_back({".dot", c.to_dot()});
  r.summary = std::to_string(c.size()) + " permutations in the class of " + p.display();
  return r;
}

CommandResult cmd_validate_graph(const std::string& path) {
  const auto report = graph::validate_graph(load_graph(path));
  CommandResult r;
  r.outputs.push_back({"", report.to_json().dump(2) + "\n"});
  r.exit_code = report.all() ? kOk : kFailed;
  r.summary = report.all() ? "graph satisfies all four checks" : "graph fails validation";
  return r;
}

CommandResult cmd_balance_stats(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.algo != Algo::Selmer) throw Error(ErrorKind::InvalidArgument, "balance-stats supports --algo selmer");
  selmer::BalanceConfig b;
  b.d = cfg.d;
  b.beta = cfg.beta;
  b.k = cfg.k;
  b.trials = cfg.trials;
  b.seed = cfg.seed;
  b.threads = cfg.threads;
  b.past_max = cfg.past_max;
  b.identity_past = cfg.identity_past;
  const auto report = selmer::balance_hitting_estimate(b);
  CommandResult r;
  r.outputs.push_back({"", report.to_json().dump(2) + "\n"});
  std::ostringstream s;
  s << "estimate " << report.estimate.estimate << " (99% CI lower " << report.estimate.ci_lower << ")";
  r.summary = s.str();
  return r;
}

CommandResult cmd_probe(const ExperimentConfig& cfg) {
  cfg.validate();
  const ProbeReal eps = parse_eps(cfg.eps);
  std::vector<ProbeRow> rows;
  std::size_t d = cfg.d;
  switch (cfg.algo) {
    case Algo::Poincare:
    case Algo::Km:
    case Algo::JacobiPerron: {
      const auto algo = cfg.algo == Algo::Poincare ? classical::Algo::Poincare
                        : cfg.algo == Algo::Km     ? classical::Algo::KraaikampMester
                                                   : classical::Algo::JacobiPerron;
      classical::AxisLimitConfig ac;
      ac.budget = cfg.budget;
      ac.eps = eps;
      rows = run_trials<ProbeRow>(cfg.trials, cfg.threads, [&](std::size_t t) {
        CounterRng rng(cfg.seed, t, 0);
        const auto rep = classical::axis_limit_probe(algo, classical::random_probe_start(algo, d, rng), ac);
        return ProbeRow{rep.converged, format_probe(rep.axis_value), rep.steps_used, format_probe(rep.residual)};
      });
      break;
    }
    case Algo::Euclid:
    case Algo::Rauzy:
    case Algo::Graph: {
      std::optional<graph::InductionGraph> g;
      std::size_t start = 0;
      if (cfg.algo == Algo::Euclid) {
        g = graph::euclid_graph();
      } else if (cfg.algo == Algo::Rauzy) {
        const auto p = rauzy_perm(cfg);
        g = graph::rauzy_labeled_graph(p);
        std::vector<int> labels(p.size());
        for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = static_cast<int>(i + 1);
        start = g->index_of(graph::rauzy_labeled_id(p, labels));
      } else {
        g = load_graph(cfg.graph_path);
        if (!cfg.node.empty()) start = g->index_of(cfg.node);
      }
      d = g->dim();
      rows = run_trials<ProbeRow>(cfg.trials, cfg.threads,
                                  [&](std::size_t t) { return graph_probe(*g, start, cfg, eps, t); });
      break;
    }
    case Algo::Selmer: {
      rows = run_trials<ProbeRow>(cfg.trials, cfg.threads, [&](std::size_t t) {
        CounterRng rng(cfg.seed, t, 0);
        auto coords = random_dyadic(d, 64, rng);
        std::sort(coords.begin(), coords.end());
        const auto a = selmer::absorbing_probe(selmer::SortedConeVector(ConeVector(std::move(coords))), cfg.budget);
        return ProbeRow{a.absorbed, std::to_string(a.steps), a.steps, a.stopped_by ? "ZeroEntry" : "0"};
      });
      break;
    }
  }
  std::ostringstream csv;
  csv << classical::axis_csv_header() << '\n';
  std::size_t converged = 0;
  for (std::size_t t = 0; t < rows.size(); ++t) {
    const auto& row = rows[t];
    converged += row.converged ? 1 : 0;
    csv << to_string(cfg.algo) << ',' << d << ',' << cfg.seed << ',' << t << ',' << (row.converged ? "true" : "false")
        << ',' << row.axis_value << ',' << row.steps << ',' << row.residual << '\n';
  }
  CommandResult r;
  r.outputs.push_back({"", csv.str()});
  std::ostringstream s;
  s << "converged " << converged << "/" << rows.size() << " fraction "
    << static_cast<double>(converged) / static_cast<double>(rows.size());
  r.summary = s.str();
  return r;
}

CommandResult cmd_property_suite(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.algo != Algo::Selmer) throw Error(ErrorKind::InvalidArgument, "property-suite supports --algo selmer");
  selmer::PropertySuiteConfig pc;
  pc.d = cfg.d;
  pc.trials = cfg.trials;
  pc.budget = cfg.budget;
  pc.seed = cfg.seed;
  pc.threads = cfg.threads;
  pc.jacobian_pairs = cfg.trials;
  const auto report = selmer::selmer_property_suite(pc);
  CommandResult r;
  r.outputs.push_back({"", report.to_json().dump(2) + "\n"});
  r.exit_code = report.passed() ? kOk : kFailed;
  r.summary = report.passed() ? "all properties hold" : "property violations found";
  return r;
}

void write_atomic(const std::string& path, std::string_view content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write '" + tmp.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw Error(ErrorKind::InvalidArgument, "write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error(ErrorKind::InvalidArgument, "cannot rename onto '" + path + "': " + ec.message());
  }
}

std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorKind::InvariantViolation, "sha256 failed");
  }
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int{md[i]};
  return out.str();
}

nlohmann::json RunManifest::to_json() const {
  nlohmann::json outputs = nlohmann::json::array();
  for (const auto& [path, digest] : digests) outputs.push_back({{"path", path}, {"sha256", digest}});
  return {
      {"tool", kVersion},
      {"command", command},
      {"config", config},
      {"started", iso_time(started)},
      {"finished", iso_time(finished)},
      {"exit_code", exit_code},
      {"outputs", outputs},
  };
}

RunManifest persist(const std::string& command, const nlohmann::json& config, const CommandResult& result,
                    const std::string& out, std::chrono::system_clock::time_point started) {
  RunManifest m;
  m.command = command;
  m.config = config;
  m.started = started;
  m.exit_code = result.exit_code;
  for (const auto& o : result.outputs) {
    const std::string path = out + o.name;
    write_atomic(path, o.content);
    m.digests.emplace_back(path, sha256_hex(o.content));
  }
  m.finished = std::chrono::system_clock::now();
  write_atomic(out + ".manifest.json", m.to_json().dump(2) + "\n");
  return m;
}

}  // namespace mcf::lab
