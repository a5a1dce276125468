#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mcf/cone.hpp"
#include "mcf/induction_graph.hpp"
#include "mcf/trajectory.hpp"

namespace mcf::lab {

inline constexpr std::string_view kVersion = "mcflab 1.0.0";

enum class Algo { Euclid, Rauzy, Graph, Selmer, JacobiPerron, Poincare, Km };

std::string_view to_string(Algo a) noexcept;
// Throws ParseError.
Algo parse_algo(std::string_view name);

enum class Mode { Exact, Probe };

struct ExperimentConfig {
  Algo algo = Algo::Selmer;
  std::size_t d = 3;
  Mode mode = Mode::Exact;
  std::size_t trials = 1000;
  std::size_t budget = 10000;
  std::uint64_t seed = 0;
  std::string eps = "1e-12";
  Rational beta = 64;
  Rational k = 64;
  std::optional<ConeVector> x;
  std::string perm;        // Rauzy permutation, display form
  std::string graph_path;  // graph spec for algo=graph
  std::string node;        // start node for algo=graph
  bool subtractive = false;      // Jacobi-Perron subtractive map in orbits
  std::optional<Rational> diameter;  // Rauzy/graph probe: diameter threshold
  std::size_t past_max = 40;
  bool identity_past = false;
  unsigned threads = 1;

  // Throws InvalidArgument.
  void validate() const;
  // Everything that determines the output; `threads` is deliberately absent.
  nlohmann::json to_json() const;
};

// Reads MCFLAB_SEED; 0 when unset. Throws ParseError on a malformed value.
std::uint64_t default_seed();

struct Output {
  std::string name;  // suffix appended to --out (empty for the main file)
  std::string content;
};

struct CommandResult {
  int exit_code = 0;
  std::vector<Output> outputs;
  std::string summary;  // one line for the diagnostic stream
};

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFailed = 1;
inline constexpr int kUsage = 2;
inline constexpr int kTieHalt = 3;

CommandResult cmd_orbit(const ExperimentConfig& cfg);
CommandResult cmd_rauzy_class(std::string_view perm);
CommandResult cmd_validate_graph(const std::string& path);
CommandResult cmd_balance_stats(const ExperimentConfig& cfg);
CommandResult cmd_probe(const ExperimentConfig& cfg);
CommandResult cmd_property_suite(const ExperimentConfig& cfg);

graph::InductionGraph load_graph(const std::string& path);

// Writes to a sibling temporary file and renames it over `path`.
void write_atomic(const std::string& path, std::string_view content);

std::string sha256_hex(std::string_view data);

struct RunManifest {
  std::string command;
  nlohmann::json config;
  std::chrono::system_clock::time_point started;
  std::chrono::system_clock::time_point finished;
  std::vector<std::pair<std::string, std::string>> digests;  // (path, sha256)
  int exit_code = 0;

  nlohmann::json to_json() const;
};

// Writes every output next to `out` and a manifest at `<out>.manifest.json`.
// Returns the manifest.
RunManifest persist(const std::string& command, const nlohmann::json& config, const CommandResult& result,
                    const std::string& out, std::chrono::system_clock::time_point started);

}  // namespace mcf::lab
