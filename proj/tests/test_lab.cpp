#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "mcf/lab.hpp"

using namespace mcf;
using namespace mcf::lab;
namespace fs = std::filesystem;

namespace {

std::string data_path(const std::string& name) {
  const char* dir = std::getenv("MCFLAB_DATA");
  return (dir ? std::string(dir) : std::string("examples_data")) + "/" + name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("mcflab_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

ExperimentConfig orbit_cfg(Algo a, const char* x) {
  ExperimentConfig cfg;
  cfg.algo = a;
  cfg.x = parse_cone_vector(x);
  cfg.d = cfg.x->dim();
  cfg.budget = 10;
  return cfg;
}

}  // namespace

TEST_CASE("algo names round trip") {
  for (auto a : {Algo::Euclid, Algo::Rauzy, Algo::Graph, Algo::Selmer, Algo::JacobiPerron, Algo::Poincare, Algo::Km}) {
    CHECK(parse_algo(to_string(a)) == a);
  }
  CHECK_THROWS_AS(parse_algo("brun"), Error);
}

TEST_CASE("config validation") {
  ExperimentConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.d = 1;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg.d = 3;
  cfg.trials = 0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg.trials = 10;
  cfg.x = parse_cone_vector("1,2");
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg.x.reset();
  cfg.threads = 8;
  ExperimentConfig one = cfg;
  one.threads = 1;
  CHECK(cfg.to_json() == one.to_json());
}

TEST_CASE("default seed") {
  ::unsetenv("MCFLAB_SEED");
  CHECK(default_seed() == 0);
  ::setenv("MCFLAB_SEED", "42", 1);
  CHECK(default_seed() == 42);
  ::setenv("MCFLAB_SEED", "x", 1);
  CHECK_THROWS_AS(default_seed(), Error);
  ::unsetenv("MCFLAB_SEED");
}

TEST_CASE("orbit command") {
  auto r = cmd_orbit(orbit_cfg(Algo::Euclid, "5,3"));
  CHECK(r.exit_code == kOk);
  CHECK(r.outputs.front().content.rfind("step,node,coords,c_max_accumulated\n", 0) == 0);
  CHECK(r.outputs.front().content.find("0 1") != std::string::npos);

  r = cmd_orbit(orbit_cfg(Algo::Rauzy, "1,1,1"));
  CHECK(r.exit_code == kTieHalt);

  auto cfg = orbit_cfg(Algo::Selmer, "2,3,4");
  cfg.budget = 1;
  r = cmd_orbit(cfg);
  CHECK(r.outputs.front().content.find("2 2 3") != std::string::npos);

  cfg = orbit_cfg(Algo::Graph, "1,4,2");
  cfg.graph_path = data_path("cyclic_d3.json");
  cfg.budget = 1;
  r = cmd_orbit(cfg);
  CHECK(r.outputs.front().content.find("1,2,1 3 2") != std::string::npos);

  cfg = orbit_cfg(Algo::Euclid, "5,3");
  cfg.mode = Mode::Probe;
  CHECK_THROWS_AS(cmd_orbit(cfg), Error);
}

TEST_CASE("rauzy class command") {
  const auto r = cmd_rauzy_class("321");
  CHECK(r.exit_code == kOk);
  REQUIRE(r.outputs.size() == 2);
  const auto j = nlohmann::json::parse(r.outputs[0].content);
  CHECK(j["nodes"].size() == 3);
  CHECK(r.outputs[1].name == ".dot");
  try {
    cmd_rauzy_class("123");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotIrreducible);
  }
}

TEST_CASE("validate-graph command") {
  CHECK(cmd_validate_graph(data_path("cyclic_d3.json")).exit_code == kOk);
  CHECK(cmd_validate_graph(data_path("cyclic_d4.json")).exit_code == kOk);
  CHECK(cmd_validate_graph(data_path("no_loop_d3.json")).exit_code == kFailed);
  CHECK_THROWS_AS(cmd_validate_graph(data_path("dangling_d3.json")), Error);
  CHECK_THROWS_AS(cmd_validate_graph(data_path("missing.json")), Error);
}

TEST_CASE("balance-stats command") {
  ExperimentConfig cfg;
  cfg.trials = 50;
  const auto r = cmd_balance_stats(cfg);
  const auto j = nlohmann::json::parse(r.outputs.front().content);
  for (const char* key : {"estimate", "ci_halfwidth", "ci_lower", "ci_upper", "confidence", "hits", "trials"}) {
    CHECK(j.contains(key));
  }
  cfg.algo = Algo::Poincare;
  CHECK_THROWS_AS(cmd_balance_stats(cfg), Error);
}

TEST_CASE("probe command") {
  ExperimentConfig cfg;
  cfg.algo = Algo::Km;
  cfg.mode = Mode::Probe;
  cfg.trials = 20;
  auto r = cmd_probe(cfg);
  std::istringstream lines(r.outputs.front().content);
  std::string line;
  std::size_t rows = 0;
  std::getline(lines, line);
  CHECK(line == "algo,d,seed,trial,converged,axis_value,steps_used,residual");
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 20);

  cfg.algo = Algo::Rauzy;
  cfg.perm = "321";
  r = cmd_probe(cfg);
  CHECK(r.outputs.front().content.find("true") != std::string::npos);

  cfg.diameter = Rational(101, 100);
  cfg.budget = 2000;
  r = cmd_probe(cfg);
  CHECK(r.outputs.front().content.find("true") != std::string::npos);

  cfg.eps = "not-a-number";
  CHECK_THROWS_AS(cmd_probe(cfg), Error);
}

TEST_CASE("property-suite command") {
  ExperimentConfig cfg;
  cfg.trials = 50;
  cfg.budget = 100;
  const auto r = cmd_property_suite(cfg);
  CHECK(r.exit_code == kOk);
  CHECK(nlohmann::json::parse(r.outputs.front().content).contains("half_decay"));
}

TEST_CASE("atomic writes, digests and manifests") {
  TempDir tmp;
  const auto file = (tmp.path / "out.txt").string();
  write_atomic(file, "hello\n");
  CHECK(slurp(file) == "hello\n");
  write_atomic(file, "again\n");
  CHECK(slurp(file) == "again\n");
  std::size_t entries = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(tmp.path)) ++entries;
  CHECK(entries == 1);

  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");

  const auto r = cmd_rauzy_class("4321");
  const auto out = (tmp.path / "class.json").string();
  const auto m = persist("rauzy-class", {{"perm", "4321"}}, r, out, std::chrono::system_clock::now());
  CHECK(fs::exists(out));
  CHECK(fs::exists(out + ".dot"));
  const auto manifest = nlohmann::json::parse(slurp(out + ".manifest.json"));
  CHECK(manifest["command"] == "rauzy-class");
  CHECK(manifest["exit_code"] == 0);
  REQUIRE(manifest["outputs"].size() == 2);
  CHECK(manifest["outputs"][0]["sha256"] == sha256_hex(slurp(out)));
  CHECK(manifest == m.to_json());

  CHECK_THROWS_AS(write_atomic((tmp.path / "no" / "such" / "dir.txt").string(), "x"), Error);
}

TEST_CASE("outputs do not depend on the thread count") {
  ExperimentConfig cfg;
  cfg.trials = 64;
  cfg.mode = Mode::Probe;
  for (auto a : {Algo::Poincare, Algo::Selmer, Algo::Rauzy}) {
    cfg.algo = a;
    cfg.perm = a == Algo::Rauzy ? "4321" : "";
    cfg.threads = 1;
    const auto one = cmd_probe(cfg).outputs.front().content;
    cfg.threads = 4;
    CHECK(cmd_probe(cfg).outputs.front().content == one);
  }
  ExperimentConfig b;
  b.trials = 64;
  const auto one = cmd_balance_stats(b).outputs.front().content;
  b.threads = 3;
  CHECK(cmd_balance_stats(b).outputs.front().content == one);
}
