#include "quso/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace quso {

namespace fs = std::filesystem;
using nlohmann::json;

std::string circuit_to_json(const Circuit& circuit) {
  json gates = json::array();
  for (const auto& g : circuit.gates) {
    json jg;
    jg["kind"] = kind_name(g.kind);
    jg["targets"] = g.targets;
    json ctrls = json::array();
    for (const auto& c : g.controls)
      ctrls.push_back(json::array({c.qubit, c.polarity}));
    jg["controls"] = ctrls;
    if (g.angle != 0) jg["angle"] = g.angle;
    if (!g.phases.empty()) jg["phases"] = g.phases;
    if (g.matrix.size() > 0) {
      json rows = json::array();
      for (Eigen::Index r = 0; r < g.matrix.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < g.matrix.cols(); ++c)
          row.push_back(
              json::array({g.matrix(r, c).real(), g.matrix(r, c).imag()}));
        rows.push_back(row);
      }
      jg["matrix"] = rows;
    }
    if (!g.tag.empty()) jg["tag"] = g.tag;
    gates.push_back(jg);
  }
  json doc;
  doc["gates"] = gates;
  return doc.dump(2);
}

void dump_statevector(const StateVector& state, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  for (Eigen::Index i = 0; i < state.amps.size(); ++i) {
    const double re = state.amps[i].real();
    const double im = state.amps[i].imag();
    out.write(reinterpret_cast<const char*>(&re), sizeof(double));
    out.write(reinterpret_cast<const char*>(&im), sizeof(double));
  }
  json side;
  side["amplitudes"] = state.amps.size();
  side["format"] = "f64-le interleaved re/im";
  json regs = json::array();
  for (const auto& r : state.layout.registers())
    regs.push_back({{"name", r.name}, {"width", r.width}, {"offset", r.offset}});
  side["registers"] = regs;
  std::ofstream sidecar(path + ".json");
  sidecar << side.dump(2) << "\n";
}

StateVector load_statevector(const std::string& path) {
  std::ifstream side_in(path + ".json");
  if (!side_in) throw std::runtime_error("missing sidecar for " + path);
  json side = json::parse(side_in);
  std::vector<std::pair<std::string, int>> regs;
  for (const auto& r : side.at("registers"))
    regs.push_back({r.at("name").get<std::string>(), r.at("width").get<int>()});
  StateVector s;
  s.layout = RegisterLayout(regs);
  s.amps.resize(side.at("amplitudes").get<Eigen::Index>());
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  for (Eigen::Index i = 0; i < s.amps.size(); ++i) {
    double re = 0, im = 0;
    in.read(reinterpret_cast<char*>(&re), sizeof(double));
    in.read(reinterpret_cast<char*>(&im), sizeof(double));
    s.amps[i] = {re, im};
  }
  return s;
}

uint64_t fnv1a64(const std::string& text) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

CsvWriter::CsvWriter(
    const std::string& path,
    const std::vector<std::pair<std::string, std::string>>& header,
    const std::vector<std::string>& columns) {
  FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot open " + path);
  file_ = f;
  for (const auto& [k, v] : header) std::fprintf(f, "# %s=%s\n", k.c_str(), v.c_str());
  for (size_t i = 0; i < columns.size(); ++i)
    std::fprintf(f, "%s%s", columns[i].c_str(),
                 i + 1 == columns.size() ? "\n" : ",");
}

CsvWriter::~CsvWriter() { std::fclose(static_cast<FILE*>(file_)); }

void CsvWriter::row(const std::vector<std::string>& cells) {
  FILE* f = static_cast<FILE*>(file_);
  for (size_t i = 0; i < cells.size(); ++i)
    std::fprintf(f, "%s%s", cells[i].c_str(), i + 1 == cells.size() ? "\n" : ",");
}

std::string CsvWriter::num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

PhaseCache::PhaseCache(std::string directory) : dir_(std::move(directory)) {
  fs::create_directories(dir_);
}

std::string PhaseCache::key(double mu, double eps, int cap) const {
  char buf[160];
  std::snprintf(buf, sizeof buf, "mu=%.17g;eps=%.17g;cap=%d;conv=%s;ver=%s",
                mu, eps, cap, kQspConvention, kVersion);
  return buf;
}

std::optional<PhaseSequence> PhaseCache::lookup(double mu, double eps,
                                                int cap) const {
  const std::string k = key(mu, eps, cap);
  char name[64];
  std::snprintf(name, sizeof name, "phases_%016" PRIx64 ".json", fnv1a64(k));
  const fs::path path = fs::path(dir_) / name;
  std::ifstream in(path);
  if (!in) return std::nullopt;
  json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded() || doc.value("key", "") != k) return std::nullopt;
  PhaseSequence seq;
  const auto angles = doc.at("angles").get<std::vector<double>>();
  seq.angles = Eigen::Map<const Eigen::VectorXd>(angles.data(), angles.size());
  seq.grid_residual = doc.value("grid_residual", 0.0);
  seq.im_residual = doc.value("im_residual", 0.0);
  return seq;
}

void PhaseCache::store(double mu, double eps, int cap,
                       const PhaseSequence& phases, int degree) const {
  const std::string k = key(mu, eps, cap);
  char name[64];
  std::snprintf(name, sizeof name, "phases_%016" PRIx64 ".json", fnv1a64(k));
  json doc;
  doc["key"] = k;
  doc["mu"] = mu;
  doc["eps"] = eps;
  doc["degree"] = degree;
  doc["convention"] = phases.convention;
  doc["version"] = kVersion;
  doc["grid_residual"] = phases.grid_residual;
  doc["im_residual"] = phases.im_residual;
  doc["angles"] = std::vector<double>(
      phases.angles.data(), phases.angles.data() + phases.angles.size());
  std::ofstream out(fs::path(dir_) / name);
  out << doc.dump() << "\n";
}

namespace {

OptimizerConfig parse_optimizer(const json& j) {
  OptimizerConfig cfg;
  cfg.learning_rate = j.value("learning_rate", cfg.learning_rate);
  cfg.momentum = j.value("momentum", cfg.momentum);
  cfg.improvement_threshold =
      j.value("improvement_threshold", cfg.improvement_threshold);
  cfg.max_iterations = j.value("max_iterations", cfg.max_iterations);
  cfg.fd_step = j.value("fd_step", cfg.fd_step);
  cfg.n_mc = j.value("n_mc", cfg.n_mc);
  return cfg;
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& json_text,
                                         const std::string& base_dir) {
  json doc = json::parse(json_text, nullptr, false);
  if (doc.is_discarded()) throw ConfigError("config is not valid JSON");
  ExperimentConfig cfg;
  cfg.raw_text = json_text;
  try {
    cfg.kind = doc.at("kind").get<std::string>();
    cfg.network_path = doc.at("network").get<std::string>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config needs 'kind' and 'network': ") +
                      e.what());
  }
  if (!fs::path(cfg.network_path).is_absolute() && !base_dir.empty())
    cfg.network_path = (fs::path(base_dir) / cfg.network_path).string();
  if (!fs::exists(cfg.network_path))
    throw ConfigError("network file does not exist: " + cfg.network_path);

  cfg.mu_grid = doc.value("mu", std::vector<double>{});
  cfg.eps_grid = doc.value("eps", std::vector<double>{});
  cfg.p_grid = doc.value("p", std::vector<int>{});
  cfg.delta_k_grid = doc.value("delta_k", std::vector<int>{});
  cfg.k = doc.value("k", cfg.k);
  cfg.target_node = doc.value("target_node", cfg.target_node);
  cfg.degree_cap = doc.value("degree_cap", cfg.degree_cap);
  cfg.landscape_resolution =
      doc.value("landscape_resolution", cfg.landscape_resolution);
  cfg.cost_mode = doc.value("cost_mode", cfg.cost_mode);
  cfg.shots = doc.value("shots", cfg.shots);
  cfg.seed = doc.value("seed", cfg.seed);
  cfg.out_dir = doc.value("out", cfg.out_dir);
  if (doc.contains("optimizer")) cfg.optimizer = parse_optimizer(doc["optimizer"]);
  cfg.optimizer.seed = cfg.seed;

  const std::vector<std::string> kinds = {"solve",     "block-verify",
                                          "qsvt-sweep", "qaoa",
                                          "quso",      "landscape",
                                          "resources"};
  bool known = false;
  for (const auto& k : kinds) known = known || k == cfg.kind;
  if (!known) throw ConfigError("unknown experiment kind: " + cfg.kind);
  if (cfg.cost_mode != "shortcut" && cfg.cost_mode != "full")
    throw ConfigError("cost_mode must be 'shortcut' or 'full'");
  return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_experiment_config(ss.str(),
                                 fs::path(path).parent_path().string());
}

}  // namespace quso
