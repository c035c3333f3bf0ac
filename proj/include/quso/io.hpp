// Serialization, caching, and experiment configuration.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "quso/circuit.hpp"
#include "quso/qaoa.hpp"
#include "quso/qsvt.hpp"
#include "quso/state.hpp"

namespace quso {

inline constexpr const char* kVersion = "quso 0.1.0";

std::string circuit_to_json(const Circuit& circuit);

// Raw little-endian float64 pairs (re, im) plus a JSON sidecar describing
// the register layout (written to path + ".json").
void dump_statevector(const StateVector& state, const std::string& path);
StateVector load_statevector(const std::string& path);

uint64_t fnv1a64(const std::string& text);

// Writes "# key=value" header lines followed by CSV rows.  Doubles are
// rendered with %.17g so reruns are byte identical.
class CsvWriter {
 public:
  CsvWriter(const std::string& path,
            const std::vector<std::pair<std::string, std::string>>& header,
            const std::vector<std::string>& columns);
  ~CsvWriter();
  void row(const std::vector<std::string>& cells);
  static std::string num(double v);

 private:
  void* file_;
};

// Disk cache of phase sequences keyed by (mu, eps, cap, convention, version).
class PhaseCache {
 public:
  explicit PhaseCache(std::string directory);
  std::optional<PhaseSequence> lookup(double mu, double eps, int cap) const;
  void store(double mu, double eps, int cap, const PhaseSequence& phases,
             int degree) const;

 private:
  std::string key(double mu, double eps, int cap) const;
  std::string dir_;
};

struct ExperimentConfig {
  std::string network_path;
  std::string kind;  // solve | block-verify | qsvt-sweep | qaoa | quso |
                     // landscape | resources
  std::vector<double> mu_grid;
  std::vector<double> eps_grid;
  std::vector<int> p_grid;
  std::vector<int> delta_k_grid;  // delta = 2^-k entries; 0 means ideal
  int k = 2;
  int target_node = 0;
  int degree_cap = 2001;
  int landscape_resolution = 64;
  std::string cost_mode = "shortcut";  // or "full"
  int shots = 1024;
  OptimizerConfig optimizer;
  uint64_t seed = 0;
  std::string out_dir = "out";
  std::string raw_text;  // verbatim config file contents (hashed into outputs)
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parses the JSON config; relative network paths resolve against the
// config file's directory.
ExperimentConfig load_experiment_config(const std::string& path);
ExperimentConfig parse_experiment_config(const std::string& json_text,
                                         const std::string& base_dir);

}  // namespace quso
