#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qcspectra/chain_model.hpp"
#include "json.hpp"

namespace qcspectra::cli {

enum class Command { spectrum, similarity, factorize, cond_scan, interlacing, gmres_bench, stability_scan, verify_all };

std::optional<Command> parse_command(std::string_view name);
const char* to_string(Command c);
std::vector<std::string> command_names();

struct MaskSpec {
  enum class Kind { block, fraction };
  Kind kind = Kind::block;
  int block_size = 8;
  double rho = 0.25;
  std::uint64_t seed = 1;

  RegionMask build(int n) const;
};

struct CoefficientSpec {
  std::optional<std::vector<double>> phi;
  std::optional<Potential> potential;
  double strain = 1.0;
  int r_cut = 2;

  Coefficients build() const;
};

struct Tolerances {
  double scale = 1.0;  // multiplies every relative tolerance
  double gmres = 1e-10;
};

struct ExperimentConfig {
  Command command = Command::verify_all;
  std::vector<int> n_list{16, 32, 64, 128};
  MaskSpec mask;
  CoefficientSpec coefficients;
  Tolerances tolerances;
  std::string output = "qcspectra_out";
  std::uint64_t seed = 1;
  int workers = 1;
};

/// Defaults: phi'' = (1, -0.1), N in {16, 32, 64, 128}, centred block of 8 sites.
ExperimentConfig default_config(Command command);

/// Overlays a JSON document on the defaults. Unknown keys are rejected.
ExperimentConfig parse_config(const nlohmann::json& doc, Command command);
ExperimentConfig load_config(const std::string& path, Command command);

/// Throws Error(ErrorCode::config) when the configuration cannot be run.
void validate(const ExperimentConfig& config);

}  // namespace qcspectra::cli
