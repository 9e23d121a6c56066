#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "qcspectra/cli/config.hpp"
#include "qcspectra/cli/run.hpp"
#include "qcspectra/errors.hpp"

int main(int argc, char** argv) {
  using namespace qcspectra::cli;

  CLI::App app{"Spectral analysis of the linearized force-based quasicontinuum operator"};
  std::string command_name;
  std::string config_path;
  std::string out_dir;
  int workers = 0;
  std::uint64_t seed = 0;

  app.add_option("command", command_name, "experiment to run")
      ->required()
      ->check(CLI::IsMember(command_names()));
  app.add_option("--config", config_path, "JSON configuration (defaults are used when omitted)");
  app.add_option("--out", out_dir, "output directory");
  auto* workers_opt = app.add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);
  auto* seed_opt = app.add_option("--seed", seed, "seed for masks and right-hand sides");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  const Command command = *parse_command(command_name);
  ExperimentConfig config;
  try {
    config = config_path.empty() ? default_config(command) : load_config(config_path, command);
    if (!out_dir.empty()) config.output = out_dir;
    if (*workers_opt) config.workers = workers;
    if (*seed_opt) {
      config.seed = seed;
      config.mask.seed = seed;
    }
    config.tolerances.scale *= tol_scale_from_env();
  } catch (const qcspectra::Error& e) {
    std::cerr << "error [" << qcspectra::to_string(e.code()) << "]: " << e.what() << "\n";
    return kExitUsage;
  }
  return run(config, std::cout, std::cerr);
}
