#include "qcspectra/cli/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "qcspectra/errors.hpp"

namespace qcspectra::cli {

namespace {

struct CommandName {
  Command command;
  const char* name;
};

constexpr CommandName kCommands[] = {
    {Command::spectrum, "spectrum"},
    {Command::similarity, "similarity"},
    {Command::factorize, "factorize"},
    {Command::cond_scan, "cond-scan"},
    {Command::interlacing, "interlacing"},
    {Command::gmres_bench, "gmres-bench"},
    {Command::stability_scan, "stability-scan"},
    {Command::verify_all, "verify-all"},
};

[[noreturn]] void config_error(const std::string& what) { throw Error(ErrorCode::config, what); }

void reject_unknown(const nlohmann::json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) config_error("unknown key '" + it.key() + "' in " + where);
  }
}

template <typename T>
T get_as(const nlohmann::json& j, const std::string& what) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception&) {
    config_error("'" + what + "' has the wrong type");
  }
}

MaskSpec parse_mask(const nlohmann::json& j) {
  if (!j.is_object()) config_error("'mask' must be an object");
  reject_unknown(j, {"kind", "size", "rho", "seed"}, "mask");
  MaskSpec m;
  const std::string kind = get_as<std::string>(j.value("kind", std::string("block")), "mask.kind");
  if (kind == "block") {
    m.kind = MaskSpec::Kind::block;
    if (j.contains("size")) m.block_size = get_as<int>(j["size"], "mask.size");
  } else if (kind == "fraction") {
    m.kind = MaskSpec::Kind::fraction;
    if (j.contains("rho")) m.rho = get_as<double>(j["rho"], "mask.rho");
    if (j.contains("seed")) m.seed = get_as<std::uint64_t>(j["seed"], "mask.seed");
  } else {
    config_error("mask.kind must be 'block' or 'fraction'");
  }
  return m;
}

Potential parse_potential(const nlohmann::json& j) {
  if (!j.is_object()) config_error("'potential' must be an object");
  const std::string kind = get_as<std::string>(j.value("kind", std::string()), "potential.kind");
  if (kind == "lennard-jones") {
    reject_unknown(j, {"kind", "a", "b"}, "potential");
    LennardJones lj;
    if (j.contains("a")) lj.a = get_as<double>(j["a"], "potential.a");
    if (j.contains("b")) lj.b = get_as<double>(j["b"], "potential.b");
    return lj;
  }
  if (kind == "morse") {
    reject_unknown(j, {"kind", "alpha", "r0"}, "potential");
    Morse m;
    if (j.contains("alpha")) m.alpha = get_as<double>(j["alpha"], "potential.alpha");
    if (j.contains("r0")) m.r0 = get_as<double>(j["r0"], "potential.r0");
    return m;
  }
  config_error("potential.kind must be 'lennard-jones' or 'morse'");
}

CoefficientSpec parse_coefficients(const nlohmann::json& j) {
  if (!j.is_object()) config_error("'coefficients' must be an object");
  reject_unknown(j, {"phi", "potential", "strain", "r_cut"}, "coefficients");
  CoefficientSpec c;
  if (j.contains("phi") == j.contains("potential")) {
    config_error("coefficients need exactly one of 'phi' or 'potential'");
  }
  if (j.contains("phi")) {
    c.phi = get_as<std::vector<double>>(j["phi"], "coefficients.phi");
  } else {
    c.potential = parse_potential(j["potential"]);
    c.strain = get_as<double>(j.value("strain", nlohmann::json(1.0)), "coefficients.strain");
    c.r_cut = get_as<int>(j.value("r_cut", nlohmann::json(2)), "coefficients.r_cut");
  }
  return c;
}

}  // namespace

std::optional<Command> parse_command(std::string_view name) {
  for (const auto& c : kCommands) {
    if (name == c.name) return c.command;
  }
  return std::nullopt;
}

const char* to_string(Command c) {
  for (const auto& k : kCommands) {
    if (k.command == c) return k.name;
  }
  return "unknown";
}

std::vector<std::string> command_names() {
  std::vector<std::string> out;
  for (const auto& c : kCommands) out.emplace_back(c.name);
  return out;
}

RegionMask MaskSpec::build(int n) const {
  if (kind == Kind::block) return RegionMask::block(n, block_size);
  return RegionMask::fraction(n, rho, seed);
}

Coefficients CoefficientSpec::build() const {
  if (phi) return Coefficients(*phi);
  if (potential) return coefficients_from_potential(*potential, strain, r_cut);
  return Coefficients({1.0, -0.1});
}

ExperimentConfig default_config(Command command) {
  ExperimentConfig c;
  c.command = command;
  c.coefficients.phi = std::vector<double>{1.0, -0.1};
  return c;
}

ExperimentConfig parse_config(const nlohmann::json& doc, Command command) {
  if (!doc.is_object()) config_error("configuration must be a JSON object");
  reject_unknown(doc, {"command", "n_list", "mask", "coefficients", "tolerances", "output", "seed", "workers"},
                 "configuration");
  ExperimentConfig c = default_config(command);
  if (doc.contains("command")) {
    const auto named = parse_command(get_as<std::string>(doc["command"], "command"));
    if (!named) config_error("unknown command in configuration");
    if (*named != command) config_error("configuration is for a different command");
  }
  if (doc.contains("n_list")) c.n_list = get_as<std::vector<int>>(doc["n_list"], "n_list");
  if (doc.contains("mask")) c.mask = parse_mask(doc["mask"]);
  if (doc.contains("coefficients")) c.coefficients = parse_coefficients(doc["coefficients"]);
  if (doc.contains("tolerances")) {
    const auto& t = doc["tolerances"];
    if (!t.is_object()) config_error("'tolerances' must be an object");
    reject_unknown(t, {"scale", "gmres"}, "tolerances");
    if (t.contains("scale")) c.tolerances.scale = get_as<double>(t["scale"], "tolerances.scale");
    if (t.contains("gmres")) c.tolerances.gmres = get_as<double>(t["gmres"], "tolerances.gmres");
  }
  if (doc.contains("output")) c.output = get_as<std::string>(doc["output"], "output");
  if (doc.contains("seed")) c.seed = get_as<std::uint64_t>(doc["seed"], "seed");
  if (doc.contains("workers")) c.workers = get_as<int>(doc["workers"], "workers");
  return c;
}

ExperimentConfig load_config(const std::string& path, Command command) {
  std::ifstream in(path);
  if (!in) config_error("cannot open configuration file " + path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    config_error(std::string("malformed JSON: ") + e.what());
  }
  return parse_config(doc, command);
}

void validate(const ExperimentConfig& config) {
  if (config.n_list.empty()) config_error("n_list is empty");
  int range = 0;
  try {
    range = config.coefficients.build().range();
  } catch (const Error& e) {
    config_error(std::string("invalid coefficients: ") + e.what());
  }
  if (range < 2) config_error("interaction range R must be at least 2");
  for (int n : config.n_list) {
    if (n < 4 || n <= 2 * range) {
      config_error("chain size " + std::to_string(n) + " must exceed 2R = " + std::to_string(2 * range));
    }
  }
  const int nmin = *std::min_element(config.n_list.begin(), config.n_list.end());
  if (config.mask.kind == MaskSpec::Kind::block) {
    if (config.mask.block_size < 0 || config.mask.block_size > nmin) {
      config_error("block size must lie in [0, min(n_list)]");
    }
  } else if (!(config.mask.rho >= 0.0 && config.mask.rho <= 1.0)) {
    config_error("mask fraction must lie in [0, 1]");
  }
  if (!(config.tolerances.scale > 0.0)) config_error("tolerance scale must be positive");
  if (!(config.tolerances.gmres > 0.0 && config.tolerances.gmres < 1.0)) config_error("gmres tolerance must lie in (0, 1)");
  if (config.workers < 1) config_error("workers must be at least 1");
  if (config.command == Command::similarity && range != 2) {
    config_error("similarity needs R = 2: the quasinonlocal operator is undefined beyond second neighbours");
  }
}

}  // namespace qcspectra::cli
