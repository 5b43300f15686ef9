#include "nsbench/bench/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "nsbench/catalog.hpp"
#include "nsbench/errors.hpp"

namespace nsbench::bench {

using json = nlohmann::json;

namespace {

std::string valid_algorithm_list() {
  std::string out;
  for (auto name : optim::kAlgorithmNames) {
    if (!out.empty()) out += ", ";
    out += name;
  }
  return out;
}

enum class Family { adam, sfo, lmbm, gradsamp };

Family family(optim::Algorithm alg) {
  switch (alg) {
    case optim::Algorithm::adam:
      return Family::adam;
    case optim::Algorithm::sfo:
      return Family::sfo;
    case optim::Algorithm::gradsamp:
      return Family::gradsamp;
    default:
      return Family::lmbm;
  }
}

double number(const json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError("parameter '" + key + "' must be a number");
  return v.get<double>();
}

std::int64_t integer(const json& v, const std::string& key) {
  if (!v.is_number_integer()) throw ConfigError("'" + key + "' must be an integer");
  return v.get<std::int64_t>();
}

void apply_params(const json& params, const std::string& name, Family fam, optim::AlgorithmParams& p) {
  if (!params.is_object()) throw ConfigError("params of '" + name + "' must be an object");
  for (const auto& [key, v] : params.items()) {
    bool known = true;
    switch (fam) {
      case Family::adam:
        if (key == "alpha") p.adam.alpha = number(v, key);
        else if (key == "beta1") p.adam.beta1 = number(v, key);
        else if (key == "beta2") p.adam.beta2 = number(v, key);
        else if (key == "epsilon") p.adam.epsilon = number(v, key);
        else known = false;
        break;
      case Family::sfo:
        if (key == "initial_step") p.sfo.initial_step = number(v, key);
        else if (key == "eigenvalue_floor") p.sfo.eigenvalue_floor = number(v, key);
        else if (key == "subspace_cap") {
          const auto cap = integer(v, key);
          if (cap < 0) throw ConfigError("'subspace_cap' must be nonnegative");
          p.sfo.subspace_cap = static_cast<std::size_t>(cap);
        } else known = false;
        break;
      case Family::lmbm:
        if (key == "w_tol") p.lmbm.w_tol = number(v, key);
        else if (key == "capacity") {
          const auto cap = integer(v, key);
          if (cap < 1) throw ConfigError("'capacity' must be positive");
          p.lmbm.memory.capacity = static_cast<std::size_t>(cap);
        } else if (key == "gamma") p.lmbm_gamma = number(v, key);
        else if (key == "eps_left") p.lmbm.line_search.eps_left = number(v, key);
        else if (key == "eps_right") p.lmbm.line_search.eps_right = number(v, key);
        else if (key == "max_trials") p.lmbm.line_search.max_trials = static_cast<int>(integer(v, key));
        else known = false;
        break;
      case Family::gradsamp:
        if (key == "initial_radius") p.gradsamp.initial_radius = number(v, key);
        else if (key == "shrink") p.gradsamp.shrink = number(v, key);
        else if (key == "nu_tol") p.gradsamp.nu_tol = number(v, key);
        else if (key == "armijo") p.gradsamp.armijo = number(v, key);
        else known = false;
        break;
    }
    if (!known) throw ConfigError("unknown parameter '" + key + "' for algorithm '" + name + "'");
  }
  try {
    switch (fam) {
      case Family::adam:
        p.adam.validate();
        break;
      case Family::sfo:
        p.sfo.validate();
        break;
      case Family::lmbm:
        p.lmbm.validate();
        if (p.lmbm_gamma && *p.lmbm_gamma < 0.0) throw ContractViolation("lmbm: gamma must be nonnegative");
        break;
      case Family::gradsamp:
        p.gradsamp.validate();
        break;
    }
  } catch (const ContractViolation& e) {
    throw ConfigError(e.what());
  }
}

json params_json(const AlgorithmSpec& spec) {
  const auto& p = spec.params;
  json out = json::object();
  switch (family(spec.algorithm)) {
    case Family::adam:
      out["alpha"] = p.adam.alpha;
      out["beta1"] = p.adam.beta1;
      out["beta2"] = p.adam.beta2;
      out["epsilon"] = p.adam.epsilon;
      break;
    case Family::sfo:
      out["initial_step"] = p.sfo.initial_step;
      out["eigenvalue_floor"] = p.sfo.eigenvalue_floor;
      out["subspace_cap"] = p.sfo.subspace_cap;
      break;
    case Family::lmbm:
      out["w_tol"] = p.lmbm.w_tol;
      out["capacity"] = p.lmbm.memory.capacity;
      if (p.lmbm_gamma) out["gamma"] = *p.lmbm_gamma;
      out["eps_left"] = p.lmbm.line_search.eps_left;
      out["eps_right"] = p.lmbm.line_search.eps_right;
      out["max_trials"] = p.lmbm.line_search.max_trials;
      break;
    case Family::gradsamp:
      out["initial_radius"] = p.gradsamp.initial_radius;
      out["shrink"] = p.gradsamp.shrink;
      out["nu_tol"] = p.gradsamp.nu_tol;
      out["armijo"] = p.gradsamp.armijo;
      break;
  }
  return out;
}

AlgorithmSpec parse_algorithm_entry(const json& entry) {
  std::string name;
  const json* params = nullptr;
  if (entry.is_string()) {
    name = entry.get<std::string>();
  } else if (entry.is_object()) {
    for (const auto& [key, v] : entry.items()) {
      if (key != "name" && key != "params") throw ConfigError("unknown key '" + key + "' in algorithm entry");
    }
    if (!entry.contains("name") || !entry["name"].is_string()) throw ConfigError("algorithm entry needs a string 'name'");
    name = entry["name"].get<std::string>();
    if (entry.contains("params")) params = &entry["params"];
  } else {
    throw ConfigError("algorithm entries must be names or objects");
  }
  auto alg = optim::parse_algorithm(name);
  if (!alg) throw ConfigError("unknown algorithm '" + name + "'; valid names: " + valid_algorithm_list());
  AlgorithmSpec spec;
  spec.algorithm = *alg;
  if (params != nullptr) apply_params(*params, name, family(*alg), spec.params);
  return spec;
}

std::size_t line_of(std::string_view text, std::size_t byte) {
  const std::size_t end = std::min(text.size(), byte > 0 ? byte - 1 : 0);
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(end), '\n'));
}

}  // namespace

void BenchmarkConfig::validate() const {
  if (problems.empty()) throw ConfigError("config: at least one problem is required");
  if (algorithms.empty()) throw ConfigError("config: at least one algorithm is required");
  if (budget < 1) throw ConfigError("config: budget must be at least 1");
  if (repetitions < 1) throw ConfigError("config: repetitions must be at least 1");
  if (output_dir.empty()) throw ConfigError("config: output_dir must not be empty");
  for (const auto& p : problems) {
    if (!is_known_problem(p)) {
      std::string patterns;
      for (const auto& s : problem_patterns()) patterns += (patterns.empty() ? "" : ", ") + s;
      throw ConfigError("unknown problem '" + p + "'; valid forms: " + patterns);
    }
  }
}

BenchmarkConfig load_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(line_of(text, e.byte), std::string("malformed config: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config: top level must be an object");

  BenchmarkConfig cfg;
  try {
    for (const auto& [key, v] : doc.items()) {
      if (key == "problems") {
        if (!v.is_array()) throw ConfigError("'problems' must be an array");
        for (const auto& p : v) {
          if (!p.is_string()) throw ConfigError("problem names must be strings");
          cfg.problems.push_back(p.get<std::string>());
        }
      } else if (key == "algorithms") {
        if (!v.is_array()) throw ConfigError("'algorithms' must be an array");
        for (const auto& a : v) cfg.algorithms.push_back(parse_algorithm_entry(a));
      } else if (key == "budget") {
        cfg.budget = integer(v, key);
      } else if (key == "seed") {
        if (!v.is_number_unsigned()) throw ConfigError("'seed' must be a nonnegative integer");
        cfg.seed = v.get<std::uint64_t>();
      } else if (key == "repetitions") {
        cfg.repetitions = integer(v, key);
      } else if (key == "output_dir") {
        if (!v.is_string()) throw ConfigError("'output_dir' must be a string");
        cfg.output_dir = v.get<std::string>();
      } else if (key == "clock") {
        if (!v.is_string()) throw ConfigError("'clock' must be a string");
        cfg.clock = parse_clock_kind(v.get<std::string>());
      } else {
        throw ConfigError("unknown config key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

BenchmarkConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_config(buf.str());
}

std::string serialize_config(const BenchmarkConfig& cfg) {
  json doc = json::object();
  doc["problems"] = cfg.problems;
  json algs = json::array();
  for (const auto& a : cfg.algorithms) {
    algs.push_back({{"name", std::string(optim::to_string(a.algorithm))}, {"params", params_json(a)}});
  }
  doc["algorithms"] = std::move(algs);
  doc["budget"] = cfg.budget;
  doc["seed"] = cfg.seed;
  doc["repetitions"] = cfg.repetitions;
  doc["output_dir"] = cfg.output_dir;
  doc["clock"] = std::string(to_string(cfg.clock));
  return doc.dump(2) + "\n";
}

BenchmarkConfig default_suite_config() {
  BenchmarkConfig cfg;
  cfg.problems = {"relunet-16-3-5", "relunet-16-3-15", "relunet-16-3-25", "relunet-16-3-35"};
  cfg.algorithms = {AlgorithmSpec{optim::Algorithm::adam, {}}, AlgorithmSpec{optim::Algorithm::sfo, {}},
                    AlgorithmSpec{optim::Algorithm::lmbm, {}}};
  cfg.budget = 1000;
  cfg.seed = 20240601;
  cfg.repetitions = 1;
  cfg.output_dir = "results";
  cfg.clock = ClockKind::work;
  return cfg;
}

}  // namespace nsbench::bench
