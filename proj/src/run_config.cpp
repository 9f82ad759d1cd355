#include "nks/run_config.hpp"

#include <fstream>

#include <json.hpp>

namespace nks {

namespace {

using nlohmann::json;

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(key, "wrong type");
  }
}

template <typename T>
T require(const json& j, const char* key) {
  if (!j.contains(key)) throw ConfigError(key, "missing");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(key, "wrong type");
  }
}

}  // namespace

void RunConfig::validate() const {
  if (!(s > 1.0)) throw ConfigError("s", "require s > 1");
  if (!(r >= -1.0 && r < s)) throw ConfigError("r", "require r in [-1, s)");
  if (modes < 4) throw ConfigError("modes", "require modes >= 4");
  for (std::size_t i = 0; i < branches.size(); ++i) {
    const auto& b = branches[i];
    const std::string where = "branches[" + std::to_string(i) + "]";
    if (b.k < 1) throw ConfigError(where + ".k", "require k >= 1");
    if (b.k > modes) throw ConfigError(where + ".k", "k exceeds mode count");
    const double a = std::abs(b.t0);
    if (!(a > 0.0 && a <= 0.5))
      throw ConfigError(where + ".t0", "require |t0| in (0, 0.5]");
    if (b.direction < -1 || b.direction > 1)
      throw ConfigError(where + ".direction", "require -1, 0 or 1");
  }
  try {
    continuation.validate();
  } catch (const std::invalid_argument& e) {
    const std::string what = e.what();
    const auto colon = what.find(':');
    throw ConfigError(what.substr(0, colon), what.substr(colon + 2));
  }
  for (std::size_t i = 0; i < evolution.size(); ++i) {
    const auto& ev = evolution[i];
    const std::string where = "evolution[" + std::to_string(i) + "]";
    if (!(ev.eps > 0.0)) throw ConfigError(where + ".eps", "require eps > 0");
    if (!(ev.T > 0.0)) throw ConfigError(where + ".T", "require T > 0");
    if (!(ev.dt > 0.0)) throw ConfigError(where + ".dt", "require dt > 0");
    if (ev.sample_every < 1)
      throw ConfigError(where + ".sample_every", "require >= 1");
    for (const auto& [k, amp] : ev.u0_modes) {
      (void)amp;
      if (k < 1 || k > modes) throw ConfigError(where + ".u0", "mode out of range");
    }
  }
}

RunConfig RunConfig::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError("config", std::string("not valid JSON: ") + e.what());
  }

  const int version = require<int>(j, "version");
  if (version != 1)
    throw ConfigError("version", "unsupported schema version " + std::to_string(version));

  RunConfig cfg;
  cfg.r = require<double>(j, "r");
  cfg.s = require<double>(j, "s");
  cfg.modes = get_or<int>(j, "modes", cfg.modes);
  cfg.rng_seed = get_or<std::uint64_t>(j, "rng_seed", 0);
  cfg.output_dir = get_or<std::string>(j, "output_dir", cfg.output_dir);
  cfg.continuation.modes = cfg.modes;

  if (j.contains("branches")) {
    if (!j.at("branches").is_array()) throw ConfigError("branches", "expected array");
    for (const auto& jb : j.at("branches")) {
      BranchSeedConfig b;
      b.k = require<int>(jb, "k");
      b.t0 = get_or<double>(jb, "t0", b.t0);
      b.direction = get_or<int>(jb, "direction", 0);
      cfg.branches.push_back(b);
    }
  }

  if (j.contains("continuation")) {
    const auto& jc = j.at("continuation");
    auto& cc = cfg.continuation;
    cc.ds0 = get_or<double>(jc, "ds0", cc.ds0);
    cc.ds_min = get_or<double>(jc, "ds_min", cc.ds_min);
    cc.ds_max = get_or<double>(jc, "ds_max", cc.ds_max);
    cc.max_steps = get_or<int>(jc, "max_steps", cc.max_steps);
    cc.eps_floor = get_or<double>(jc, "eps_floor", cc.eps_floor);
    cc.newton.tol_inf = get_or<double>(jc, "newton_tol", cc.newton.tol_inf);
    cc.newton.max_iter = get_or<int>(jc, "newton_max_iter", cc.newton.max_iter);
    cc.tail_energy_limit = get_or<double>(jc, "tail_energy_limit", cc.tail_energy_limit);
    cc.tail_mode_fraction =
        get_or<double>(jc, "tail_mode_fraction", cc.tail_mode_fraction);
  }

  if (j.contains("evolution")) {
    if (!j.at("evolution").is_array()) throw ConfigError("evolution", "expected array");
    for (const auto& je : j.at("evolution")) {
      EvolutionRunConfig ev;
      ev.eps = require<double>(je, "eps");
      ev.T = require<double>(je, "T");
      ev.dt = get_or<double>(je, "dt", ev.dt);
      ev.sample_every = get_or<int>(je, "sample_every", ev.sample_every);
      if (je.contains("u0")) {
        for (const auto& term : je.at("u0")) {
          if (!term.is_array() || term.size() != 2)
            throw ConfigError("evolution.u0", "expected [mode, amplitude] pairs");
          ev.u0_modes.emplace_back(term[0].get<int>(), term[1].get<double>());
        }
      }
      cfg.evolution.push_back(std::move(ev));
    }
  }

  cfg.validate();
  return cfg;
}

RunConfig RunConfig::from_json_file(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("config", "cannot open " + path.string());
  std::string text((std::istreambuf_iterator<char>(is)),
                   std::istreambuf_iterator<char>());
  return from_json_text(text);
}

}  // namespace nks
