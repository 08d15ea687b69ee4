#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "frontlab/homogenize.hpp"
#include "frontlab/hypotheses.hpp"

namespace frontlab {

// FNV-1a over the raw config bytes; stamped into every output header.
inline std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

struct ParsedConfig {
  ExperimentConfig experiment;
  std::string body_spec = "ball:1.0";
  Box<3> field_domain{};  // per-axis extents for sample-field (first d axes)
  double solve_h = 0.25;
  std::uint64_t config_hash = 0;
  RateExponents exponents;
  std::string echo;
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace detail

// Flat key/value text with [hypotheses], [geometry], [ladder], [runtime]
// sections.  Unknown keys are errors; invariant violations are reported with
// the invariant named.
inline ParsedConfig parse_config_text(const std::string& text) {
  using detail::trim;
  std::map<std::string, std::string> kv;
  std::string section;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("bad section header at line " + std::to_string(lineno));
      section = trim(line.substr(1, line.size() - 2));
      if (section != "hypotheses" && section != "geometry" && section != "ladder" &&
          section != "runtime")
        throw ConfigError("unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("expected key = value at line " + std::to_string(lineno));
    if (section.empty()) throw ConfigError("key outside any section at line " + std::to_string(lineno));
    const std::string key = section + "." + trim(line.substr(0, eq));
    if (kv.count(key)) throw ConfigError("duplicate key " + key);
    kv[key] = trim(line.substr(eq + 1));
  }

  ParsedConfig out;
  out.config_hash = fnv1a(text);
  ExperimentConfig& cfg = out.experiment;
  ReactionHypotheses& hyp = cfg.hyp;
  out.field_domain.lo = {-8.0, -8.0, -8.0};
  out.field_domain.hi = {8.0, 8.0, 8.0};

  std::set<std::string> seen;
  auto get = [&](const std::string& key, auto& target) {
    const auto it = kv.find(key);
    if (it == kv.end()) return false;
    seen.insert(key);
    using T = std::decay_t<decltype(target)>;
    if constexpr (std::is_same_v<T, double>) {
      target = std::stod(it->second);
    } else if constexpr (std::is_same_v<T, int>) {
      target = std::stoi(it->second);
    } else if constexpr (std::is_same_v<T, std::uint64_t>) {
      target = std::stoull(it->second);
    } else if constexpr (std::is_same_v<T, std::string>) {
      target = it->second;
    } else if constexpr (std::is_same_v<T, std::vector<double>>) {
      target = parse_number_list(it->second);
    }
    return true;
  };

  get("hypotheses.M", hyp.lipschitz);
  get("hypotheses.theta1", hyp.theta1);
  get("hypotheses.m1", hyp.m1);
  get("hypotheses.alpha1", hyp.alpha1);
  get("hypotheses.rho", hyp.rho);
  get("hypotheses.d", hyp.dim);
  get("hypotheses.nu", hyp.nu);
  get("hypotheses.delta_theta", hyp.delta_theta);
  get("hypotheses.ramp_width", hyp.ramp_width);
  get("hypotheses.amp_max", hyp.amp_max);
  get("hypotheses.theta_star", hyp.theta_star);
  {
    double m3 = 0, alpha3 = 0, m4 = 0, n4 = 0, alpha4 = 0;
    const bool has3 = get("hypotheses.m3", m3) | get("hypotheses.alpha3", alpha3);
    const bool has4 = get("hypotheses.m4", m4) | get("hypotheses.n4", n4) |
                      get("hypotheses.alpha4", alpha4);
    if (has3) hyp.h3 = DecayConstants{m3, alpha3};
    if (has4) hyp.h4 = ApproximationConstants{m4, n4, alpha4};
  }

  get("geometry.body", out.body_spec);
  get("geometry.theta", cfg.theta);
  get("geometry.directions", cfg.direction_resolution);
  {
    std::vector<double> dom;
    if (get("geometry.domain", dom)) {
      if (dom.size() != 2 || !(dom[0] < dom[1]))
        throw ConfigError("geometry.domain must be 'lo,hi' with lo < hi");
      for (int a = 0; a < 3; ++a) {
        out.field_domain.lo[a] = dom[0];
        out.field_domain.hi[a] = dom[1];
      }
    }
  }

  get("ladder.eps", cfg.eps_ladder);
  get("ladder.seeds_per_eps", cfg.seeds_per_eps);
  get("ladder.T0", cfg.t0);
  get("ladder.checkpoints", cfg.checkpoint_count);
  get("ladder.C0", cfg.c0_floor);
  get("ladder.profile_lengths", cfg.profile_lengths);
  get("ladder.profile_seeds", cfg.profile_seeds);

  get("runtime.threads", cfg.threads);
  get("runtime.root_seed", cfg.root_seed);
  get("runtime.memory_cap_mb", cfg.solve.memory_cap_mb);
  get("runtime.h_unscaled", cfg.solve.h_unscaled);
  out.solve_h = cfg.solve.h_unscaled;

  for (const auto& [key, value] : kv)
    if (!seen.count(key)) throw ConfigError("unknown key " + key + " = " + value);

  hyp.validate();
  cfg.validate();
  out.exponents = rate_exponents(hyp);

  std::ostringstream echo;
  echo << "hypotheses: M=" << hyp.lipschitz << " theta1=" << hyp.theta1 << " m1=" << hyp.m1
       << " alpha1=" << hyp.alpha1 << " rho=" << hyp.rho << " d=" << hyp.dim
       << " nu=" << hyp.nu << "\n"
       << "exponents:  " << describe(out.exponents) << "\n"
       << "bounds:     c1=" << speed_cap_c1(hyp) << " kappa1=" << speed_cap_kappa1(hyp)
       << "\n";
  out.echo = echo.str();
  return out;
}

inline ParsedConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

}  // namespace frontlab
