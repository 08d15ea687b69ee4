#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "frontlab/core.hpp"
#include "frontlab/io.hpp"

namespace frontlab {

inline constexpr const char* kArtifactVersion = "frontlab 0.1.0";

struct ManifestJob {
  std::string module;
  std::string parameters;
  std::uint64_t seed = 0;
  std::string output;
  double wall_time_s = 0.0;
  std::string status = "pending";  // pending | done | failed
};

// One manifest per run directory: reruns with the same config hash must
// reproduce every referenced output byte for byte.
struct RunManifest {
  std::uint64_t config_hash = 0;
  std::string version = kArtifactVersion;
  std::vector<ManifestJob> jobs;

  void save(const std::string& path) const {
    nlohmann::json j;
    j["config_hash"] = config_hash;
    j["version"] = version;
    j["jobs"] = nlohmann::json::array();
    for (const auto& job : jobs) {
      nlohmann::json e;
      e["module"] = job.module;
      e["parameters"] = job.parameters;
      e["seed"] = job.seed;
      e["output"] = job.output;
      e["wall_time_s"] = job.wall_time_s;
      e["status"] = job.status;
      j["jobs"].push_back(e);
    }
    write_text_file(path, j.dump(2) + "\n");
  }

  static RunManifest load(const std::string& path) {
    const nlohmann::json j = nlohmann::json::parse(read_text_file(path));
    RunManifest m;
    m.config_hash = j.at("config_hash").get<std::uint64_t>();
    m.version = j.value("version", std::string());
    for (const auto& e : j.at("jobs")) {
      ManifestJob job;
      job.module = e.at("module").get<std::string>();
      job.parameters = e.at("parameters").get<std::string>();
      job.seed = e.at("seed").get<std::uint64_t>();
      job.output = e.at("output").get<std::string>();
      job.wall_time_s = e.at("wall_time_s").get<double>();
      job.status = e.at("status").get<std::string>();
      m.jobs.push_back(job);
    }
    return m;
  }
};

class WallClock {
 public:
  WallClock() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace frontlab
