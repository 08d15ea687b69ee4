#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "frontlab/geometry.hpp"
#include "frontlab/grid.hpp"

namespace frontlab {

// Decimal with 17 significant digits: doubles round-trip exactly.
inline std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// Snapshot persistence: header (grid dims, h, t, field seed, config hash) plus
// the flat value array as little-endian 64-bit floats.

template <int D>
void save_snapshot(const GridState<D>& s, std::uint64_t field_seed, const std::string& path,
                   std::uint64_t config_hash = 0) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw ConfigError("cannot open " + path + " for writing");
  const std::uint64_t magic = 0x464c534e31ULL + D;  // "FLSN1"+dim
  detail::write_u64(f, magic);
  detail::write_u64(f, config_hash);
  detail::write_u64(f, field_seed);
  detail::write_f64(f, s.grid.h);
  detail::write_f64(f, s.t);
  for (int a = 0; a < D; ++a) {
    detail::write_f64(f, s.grid.origin[a]);
    detail::write_i64(f, s.grid.n[a]);
    detail::write_u64(f, static_cast<std::uint64_t>(s.grid.bc[a]));
  }
  std::fwrite(s.u.data(), 8, s.u.size(), f);
  std::fclose(f);
}

template <int D>
GridState<D> load_snapshot(const std::string& path, std::uint64_t* field_seed = nullptr) {
  std::FILE* f = std::fopen(path.c_str(), "rb");
  if (!f) throw ConfigError("cannot open " + path);
  if (detail::read_u64(f) != 0x464c534e31ULL + D) {
    std::fclose(f);
    throw ConfigError("not a dimension-" + std::to_string(D) + " snapshot: " + path);
  }
  detail::read_u64(f);
  const std::uint64_t seed = detail::read_u64(f);
  if (field_seed) *field_seed = seed;
  GridState<D> s;
  s.grid.h = detail::read_f64(f);
  s.t = detail::read_f64(f);
  for (int a = 0; a < D; ++a) {
    s.grid.origin[a] = detail::read_f64(f);
    s.grid.n[a] = static_cast<int>(detail::read_i64(f));
    s.grid.bc[a] = static_cast<BoundaryRule>(detail::read_u64(f));
  }
  s.u.resize(s.grid.size());
  if (std::fread(s.u.data(), 8, s.u.size(), f) != s.u.size()) {
    std::fclose(f);
    throw ConfigError("truncated snapshot: " + path);
  }
  std::fclose(f);
  return s;
}

// ---------------------------------------------------------------------------
// Convex bodies as CSV: one row per direction, components then support value.

template <int D>
std::string body_to_csv(const ConvexBody<D>& a) {
  std::ostringstream os;
  for (int d = 0; d < D; ++d) os << "e" << d << ",";
  os << "support\n";
  for (std::size_t i = 0; i < a.dirs().size(); ++i) {
    for (int d = 0; d < D; ++d) os << format_number(a.dirs()[i][d]) << ",";
    os << format_number(a.support()[i]) << "\n";
  }
  return os.str();
}

template <int D>
ConvexBody<D> body_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("empty body CSV");
  std::vector<Vec<D>> dirs;
  std::vector<double> h;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    Vec<D> e{};
    for (int d = 0; d < D; ++d) {
      if (!std::getline(ss, cell, ',')) throw ConfigError("short row in body CSV");
      e[d] = std::stod(cell);
    }
    if (!std::getline(ss, cell, ',')) throw ConfigError("short row in body CSV");
    dirs.push_back(e);
    h.push_back(std::stod(cell));
  }
  return ConvexBody<D>(std::move(dirs), std::move(h));
}

// Boundary polyline of a body (for plotting): one row per grid direction.
template <int D>
std::string boundary_polyline_csv(const ConvexBody<D>& a) {
  std::ostringstream os;
  for (int d = 0; d < D; ++d) os << (d ? "," : "") << "x" << d;
  os << "\n";
  for (const auto& p : boundary_samples(a)) {
    for (int d = 0; d < D; ++d) os << (d ? "," : "") << format_number(p[d]);
    os << "\n";
  }
  return os.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open " + path + " for writing");
  out << text;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace frontlab
