#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "frontlab/config.hpp"
#include "frontlab/homogenize.hpp"
#include "frontlab/io.hpp"
#include "frontlab/manifest.hpp"
#include "frontlab/parallel.hpp"
#include "frontlab/speed.hpp"

namespace fs = std::filesystem;
using namespace frontlab;

namespace {

struct GlobalOptions {
  std::string out_dir = ".";
  int threads = 0;  // 0: FRONTLAB_THREADS or hardware
  std::uint64_t root_seed = 0;
  bool root_seed_set = false;
  bool resume = false;
};

int resolved_threads(const GlobalOptions& g) {
  return g.threads > 0 ? g.threads : default_thread_count();
}

std::string out_path(const GlobalOptions& g, const std::string& name) {
  fs::create_directories(g.out_dir);
  return (fs::path(g.out_dir) / name).string();
}

ParsedConfig load_config(const std::string& path, const GlobalOptions& g) {
  ParsedConfig cfg = parse_config(path);
  cfg.experiment.threads = resolved_threads(g);
  if (g.root_seed_set) cfg.experiment.root_seed = g.root_seed;
  std::cout << cfg.echo;
  return cfg;
}

// --------------------------------------------------------------------------
// sample-field

int cmd_sample_field(const GlobalOptions& g, const std::string& config_path,
                     std::uint64_t seed, const std::string& out) {
  const ParsedConfig cfg = load_config(config_path, g);
  const ReactionHypotheses& hyp = cfg.experiment.hyp;
  RunManifest manifest;
  manifest.config_hash = cfg.config_hash;
  ManifestJob job{"sample-field", "seed=" + std::to_string(seed), seed, out, 0.0, "pending"};
  WallClock clock;

  const std::string path = out_path(g, out);
  if (hyp.dim == 1) {
    Box<1> box{{cfg.field_domain.lo[0]}, {cfg.field_domain.hi[0]}};
    IgnitionField<1>::sample(hyp, box, seed).save(path, cfg.config_hash);
  } else if (hyp.dim == 2) {
    Box<2> box{{cfg.field_domain.lo[0], cfg.field_domain.lo[1]},
               {cfg.field_domain.hi[0], cfg.field_domain.hi[1]}};
    IgnitionField<2>::sample(hyp, box, seed).save(path, cfg.config_hash);
  } else {
    Box<3> box = cfg.field_domain;
    IgnitionField<3>::sample(hyp, box, seed).save(path, cfg.config_hash);
  }
  job.wall_time_s = clock.seconds();
  job.status = "done";
  manifest.jobs.push_back(job);
  manifest.save(out_path(g, "manifest.json"));
  std::cout << "wrote " << path << "\n";
  return 0;
}

// --------------------------------------------------------------------------
// solve

template <int D>
int solve_with(const GlobalOptions& g, const std::string& field_path,
               const std::string& init, double until, double checkpoint_every,
               double h, const std::string& prefix, RunManifest& manifest) {
  const IgnitionField<D> field = IgnitionField<D>::load(field_path);
  const ReactionHypotheses& hyp = field.hypotheses();
  Box<D> box = field.domain();
  for (int a = 0; a < D; ++a) {
    box.lo[a] += hyp.rho;
    box.hi[a] -= hyp.rho;
  }
  const Grid<D> grid = Grid<D>::cover(box, h);
  const BaselineReaction f0 = BaselineReaction::build(hyp);

  GridState<D> s(grid);
  if (init.rfind("halfspace:", 0) == 0) {
    const std::vector<double> p = parse_number_list(init.substr(10));
    if (p.size() != static_cast<std::size_t>(D) + 1)
      throw ConfigError("halfspace spec needs D normal components and an offset");
    Vec<D> e{};
    for (int a = 0; a < D; ++a) e[a] = p[static_cast<std::size_t>(a)];
    s = build_front_data_halfspace<D>(e, p.back(), f0, grid, hyp.theta_star).state;
  } else if (init == "empty") {
    s = build_front_data_empty<D>(grid).state;
  } else {
    const ConvexBody<D> body = make_body<D>(init, direction_grid<D>(D == 3 ? 3 : 256));
    s = build_front_data<D>(
            [&body](const Vec<D>& x) { return std::max(0.0, body.membership_margin(x)); },
            f0, grid, hyp.theta_star)
            .state;
  }

  Stepper<D> stepper(grid, field);
  int snapshot = 0;
  WallClock clock;
  auto dump = [&](double t) {
    char name[64];
    std::snprintf(name, sizeof(name), "%s_t%08.3f.bin", prefix.c_str(), t);
    const std::string path = out_path(g, name);
    save_snapshot<D>(s, field.seed(), path);
    manifest.jobs.push_back({"solve", "t=" + format_number(t), field.seed(), path,
                             clock.seconds(), "done"});
    ++snapshot;
  };
  dump(0.0);
  const double step = checkpoint_every > 0.0 ? checkpoint_every : until;
  for (double t = step; t < until + 1e-12; t += step) {
    stepper.advance(s, std::min(t, until));
    dump(s.t);
  }
  std::cout << "wrote " << snapshot << " snapshots\n";
  return 0;
}

int cmd_solve(const GlobalOptions& g, const std::string& field_path, const std::string& init,
              double until, double checkpoint_every, double h, const std::string& prefix) {
  RunManifest manifest;
  int rc = 1;
  // Field files carry their dimension in the magic; probe the loaders.
  for (int d = 1; d <= 3 && rc != 0; ++d) {
    try {
      if (d == 1) rc = solve_with<1>(g, field_path, init, until, checkpoint_every, h, prefix, manifest);
      if (d == 2) rc = solve_with<2>(g, field_path, init, until, checkpoint_every, h, prefix, manifest);
      if (d == 3) rc = solve_with<3>(g, field_path, init, until, checkpoint_every, h, prefix, manifest);
    } catch (const ConfigError& e) {
      if (std::string(e.what()).find("not a dimension") == std::string::npos) throw;
    }
  }
  if (rc != 0) throw ConfigError("could not load field file " + field_path);
  manifest.save(out_path(g, "manifest.json"));
  return 0;
}

// --------------------------------------------------------------------------
// speed

std::vector<double> parse_ladder(const std::string& spec) {
  // a:b:n geometric ladder, or a plain comma list.
  if (spec.find(':') == std::string::npos) return parse_number_list(spec);
  std::vector<double> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(std::stod(item));
  if (parts.size() != 3 || parts[0] <= 0 || parts[1] < parts[0] || parts[2] < 1)
    throw ConfigError("ladder spec must be a:b:n with 0 < a <= b, n >= 1");
  const int n = static_cast<int>(parts[2]);
  std::vector<double> out;
  for (int i = 0; i < n; ++i) {
    const double t = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
    out.push_back(parts[0] * std::pow(parts[1] / parts[0], t));
  }
  return out;
}

template <int D>
int speed_with(const GlobalOptions& g, const ParsedConfig& cfg, const std::string& direction,
               const std::vector<double>& lengths, int seeds, const std::string& out) {
  const ReactionHypotheses& hyp = cfg.experiment.hyp;
  std::vector<Vec<D>> dirs;
  if (direction == "grid") {
    const int n = cfg.experiment.direction_resolution > 0
                      ? cfg.experiment.direction_resolution
                      : (D == 3 ? 2 : 32);
    dirs = direction_grid<D>(n);
  } else {
    const std::vector<double> p = parse_number_list(direction);
    if (p.size() != static_cast<std::size_t>(D))
      throw ConfigError("direction needs " + std::to_string(D) + " components");
    Vec<D> e{};
    for (int a = 0; a < D; ++a) e[a] = p[static_cast<std::size_t>(a)];
    dirs.push_back(normalized<D>(e));
  }

  // Lengths must land on slab nodes.
  std::vector<double> snapped;
  const double h = cfg.solve_h;
  for (double l : lengths) snapped.push_back(std::max(1.0, std::round(l / h) * h));

  const SpeedBounds bounds = speed_bounds(hyp);
  const BaselineReaction f0 = BaselineReaction::build(hyp);
  RunManifest manifest;
  manifest.config_hash = cfg.config_hash;
  WallClock clock;

  std::ostringstream csv;
  csv << "# " << kArtifactVersion << " config_hash=" << cfg.config_hash
      << " c0=" << format_number(bounds.c0) << " c1=" << format_number(bounds.c1) << "\n";
  csv << "kind,direction,l,seed,T,c_star,stderr\n";
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    EstimateOptions opts;
    opts.slab.threads = resolved_threads(g);
    opts.slab.h = h;
    opts.root_seed = mix(cfg.experiment.root_seed, seed_tag::speed_lab, 0xD1, i);

    std::string dtext;
    for (int a = 0; a < D; ++a) dtext += (a ? ";" : "") + format_number(dirs[i][a]);

    // Raw arrivals per seed.
    for (int s = 0; s < seeds; ++s) {
      const std::uint64_t seed = mix(opts.root_seed, seed_tag::speed_lab, static_cast<std::uint64_t>(s));
      const auto run = halfspace_arrival<D>(hyp, seed, dirs[i], Vec<D>{}, snapped, f0, bounds.c0, opts.slab);
      for (std::size_t j = 0; j < snapped.size(); ++j)
        csv << "sample," << dtext << "," << format_number(snapped[j]) << "," << s << ","
            << format_number(run.times[j]) << ",,\n";
    }
    const SpeedEstimate est =
        estimate_front_speed<D>(hyp, dirs[i], snapped, seeds, f0, bounds.c0, opts);
    csv << "aggregate," << dtext << ",,,," << format_number(est.c_star) << ","
        << format_number(est.stderr_c) << "\n";
    std::cout << "direction " << dtext << ": c* = " << est.c_star << " (stderr "
              << est.stderr_c << ")\n";
  }
  const std::string path = out_path(g, out);
  write_text_file(path, csv.str());
  manifest.jobs.push_back({"speed", "directions=" + std::to_string(dirs.size()),
                           cfg.experiment.root_seed, path, clock.seconds(), "done"});
  manifest.save(out_path(g, "manifest.json"));
  std::cout << "wrote " << path << "\n";
  return 0;
}

// --------------------------------------------------------------------------
// homogenize + report

std::string row_to_json(const InclusionRow& r, double sigma) {
  std::ostringstream os;
  os << "{\"eps\":" << format_number(r.eps) << ",\"seed\":" << r.seed_index
     << ",\"t\":" << format_number(r.t) << ",\"lower_ok\":" << (r.lower_ok ? "true" : "false")
     << ",\"upper_ok\":" << (r.upper_ok ? "true" : "false")
     << ",\"d_h\":" << (std::isfinite(r.d_h) ? format_number(r.d_h) : "null")
     << ",\"sigma\":" << format_number(sigma) << "}";
  return os.str();
}

std::vector<InclusionRow> rows_from_jsonl(const std::string& text, double* sigma_out) {
  std::vector<InclusionRow> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const nlohmann::json j = nlohmann::json::parse(line);
    if (j.contains("meta")) continue;
    InclusionRow r;
    r.eps = j.at("eps").get<double>();
    r.seed_index = j.at("seed").get<std::uint64_t>();
    r.t = j.at("t").get<double>();
    r.lower_ok = j.at("lower_ok").get<bool>();
    r.upper_ok = j.at("upper_ok").get<bool>();
    r.d_h = j.at("d_h").is_null() ? std::numeric_limits<double>::infinity()
                                  : j.at("d_h").get<double>();
    if (sigma_out) *sigma_out = j.at("sigma").get<double>();
    rows.push_back(r);
  }
  return rows;
}

template <int D>
int homogenize_with(const GlobalOptions& g, const ParsedConfig& parsed, const std::string& out) {
  ExperimentConfig cfg = parsed.experiment;
  cfg.validate();
  const RateExponents ex = rate_exponents(cfg.hyp);
  const auto dirs = direction_grid<D>(cfg.dirs_resolution());
  const ConvexBody<D> body = make_body<D>(cfg.body_spec, dirs);
  const std::string path = out_path(g, out);

  // Resume: rows for (eps, seed) pairs already on disk are kept as is.
  std::set<std::pair<std::size_t, std::uint64_t>> done;
  std::vector<InclusionRow> existing;
  if (g.resume && fs::exists(path)) {
    existing = rows_from_jsonl(read_text_file(path), nullptr);
    std::map<std::pair<std::size_t, std::uint64_t>, int> counts;
    for (const auto& r : existing) {
      const auto it = std::find(cfg.eps_ladder.begin(), cfg.eps_ladder.end(), r.eps);
      if (it == cfg.eps_ladder.end()) continue;
      counts[{static_cast<std::size_t>(it - cfg.eps_ladder.begin()), r.seed_index}]++;
    }
    for (const auto& [key, n] : counts)
      if (n == cfg.checkpoint_count) done.insert(key);
    std::cout << "resume: " << done.size() << " jobs already complete\n";
  }

  RunManifest manifest;
  manifest.config_hash = parsed.config_hash;
  struct Job {
    std::size_t eps_idx;
    std::uint64_t seed_index;
  };
  std::vector<Job> todo;
  for (std::size_t e = 0; e < cfg.eps_ladder.size(); ++e)
    for (int s = 0; s < cfg.seeds_per_eps; ++s) {
      const std::pair<std::size_t, std::uint64_t> key{e, static_cast<std::uint64_t>(s)};
      manifest.jobs.push_back({"homogenize",
                               "eps=" + format_number(cfg.eps_ladder[e]) +
                                   " seed=" + std::to_string(s),
                               mix(cfg.root_seed, seed_tag::homogenize, e, s), out, 0.0,
                               done.count(key) ? "done" : "pending"});
      if (!done.count(key)) todo.push_back({e, static_cast<std::uint64_t>(s)});
    }
  manifest.save(out_path(g, "manifest.json"));

  WallClock clock;
  HomogenizationReport<D> rep;
  rep.profile = measure_profile<D>(cfg, dirs);
  const SpeedFunction<D> c_star = rep.profile.as_speed_function();
  std::cout << "measured speed profile in bracket [" << rep.profile.c0 << ", "
            << rep.profile.c1 << "], within_bounds=" << rep.profile.within_bounds << "\n";

  std::vector<std::vector<InclusionRow>> new_rows(todo.size());
  parallel_for(todo.size(), cfg.threads, [&](std::size_t j) {
    new_rows[j] = run_homogenization_job<D>(cfg, body, c_star, todo[j].eps_idx,
                                            todo[j].seed_index, nullptr);
  });

  // Canonical rewrite: all rows sorted by (eps index, seed, t).
  std::vector<InclusionRow> all = existing;
  for (auto& rs : new_rows)
    for (auto& r : rs) all.push_back(r);
  auto eps_index = [&cfg](double e) {
    return std::find(cfg.eps_ladder.begin(), cfg.eps_ladder.end(), e) - cfg.eps_ladder.begin();
  };
  std::sort(all.begin(), all.end(), [&](const InclusionRow& a, const InclusionRow& b) {
    const auto ea = eps_index(a.eps), eb = eps_index(b.eps);
    if (ea != eb) return ea < eb;
    if (a.seed_index != b.seed_index) return a.seed_index < b.seed_index;
    return a.t < b.t;
  });

  std::ostringstream text;
  text << "{\"meta\":{\"version\":\"" << kArtifactVersion
       << "\",\"config_hash\":" << parsed.config_hash
       << ",\"sigma\":" << format_number(ex.sigma)
       << ",\"speed_source\":\"measured profile (stands in for the limit speed)\"}}\n";
  for (const auto& r : all) text << row_to_json(r, ex.sigma) << "\n";
  write_text_file(path, text.str());

  rep.rows = all;
  summarize_homogenization<D>(cfg, rep);
  for (const auto& f : rep.frequencies)
    std::cout << "eps=" << f.eps << " success=" << f.frequency << " over " << f.seeds
              << " seeds (margin eps^sigma)\n";
  if (cfg.eps_ladder.size() >= 3)
    std::cout << "rate fit: sigma_hat=" << rep.fit.sigma_hat << " CI=[" << rep.fit.ci_lo
              << ", " << rep.fit.ci_hi << "]\n";

  for (auto& job : manifest.jobs) {
    job.status = "done";
    job.wall_time_s = clock.seconds();
  }
  manifest.save(out_path(g, "manifest.json"));
  std::cout << "wrote " << path << "\n";
  return 0;
}

int cmd_report(const GlobalOptions& g, const std::string& in, const std::string& out) {
  double sigma = 0.0;
  const std::vector<InclusionRow> rows = rows_from_jsonl(read_text_file(in), &sigma);
  if (rows.empty()) throw ConfigError("no rows in " + in);
  std::vector<double> ladder;
  for (const auto& r : rows)
    if (std::find(ladder.begin(), ladder.end(), r.eps) == ladder.end()) ladder.push_back(r.eps);
  std::sort(ladder.begin(), ladder.end(), std::greater<double>());

  std::ostringstream csv;
  csv << "eps,seeds,success_frequency,asymptotic_bound,median_d_h\n";
  for (double e : ladder) {
    const SuccessRow f = success_probability(rows, e, sigma);
    std::vector<double> v;
    for (const auto& r : rows)
      if (r.eps == e && std::isfinite(r.d_h)) v.push_back(r.d_h);
    csv << format_number(e) << "," << f.seeds << "," << format_number(f.frequency) << ","
        << format_number(f.asymptotic_bound) << ","
        << (v.empty() ? "" : format_number(median(v))) << "\n";
  }
  if (ladder.size() >= 3) {
    const RateFit fit = rate_fit(rows);
    csv << "# sigma_hat," << format_number(fit.sigma_hat) << ",ci," << format_number(fit.ci_lo)
        << "," << format_number(fit.ci_hi) << "\n";
  }
  const std::string path = out_path(g, out);
  write_text_file(path, csv.str());
  std::cout << "wrote " << path << "\n";
  return 0;
}

// --------------------------------------------------------------------------
// geometry

template <int D>
ConvexBody<D> body_from_arg(const std::string& spec, int resolution) {
  if (spec.size() > 4 && spec.substr(spec.size() - 4) == ".csv")
    return body_from_csv<D>(read_text_file(spec));
  return make_body<D>(spec, direction_grid<D>(resolution));
}

int cmd_geometry_evolve(const GlobalOptions& g, int dim, const std::string& body_spec,
                        double speed, double t, const std::string& out) {
  if (dim != 2) throw ConfigError("geometry evolve currently plots plane bodies (d = 2)");
  const auto body = body_from_arg<2>(body_spec, 256);
  const auto c = SpeedFunction<2>::constant(speed, body.dirs());
  const auto evolved = theta_set(body, c, t);
  const std::string path = out_path(g, out);
  write_text_file(path, boundary_polyline_csv<2>(evolved));
  std::cout << "wrote " << path << "\n";
  return 0;
}

int cmd_geometry_hausdorff(const GlobalOptions& g, int dim, const std::string& a_spec,
                           const std::string& b_spec, const std::string& out) {
  if (dim != 2) throw ConfigError("geometry hausdorff currently compares plane bodies (d = 2)");
  const auto a = body_from_arg<2>(a_spec, 256);
  const auto b = body_from_arg<2>(b_spec, 256);
  std::cout << "hausdorff = " << format_number(hausdorff(a, b)) << "\n";
  if (!out.empty()) {
    write_text_file(out_path(g, "hausdorff_a_" + out), boundary_polyline_csv<2>(a));
    write_text_file(out_path(g, "hausdorff_b_" + out), boundary_polyline_csv<2>(b));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical laboratory for ignition fronts in random media"};
  app.require_subcommand(1);

  GlobalOptions g;
  app.add_option("--out-dir", g.out_dir, "Directory for outputs and the manifest");
  app.add_option("--threads", g.threads, "Worker count (0: FRONTLAB_THREADS or hardware)");
  auto* seed_opt = app.add_option("--root-seed", g.root_seed, "Root seed for all randomness");
  app.add_flag("--resume", g.resume, "Skip jobs whose outputs already exist");

  std::string config_path, out_file, field_path, init_spec, direction, ladder_spec;
  std::string solve_prefix = "snapshot", speed_out = "speeds.csv", geom_out = "boundary.csv";
  std::string hd_out, homog_out = "report.jsonl", report_out = "summary.csv";
  std::string body_a, body_b;
  std::uint64_t seed = 1;
  double until = 10.0, checkpoint_every = 0.0, h = 0.25, speed_c = 1.0, t_evolve = 1.0;
  int seeds = 8, dim = 2;

  auto* sample = app.add_subcommand("sample-field", "Sample a medium realization");
  sample->add_option("--config", config_path)->required();
  sample->add_option("--seed", seed)->required();
  sample->add_option("--out", out_file)->required();

  auto* solve = app.add_subcommand("solve", "Integrate the reaction-diffusion equation");
  solve->add_option("--field", field_path)->required();
  solve->add_option("--init", init_spec, "halfspace:n...,offset | ball:r | box:... | empty")
      ->required();
  solve->add_option("--until", until)->required();
  solve->add_option("--checkpoint-every", checkpoint_every);
  solve->add_option("--spacing", h, "grid spacing");
  solve->add_option("--out-prefix", solve_prefix);

  auto* speed = app.add_subcommand("speed", "Estimate direction-dependent front speeds");
  speed->add_option("--config", config_path)->required();
  speed->add_option("--direction", direction, "components x,y[,z] or 'grid'")->required();
  speed->add_option("--lengths", ladder_spec, "a:b:n geometric ladder or comma list")
      ->required();
  speed->add_option("--seeds", seeds)->required();
  speed->add_option("--out", speed_out);

  auto* geometry = app.add_subcommand("geometry", "Convex-body operations");
  auto* evolve = geometry->add_subcommand("evolve", "Evolve a body and emit its boundary");
  evolve->add_option("--dim", dim);
  evolve->add_option("--body", body_a)->required();
  evolve->add_option("--speed", speed_c);
  evolve->add_option("--t", t_evolve);
  evolve->add_option("--out", geom_out);
  auto* hd = geometry->add_subcommand("hausdorff", "Hausdorff distance of two bodies");
  hd->add_option("--dim", dim);
  hd->add_option("--a", body_a)->required();
  hd->add_option("--b", body_b)->required();
  hd->add_option("--out", hd_out);

  auto* homogenize = app.add_subcommand("homogenize", "Run the scaled-equation experiment");
  homogenize->add_option("--config", config_path)->required();
  homogenize->add_option("--out", homog_out);

  auto* report = app.add_subcommand("report", "Summarize a homogenization report");
  report->add_option("--in", field_path)->required();
  report->add_option("--out", report_out);

  CLI11_PARSE(app, argc, argv);
  g.root_seed_set = seed_opt->count() > 0;

  try {
    if (sample->parsed()) return cmd_sample_field(g, config_path, seed, out_file);
    if (solve->parsed())
      return cmd_solve(g, field_path, init_spec, until, checkpoint_every, h, solve_prefix);
    if (speed->parsed()) {
      const ParsedConfig cfg = load_config(config_path, g);
      const std::vector<double> lengths = parse_ladder(ladder_spec);
      if (cfg.experiment.hyp.dim == 1)
        return speed_with<1>(g, cfg, direction, lengths, seeds, speed_out);
      if (cfg.experiment.hyp.dim == 2)
        return speed_with<2>(g, cfg, direction, lengths, seeds, speed_out);
      return speed_with<3>(g, cfg, direction, lengths, seeds, speed_out);
    }
    if (geometry->parsed()) {
      if (evolve->parsed()) return cmd_geometry_evolve(g, dim, body_a, speed_c, t_evolve, geom_out);
      if (hd->parsed()) return cmd_geometry_hausdorff(g, dim, body_a, body_b, hd_out);
      std::cerr << "geometry needs a subcommand (evolve | hausdorff)\n";
      return 2;
    }
    if (homogenize->parsed()) {
      const ParsedConfig cfg = load_config(config_path, g);
      if (cfg.experiment.hyp.dim == 1) return homogenize_with<1>(g, cfg, homog_out);
      if (cfg.experiment.hyp.dim == 2) return homogenize_with<2>(g, cfg, homog_out);
      return homogenize_with<3>(g, cfg, homog_out);
    }
    if (report->parsed()) return cmd_report(g, field_path, report_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
