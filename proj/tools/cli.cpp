// Copyright 2026 The Cyclerec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>

#include "CLI11.hpp"
#include "cyclerec/cer.hpp"
#include "cyclerec/config.hpp"
#include "cyclerec/oracle_suite.hpp"
#include "cyclerec/parallel.hpp"
#include "cyclerec/pie.hpp"
#include "cyclerec/reports.hpp"
#include "cyclerec/sc.hpp"
#include "cyclerec/sim.hpp"

#ifndef CYCLEREC_VERSION
#define CYCLEREC_VERSION "0.0.0"
#endif

namespace cyclerec {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr uint64_t kResolveJobs = 100;
constexpr uint64_t kCycleJobs = 10000;
constexpr uint64_t kDefaultOracleSeed = 1;

struct Options {
  std::string config;
  std::string out;
  int threads = 0;
  std::optional<uint64_t> seed_override;
};

class Run {
 public:
  Run(std::string command, const Options& opt, std::ostream& out)
      : command_(std::move(command)), opt_(opt), out_(out),
        start_(std::chrono::steady_clock::now()) {}

  void set_config(const ExperimentConfig& c) {
    header_.config_sha256 = c.sha256;
    header_.seed = c.seed;
    dir_ = !opt_.out.empty() ? opt_.out : (!c.output_dir.empty() ? c.output_dir : ".");
  }

  const ReportHeader& header() const { return header_; }

  void write(const std::string& name, const std::string& content) {
    fs::create_directories(dir_);
    std::ofstream f(fs::path(dir_) / name, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + (fs::path(dir_) / name).string());
    f << content;
    files_.push_back({{"name", name}, {"sha256", sha256_hex(content)}});
  }

  int finish(int code) {
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    json m = {{"schema", kManifestSchema},
              {"command", command_},
              {"version", CYCLEREC_VERSION},
              {"config", opt_.config},
              {"config_sha256", header_.config_sha256},
              {"seed", header_.seed},
              {"threads", thread_count()},
              {"elapsed_s", elapsed},
              {"exit_code", code},
              {"files", files_}};
    fs::create_directories(dir_);
    std::ofstream f(fs::path(dir_) / "manifest.json", std::ios::binary);
    f << dump_json(m);
    out_ << "wrote " << files_.size() << " files and manifest.json to " << dir_ << "\n";
    return code;
  }

 private:
  std::string command_;
  const Options& opt_;
  std::ostream& out_;
  std::chrono::steady_clock::time_point start_;
  ReportHeader header_;
  std::string dir_ = ".";
  json files_ = json::array();
};

ExperimentConfig load(const Options& opt, const std::string& kind) {
  ExperimentConfig c = load_config(opt.config);
  if (c.kind != kind) {
    throw ConfigError("'protocol.kind' is \"" + c.kind + "\" but the command runs \"" + kind +
                      "\"");
  }
  if (opt.seed_override) c.seed = *opt.seed_override;
  return c;
}

std::string fmt(const char* f, double a, double b) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

int cmd_pie(const Options& opt, std::ostream& out) {
  ExperimentConfig c = load(opt, "pie");
  Run run("pie run", opt, out);
  run.set_config(c);
  const Cycle& hard = c.cycle(c.pie.cycle_id);
  bool ok = true;
  PieResult pie;
  pie.cycle_id = hard.id;
  pie.settings = c.pie.settings;
  if (!c.pie.queries.empty()) {
    pie = pie_oracle(c.pie.queries, hard, c.n, c.pie.settings, c.model, c.seed);
    ok = pie.all_ok();
    for (const auto& [q, idx] : pie.query_orbit) {
      const auto& e = pie.orbits[idx].estimate;
      out << q.to_string() << "  " << fmt("f = %.6f +/- %.6f", e.f, e.sigma) << "  " << e.status
          << "\n";
    }
  }
  std::vector<ResolveOutcome> resolved;
  for (size_t i = 0; i < c.pie.resolve.size(); ++i) {
    ResolveOutcome r;
    r.query = c.pie.resolve[i];
    try {
      r.estimate = resolve_orbit(r.query, hard, c.n, c.pie.resolve_settings, c.model, c.seed,
                                 kResolveJobs + i);
      r.status = r.estimate->estimate.status;
      out << "resolved " << r.query.to_string() << "  "
          << fmt("f = %.6f +/- %.6f", r.estimate->estimate.f, r.estimate->estimate.sigma) << "  "
          << r.status << "\n";
    } catch (const ProtocolRefused& e) {
      r.status = std::string("refused: ") + e.what();
      out << "resolved " << r.query.to_string() << "  " << r.status << "\n";
    }
    ok = ok && r.status == "ok";
    resolved.push_back(std::move(r));
  }
  run.write("pie_result.json", dump_json(pie_to_json(pie, hard, c.n, resolved, run.header())));
  run.write("decays.csv", decays_csv(pie, run.header()));
  return run.finish(ok ? kExitOk : kExitPartial);
}

std::vector<CerResult> run_cer_cycles(const ExperimentConfig& c, std::ostream& out) {
  std::vector<CerResult> results;
  for (size_t i = 0; i < c.cer.cycles.size(); ++i) {
    CerConfig cfg = c.cer.cer;
    cfg.cycle_id = c.cer.cycles[i];
    cfg.seed = c.seed;
    results.push_back(cer_run(cfg, c.cycle(cfg.cycle_id), c.n, c.model, kCycleJobs * i));
    for (const auto& t : results.back().tables) {
      out << cfg.cycle_id << "  " << t.label << "  " << t.status << "\n";
    }
  }
  return results;
}

int cmd_cer(const Options& opt, std::ostream& out) {
  ExperimentConfig c = load(opt, "cer");
  Run run("cer run", opt, out);
  run.set_config(c);
  auto results = run_cer_cycles(c, out);
  bool ok = true;
  for (const auto& r : results) ok = ok && r.all_ok();
  run.write("cer_result.json", dump_json(cer_to_json(results, run.header())));
  run.write("heatmap.csv", heatmap_csv(heatmap_table(results, c.cer.cer.threshold), run.header()));
  return run.finish(ok ? kExitOk : kExitPartial);
}

int cmd_sc(const Options& opt, std::ostream& out) {
  ExperimentConfig c = load(opt, "sc");
  Run run("sc run", opt, out);
  run.set_config(c);
  ScConfig cfg = c.sc;
  cfg.seed = c.seed;
  Calibration cal = calibrate(cfg, c.cycle(cfg.cycle_id), c.n, c.model);
  for (size_t i = 0; i < cal.sweep.axes.size(); ++i) {
    const auto& ax = cal.sweep.axes[i];
    out << ax.axis.name << "  "
        << fmt("theta* = %.3f +/- %.3f deg", cal.sweep.theta_star_deg[i],
               cal.sweep.theta_star_sigma_deg[i])
        << "  " << ax.fit.status << (ax.fit.extrapolated ? " (extrapolated)" : "") << "\n";
  }
  for (const auto& t : cal.targets) {
    out << t.target.to_string() << "  " << fmt("before %.5f after %.5f", t.before, t.after)
        << "\n";
  }
  run.write("sc_sweep.json", dump_json(sc_to_json(cal, cfg, run.header())));
  run.write("sweep.csv", sweep_csv(cal.sweep, run.header()));
  run.write("cer_before.json", dump_json(cer_to_json({cal.before}, run.header())));
  run.write("cer_after.json", dump_json(cer_to_json({cal.after}, run.header())));
  run.write("heatmap_before.csv", heatmap_csv(heatmap_table({cal.before}, cfg.threshold), run.header()));
  run.write("heatmap_after.csv", heatmap_csv(heatmap_table({cal.after}, cfg.threshold), run.header()));
  return run.finish(cal.ok() ? kExitOk : kExitPartial);
}

int cmd_sim(const Options& opt, std::ostream& out) {
  ExperimentConfig c = load(opt, "sim");
  Run run("sim sample", opt, out);
  run.set_config(c);
  const auto& s = c.sim;
  CbCircuit base = CbCircuit::make(c.n, c.cycle(s.cycle_id), s.e0, s.em, s.m);
  auto batch = run_batch(base, c.model, s.randomizations, s.shots, c.seed);
  run.write("samples.json", dump_json(samples_to_json(batch, base, run.header())));
  return run.finish(kExitOk);
}

int cmd_oracle(const Options& opt, std::ostream& out) {
  uint64_t seed = kDefaultOracleSeed;
  if (!opt.config.empty()) seed = load(opt, "oracle-check").seed;
  if (opt.seed_override) seed = *opt.seed_override;
  bool ok = true;
  for (const auto& line : oracle_check(seed, orbit_marginal_from_orbit_fidelities)) {
    out << (line.pass ? "PASS " : "FAIL ") << line.name << "  " << line.detail << "\n";
    ok = ok && line.pass;
  }
  return ok ? kExitOk : kExitPartial;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cycle error reconstruction and stochastic calibration toolkit", "cyclerec"};
  app.require_subcommand(1);
  Options opt;
  std::optional<uint64_t> seed;
  int (*action)(const Options&, std::ostream&) = nullptr;

  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help,
                  int (*fn)(const Options&, std::ostream&), bool needs_config) {
    CLI::App* sub = parent->add_subcommand(name, help);
    auto* cfg = sub->add_option("--config", opt.config, "JSON configuration file");
    if (needs_config) cfg->required();
    sub->add_option("--out", opt.out, "output directory");
    sub->add_option("--threads", opt.threads, "worker threads, 0 = all cores")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--seed-override", seed, "replace the configured seed");
    sub->callback([&action, fn] { action = fn; });
  };
  auto group = [&](const std::string& name, const std::string& help) {
    CLI::App* g = app.add_subcommand(name, help);
    g->require_subcommand(1);
    return g;
  };
  leaf(group("pie", "Pauli infidelity estimation"), "run", "run PIE", cmd_pie, true);
  leaf(group("cer", "cycle error reconstruction"), "run", "run CER", cmd_cer, true);
  leaf(group("sc", "stochastic calibration"), "run", "run SC", cmd_sc, true);
  leaf(group("oracle", "dense-oracle self test"), "check", "run the oracle suite", cmd_oracle,
       false);
  leaf(group("sim", "circuit sampling"), "sample", "sample a CB circuit", cmd_sim, true);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }
  opt.seed_override = seed;
  set_thread_count(opt.threads);
  try {
    return action(opt, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}

}  // namespace cyclerec
