#include "sggl/cli.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"
#include "sggl/config.hpp"
#include "sggl/csv.hpp"
#include "sggl/diagnostics.hpp"
#include "sggl/experiments.hpp"
#include "sggl/inequality_lab.hpp"
#include "sggl/parallel.hpp"
#include "sggl/snapshot.hpp"

#ifndef SGGL_GIT_DESCRIBE
#define SGGL_GIT_DESCRIBE "unknown"
#endif

namespace sggl {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Options {
  std::string command;
  std::string config_path;
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> paths;
  std::optional<std::size_t> samples;
  std::size_t threads = 0;
  bool negative_control = false;
  std::string replay;
};

std::string utc_now() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

class Manifest {
 public:
  Manifest(const Options& o, fs::path path) : path_(std::move(path)) {
    j_["command"] = o.command;
    j_["config_path"] = o.config_path;
    j_["out_dir"] = o.out_dir;
    j_["seed_override"] = o.seed ? json(*o.seed) : json(nullptr);
    j_["timestamp"] = utc_now();
    j_["git_describe"] = SGGL_GIT_DESCRIBE;
    j_["threads"] = resolve_threads(o.threads);
    j_["status"] = "running";
    write();
  }
  void set_config(const RunConfig& c) { j_["config"] = json::parse(dump_config(c)); }
  void finish(int code, const std::string& summary) {
    j_["status"] = "finished";
    j_["exit_code"] = code;
    j_["exit_status"] = summary;
    j_["finished"] = utc_now();
    write();
  }

 private:
  void write() const {
    std::ofstream os(path_);
    os << j_.dump(2) << '\n';
  }
  fs::path path_;
  json j_;
};

void write_json(const fs::path& p, const json& j) {
  std::ofstream os(p);
  if (!os) throw std::runtime_error("cannot write " + p.string());
  os << j.dump(2) << '\n';
}

json lemma_json(const LemmaStatistic& s) {
  return {{"lemma", to_string(s.lemma)}, {"n1", s.n1},  {"n2", s.n2},
          {"value", s.value},            {"se", s.se},  {"rhs_scale", s.rhs_scale},
          {"ratio", s.ratio},            {"p", s.p}};
}

json regime_json(const RunConfig& c) {
  const NoiseConstants k = c.noise.marks() > 0 ? c.noise.constants() : NoiseConstants{};
  NoiseConstants kp = k;
  kp.p = c.noise.p;
  const RegimeReport r = validate_regime(c.params, kp);
  return {{"beta_ok", r.beta_ok}, {"sigma_ok", r.sigma_ok}, {"p_ok", r.p_ok},
          {"k_small_ok", r.k_small_ok}, {"k1", k.k1}, {"k2", k.k2}, {"k3", k.k3}, {"k4", k.k4}};
}

// ---------------------------------------------------------------------------

int cmd_simulate(const RunConfig& c, const fs::path& out, json& summary) {
  const auto u0 = make_initial(c.initial, c.sim.n1, c.sim.n2, c.params, c.sim.seed, 0);
  Rng rng(c.sim.seed, 0, Stream::Jumps);
  const auto tr = simulate_path(c.sim, c.params, c.noise, u0, rng);
  write_energy_csv((out / "energy.csv").string(), tr);
  {
    CsvWriter w((out / "jumps.csv").string(), {"t", "mark"});
    for (const auto& e : tr.jump_log) w.row({e.time, e.mark});
  }
  fs::create_directories(out / "snapshots");
  for (const auto& s : tr.snapshots) {
    char name[32];
    std::snprintf(name, sizeof name, "snap-%08zu.sggl", s.index);
    save_field((out / "snapshots" / name).string(), s.u);
  }
  summary["jumps"] = tr.jump_log.size();
  summary["stopped_at"] = tr.stopped_at ? json(*tr.stopped_at) : json(nullptr);
  summary["non_finite"] = tr.non_finite;
  summary["final_l2_sq"] = tr.records.back().l2_sq;
  summary["final_h1_sq"] = tr.records.back().h1_sq;
  return kExitOk;
}

int cmd_ensemble(const RunConfig& c, std::size_t threads, const fs::path& out, json& summary) {
  const auto ens = simulate_ensemble(c.sim, c.params, c.noise, c.initial, threads);
  write_energy_mean_csv((out / "energy.csv").string(), ens.stats);
  std::vector<LemmaStatistic> rows{lemma31_statistic(ens), lemma32_statistic(ens)};
  if (c.noise.p < 2.0 * c.params.sigma)
    rows.push_back(lemma33_statistic(ens, c.noise.p, c.params.sigma));
  write_lemma_stats_csv((out / "lemma-stats.csv").string(), rows);
  summary["n_paths"] = ens.stats.n_paths;
  summary["sup_l2_mean"] = ens.stats.sup_l2_mean;
  summary["sup_l2_se"] = ens.stats.sup_l2_se;
  summary["blowup_fraction"] = ens.stats.blowup_fraction;
  for (const auto& r : rows) summary["lemmas"].push_back(lemma_json(r));
  return kExitOk;
}

void dump_witnesses(const std::vector<Witness>& ws, const fs::path& out, json& summary) {
  if (ws.empty()) return;
  fs::create_directories(out / "witnesses");
  for (std::size_t i = 0; i < ws.size(); ++i) {
    const std::string name = "witness-" + ws[i].check + "-" + std::to_string(i) + ".sggl";
    save_pair((out / "witnesses" / name).string(), ws[i].u, ws[i].phi);
    summary["witnesses"].push_back("witnesses/" + name);
  }
}

json check_json(const CheckResult& r) {
  return {{"check", r.check},         {"sigma", r.sigma},
          {"beta", r.beta},           {"samples", r.samples},
          {"violations", r.violations}, {"max_slack", r.max_slack},
          {"tolerance", r.tolerance}, {"negative_control", r.negative_control}};
}

int cmd_replay(const RunConfig& c, const std::string& file, const fs::path& out, json& summary) {
  const auto [u, phi] = load_pair(file);
  if (!u.same_shape(phi)) throw SnapshotError("replay: u and phi have different shapes");
  const GLParams& p = c.params;
  const GridSpec g = make_grid(u.n1, u.n2, p.sigma);
  const NoiseConstants k = c.noise.marks() > 0 ? c.noise.constants() : NoiseConstants{};
  constexpr double tol = 1e-8;
  std::vector<CheckResult> rows;
  auto add = [&](const std::string& name, const Slack& s) {
    CheckResult r;
    r.check = name;
    r.sigma = p.sigma;
    r.beta = p.beta;
    r.samples = 1;
    r.violations = s.violated(tol) ? 1 : 0;
    r.max_slack = s.scale > 0.0 ? s.slack / s.scale : s.slack;
    r.tolerance = tol;
    rows.push_back(r);
  };
  add("m_form", m_form_check(u, p.sigma, p.beta, g));
  const auto l35 = lemma35_check(u, phi, p, g, true);
  add("lemma35_m_lower", l35.m_lower);
  add("lemma35", l35.bound);
  if (p.sigma > 2.0) {
    const auto cfg = derive_monotonicity_config(c.monotonicity, p, k);
    add("lemma36_J", lemma36_bound(u, phi, cfg, p, g, Pairing::J).slack);
    add("lemma36_K", lemma36_bound(u, phi, cfg, p, g, Pairing::K).slack);
    add("monotonicity34", monotonicity_34_check(u, phi, p, c.noise, cfg, g, true).slack);
    summary["contraction_valid"] = cfg.contraction_valid;
  }
  write_inequality_report((out / "replay.csv").string(), rows);
  std::size_t v = 0;
  for (const auto& r : rows) {
    v += r.violations;
    summary["checks"].push_back(check_json(r));
  }
  summary["replayed"] = file;
  return v == 0 ? kExitOk : kExitViolation;
}

int cmd_verify(const RunConfig& c, const Options& o, const fs::path& out, json& summary) {
  if (!o.replay.empty()) return cmd_replay(c, o.replay, out, summary);
  SuiteConfig sc = c.suite;
  sc.threads = o.threads;
  sc.negative_control = o.negative_control;
  if (o.samples) sc.samples = *o.samples;
  if (o.seed) sc.seed = *o.seed;
  const auto rep = run_inequality_suite(c.params, c.noise, c.monotonicity, sc);
  write_inequality_report((out / "inequality-report.csv").string(), rep.checks);
  dump_witnesses(rep.witnesses, out, summary);
  for (const auto& r : rep.checks) summary["checks"].push_back(check_json(r));
  summary["beta_threshold"] = c.params.beta_threshold();
  summary["lambda_beta"] = lambda_beta(c.params.sigma, c.params.beta);
  if (c.params.sigma > 2.0) {
    const NoiseConstants k = c.noise.marks() > 0 ? c.noise.constants() : NoiseConstants{};
    const auto cfg = derive_monotonicity_config(c.monotonicity, c.params, k);
    summary["monotonicity"] = {{"pairing_weight", cfg.pairing_weight}, {"c_8_9", cfg.c_8_9},
                               {"c_10_11", cfg.c_10_11},               {"c_12_13", cfg.c_12_13},
                               {"c_14_15", cfg.c_14_15},               {"K", cfg.K},
                               {"gradient_margin", cfg.gradient_margin},
                               {"contraction_valid", cfg.contraction_valid}};
  }
  summary["ok"] = rep.ok();
  return rep.ok() ? kExitOk : kExitViolation;
}

int cmd_uniqueness(const RunConfig& c, std::size_t threads, const fs::path& out, json& summary) {
  const NoiseConstants k = c.noise.marks() > 0 ? c.noise.constants() : NoiseConstants{};
  const auto cfg = derive_monotonicity_config(c.monotonicity, c.params, k);
  if (!cfg.contraction_valid)
    throw ConfigError("monotonicity", "contraction flags fail (K = " + fmt_g17(cfg.K) +
                                          ", gradient margin = " + fmt_g17(cfg.gradient_margin) +
                                          "); uniqueness needs both < 0");
  const auto s = uniqueness_ensemble(c.sim, c.params, c.noise, cfg, c.initial, c.delta, threads);
  write_contraction_csv((out / "contraction.csv").string(), s);
  summary["n_paths"] = s.n_paths;
  summary["inconclusive"] = s.inconclusive;
  summary["increases"] = s.violations.size();
  summary["max_increment"] = s.max_increment;
  summary["slack_constant"] = s.slack_constant;
  summary["decreased"] = s.decreased;
  if (!s.contraction.empty()) {
    summary["contraction_0"] = s.contraction.front();
    summary["contraction_T"] = s.contraction.back();
  }
  const bool ok = s.decreased || (c.delta == 0.0 && s.max_increment == 0.0);
  return ok ? kExitOk : kExitViolation;
}

int cmd_galerkin(const RunConfig& c, std::size_t threads, const fs::path& out, json& summary) {
  const auto scan = galerkin_scan(c.sim, c.params, c.noise, c.initial, c.levels, threads);
  write_galerkin_csv((out / "galerkin-scan.csv").string(), scan);
  std::vector<LemmaStatistic> rows;
  for (const auto& r : scan.rows) {
    rows.push_back(r.l31);
    rows.push_back(r.l32);
  }
  write_lemma_stats_csv((out / "lemma-stats.csv").string(), rows);
  for (const auto& r : scan.rows)
    summary["rows"].push_back({{"n", r.n},
                               {"discrepancy", r.discrepancy},
                               {"lemma31_ratio", r.l31.ratio},
                               {"lemma32_ratio", r.l32.ratio}});
  summary["monotone"] = scan.monotone;
  return scan.monotone ? kExitOk : kExitViolation;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--config", o.config_path, "JSON config file (defaults when omitted)");
  sub->add_option("--seed", o.seed, "override sim.seed (verify-inequalities: monotonicity.seed)");
  sub->add_option("--out-dir", o.out_dir, "output directory")->capture_default_str();
  sub->add_option("--threads", o.threads, "worker threads (0: SGGLE_THREADS or hardware)");
}

}  // namespace

int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return run_cli(args);
}

int run_cli(const std::vector<std::string>& args_in) {
  Options o;
  CLI::App app{"Stochastic generalized Ginzburg-Landau: Galerkin simulator and inequality lab",
               "sggle"};
  app.require_subcommand(1);
  app.footer(config_key_help());

  auto* sim = app.add_subcommand("simulate", "one path: energy.csv, jumps.csv, snapshots/");
  auto* ens = app.add_subcommand("ensemble", "n_paths paths: energy.csv (means), lemma-stats.csv");
  auto* ver = app.add_subcommand("verify-inequalities", "inequality suite: inequality-report.csv");
  auto* uni = app.add_subcommand("uniqueness", "shared-noise pairs: contraction.csv");
  auto* gal = app.add_subcommand("galerkin-scan", "levels and doubled levels: galerkin-scan.csv");
  for (auto* s : {sim, ens, ver, uni, gal}) {
    add_common(s, o);
    s->footer(config_key_help());
  }
  for (auto* s : {ens, uni, gal}) s->add_option("--paths", o.paths, "override sim.n_paths");
  ver->add_option("--samples", o.samples, "override monotonicity.samples");
  ver->add_flag("--negative-control", o.negative_control,
                "also run the monotonicity check beyond the beta threshold (must fail)");
  ver->add_option("--replay", o.replay, "re-run the field checks on a witness pair file");

  std::vector<std::string> rev(args_in.rbegin(), args_in.rend());
  if (!rev.empty()) rev.pop_back();
  try {
    app.parse(rev);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }
  for (auto* s : {sim, ens, ver, uni, gal})
    if (s->parsed()) o.command = s->get_name();

  const fs::path out(o.out_dir);
  std::optional<Manifest> manifest;
  json summary;
  summary["command"] = o.command;
  int code = kExitOk;
  std::string status = "ok";
  try {
    fs::create_directories(out);
    manifest.emplace(o, out / "manifest.json");
    RunConfig c = o.config_path.empty() ? RunConfig{} : load_config(o.config_path);
    if (o.seed) c.sim.seed = *o.seed;
    if (o.paths) c.sim.n_paths = *o.paths;
    if (o.samples) c.suite.samples = *o.samples;
    c.validate();
    manifest->set_config(c);
    summary["regime"] = regime_json(c);
    const std::size_t threads = resolve_threads(o.threads);
    if (o.command == "simulate")
      code = cmd_simulate(c, out, summary);
    else if (o.command == "ensemble")
      code = cmd_ensemble(c, threads, out, summary);
    else if (o.command == "verify-inequalities")
      code = cmd_verify(c, o, out, summary);
    else if (o.command == "uniqueness")
      code = cmd_uniqueness(c, threads, out, summary);
    else
      code = cmd_galerkin(c, threads, out, summary);
    status = code == kExitOk ? "ok" : "violations found";
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    code = kExitConfig;
    status = std::string("config error: ") + e.what();
    summary["error_key"] = e.key();
  } catch (const RegimeError& e) {
    std::cerr << "regime error: " << e.what() << '\n';
    code = kExitConfig;
    status = std::string("regime error: ") + e.what();
  } catch (const SnapshotError& e) {
    std::cerr << "snapshot error: " << e.what() << '\n';
    code = kExitConfig;
    status = std::string("snapshot error: ") + e.what();
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    code = kExitConfig;
    status = std::string("filesystem error: ") + e.what();
  }
  summary["exit_code"] = code;
  summary["status"] = status;
  if (manifest) {
    try {
      write_json(out / "summary.json", summary);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
    }
    manifest->finish(code, status);
  }
  std::cout << o.command << ": " << status << " (exit " << code << ")\n";
  return code;
}

}  // namespace sggl
