// Command-line front end. Talks to the simulator exclusively through the
// shared-library C API.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "aec.h"

namespace {

int die(aec_status status) {
  std::cerr << "error (" << aec_status_name(status) << "): " << aec_last_error()
            << "\n";
  return 1;
}

struct CommonFlags {
  std::string config_path;
  std::optional<uint64_t> seed, trials, messages;
  std::optional<uint32_t> n, workers;
  std::optional<double> p, epsilon, delta, c, strategy_q;
  std::optional<std::string> strategy, encoder;
  std::string out;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config_path, "key=value config file");
  cmd->add_option("--seed", f.seed, "master seed");
  cmd->add_option("--trials", f.trials, "number of trials");
  cmd->add_option("--n", f.n, "blocklength");
  cmd->add_option("--p", f.p, "adversary erasure fraction");
  cmd->add_option("--epsilon", f.epsilon, "rate slack (stochastic code)");
  cmd->add_option("--delta", f.delta, "rate excess (attack)");
  cmd->add_option("--c", f.c, "attack constant");
  cmd->add_option("--messages", f.messages, "message count override");
  cmd->add_option("--strategy", f.strategy, "null | random | prefix | wait_push");
  cmd->add_option("--q", f.strategy_q, "random eraser probability");
  cmd->add_option("--encoder", f.encoder, "stochastic | deterministic");
  cmd->add_option("--workers", f.workers, "worker threads");
  cmd->add_option("--out", f.out, "output records CSV path");
}

// Config file first, flag overrides appended after it (last assignment wins).
std::string build_config(const CommonFlags& f, const std::string& kind) {
  std::ostringstream cfg;
  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path);
    if (!in) throw std::runtime_error("cannot open config: " + f.config_path);
    cfg << in.rdbuf() << "\n";
  }
  cfg.precision(17);
  cfg << "kind=" << kind << "\n";
  if (f.seed) cfg << "seed=" << *f.seed << "\n";
  if (f.trials) cfg << "trials=" << *f.trials << "\n";
  if (f.n) cfg << "n=" << *f.n << "\n";
  if (f.p) cfg << "p=" << *f.p << "\n";
  if (f.epsilon) cfg << "epsilon=" << *f.epsilon << "\n";
  if (f.delta) cfg << "delta=" << *f.delta << "\n";
  if (f.c) cfg << "c=" << *f.c << "\n";
  if (f.messages) cfg << "messages=" << *f.messages << "\n";
  if (f.strategy) cfg << "strategy=" << *f.strategy << "\n";
  if (f.strategy_q) cfg << "strategy_q=" << *f.strategy_q << "\n";
  if (f.encoder) cfg << "encoder=" << *f.encoder << "\n";
  if (f.workers) cfg << "workers=" << *f.workers << "\n";
  return cfg.str();
}

int run_experiment_cmd(const CommonFlags& f, const std::string& kind) {
  std::string cfg = build_config(f, kind);
  char summary[4096] = {0};
  aec_status st = aec_run_experiment(
      cfg.c_str(), f.out.empty() ? nullptr : f.out.c_str(), summary,
      sizeof summary);
  if (st != AEC_OK) return die(st);
  std::cout << summary;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adversarial binary erasure channel simulator"};
  app.require_subcommand(1);

  // gen-code
  auto* gen = app.add_subcommand("gen-code", "generate and save a codebook");
  uint32_t gen_n = 1024;
  double gen_p = 0.25, gen_eps = 0.15;
  uint64_t gen_m = 0, gen_seed = 1;
  std::string gen_out = "codebook.txt";
  gen->add_option("--n", gen_n, "blocklength");
  gen->add_option("--p", gen_p, "erasure fraction");
  gen->add_option("--epsilon", gen_eps, "rate slack");
  gen->add_option("--messages", gen_m, "message count override (0 = derive)");
  gen->add_option("--seed", gen_seed, "construction seed");
  gen->add_option("--out", gen_out, "codebook file path")->required();

  // validate-code
  auto* val = app.add_subcommand("validate-code",
                                 "coherence spot-check of a stored codebook");
  std::string val_code;
  double val_eta1 = 0.0, val_eta2 = 0.5;
  bool val_exhaustive = false;
  uint64_t val_samples = 10000, val_seed = 1;
  val->add_option("--code", val_code, "codebook file")->required();
  val->add_option("--eta1", val_eta1, "coherence slack factor");
  val->add_option("--eta2", val_eta2, "minimum |T| as a fraction of n");
  val->add_flag("--exhaustive", val_exhaustive,
                "enumerate all pairs and sets (small instances only)");
  val->add_option("--samples", val_samples, "sampled mode check count");
  val->add_option("--seed", val_seed, "sampling seed");

  // simulate / attack
  CommonFlags sim_flags, atk_flags;
  auto* sim = app.add_subcommand(
      "simulate", "stochastic-code transmission and decoding trials");
  add_common(sim, sim_flags);
  auto* atk = app.add_subcommand(
      "attack", "wait-and-push attack trials on a deterministic code");
  add_common(atk, atk_flags);

  // sweep
  CommonFlags swp_flags;
  std::string swp_axis, swp_kind = "simulate";
  std::vector<double> swp_values;
  auto* swp = app.add_subcommand("sweep", "run one experiment per axis value");
  add_common(swp, swp_flags);
  swp->add_option("--axis", swp_axis, "p | epsilon | delta | n | num_messages")
      ->required();
  swp->add_option("--values", swp_values, "axis values")->required();
  swp->add_option("--kind", swp_kind, "simulate | attack");

  // verify-summary
  auto* ver = app.add_subcommand(
      "verify-summary", "recompute a summary from raw rows and compare");
  std::string ver_csv, ver_summary;
  ver->add_option("--csv", ver_csv, "records CSV")->required();
  ver->add_option("--summary", ver_summary, "summary file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      aec_codebook* cb = nullptr;
      aec_status st =
          aec_codebook_generate(gen_n, gen_p, gen_eps, gen_m, gen_seed, &cb);
      if (st != AEC_OK) return die(st);
      st = aec_codebook_save(cb, gen_out.c_str());
      aec_codebook_free(cb);
      if (st != AEC_OK) return die(st);
      std::cout << "wrote " << gen_out << "\n";
      return 0;
    }
    if (val->parsed()) {
      aec_codebook* cb = nullptr;
      aec_status st = aec_codebook_load(val_code.c_str(), &cb);
      if (st != AEC_OK) return die(st);
      int passed = 0;
      char report[1024] = {0};
      st = aec_codebook_validate(cb, val_eta1, val_eta2, val_exhaustive,
                                 val_samples, val_seed, &passed, report,
                                 sizeof report);
      aec_codebook_free(cb);
      if (st != AEC_OK) return die(st);
      std::cout << report << "\n";
      return passed ? 0 : 2;
    }
    if (sim->parsed()) return run_experiment_cmd(sim_flags, "simulate");
    if (atk->parsed()) {
      if (!atk_flags.strategy) atk_flags.strategy = "wait_push";
      return run_experiment_cmd(atk_flags, "attack");
    }
    if (swp->parsed()) {
      if (swp_flags.out.empty()) {
        std::cerr << "sweep requires --out\n";
        return 1;
      }
      std::string cfg = build_config(swp_flags, swp_kind);
      aec_status st =
          aec_run_sweep(cfg.c_str(), swp_axis.c_str(), swp_values.data(),
                        swp_values.size(), swp_flags.out.c_str());
      if (st != AEC_OK) return die(st);
      std::cout << "wrote " << swp_flags.out << "\n";
      return 0;
    }
    if (ver->parsed()) {
      int ok = 0;
      char report[2048] = {0};
      aec_status st = aec_verify_summary(ver_csv.c_str(), ver_summary.c_str(),
                                         &ok, report, sizeof report);
      if (st != AEC_OK) return die(st);
      std::cout << report;
      return ok ? 0 : 2;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
