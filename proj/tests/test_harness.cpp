#include "aec/harness.hpp"

#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <stdexcept>

#include "doctest.h"

using namespace aec;

namespace {

std::string csv_text(const std::vector<TrialRecord>& records) {
  std::ostringstream out;
  write_csv(out, records);
  return out.str();
}

bool same_record(const TrialRecord& a, const TrialRecord& b) {
  return a.trial_id == b.trial_id && a.message == b.message &&
         a.noise_weight == b.noise_weight &&
         a.erasures_used == b.erasures_used &&
         a.budget_overrides == b.budget_overrides && a.tau == b.tau &&
         a.list_size == b.list_size && a.outcome == b.outcome &&
         a.success == b.success && a.attack_phase == b.attack_phase &&
         a.attack_success == b.attack_success;
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("aec_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

}  // namespace

TEST_CASE("config parsing") {
  SUBCASE("keys, comments, and last-assignment-wins") {
    ExperimentConfig cfg = parse_config_text(
        "# comment\n"
        "kind = simulate\n"
        "n=128  # trailing comment\n"
        "p = 0.3\n"
        "epsilon=0.1\n"
        "trials = 7\n"
        "seed=99\n"
        "strategy = random\n"
        "strategy_q = 0.25\n"
        "workers=2\n"
        "n = 256\n");
    CHECK(cfg.kind == ExperimentKind::Simulate);
    CHECK(cfg.n == 256);
    CHECK(cfg.p == doctest::Approx(0.3));
    CHECK(cfg.trials == 7);
    CHECK(cfg.seed == 99);
    CHECK(cfg.strategy == "random");
    CHECK(cfg.strategy_q == doctest::Approx(0.25));
    CHECK(cfg.workers == 2);
  }
  SUBCASE("rejections") {
    CHECK_THROWS_AS(parse_config_text("bogus_key=1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config_text("n 128\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config_text("kind=jazz\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config_text("strategy=owl\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config_text("p=0\n"), std::invalid_argument);
    // attack experiments require the wait_push strategy
    CHECK_THROWS_AS(parse_config_text("kind=attack\nstrategy=prefix\n"),
                    std::invalid_argument);
  }
}

TEST_CASE("attack params build a rate 1-2p+delta code") {
  ExperimentConfig cfg = parse_config_text(
      "kind=attack\nstrategy=wait_push\nn=40\np=0.375\ndelta=0.225\n");
  CodeParams cp = params_for_config(cfg);
  CHECK(cp.rate == doctest::Approx(0.475));
  CHECK(cp.num_messages == (1ULL << 19));  // floor(2^{0.475*40})
  CHECK(cp.num_levels == 2);
  CHECK(cp.erasure_budget() == 15);
  ExperimentConfig low = cfg;
  low.num_messages = 2;
  CHECK(params_for_config(low).num_messages == 2);
  ExperimentConfig bad = cfg;
  bad.p = 0.6;
  bad.delta = 0.1;
  CHECK_THROWS_AS(params_for_config(bad), std::invalid_argument);
}

TEST_CASE("simulate params go through the standard derivation") {
  ExperimentConfig cfg =
      parse_config_text("kind=simulate\nn=256\np=0.25\nepsilon=0.15\n");
  CodeParams cp = params_for_config(cfg);
  CHECK(cp == derive_params(256, 0.25, 0.15));
}

TEST_CASE("trials are pure functions of (seed, trial_id)") {
  ExperimentConfig cfg = parse_config_text(
      "kind=simulate\nn=64\np=0.25\nepsilon=0.15\nmessages=8\ntrials=5\n"
      "seed=12\nstrategy=prefix\n");
  Codebook cb = codebook_for_config(cfg);
  for (std::uint64_t t = 0; t < cfg.trials; ++t)
    CHECK(same_record(run_trial(cb, cfg, t), run_trial(cb, cfg, t)));
  // different trials draw different messages at least once over 5 trials
  bool varied = false;
  TrialRecord first = run_trial(cb, cfg, 0);
  for (std::uint64_t t = 1; t < cfg.trials; ++t)
    varied = varied || run_trial(cb, cfg, t).message != first.message;
  CHECK(varied);
}

TEST_CASE("worker count does not change the records") {
  ExperimentConfig cfg = parse_config_text(
      "kind=simulate\nn=64\np=0.25\nepsilon=0.15\nmessages=8\ntrials=24\n"
      "seed=5\nstrategy=random\nstrategy_q=0.4\n");
  Codebook cb = codebook_for_config(cfg);
  auto serial = run_trials(cb, cfg);
  ExperimentConfig par = cfg;
  par.workers = 4;
  auto parallel = run_trials(cb, par);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i)
    CHECK(same_record(serial[i], parallel[i]));
}

TEST_CASE("csv round trip is lossless and stable") {
  std::vector<TrialRecord> records(3);
  records[0] = {0, 3, 12, 16, 0, 40, 2, "3", true, "-", false, 1.5};
  records[1] = {1, 1, 9, 16, 2, 0, 0, "no_tau", false, "-", false, 0.5};
  records[2] = {2, 7, 0, 10, 0, 0, 0, "-", false, "push", true, 0.2};
  std::string text = csv_text(records);
  std::istringstream in(text);
  auto back = read_csv(in);
  REQUIRE(back.size() == records.size());
  for (std::size_t i = 0; i < records.size(); ++i)
    CHECK(same_record(back[i], records[i]));
  CHECK(csv_text(back) == text);  // byte-identical rewrite
  CHECK(text.rfind(kCsvSchema, 0) == 0);
  std::istringstream bad("# wrong\nheader\n");
  CHECK_THROWS_AS(read_csv(bad), std::runtime_error);
}

TEST_CASE("summary round trip and verification") {
  std::vector<TrialRecord> records(4);
  records[0] = {0, 1, 5, 16, 0, 40, 2, "1", true, "-", false, 0.0};
  records[1] = {1, 2, 6, 16, 0, 41, 1, "2", true, "-", false, 0.0};
  records[2] = {2, 3, 7, 16, 0, 42, 3, "1", false, "-", false, 0.0};
  records[3] = {3, 4, 8, 12, 1, 0, 0, "no_tau", false, "-", false, 0.0};
  ExperimentConfig cfg;
  cfg.n = 64;
  cfg.p = 0.25;
  Summary s = summarize(records, cfg);
  CHECK(s.trials == 4);
  CHECK(s.successes == 2);
  CHECK(s.success_rate == doctest::Approx(0.5));
  CHECK(s.max_list_size == 3);
  CHECK(s.mean_list_size == doctest::Approx(1.5));
  CHECK(s.mean_erasures == doctest::Approx(15.0));
  CHECK(s.budget == 16);

  std::ostringstream out;
  write_summary(out, s);
  std::istringstream in(out.str());
  Summary back = read_summary(in);
  CHECK(verify_summary(records, back));

  back.successes = 3;
  std::string report;
  CHECK_FALSE(verify_summary(records, back, &report));
  CHECK(report.find("successes") != std::string::npos);
}

TEST_CASE("run_experiment writes matching csv and summary files") {
  TempDir tmp;
  ExperimentConfig cfg = parse_config_text(
      "kind=simulate\nn=64\np=0.25\nepsilon=0.15\nmessages=8\ntrials=10\n"
      "seed=3\nstrategy=prefix\n");
  cfg.output_path = tmp.file("run.csv");
  Summary s = run_experiment(cfg);
  CHECK(s.trials == 10);

  std::ifstream csv(cfg.output_path);
  REQUIRE(csv.good());
  auto records = read_csv(csv);
  std::ifstream sum(cfg.output_path + ".summary");
  REQUIRE(sum.good());
  Summary stored = read_summary(sum);
  CHECK(verify_summary(records, stored));
  CHECK(stored.seed == 3);

  // identical seeds give byte-identical csv output
  ExperimentConfig again = cfg;
  again.output_path = tmp.file("run2.csv");
  run_experiment(again);
  std::ifstream a(cfg.output_path), b(again.output_path);
  std::stringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  CHECK(sa.str() == sb.str());
}

TEST_CASE("attack experiments fill the attack columns") {
  ExperimentConfig cfg = parse_config_text(
      "kind=attack\nstrategy=wait_push\nn=40\np=0.375\ndelta=0.225\nc=0.4\n"
      "trials=20\nseed=21\nencoder=deterministic\n");
  Codebook cb = codebook_for_config(cfg);
  auto records = run_trials(cb, cfg);
  for (const TrialRecord& r : records) {
    CHECK(r.outcome == "-");
    CHECK(r.attack_phase != "-");
    CHECK(r.erasures_used <= cb.params().erasure_budget());
  }
}

TEST_CASE("sweep runs one derived-seed experiment per value") {
  ExperimentConfig base = parse_config_text(
      "kind=simulate\nn=64\np=0.25\nepsilon=0.15\nmessages=4\ntrials=5\n"
      "seed=8\nstrategy=null\n");
  std::ostringstream out;
  auto summaries = sweep(base, "p", {0.1, 0.2, 0.3}, out);
  REQUIRE(summaries.size() == 3);
  std::string text = out.str();
  CHECK(text.rfind("# aec-sweep v1", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 5);  // header*2 + 3 rows
  // distinct seeds per point
  CHECK(summaries[0].seed != summaries[1].seed);
  CHECK(summaries[1].seed != summaries[2].seed);
  CHECK_THROWS_AS(sweep(base, "volume", {1.0}, out), std::invalid_argument);
  CHECK_THROWS_AS(sweep(base, "p", {}, out), std::invalid_argument);
}
