#ifndef AEC_HARNESS_HPP
#define AEC_HARNESS_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "aec/adversary.hpp"
#include "aec/codebook.hpp"
#include "aec/decoder.hpp"

namespace aec {

enum class ExperimentKind { Simulate, Attack };

// Monte Carlo experiment description. Parsed from key=value text; every field
// has a CLI flag override.
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::Simulate;
  std::uint32_t n = 1024;
  double p = 0.25;
  double epsilon = 0.15;      // simulate: rate slack
  double delta = 0.225;       // attack: rate excess over 1-2p
  double attack_c = 0.4;      // attack constant
  std::uint64_t num_messages = 0;  // 0 = derive default
  std::uint64_t trials = 100;
  std::uint64_t seed = 1;
  std::string strategy = "prefix";  // null | random | prefix | wait_push
  double strategy_q = 0.5;          // random eraser probability
  std::string encoder = "stochastic";  // stochastic | deterministic
  std::uint32_t workers = 1;
  std::string output_path;
};

ExperimentConfig parse_config(std::istream& in);
ExperimentConfig parse_config_text(const std::string& text);

// One simulated transmission. Pure function of (config seed, trial id).
struct TrialRecord {
  std::uint64_t trial_id = 0;
  std::uint64_t message = 0;
  std::uint32_t noise_weight = 0;
  std::uint32_t erasures_used = 0;
  std::uint32_t budget_overrides = 0;
  std::uint32_t tau = 0;  // 0 when no prefix cut was found
  std::uint32_t list_size = 0;
  std::string outcome;  // decoded message, error variant, or "-" for attacks
  bool success = false;
  std::string attack_phase;  // "-" for simulate trials
  bool attack_success = false;
  double wall_ms = 0.0;  // measured; excluded from CSV rows (determinism)
};

struct Summary {
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  double success_rate = 0.0;
  double mean_list_size = 0.0;
  std::uint32_t max_list_size = 0;
  double mean_erasures = 0.0;
  std::uint64_t attack_successes = 0;
  double attack_success_rate = 0.0;
  std::uint32_t budget = 0;
  std::uint64_t seed = 0;
};

// Codebook construction for a config: stochastic configs use derive_params,
// attack configs a deterministic random code at rate 1-2p+delta.
CodeParams params_for_config(const ExperimentConfig& cfg);
Codebook codebook_for_config(const ExperimentConfig& cfg);

TrialRecord run_trial(const Codebook& cb, const ExperimentConfig& cfg,
                      std::uint64_t trial_id);

std::vector<TrialRecord> run_trials(const Codebook& cb,
                                    const ExperimentConfig& cfg);

Summary summarize(const std::vector<TrialRecord>& records,
                  const ExperimentConfig& cfg);

extern const char* const kCsvSchema;  // versioned header comment line
void write_csv(std::ostream& out, const std::vector<TrialRecord>& records);
std::vector<TrialRecord> read_csv(std::istream& in);

void write_summary(std::ostream& out, const Summary& s);
Summary read_summary(std::istream& in);

// Runs the experiment, writing records to <output_path> and the summary to
// <output_path>.summary (when output_path is set).
Summary run_experiment(const ExperimentConfig& cfg);

// One run per axis value with derived seeds; combined per-value summaries are
// written as CSV to out (axis in {p, epsilon, delta, n, num_messages}).
std::vector<Summary> sweep(const ExperimentConfig& base,
                           const std::string& axis,
                           const std::vector<double>& values,
                           std::ostream& out);

// Recomputes the summary from the raw rows and compares.
bool verify_summary(const std::vector<TrialRecord>& records,
                    const Summary& claimed, std::string* report = nullptr);

}  // namespace aec

#endif
