#include "aec/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "aec/encoder.hpp"
#include "aec/rng.hpp"

namespace aec {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial_id,
                          Role role) {
  return std::mt19937_64(
      derive_seed(seed, {trial_id, static_cast<std::uint64_t>(role)}));
}

void validate_config(const ExperimentConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("config: trials must be >= 1");
  if (!(cfg.p > 0.0 && cfg.p < 1.0))
    throw std::invalid_argument("config: p must be in (0,1)");
  if (cfg.strategy != "null" && cfg.strategy != "random" &&
      cfg.strategy != "prefix" && cfg.strategy != "wait_push")
    throw std::invalid_argument("config: unknown strategy " + cfg.strategy);
  if (cfg.encoder != "stochastic" && cfg.encoder != "deterministic")
    throw std::invalid_argument("config: unknown encoder " + cfg.encoder);
  if (cfg.kind == ExperimentKind::Attack && cfg.strategy != "wait_push")
    throw std::invalid_argument("config: attack experiments use wait_push");
}

}  // namespace

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig cfg;
  std::string line;
  while (std::getline(in, line)) {
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: expected key=value: " + line);
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    try {
      if (key == "kind") {
        if (val == "simulate") cfg.kind = ExperimentKind::Simulate;
        else if (val == "attack") cfg.kind = ExperimentKind::Attack;
        else throw std::invalid_argument("bad kind");
      } else if (key == "n") cfg.n = static_cast<std::uint32_t>(std::stoul(val));
      else if (key == "p") cfg.p = std::stod(val);
      else if (key == "epsilon") cfg.epsilon = std::stod(val);
      else if (key == "delta") cfg.delta = std::stod(val);
      else if (key == "c") cfg.attack_c = std::stod(val);
      else if (key == "messages") cfg.num_messages = std::stoull(val);
      else if (key == "trials") cfg.trials = std::stoull(val);
      else if (key == "seed") cfg.seed = std::stoull(val);
      else if (key == "strategy") cfg.strategy = val;
      else if (key == "strategy_q") cfg.strategy_q = std::stod(val);
      else if (key == "encoder") cfg.encoder = val;
      else if (key == "workers")
        cfg.workers = static_cast<std::uint32_t>(std::stoul(val));
      else if (key == "out") cfg.output_path = val;
      else throw std::invalid_argument("unknown key");
    } catch (const std::exception& e) {
      throw std::invalid_argument("config: bad line '" + line + "': " +
                                  e.what());
    }
  }
  validate_config(cfg);
  return cfg;
}

ExperimentConfig parse_config_text(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

CodeParams params_for_config(const ExperimentConfig& cfg) {
  if (cfg.kind == ExperimentKind::Simulate) {
    return derive_params(cfg.n, cfg.p, cfg.epsilon,
                         cfg.num_messages
                             ? std::optional<std::uint64_t>(cfg.num_messages)
                             : std::nullopt);
  }
  // Attack: deterministic random code at rate 1 - 2p + delta. The stochastic
  // layer is never used; noise levels are filled in for completeness.
  CodeParams cp;
  cp.n = cfg.n;
  cp.p = cfg.p;
  cp.epsilon = 0.0;
  cp.rate = 1.0 - 2.0 * cfg.p + cfg.delta;
  if (cp.rate <= 0.0)
    throw std::invalid_argument("attack config: 1-2p+delta must be positive");
  cp.num_levels = 2;
  double q1 = 1.0 / std::sqrt(double(cp.n));
  cp.noise_levels = {q1, std::min(2.0 * q1, 0.499)};
  double bits = cp.rate * cp.n;
  std::uint64_t m = bits >= 20.0
                        ? (1ULL << 20)
                        : static_cast<std::uint64_t>(
                              std::floor(std::exp2(bits) + 1e-9));
  cp.num_messages = cfg.num_messages ? cfg.num_messages
                                     : std::max<std::uint64_t>(2, m);
  cp.list_threshold = static_cast<std::uint32_t>(
      std::ceil(std::pow(double(cp.n), 0.75) - 1e-9));
  cp.disambig_threshold = 1;
  return cp;
}

Codebook codebook_for_config(const ExperimentConfig& cfg) {
  return Codebook::generate(
      params_for_config(cfg),
      derive_seed(cfg.seed, {static_cast<std::uint64_t>(Role::Codebook)}));
}

namespace {

std::unique_ptr<Strategy> make_strategy(const Codebook& cb,
                                        const ExperimentConfig& cfg,
                                        std::uint64_t trial_id) {
  std::uint64_t seed = derive_seed(cfg.seed, {trial_id});
  if (cfg.strategy == "null") return strategy_null();
  if (cfg.strategy == "random") return strategy_random(cfg.strategy_q, seed);
  if (cfg.strategy == "prefix") return strategy_prefix();
  WaitPushOptions opts;
  opts.delta = cfg.delta;
  opts.c = cfg.attack_c;
  return std::make_unique<WaitPushStrategy>(cb, opts, seed);
}

}  // namespace

TrialRecord run_trial(const Codebook& cb, const ExperimentConfig& cfg,
                      std::uint64_t trial_id) {
  auto start = std::chrono::steady_clock::now();
  const CodeParams& cp = cb.params();
  TrialRecord rec;
  rec.trial_id = trial_id;

  auto msg_rng = trial_rng(cfg.seed, trial_id, Role::Message);
  std::uniform_int_distribution<std::uint64_t> pick(1, cb.num_messages());
  rec.message = pick(msg_rng);

  Word x;
  if (cfg.kind == ExperimentKind::Simulate && cfg.encoder == "stochastic") {
    auto enc_rng = trial_rng(cfg.seed, trial_id, Role::Encoder);
    auto [word, noise] = encode_stochastic(cb, rec.message, enc_rng);
    x = std::move(word);
    rec.noise_weight = noise.weight;
  } else {
    x = encode_deterministic(cb, rec.message);
  }

  auto strategy = make_strategy(cb, cfg, trial_id);
  ChannelResult ch = apply_channel(x, *strategy, cp.erasure_budget());
  rec.erasures_used = ch.erasures_used;
  rec.budget_overrides = ch.overrides;

  if (cfg.kind == ExperimentKind::Simulate) {
    DecodeOutcome out = decode(cb, ch.y);
    rec.tau = out.error == DecodeError::NoTau ? 0 : out.tau;
    rec.list_size = static_cast<std::uint32_t>(out.list.size());
    if (out.error == DecodeError::None) {
      rec.outcome = std::to_string(out.message);
      rec.success = out.message == rec.message;
    } else {
      rec.outcome = decode_error_name(out.error);
    }
    rec.attack_phase = "-";
  } else {
    rec.outcome = "-";
    auto* wp = static_cast<WaitPushStrategy*>(strategy.get());
    rec.attack_phase = attack_phase_name(wp->phase_reached());
    rec.attack_success = consistent_messages(cb, ch.y).size() >= 2;
  }

  rec.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  return rec;
}

std::vector<TrialRecord> run_trials(const Codebook& cb,
                                    const ExperimentConfig& cfg) {
  std::vector<TrialRecord> records(cfg.trials);
  const std::uint32_t workers =
      std::max<std::uint32_t>(1, std::min<std::uint32_t>(
                                     cfg.workers,
                                     std::thread::hardware_concurrency()));
  if (workers == 1) {
    for (std::uint64_t i = 0; i < cfg.trials; ++i)
      records[i] = run_trial(cb, cfg, i);
    return records;
  }
  std::atomic<std::uint64_t> next{0};
  std::vector<std::thread> pool;
  for (std::uint32_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        std::uint64_t i = next.fetch_add(1);
        if (i >= cfg.trials) return;
        records[i] = run_trial(cb, cfg, i);
      }
    });
  }
  for (auto& t : pool) t.join();
  return records;
}

Summary summarize(const std::vector<TrialRecord>& records,
                  const ExperimentConfig& cfg) {
  Summary s;
  s.trials = records.size();
  s.budget = static_cast<std::uint32_t>(cfg.p * cfg.n);
  s.seed = cfg.seed;
  double list_sum = 0.0, erasure_sum = 0.0;
  for (const TrialRecord& r : records) {
    if (r.success) ++s.successes;
    if (r.attack_success) ++s.attack_successes;
    list_sum += r.list_size;
    erasure_sum += r.erasures_used;
    s.max_list_size = std::max(s.max_list_size, r.list_size);
  }
  if (s.trials > 0) {
    s.success_rate = double(s.successes) / double(s.trials);
    s.attack_success_rate = double(s.attack_successes) / double(s.trials);
    s.mean_list_size = list_sum / double(s.trials);
    s.mean_erasures = erasure_sum / double(s.trials);
  }
  return s;
}

const char* const kCsvSchema =
    "# aec-trials v1\n"
    "trial_id,message,noise_weight,erasures_used,budget_overrides,tau,"
    "list_size,outcome,success,attack_phase,attack_success";

void write_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
  out << kCsvSchema << "\n";
  for (const TrialRecord& r : records) {
    out << r.trial_id << ',' << r.message << ',' << r.noise_weight << ','
        << r.erasures_used << ',' << r.budget_overrides << ',' << r.tau << ','
        << r.list_size << ',' << r.outcome << ',' << (r.success ? 1 : 0) << ','
        << r.attack_phase << ',' << (r.attack_success ? 1 : 0) << "\n";
  }
}

std::vector<TrialRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "# aec-trials v1")
    throw std::runtime_error("trials csv: bad schema line");
  if (!std::getline(in, line))
    throw std::runtime_error("trials csv: missing column header");
  std::vector<TrialRecord> records;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    std::istringstream ls(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (fields.size() != 11)
      throw std::runtime_error("trials csv: bad row: " + line);
    TrialRecord r;
    r.trial_id = std::stoull(fields[0]);
    r.message = std::stoull(fields[1]);
    r.noise_weight = static_cast<std::uint32_t>(std::stoul(fields[2]));
    r.erasures_used = static_cast<std::uint32_t>(std::stoul(fields[3]));
    r.budget_overrides = static_cast<std::uint32_t>(std::stoul(fields[4]));
    r.tau = static_cast<std::uint32_t>(std::stoul(fields[5]));
    r.list_size = static_cast<std::uint32_t>(std::stoul(fields[6]));
    r.outcome = fields[7];
    r.success = fields[8] == "1";
    r.attack_phase = fields[9];
    r.attack_success = fields[10] == "1";
    records.push_back(std::move(r));
  }
  return records;
}

void write_summary(std::ostream& out, const Summary& s) {
  out.precision(17);
  out << "# aec-summary v1\n";
  out << "trials=" << s.trials << "\n";
  out << "successes=" << s.successes << "\n";
  out << "success_rate=" << s.success_rate << "\n";
  out << "mean_list_size=" << s.mean_list_size << "\n";
  out << "max_list_size=" << s.max_list_size << "\n";
  out << "mean_erasures=" << s.mean_erasures << "\n";
  out << "attack_successes=" << s.attack_successes << "\n";
  out << "attack_success_rate=" << s.attack_success_rate << "\n";
  out << "budget=" << s.budget << "\n";
  out << "seed=" << s.seed << "\n";
}

Summary read_summary(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "# aec-summary v1")
    throw std::runtime_error("summary: bad schema line");
  Summary s;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("summary: bad line: " + line);
    std::string key = line.substr(0, eq), val = line.substr(eq + 1);
    if (key == "trials") s.trials = std::stoull(val);
    else if (key == "successes") s.successes = std::stoull(val);
    else if (key == "success_rate") s.success_rate = std::stod(val);
    else if (key == "mean_list_size") s.mean_list_size = std::stod(val);
    else if (key == "max_list_size")
      s.max_list_size = static_cast<std::uint32_t>(std::stoul(val));
    else if (key == "mean_erasures") s.mean_erasures = std::stod(val);
    else if (key == "attack_successes") s.attack_successes = std::stoull(val);
    else if (key == "attack_success_rate")
      s.attack_success_rate = std::stod(val);
    else if (key == "budget")
      s.budget = static_cast<std::uint32_t>(std::stoul(val));
    else if (key == "seed") s.seed = std::stoull(val);
    else throw std::runtime_error("summary: unknown key: " + key);
  }
  return s;
}

Summary run_experiment(const ExperimentConfig& cfg) {
  validate_config(cfg);
  Codebook cb = codebook_for_config(cfg);
  std::vector<TrialRecord> records = run_trials(cb, cfg);
  Summary s = summarize(records, cfg);
  if (!cfg.output_path.empty()) {
    std::ofstream csv(cfg.output_path);
    if (!csv)
      throw std::runtime_error("cannot open for writing: " + cfg.output_path);
    write_csv(csv, records);
    std::ofstream sum(cfg.output_path + ".summary");
    if (!sum)
      throw std::runtime_error("cannot open for writing: " + cfg.output_path +
                               ".summary");
    write_summary(sum, s);
  }
  return s;
}

std::vector<Summary> sweep(const ExperimentConfig& base,
                           const std::string& axis,
                           const std::vector<double>& values,
                           std::ostream& out) {
  if (values.empty()) throw std::invalid_argument("sweep: empty value list");
  if (axis != "p" && axis != "epsilon" && axis != "delta" && axis != "n" &&
      axis != "num_messages")
    throw std::invalid_argument("sweep: invalid axis " + axis);
  out << "# aec-sweep v1\n";
  out << "axis,value,trials,successes,success_rate,mean_list_size,"
         "max_list_size,mean_erasures,attack_successes,attack_success_rate\n";
  std::vector<Summary> summaries;
  for (std::size_t i = 0; i < values.size(); ++i) {
    ExperimentConfig cfg = base;
    cfg.seed = derive_seed(base.seed,
                           {static_cast<std::uint64_t>(Role::Sweep), i});
    if (axis == "p") cfg.p = values[i];
    else if (axis == "epsilon") cfg.epsilon = values[i];
    else if (axis == "delta") cfg.delta = values[i];
    else if (axis == "n") cfg.n = static_cast<std::uint32_t>(values[i]);
    else cfg.num_messages = static_cast<std::uint64_t>(values[i]);
    if (!base.output_path.empty())
      cfg.output_path = base.output_path + "." + std::to_string(i);
    Summary s = run_experiment(cfg);
    out.precision(17);
    out << axis << ',' << values[i] << ',' << s.trials << ',' << s.successes
        << ',' << s.success_rate << ',' << s.mean_list_size << ','
        << s.max_list_size << ',' << s.mean_erasures << ','
        << s.attack_successes << ',' << s.attack_success_rate << "\n";
    summaries.push_back(s);
  }
  return summaries;
}

bool verify_summary(const std::vector<TrialRecord>& records,
                    const Summary& claimed, std::string* report) {
  ExperimentConfig cfg;
  cfg.trials = records.size();
  Summary fresh = summarize(records, cfg);
  std::ostringstream msg;
  bool ok = true;
  auto check_u64 = [&](const char* name, std::uint64_t a, std::uint64_t b) {
    if (a != b) {
      ok = false;
      msg << name << ": recomputed " << a << " != claimed " << b << "\n";
    }
  };
  auto check_d = [&](const char* name, double a, double b) {
    if (std::abs(a - b) > 1e-12) {
      ok = false;
      msg << name << ": recomputed " << a << " != claimed " << b << "\n";
    }
  };
  check_u64("trials", fresh.trials, claimed.trials);
  check_u64("successes", fresh.successes, claimed.successes);
  check_u64("attack_successes", fresh.attack_successes,
            claimed.attack_successes);
  check_u64("max_list_size", fresh.max_list_size, claimed.max_list_size);
  check_d("success_rate", fresh.success_rate, claimed.success_rate);
  check_d("attack_success_rate", fresh.attack_success_rate,
          claimed.attack_success_rate);
  check_d("mean_list_size", fresh.mean_list_size, claimed.mean_list_size);
  check_d("mean_erasures", fresh.mean_erasures, claimed.mean_erasures);
  if (ok) msg << "summary matches raw rows\n";
  if (report) *report = msg.str();
  return ok;
}

}  // namespace aec
