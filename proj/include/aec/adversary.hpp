#ifndef AEC_ADVERSARY_HPP
#define AEC_ADVERSARY_HPP

#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "aec/codebook.hpp"
#include "aec/word.hpp"

namespace aec {

// A delay-D causal erasing strategy. Instances are stateful per trial and
// confined to one trial's execution.
class Strategy {
 public:
  virtual ~Strategy() = default;
  virtual std::uint32_t delay() const { return 1; }
  // Decision for position t (1-based). observed holds exactly x_{1..t-D}.
  virtual bool erase_at(std::uint32_t t, std::span<const Bit> observed) = 0;
  virtual std::string_view phase() const { return "-"; }
  virtual std::uint64_t surviving_count() const { return 0; }
};

struct TraceRow {
  std::uint32_t t = 0;
  std::uint32_t observed = 0;  // prefix length visible to the strategy
  bool erase_requested = false;
  bool erased = false;
  bool overridden = false;  // request denied by exhausted budget
  std::string_view phase;
  std::uint64_t surviving = 0;
  std::uint32_t budget_remaining = 0;
};

struct ChannelResult {
  ReceivedWord y;
  std::uint32_t erasures_used = 0;
  std::uint32_t overrides = 0;
  std::vector<TraceRow> trace;  // filled only when requested
};

// Runs the channel: queries the strategy at each t with x_{1..t-D} and applies
// its decision, overriding "erase" to "pass" once the budget is spent. The
// override is recorded, never thrown.
ChannelResult apply_channel(const Word& x, Strategy& strategy,
                            std::uint32_t budget, bool keep_trace = false);

std::unique_ptr<Strategy> strategy_null();
// Erases each bit independently with probability q until the budget is gone.
std::unique_ptr<Strategy> strategy_random(double q, std::uint64_t seed);
// Erases bits 1..budget.
std::unique_ptr<Strategy> strategy_prefix();

// The split of the surviving set by the value of bit ell.
struct ConsistencySets {
  std::vector<std::uint64_t> phi0;
  std::vector<std::uint64_t> phi1;
  std::uint64_t big = 0;    // A = max(|phi0|, |phi1|)
  std::uint64_t small = 0;  // a = min(|phi0|, |phi1|)
};

ConsistencySets consistency_split(const Codebook& cb,
                                  const std::vector<std::uint64_t>& surviving,
                                  std::uint32_t ell);

enum class AttackPhase { Wait1, Wait2, Push, Error1, Done };
std::string_view attack_phase_name(AttackPhase p);

struct WaitPushOptions {
  double delta = 0.0;  // rate excess
  double c = 4.0;      // attack constant
  // Test hooks for fixtures whose toy dimensions admit no valid (delta, c):
  std::optional<std::uint32_t> wait1_override;     // Wait-1 length in bits
  std::optional<double> push_threshold_override;   // default delta*n/4
  std::optional<double> error_threshold_override;  // default c/delta
  std::optional<Word> forced_plausible;            // default: uniform draw
};

// The wait-and-push attack on a deterministic code, delay 1.
class WaitPushStrategy : public Strategy {
 public:
  WaitPushStrategy(const Codebook& cb, WaitPushOptions opts,
                   std::uint64_t seed);

  std::uint32_t delay() const override { return 1; }
  bool erase_at(std::uint32_t t, std::span<const Bit> observed) override;
  std::string_view phase() const override {
    return attack_phase_name(phase_);
  }
  std::uint64_t surviving_count() const override { return surviving_.size(); }

  AttackPhase phase_reached() const { return deepest_; }
  std::optional<std::uint32_t> transition_time() const { return ell_star_; }
  const std::optional<Word>& plausible() const { return plausible_; }
  const std::vector<std::uint64_t>& surviving() const { return surviving_; }
  std::uint32_t branch_erasures() const { return branch_erasures_; }

 private:
  void filter_surviving(std::span<const Bit> observed);

  const Codebook& cb_;
  WaitPushOptions opts_;
  std::mt19937_64 rng_;
  std::uint32_t wait1_;
  double push_threshold_;
  double error_threshold_;
  AttackPhase phase_ = AttackPhase::Wait1;
  AttackPhase deepest_ = AttackPhase::Wait1;
  std::vector<std::uint64_t> surviving_;
  std::uint32_t filtered_upto_ = 0;  // prefix length already applied
  std::optional<std::uint32_t> ell_star_;
  std::optional<Word> plausible_;
  std::uint32_t branch_erasures_ = 0;
};

// True iff erasing every differing position within the budget makes the two
// transmissions indistinguishable.
bool omniscient_confusable(const Codebook& cb, std::uint64_t m,
                           std::uint64_t m2, std::uint32_t budget);

// Messages whose base codeword agrees with y on every unerased position.
std::vector<std::uint64_t> consistent_messages(const Codebook& cb,
                                               const ReceivedWord& y);

}  // namespace aec

#endif
