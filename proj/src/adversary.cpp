#include "aec/adversary.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "aec/rng.hpp"

namespace aec {

ChannelResult apply_channel(const Word& x, Strategy& strategy,
                            std::uint32_t budget, bool keep_trace) {
  const std::uint32_t n = static_cast<std::uint32_t>(x.size());
  const std::uint32_t delay = strategy.delay();
  ChannelResult res;
  res.y = ReceivedWord::from_word(x);
  std::uint32_t remaining = budget;
  for (std::uint32_t t = 1; t <= n; ++t) {
    std::uint32_t obs = t > delay ? t - delay : 0;
    std::span<const Bit> observed(x.bits().data(), obs);
    bool requested = strategy.erase_at(t, observed);
    bool erased = false, overridden = false;
    if (requested) {
      if (remaining > 0) {
        res.y.erase_at(t);
        --remaining;
        ++res.erasures_used;
        erased = true;
      } else {
        overridden = true;
        ++res.overrides;
      }
    }
    if (keep_trace)
      res.trace.push_back({t, obs, requested, erased, overridden,
                           strategy.phase(), strategy.surviving_count(),
                           remaining});
  }
  return res;
}

namespace {

class NullStrategy final : public Strategy {
 public:
  bool erase_at(std::uint32_t, std::span<const Bit>) override { return false; }
  std::string_view phase() const override { return "null"; }
};

class RandomStrategy final : public Strategy {
 public:
  RandomStrategy(double q, std::uint64_t seed)
      : q_(q), rng_(make_rng(seed, Role::Adversary)) {}
  bool erase_at(std::uint32_t, std::span<const Bit>) override {
    return unit_(rng_) < q_;
  }
  std::string_view phase() const override { return "random"; }

 private:
  double q_;
  std::mt19937_64 rng_;
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
};

class PrefixStrategy final : public Strategy {
 public:
  // Requests an erasure everywhere; the channel's budget cap turns this into
  // "erase bits 1..budget".
  bool erase_at(std::uint32_t, std::span<const Bit>) override { return true; }
  std::string_view phase() const override { return "prefix"; }
};

}  // namespace

std::unique_ptr<Strategy> strategy_null() {
  return std::make_unique<NullStrategy>();
}

std::unique_ptr<Strategy> strategy_random(double q, std::uint64_t seed) {
  if (q < 0.0 || q > 1.0)
    throw std::invalid_argument("strategy_random: q outside [0,1]");
  return std::make_unique<RandomStrategy>(q, seed);
}

std::unique_ptr<Strategy> strategy_prefix() {
  return std::make_unique<PrefixStrategy>();
}

ConsistencySets consistency_split(const Codebook& cb,
                                  const std::vector<std::uint64_t>& surviving,
                                  std::uint32_t ell) {
  if (surviving.empty())
    throw std::invalid_argument("consistency_split: empty surviving set");
  ConsistencySets cs;
  for (std::uint64_t m : surviving) {
    if (cb.base_codeword(m).at(ell) == 0)
      cs.phi0.push_back(m);
    else
      cs.phi1.push_back(m);
  }
  cs.big = std::max(cs.phi0.size(), cs.phi1.size());
  cs.small = std::min(cs.phi0.size(), cs.phi1.size());
  return cs;
}

std::string_view attack_phase_name(AttackPhase p) {
  switch (p) {
    case AttackPhase::Wait1: return "wait1";
    case AttackPhase::Wait2: return "wait2";
    case AttackPhase::Push: return "push";
    case AttackPhase::Error1: return "error1";
    case AttackPhase::Done: return "done";
  }
  return "?";
}

WaitPushStrategy::WaitPushStrategy(const Codebook& cb, WaitPushOptions opts,
                                   std::uint64_t seed)
    : cb_(cb), opts_(std::move(opts)), rng_(make_rng(seed, Role::Adversary)) {
  const std::uint32_t n = cb.params().n;
  const double p = cb.params().p;
  if (opts_.delta <= 0.0 && !opts_.wait1_override)
    throw std::invalid_argument("wait_push: delta must be positive");
  wait1_ = opts_.wait1_override
               ? *opts_.wait1_override
               : static_cast<std::uint32_t>(
                     std::floor((1.0 - 2.0 * p + opts_.delta) * n)) +
                     1;
  push_threshold_ = opts_.push_threshold_override
                        ? *opts_.push_threshold_override
                        : opts_.delta * n / 4.0;
  error_threshold_ = opts_.error_threshold_override
                         ? *opts_.error_threshold_override
                         : opts_.c / opts_.delta;
  surviving_.resize(cb.num_messages());
  std::iota(surviving_.begin(), surviving_.end(), std::uint64_t{1});
}

void WaitPushStrategy::filter_surviving(std::span<const Bit> observed) {
  while (filtered_upto_ < observed.size()) {
    const std::uint32_t pos = filtered_upto_ + 1;
    const Bit b = observed[filtered_upto_];
    std::erase_if(surviving_, [&](std::uint64_t m) {
      return cb_.base_codeword(m).at(pos) != b;
    });
    ++filtered_upto_;
  }
}

bool WaitPushStrategy::erase_at(std::uint32_t t, std::span<const Bit> observed) {
  filter_surviving(observed);
  if (surviving_.empty()) {
    // Nothing in the code matches the observed prefix; the attack has no
    // uncertainty left to protect, so it stops erasing.
    phase_ = AttackPhase::Error1;
    return false;
  }
  bool erase = false;
  switch (phase_) {
    case AttackPhase::Wait1:
      if (t <= wait1_) break;
      phase_ = AttackPhase::Wait2;
      deepest_ = AttackPhase::Wait2;
      [[fallthrough]];
    case AttackPhase::Wait2: {
      // A_t + a_t = |Phi_{t-1}|, available from the 1-bit-delayed view
      const double size = double(surviving_.size());
      if (size >= push_threshold_) break;
      ell_star_ = t;
      if (size < error_threshold_) {
        phase_ = AttackPhase::Error1;
        deepest_ = AttackPhase::Error1;
        break;
      }
      phase_ = AttackPhase::Push;
      deepest_ = AttackPhase::Push;
      if (opts_.forced_plausible) {
        plausible_ = opts_.forced_plausible;
      } else {
        std::uniform_int_distribution<std::size_t> pick(
            0, surviving_.size() - 1);
        plausible_ = cb_.base_codeword(surviving_[pick(rng_)]);
      }
      [[fallthrough]];
    }
    case AttackPhase::Push: {
      ConsistencySets cs = consistency_split(cb_, surviving_, t);
      if (!cs.phi0.empty() && !cs.phi1.empty()) {
        // branch point: the surviving codewords disagree on x_t
        ++branch_erasures_;
        erase = true;
      } else {
        const Bit certain = cs.phi0.empty() ? 1 : 0;
        erase = plausible_->at(t) != certain;
      }
      break;
    }
    case AttackPhase::Error1:
    case AttackPhase::Done:
      break;
  }
  if (t == cb_.params().n) phase_ = AttackPhase::Done;
  return erase;
}

bool omniscient_confusable(const Codebook& cb, std::uint64_t m,
                           std::uint64_t m2, std::uint32_t budget) {
  if (m == m2)
    throw std::invalid_argument("omniscient_confusable: identical messages");
  return hamming_distance(cb.base_codeword(m), cb.base_codeword(m2)) <= budget;
}

std::vector<std::uint64_t> consistent_messages(const Codebook& cb,
                                               const ReceivedWord& y) {
  std::vector<std::uint64_t> out;
  const std::uint32_t n = cb.params().n;
  for (std::uint64_t m = 1; m <= cb.num_messages(); ++m) {
    const Word& u = cb.base_codeword(m);
    bool ok = true;
    for (std::uint32_t i = 1; i <= n; ++i) {
      if (!y.erased(i) && y.bit(i) != u.at(i)) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(m);
  }
  return out;
}

}  // namespace aec
