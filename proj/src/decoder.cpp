#include "aec/decoder.hpp"

#include <cmath>
#include <stdexcept>

namespace aec {

namespace {
constexpr double kTieTolerance = 1e-12;

double log_likelihood(double q, std::uint32_t alpha, std::uint32_t v_size) {
  double ll = 0.0;
  if (alpha > 0) ll += double(alpha) * std::log(q);
  if (v_size > alpha) ll += double(v_size - alpha) * std::log1p(-q);
  return ll;
}
}  // namespace

const char* decode_error_name(DecodeError e) {
  switch (e) {
    case DecodeError::None: return "none";
    case DecodeError::NoTau: return "no_tau";
    case DecodeError::EmptyList: return "empty_list";
    case DecodeError::NoDisambigPair: return "no_disambig_pair";
    case DecodeError::NoCondorcet: return "no_condorcet";
  }
  return "?";
}

std::optional<std::uint32_t> compute_tau(const ReceivedWord& y,
                                         std::uint32_t target) {
  if (target < 1) throw std::invalid_argument("compute_tau: target < 1");
  std::uint32_t unerased = 0;
  for (std::uint32_t t = 1; t <= y.size(); ++t) {
    if (!y.erased(t)) ++unerased;
    if (unerased >= target) return t;
  }
  return std::nullopt;
}

std::vector<std::uint64_t> build_list(const Codebook& cb,
                                      const ReceivedWord& y,
                                      std::uint32_t tau) {
  std::vector<std::uint64_t> list;
  const std::uint32_t threshold = cb.params().list_threshold;
  for (std::uint64_t m = 1; m <= cb.num_messages(); ++m) {
    const Word& u = cb.base_codeword(m);
    std::uint32_t mismatches = 0;
    for (std::uint32_t i = 1; i <= tau; ++i) {
      if (!y.erased(i) && y.bit(i) != u.at(i)) {
        if (++mismatches >= threshold) break;
      }
    }
    if (mismatches < threshold) list.push_back(m);
  }
  return list;
}

std::optional<Disambiguation> disambiguation_set(const Codebook& cb,
                                                 const ReceivedWord& y,
                                                 std::uint32_t tau,
                                                 std::uint64_t m1,
                                                 std::uint64_t m2) {
  if (m1 == m2)
    throw std::invalid_argument("disambiguation_set: identical messages");
  const CodeParams& cp = cb.params();
  IndexSet suffix = unerased_positions(y, tau + 1, cp.n);
  for (std::uint32_t k1 = 1; k1 <= cp.num_levels; ++k1) {
    for (std::uint32_t k2 = 1; k2 <= cp.num_levels; ++k2) {
      if (k1 == k2) continue;
      IndexSet v;
      for (std::uint32_t i : suffix)
        if (cb.level_of(m1, i) == k1 && cb.level_of(m2, i) == k2)
          v.push_back(i);
      if (v.size() >= cp.disambig_threshold)
        return Disambiguation{k1, k2, std::move(v)};
    }
  }
  return std::nullopt;
}

std::pair<IndexSet, bool> split_and_pick(const Codebook& cb, std::uint64_t m1,
                                         std::uint64_t m2, const IndexSet& v) {
  if (v.empty()) throw std::invalid_argument("split_and_pick: empty V");
  IndexSet v0, v1;
  for (std::uint32_t i : v) {
    if (cb.base_codeword(m1).at(i) == cb.base_codeword(m2).at(i))
      v0.push_back(i);
    else
      v1.push_back(i);
  }
  if (v0.size() >= v1.size()) return {std::move(v0), true};
  return {std::move(v1), false};
}

bool beats(const Codebook& cb, const ReceivedWord& y, std::uint64_t m1,
           std::uint64_t m2, std::uint32_t k1, std::uint32_t k2,
           const IndexSet& v_chosen) {
  if (v_chosen.empty()) throw std::invalid_argument("beats: empty V");
  const double q1 = cb.params().noise_levels[k1 - 1];
  const double q2 = cb.params().noise_levels[k2 - 1];
  const std::uint32_t v_size = static_cast<std::uint32_t>(v_chosen.size());
  std::uint32_t alpha1 = mismatch_count(y, cb.base_codeword(m1), v_chosen);
  std::uint32_t alpha2 = mismatch_count(y, cb.base_codeword(m2), v_chosen);
  double ll1 = log_likelihood(q1, alpha1, v_size);
  double ll2 = log_likelihood(q2, alpha2, v_size);
  return ll1 - ll2 > kTieTolerance;
}

DecodeOutcome decode(const Codebook& cb, const ReceivedWord& y) {
  const CodeParams& cp = cb.params();
  if (y.size() != cp.n) throw std::invalid_argument("decode: wrong length");
  DecodeOutcome out;

  std::uint32_t target = static_cast<std::uint32_t>(
      std::ceil((cp.rate + cp.epsilon / 2.0) * cp.n - 1e-9));
  auto tau = compute_tau(y, target);
  if (!tau) {
    out.error = DecodeError::NoTau;
    return out;
  }
  out.tau = *tau;

  out.list = build_list(cb, y, out.tau);
  if (out.list.empty()) {
    out.error = DecodeError::EmptyList;
    return out;
  }
  if (out.list.size() == 1) {
    out.message = out.list.front();
    return out;
  }

  std::vector<std::uint32_t> wins(out.list.size(), 0);
  for (std::size_t a = 0; a < out.list.size(); ++a) {
    for (std::size_t b = a + 1; b < out.list.size(); ++b) {
      const std::uint64_t m1 = out.list[a], m2 = out.list[b];
      auto dis = disambiguation_set(cb, y, out.tau, m1, m2);
      if (!dis) {
        out.error = DecodeError::NoDisambigPair;
        return out;
      }
      auto [v_chosen, agree] = split_and_pick(cb, m1, m2, dis->v);
      bool first_wins = beats(cb, y, m1, m2, dis->k1, dis->k2, v_chosen);
      PairRecord rec;
      rec.m1 = m1;
      rec.m2 = m2;
      rec.k1 = dis->k1;
      rec.k2 = dis->k2;
      rec.v_size = static_cast<std::uint32_t>(dis->v.size());
      rec.winner = first_wins ? m1 : m2;
      out.pairwise.push_back(rec);
      ++wins[first_wins ? a : b];
    }
  }
  for (std::size_t a = 0; a < out.list.size(); ++a) {
    if (wins[a] == out.list.size() - 1) {
      out.message = out.list[a];
      return out;
    }
  }
  out.error = DecodeError::NoCondorcet;
  return out;
}

}  // namespace aec
