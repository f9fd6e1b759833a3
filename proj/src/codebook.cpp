#include "aec/codebook.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "aec/rng.hpp"

namespace aec {

namespace {

// ceil() on expressions like n^{3/4} that are often exactly integral;
// guards against the value landing just above an integer.
std::uint32_t ceil_guarded(double v) {
  double r = std::nearbyint(v);
  if (std::abs(v - r) < 1e-9) return static_cast<std::uint32_t>(r);
  return static_cast<std::uint32_t>(std::ceil(v));
}

std::uint64_t floor_pow2(double exponent) {
  if (exponent >= 62.0) return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(std::floor(std::exp2(exponent) + 1e-9));
}

}  // namespace

CodeParams derive_params(std::uint32_t n, double p, double epsilon,
                         std::optional<std::uint64_t> num_messages_override,
                         std::uint64_t max_messages) {
  if (n < 16) throw std::invalid_argument("derive_params: n must be >= 16");
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("derive_params: p must be in (0,1)");
  if (!(epsilon > 0.0 && epsilon < 1.0 - p))
    throw std::invalid_argument("derive_params: epsilon must be in (0,1-p)");

  CodeParams cp;
  cp.n = n;
  cp.p = p;
  cp.epsilon = epsilon;
  cp.rate = 1.0 - p - epsilon;
  if (!(cp.rate > 0.0 && cp.rate < 1.0))
    throw std::domain_error("derive_params: rate out of (0,1)");

  cp.num_levels = std::max<std::uint32_t>(
      2, static_cast<std::uint32_t>(std::floor(std::log2(double(n)) / 4.0 +
                                               1e-9)));
  for (std::uint32_t k = 1; k <= cp.num_levels; ++k)
    cp.noise_levels.push_back(std::exp2(double(k) - 1.0) /
                              std::sqrt(double(n)));
  if (cp.noise_levels.back() >= 0.5)
    throw std::domain_error("derive_params: q_K >= 1/2, n too small for K");

  std::uint64_t m_unc = floor_pow2(double(n) * cp.rate);
  cp.num_messages = num_messages_override
                        ? std::min(*num_messages_override, m_unc)
                        : std::min(max_messages, m_unc);
  if (cp.num_messages < 2)
    throw std::domain_error("derive_params: fewer than 2 messages");

  cp.list_threshold = ceil_guarded(std::pow(double(n), 0.75));
  double kk = double(cp.num_levels) * cp.num_levels - cp.num_levels;
  cp.disambig_threshold = ceil_guarded(epsilon * n / (4.0 * kk));
  return cp;
}

Codebook Codebook::generate(const CodeParams& params, std::uint64_t seed) {
  Codebook cb;
  cb.params_ = params;
  cb.seed_ = seed;
  cb.base_.reserve(params.num_messages);
  cb.levels_.reserve(params.num_messages);
  for (std::uint64_t m = 1; m <= params.num_messages; ++m) {
    auto word_rng = make_rng(seed, Role::BaseWords, m);
    std::vector<Bit> bits(params.n);
    for (std::uint32_t i = 0; i < params.n; ++i)
      bits[i] = static_cast<Bit>(word_rng() & 1u);
    cb.base_.emplace_back(std::move(bits));

    auto part_rng = make_rng(seed, Role::Partition, m);
    std::uniform_int_distribution<std::uint32_t> level(1, params.num_levels);
    std::vector<std::uint8_t> row(params.n);
    for (std::uint32_t i = 0; i < params.n; ++i)
      row[i] = static_cast<std::uint8_t>(level(part_rng));
    cb.levels_.emplace_back(std::move(row));
  }
  return cb;
}

Codebook Codebook::from_parts(CodeParams params, std::vector<Word> base,
                              std::vector<std::vector<std::uint8_t>> levels,
                              std::uint64_t seed) {
  if (base.size() != params.num_messages || levels.size() != base.size())
    throw std::invalid_argument("codebook: message count mismatch");
  for (const Word& w : base)
    if (w.size() != params.n)
      throw std::invalid_argument("codebook: wrong word length");
  for (const auto& row : levels) {
    if (row.size() != params.n)
      throw std::invalid_argument("codebook: wrong partition length");
    for (std::uint8_t k : row)
      if (k < 1 || k > params.num_levels)
        throw std::invalid_argument("codebook: level out of range");
  }
  if (params.noise_levels.size() != params.num_levels)
    throw std::invalid_argument("codebook: noise level count mismatch");
  Codebook cb;
  cb.params_ = std::move(params);
  cb.seed_ = seed;
  cb.base_ = std::move(base);
  cb.levels_ = std::move(levels);
  return cb;
}

IndexSet Codebook::partition(std::uint64_t m, std::uint32_t k) const {
  IndexSet out;
  const auto& row = levels_[m - 1];
  for (std::uint32_t i = 0; i < params_.n; ++i)
    if (row[i] == k) out.push_back(i + 1);
  return out;
}

void Codebook::save(std::ostream& out) const {
  out.precision(17);
  out << "# aec-codebook v1\n";
  out << "n " << params_.n << "\n";
  out << "M " << params_.num_messages << "\n";
  out << "K " << params_.num_levels << "\n";
  out << "q";
  for (double q : params_.noise_levels) out << " " << q;
  out << "\n";
  out << "p " << params_.p << "\n";
  out << "epsilon " << params_.epsilon << "\n";
  out << "rate " << params_.rate << "\n";
  out << "list_threshold " << params_.list_threshold << "\n";
  out << "disambig_threshold " << params_.disambig_threshold << "\n";
  out << "seed " << seed_ << "\n";
  for (std::uint64_t m = 1; m <= num_messages(); ++m) {
    out << base_[m - 1].to_string();
    for (std::uint32_t k = 1; k <= params_.num_levels; ++k) {
      out << " |";
      for (std::uint32_t i = 0; i < params_.n; ++i)
        if (levels_[m - 1][i] == k) out << " " << (i + 1);
    }
    out << "\n";
  }
}

void Codebook::save_file(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  save(out);
  if (!out) throw std::runtime_error("write failed: " + path);
}

Codebook Codebook::load(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "# aec-codebook v1")
    throw std::runtime_error("codebook: bad or missing header");
  CodeParams cp;
  std::uint64_t seed = 0;
  for (;;) {
    std::streampos mark = in.tellg();
    if (!std::getline(in, line))
      throw std::runtime_error("codebook: truncated header");
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "n") ls >> cp.n;
    else if (key == "M") ls >> cp.num_messages;
    else if (key == "K") ls >> cp.num_levels;
    else if (key == "q") {
      double q;
      while (ls >> q) cp.noise_levels.push_back(q);
    } else if (key == "p") ls >> cp.p;
    else if (key == "epsilon") ls >> cp.epsilon;
    else if (key == "rate") ls >> cp.rate;
    else if (key == "list_threshold") ls >> cp.list_threshold;
    else if (key == "disambig_threshold") ls >> cp.disambig_threshold;
    else if (key == "seed") ls >> seed;
    else {
      // first codeword line
      in.seekg(mark);
      break;
    }
    if (ls.fail() && key != "q")
      throw std::runtime_error("codebook: bad header line: " + line);
  }
  if (cp.n == 0 || cp.num_messages == 0 || cp.num_levels == 0)
    throw std::runtime_error("codebook: incomplete header");

  std::vector<Word> base;
  std::vector<std::vector<std::uint8_t>> levels;
  for (std::uint64_t m = 0; m < cp.num_messages; ++m) {
    if (!std::getline(in, line))
      throw std::runtime_error("codebook: missing codeword line");
    std::istringstream ls(line);
    std::string bits;
    ls >> bits;
    Word w = Word::parse(bits);
    if (w.size() != cp.n)
      throw std::runtime_error("codebook: wrong word length");
    std::vector<std::uint8_t> row(cp.n, 0);
    std::string tok;
    std::uint32_t k = 0;
    while (ls >> tok) {
      if (tok == "|") {
        ++k;
        continue;
      }
      std::uint32_t idx = 0;
      try {
        idx = static_cast<std::uint32_t>(std::stoul(tok));
      } catch (...) {
        throw std::runtime_error("codebook: bad index token: " + tok);
      }
      if (k < 1 || k > cp.num_levels || idx < 1 || idx > cp.n)
        throw std::runtime_error("codebook: index outside [1..n] or bad level");
      if (row[idx - 1] != 0)
        throw std::runtime_error("codebook: partition sets overlap");
      row[idx - 1] = static_cast<std::uint8_t>(k);
    }
    if (k != cp.num_levels)
      throw std::runtime_error("codebook: wrong number of partition sets");
    for (std::uint8_t lv : row)
      if (lv == 0)
        throw std::runtime_error("codebook: partition does not cover [1..n]");
    base.push_back(std::move(w));
    levels.push_back(std::move(row));
  }
  return from_parts(std::move(cp), std::move(base), std::move(levels), seed);
}

Codebook Codebook::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  return load(in);
}

std::uint64_t coherence_stat(const Codebook& cb, std::uint64_t m,
                             std::uint64_t m2, const IndexSet& t) {
  std::uint64_t stat = 0;
  for (std::uint32_t i : t)
    if (cb.level_of(m, i) == cb.level_of(m2, i)) ++stat;
  return stat;
}

namespace {

CoherenceReport check_pair(const Codebook& cb, std::uint64_t m1,
                           std::uint64_t m2, IndexSet t, double eta1) {
  CoherenceReport r;
  r.m1 = m1;
  r.m2 = m2;
  r.stat = coherence_stat(cb, m1, m2, t);
  r.bound = (double(t.size()) / cb.params().num_levels) * (1.0 + eta1);
  r.coherent = double(r.stat) <= r.bound;
  r.t = std::move(t);
  return r;
}

}  // namespace

CoherenceResult validate_coherence_exhaustive(const Codebook& cb, double eta1,
                                              double eta2,
                                              std::uint64_t max_checks) {
  const std::uint32_t n = cb.params().n;
  const std::uint64_t m_count = cb.num_messages();
  if (n > 24)
    throw std::invalid_argument("validate_coherence: exhaustive mode above cap");
  std::uint32_t tmin = ceil_guarded(eta2 * n);
  std::uint64_t subsets = 0;
  for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask)
    if (std::popcount(mask) >= int(tmin)) ++subsets;
  std::uint64_t pairs = m_count * (m_count - 1) / 2;
  if (pairs * subsets > max_checks)
    throw std::invalid_argument("validate_coherence: exhaustive mode above cap");

  CoherenceResult res;
  for (std::uint64_t m1 = 1; m1 <= m_count; ++m1) {
    for (std::uint64_t m2 = m1 + 1; m2 <= m_count; ++m2) {
      for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
        if (std::popcount(mask) < int(tmin)) continue;
        IndexSet t;
        for (std::uint32_t i = 0; i < n; ++i)
          if (mask & (1ULL << i)) t.push_back(i + 1);
        CoherenceReport r = check_pair(cb, m1, m2, std::move(t), eta1);
        ++res.checked;
        if (!r.coherent) res.violations.push_back(std::move(r));
      }
    }
  }
  res.passed = res.violations.empty();
  return res;
}

CoherenceResult validate_coherence_sampled(const Codebook& cb, double eta1,
                                           double eta2,
                                           std::uint64_t num_samples,
                                           std::uint64_t seed) {
  const std::uint32_t n = cb.params().n;
  const std::uint64_t m_count = cb.num_messages();
  CoherenceResult res;
  if (m_count < 2) {
    res.passed = true;
    return res;
  }
  std::uint32_t tsize = std::max<std::uint32_t>(1, ceil_guarded(eta2 * n));
  auto rng = make_rng(seed, Role::Validation);
  std::uniform_int_distribution<std::uint64_t> pick_m(1, m_count);
  std::vector<std::uint32_t> perm(n);
  std::iota(perm.begin(), perm.end(), 1u);
  for (std::uint64_t s = 0; s < num_samples; ++s) {
    std::uint64_t m1 = pick_m(rng), m2 = pick_m(rng);
    while (m2 == m1) m2 = pick_m(rng);
    if (m1 > m2) std::swap(m1, m2);
    // random T of size tsize via partial shuffle
    for (std::uint32_t i = 0; i < tsize; ++i) {
      std::uniform_int_distribution<std::uint32_t> j(i, n - 1);
      std::swap(perm[i], perm[j(rng)]);
    }
    IndexSet t(perm.begin(), perm.begin() + tsize);
    std::sort(t.begin(), t.end());
    CoherenceReport r = check_pair(cb, m1, m2, std::move(t), eta1);
    ++res.checked;
    if (!r.coherent) res.violations.push_back(std::move(r));
  }
  res.passed = res.violations.empty();
  return res;
}

ListDecodabilityResult validate_list_decodability(const Codebook& cb,
                                                  std::uint32_t w_u,
                                                  std::uint32_t w_e,
                                                  std::uint64_t s,
                                                  std::uint64_t max_ops) {
  const std::uint32_t n = cb.params().n;
  const std::uint64_t m_count = cb.num_messages();
  if (w_u > n || w_u > 24)
    throw std::invalid_argument("validate_list_decodability: above cap");
  // C(n, w_u) restrictions, 2^{w_u} centers, M codewords each
  double combos = 1.0;
  for (std::uint32_t i = 0; i < w_u; ++i)
    combos = combos * (n - i) / (i + 1);
  double ops = combos * std::exp2(double(w_u)) * double(m_count);
  if (ops > double(max_ops))
    throw std::invalid_argument("validate_list_decodability: above cap");

  ListDecodabilityResult res;
  std::vector<std::uint32_t> comb(w_u);
  std::iota(comb.begin(), comb.end(), 1u);
  for (;;) {
    IndexSet t_prime(comb.begin(), comb.end());
    std::vector<std::uint64_t> restricted(m_count);
    for (std::uint64_t m = 1; m <= m_count; ++m) {
      std::uint64_t v = 0;
      for (std::uint32_t i = 0; i < w_u; ++i)
        v |= std::uint64_t(cb.base_codeword(m).at(t_prime[i])) << i;
      restricted[m - 1] = v;
    }
    for (std::uint64_t center = 0; center < (1ULL << w_u); ++center) {
      std::vector<std::uint64_t> inside;
      for (std::uint64_t m = 1; m <= m_count; ++m)
        if (std::popcount(restricted[m - 1] ^ center) <= int(w_e))
          inside.push_back(m);
      ++res.checked;
      if (inside.size() >= s) {
        ListDecodabilityWitness w;
        w.t_prime = t_prime;
        std::vector<Bit> cbits(w_u);
        for (std::uint32_t i = 0; i < w_u; ++i)
          cbits[i] = static_cast<Bit>((center >> i) & 1u);
        w.center = Word(std::move(cbits));
        w.messages = std::move(inside);
        res.witness = std::move(w);
        res.passed = false;
        return res;
      }
    }
    // next combination
    std::uint32_t i = w_u;
    while (i > 0 && comb[i - 1] == n - w_u + i) --i;
    if (i == 0) break;
    ++comb[i - 1];
    for (std::uint32_t j = i; j < w_u; ++j) comb[j] = comb[j - 1] + 1;
  }
  res.passed = true;
  return res;
}

}  // namespace aec
