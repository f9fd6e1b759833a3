#include "aec/codebook.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"

using namespace aec;

TEST_CASE("derive_params worked examples") {
  SUBCASE("n=256") {
    CodeParams cp = derive_params(256, 0.25, 0.15);
    CHECK(cp.num_levels == 2);
    CHECK(cp.noise_levels[0] == doctest::Approx(0.0625));
    CHECK(cp.noise_levels[1] == doctest::Approx(0.125));
    CHECK(cp.list_threshold == 64);
    CHECK(cp.disambig_threshold == 5);
    CHECK(cp.num_messages == kDefaultMaxMessages);
    CHECK(cp.rate == doctest::Approx(0.6));
    CHECK(cp.erasure_budget() == 64);
  }
  SUBCASE("n=4096 gets a third level") {
    CodeParams cp = derive_params(4096, 0.25, 0.15);
    CHECK(cp.num_levels == 3);
    CHECK(cp.noise_levels[2] == doctest::Approx(1.0 / 16.0));
    CHECK(cp.list_threshold == 512);
    CHECK(cp.disambig_threshold == 26);
  }
  SUBCASE("n=1024") {
    CodeParams cp = derive_params(1024, 0.25, 0.15);
    CHECK(cp.num_levels == 2);
    CHECK(cp.list_threshold == 182);  // ceil(1024^{3/4}) = ceil(181.02)
  }
  SUBCASE("n=32 message count from the rate") {
    CodeParams cp = derive_params(32, 0.45, 0.30);
    CHECK(cp.num_messages == 256);  // floor(2^{32*0.25})
    CHECK(cp.disambig_threshold == 2);
  }
  SUBCASE("override caps below the derived count") {
    CHECK(derive_params(256, 0.25, 0.15, 8).num_messages == 8);
  }
}

TEST_CASE("derive_params rejections") {
  CHECK_THROWS_AS(derive_params(8, 0.25, 0.15), std::invalid_argument);
  CHECK_THROWS_AS(derive_params(256, 0.0, 0.15), std::invalid_argument);
  CHECK_THROWS_AS(derive_params(256, 0.25, 0.8), std::invalid_argument);
  // n=16: q_2 = 2/sqrt(16) = 0.5 is not a valid noise level
  CHECK_THROWS_AS(derive_params(16, 0.25, 0.15), std::domain_error);
  // rate*n < 1 leaves fewer than 2 messages
  CHECK_THROWS_AS(derive_params(32, 0.49, 0.49), std::domain_error);
}

TEST_CASE("generation is a pure function of (params, seed)") {
  CodeParams cp = derive_params(64, 0.25, 0.15, 8);
  Codebook a = Codebook::generate(cp, 42);
  Codebook b = Codebook::generate(cp, 42);
  Codebook c = Codebook::generate(cp, 43);
  bool same = true, diff = false;
  for (std::uint64_t m = 1; m <= 8; ++m) {
    same = same && a.base_codeword(m) == b.base_codeword(m);
    diff = diff || !(a.base_codeword(m) == c.base_codeword(m));
    for (std::uint32_t i = 1; i <= 64; ++i)
      same = same && a.level_of(m, i) == b.level_of(m, i);
  }
  CHECK(same);
  CHECK(diff);
}

TEST_CASE("partitions are disjoint, cover [1..n], and agree with level_of") {
  CodeParams cp = derive_params(64, 0.25, 0.15, 8);
  Codebook cb = Codebook::generate(cp, 7);
  for (std::uint64_t m = 1; m <= cb.num_messages(); ++m) {
    std::vector<std::uint32_t> owner(cp.n + 1, 0);
    for (std::uint32_t k = 1; k <= cp.num_levels; ++k) {
      IndexSet s = cb.partition(m, k);
      CHECK(valid_index_set(s, cp.n));
      for (std::uint32_t i : s) {
        CHECK(owner[i] == 0);
        owner[i] = k;
        CHECK(cb.level_of(m, i) == k);
      }
    }
    for (std::uint32_t i = 1; i <= cp.n; ++i) CHECK(owner[i] != 0);
  }
}

TEST_CASE("partition occupancy is near n/K") {
  CodeParams cp = derive_params(1024, 0.25, 0.15, 4);
  Codebook cb = Codebook::generate(cp, 99);
  // Binomial(n, 1/2) per level at K=2; 5 sigma = 80.
  for (std::uint64_t m = 1; m <= 4; ++m) {
    for (std::uint32_t k = 1; k <= 2; ++k) {
      double size = double(cb.partition(m, k).size());
      CHECK(std::abs(size - 512.0) < 80.0);
    }
  }
}

TEST_CASE("save/load round trip") {
  CodeParams cp = derive_params(32, 0.25, 0.15, 4);
  Codebook cb = Codebook::generate(cp, 5);
  std::stringstream buf;
  cb.save(buf);
  Codebook back = Codebook::load(buf);
  CHECK(back.params() == cb.params());
  CHECK(back.seed() == cb.seed());
  REQUIRE(back.num_messages() == cb.num_messages());
  for (std::uint64_t m = 1; m <= cb.num_messages(); ++m) {
    CHECK(back.base_codeword(m) == cb.base_codeword(m));
    for (std::uint32_t i = 1; i <= cp.n; ++i)
      CHECK(back.level_of(m, i) == cb.level_of(m, i));
  }
}

TEST_CASE("load rejects malformed files") {
  auto load_str = [](const std::string& s) {
    std::istringstream in(s);
    return Codebook::load(in);
  };
  CHECK_THROWS_AS(load_str("not a codebook\n"), std::runtime_error);
  const std::string header =
      "# aec-codebook v1\nn 4\nM 1\nK 2\nq 0.1 0.2\np 0.25\nepsilon 0.2\n"
      "rate 0.3\nlist_threshold 2\ndisambig_threshold 1\nseed 0\n";
  // overlapping partition sets
  CHECK_THROWS_AS(load_str(header + "0101 | 1 2 | 2 3 4\n"),
                  std::runtime_error);
  // position 4 uncovered
  CHECK_THROWS_AS(load_str(header + "0101 | 1 2 | 3\n"), std::runtime_error);
  // wrong word length
  CHECK_THROWS_AS(load_str(header + "01011 | 1 2 | 3 4\n"),
                  std::runtime_error);
  // missing codeword line
  CHECK_THROWS_AS(load_str(header), std::runtime_error);
  // well-formed line passes
  CHECK_NOTHROW(load_str(header + "0101 | 1 2 | 3 4\n"));
}

TEST_CASE("from_parts validation") {
  CodeParams cp = aec_test::tiny_params(4, 2, 2, {0.1, 0.2}, 2, 1);
  std::vector<Word> base = {Word::parse("0101"), Word::parse("1010")};
  std::vector<std::vector<std::uint8_t>> levels = {{1, 1, 2, 2}, {2, 1, 2, 1}};
  CHECK_NOTHROW(Codebook::from_parts(cp, base, levels, 0));
  CHECK_THROWS_AS(Codebook::from_parts(cp, {base[0]}, levels, 0),
                  std::invalid_argument);
  auto bad_levels = levels;
  bad_levels[0][2] = 3;
  CHECK_THROWS_AS(Codebook::from_parts(cp, base, bad_levels, 0),
                  std::invalid_argument);
  auto short_base = base;
  short_base[1] = Word::parse("101");
  CHECK_THROWS_AS(Codebook::from_parts(cp, short_base, levels, 0),
                  std::invalid_argument);
}

TEST_CASE("coherence statistic on the shared-level fixture") {
  Codebook cb = aec_test::coherence_fixture();
  IndexSet full(25);
  for (std::uint32_t i = 0; i < 25; ++i) full[i] = i + 1;
  CHECK(coherence_stat(cb, 1, 2, full) == 4);
  CHECK(aec_test::oracle_coherence_stat(cb, 1, 2, full) == 4);
  CHECK(coherence_stat(cb, 1, 2, {8, 12, 16, 18}) == 4);
  CHECK(coherence_stat(cb, 1, 2, {1, 20}) == 0);
}

TEST_CASE("coherence_stat matches the set-intersection oracle") {
  std::mt19937_64 rng(13);
  CodeParams cp = aec_test::tiny_params(12, 4, 3, {0.05, 0.1, 0.2}, 4, 1);
  for (int inst = 0; inst < 50; ++inst) {
    Codebook cb = aec_test::random_tiny_codebook(cp, rng);
    IndexSet t;
    for (std::uint32_t i = 1; i <= 12; ++i)
      if (rng() & 1) t.push_back(i);
    for (std::uint64_t m1 = 1; m1 <= 4; ++m1)
      for (std::uint64_t m2 = 1; m2 <= 4; ++m2)
        CHECK(coherence_stat(cb, m1, m2, t) ==
              aec_test::oracle_coherence_stat(cb, m1, m2, t));
  }
}

TEST_CASE("exhaustive coherence validator matches brute force") {
  std::mt19937_64 rng(17);
  CodeParams cp = aec_test::tiny_params(8, 3, 2, {0.1, 0.2}, 4, 1);
  for (int inst = 0; inst < 20; ++inst) {
    Codebook cb = aec_test::random_tiny_codebook(cp, rng);
    for (double eta1 : {0.0, 0.3, 0.8}) {
      CoherenceResult res =
          validate_coherence_exhaustive(cb, eta1, 0.5, 100'000'000);
      std::uint64_t expect = aec_test::oracle_coherence_violations(cb, eta1, 4);
      CHECK(res.violations.size() == expect);
      CHECK(res.passed == (expect == 0));
    }
  }
}

TEST_CASE("sampled coherence validator") {
  CodeParams cp = aec_test::tiny_params(16, 2, 2, {0.1, 0.2}, 4, 1);
  SUBCASE("identical partitions always violate at eta1 = 0") {
    std::vector<std::uint8_t> row(16);
    for (int i = 0; i < 16; ++i) row[i] = (i % 2) + 1;
    Codebook cb = Codebook::from_parts(
        cp, {Word(std::size_t{16}), Word(std::size_t{16})}, {row, row}, 0);
    CoherenceResult res = validate_coherence_sampled(cb, 0.0, 0.5, 200, 1);
    CHECK(res.checked == 200);
    CHECK_FALSE(res.passed);
    CHECK(res.violations.size() == 200);
  }
  SUBCASE("slack eta1 = 1 can never be violated at K = 2") {
    std::mt19937_64 rng(19);
    Codebook cb = aec_test::random_tiny_codebook(cp, rng);
    CoherenceResult res = validate_coherence_sampled(cb, 1.0, 0.5, 500, 2);
    CHECK(res.passed);
  }
  SUBCASE("deterministic in the sampling seed") {
    std::mt19937_64 rng(23);
    Codebook cb = aec_test::random_tiny_codebook(cp, rng);
    auto r1 = validate_coherence_sampled(cb, 0.1, 0.5, 300, 9);
    auto r2 = validate_coherence_sampled(cb, 0.1, 0.5, 300, 9);
    CHECK(r1.violations.size() == r2.violations.size());
    CHECK(r1.passed == r2.passed);
  }
}

TEST_CASE("exhaustive coherence validator refuses big instances") {
  CodeParams cp = derive_params(64, 0.25, 0.15, 2);
  Codebook cb = Codebook::generate(cp, 1);
  CHECK_THROWS_AS(validate_coherence_exhaustive(cb, 0.0, 0.5, 1000),
                  std::invalid_argument);
}

TEST_CASE("list-decodability validator matches brute force") {
  std::mt19937_64 rng(29);
  CodeParams cp = aec_test::tiny_params(10, 4, 2, {0.1, 0.2}, 4, 1);
  int disagreements = 0;
  for (int inst = 0; inst < 30; ++inst) {
    Codebook cb = aec_test::random_tiny_codebook(cp, rng);
    for (std::uint32_t w_e : {0u, 1u, 2u}) {
      ListDecodabilityResult res =
          validate_list_decodability(cb, 6, w_e, 3, 1'000'000'000);
      bool expect = aec_test::oracle_list_decodable(cb, 6, w_e, 3);
      if (res.passed != expect) ++disagreements;
    }
  }
  CHECK(disagreements == 0);
}

TEST_CASE("list-decodability witness on duplicated codewords") {
  CodeParams cp = aec_test::tiny_params(6, 2, 2, {0.1, 0.2}, 4, 1);
  std::vector<std::uint8_t> row(6, 1);
  Word w = Word::parse("010101");
  Codebook cb = Codebook::from_parts(cp, {w, w}, {row, row}, 0);
  ListDecodabilityResult res =
      validate_list_decodability(cb, 4, 0, 2, 1'000'000);
  REQUIRE_FALSE(res.passed);
  REQUIRE(res.witness.has_value());
  CHECK(res.witness->messages == std::vector<std::uint64_t>{1, 2});
  CHECK(res.witness->t_prime.size() == 4);
  // the witness center really does capture both restricted codewords
  for (std::uint64_t m : res.witness->messages) {
    std::uint32_t dist = 0;
    for (std::uint32_t j = 0; j < 4; ++j)
      if (cb.base_codeword(m).at(res.witness->t_prime[j]) !=
          res.witness->center.at(j + 1))
        ++dist;
    CHECK(dist == 0);
  }
}

TEST_CASE("list-decodability validator refuses big instances") {
  CodeParams cp = derive_params(64, 0.25, 0.15, 2);
  Codebook cb = Codebook::generate(cp, 1);
  CHECK_THROWS_AS(validate_list_decodability(cb, 32, 1, 2, 1'000'000),
                  std::invalid_argument);
  CHECK_THROWS_AS(validate_list_decodability(cb, 20, 1, 2, 1'000),
                  std::invalid_argument);
}
