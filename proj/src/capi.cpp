#include "aec.h"

#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "aec/codebook.hpp"
#include "aec/harness.hpp"

namespace {

thread_local std::string g_last_error;

void copy_out(const std::string& s, char* buf, size_t len) {
  if (!buf || len == 0) return;
  size_t n = std::min(s.size(), len - 1);
  std::memcpy(buf, s.data(), n);
  buf[n] = '\0';
}

aec_status fail(aec_status status, const std::string& what) {
  g_last_error = what;
  return status;
}

template <typename Fn>
aec_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const std::invalid_argument& e) {
    return fail(AEC_ERR_ARGUMENT, e.what());
  } catch (const std::domain_error& e) {
    return fail(AEC_ERR_ARGUMENT, e.what());
  } catch (const std::runtime_error& e) {
    return fail(AEC_ERR_IO, e.what());
  } catch (const std::exception& e) {
    return fail(AEC_ERR_INTERNAL, e.what());
  }
}

}  // namespace

struct aec_codebook {
  aec::Codebook impl;
};

extern "C" {

const char* aec_status_name(aec_status status) {
  switch (status) {
    case AEC_OK: return "ok";
    case AEC_ERR_ARGUMENT: return "invalid argument";
    case AEC_ERR_IO: return "io error";
    case AEC_ERR_PARSE: return "parse error";
    case AEC_ERR_INTERNAL: return "internal error";
  }
  return "unknown";
}

const char* aec_last_error(void) { return g_last_error.c_str(); }

aec_status aec_codebook_generate(uint32_t n, double p, double epsilon,
                                 uint64_t num_messages, uint64_t seed,
                                 aec_codebook** out) {
  if (!out) return fail(AEC_ERR_ARGUMENT, "out is null");
  return guarded([&] {
    auto params = aec::derive_params(
        n, p, epsilon,
        num_messages ? std::optional<uint64_t>(num_messages) : std::nullopt);
    *out = new aec_codebook{aec::Codebook::generate(params, seed)};
    return AEC_OK;
  });
}

aec_status aec_codebook_load(const char* path, aec_codebook** out) {
  if (!path || !out) return fail(AEC_ERR_ARGUMENT, "null argument");
  return guarded([&]() -> aec_status {
    std::ifstream in(path);
    if (!in) return fail(AEC_ERR_IO, std::string("cannot open: ") + path);
    try {
      *out = new aec_codebook{aec::Codebook::load(in)};
    } catch (const std::runtime_error& e) {
      return fail(AEC_ERR_PARSE, e.what());
    }
    return AEC_OK;
  });
}

aec_status aec_codebook_save(const aec_codebook* cb, const char* path) {
  if (!cb || !path) return fail(AEC_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    cb->impl.save_file(path);
    return AEC_OK;
  });
}

void aec_codebook_free(aec_codebook* cb) { delete cb; }

aec_status aec_codebook_info(const aec_codebook* cb, uint32_t* n,
                             uint64_t* num_messages, uint32_t* k) {
  if (!cb) return fail(AEC_ERR_ARGUMENT, "codebook is null");
  if (n) *n = cb->impl.params().n;
  if (num_messages) *num_messages = cb->impl.num_messages();
  if (k) *k = cb->impl.params().num_levels;
  return AEC_OK;
}

aec_status aec_codebook_validate(const aec_codebook* cb, double eta1,
                                 double eta2, int exhaustive, uint64_t samples,
                                 uint64_t seed, int* passed, char* report,
                                 size_t report_len) {
  if (!cb || !passed) return fail(AEC_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    aec::CoherenceResult res =
        exhaustive
            ? aec::validate_coherence_exhaustive(cb->impl, eta1, eta2,
                                                 10'000'000)
            : aec::validate_coherence_sampled(cb->impl, eta1, eta2, samples,
                                              seed);
    *passed = res.passed ? 1 : 0;
    std::ostringstream msg;
    msg << (res.passed ? "pass" : "FAIL") << ": " << res.checked
        << " checks, " << res.violations.size() << " violations";
    if (!res.violations.empty()) {
      const auto& v = res.violations.front();
      msg << "; first: pair (" << v.m1 << "," << v.m2 << ") stat " << v.stat
          << " > bound " << v.bound;
    }
    copy_out(msg.str(), report, report_len);
    return AEC_OK;
  });
}

aec_status aec_run_experiment(const char* config_text, const char* out_csv,
                              char* summary_buf, size_t summary_len) {
  if (!config_text) return fail(AEC_ERR_ARGUMENT, "config_text is null");
  return guarded([&]() -> aec_status {
    aec::ExperimentConfig cfg;
    try {
      cfg = aec::parse_config_text(config_text);
    } catch (const std::invalid_argument& e) {
      return fail(AEC_ERR_PARSE, e.what());
    }
    if (out_csv) cfg.output_path = out_csv;
    aec::Summary s = aec::run_experiment(cfg);
    std::ostringstream sum;
    aec::write_summary(sum, s);
    copy_out(sum.str(), summary_buf, summary_len);
    return AEC_OK;
  });
}

aec_status aec_run_sweep(const char* config_text, const char* axis,
                         const double* values, size_t num_values,
                         const char* out_csv) {
  if (!config_text || !axis || !values || !out_csv)
    return fail(AEC_ERR_ARGUMENT, "null argument");
  return guarded([&]() -> aec_status {
    aec::ExperimentConfig cfg;
    try {
      cfg = aec::parse_config_text(config_text);
    } catch (const std::invalid_argument& e) {
      return fail(AEC_ERR_PARSE, e.what());
    }
    std::ofstream out(out_csv);
    if (!out)
      return fail(AEC_ERR_IO, std::string("cannot open: ") + out_csv);
    aec::sweep(cfg, axis, std::vector<double>(values, values + num_values),
               out);
    return AEC_OK;
  });
}

aec_status aec_verify_summary(const char* csv_path, const char* summary_path,
                              int* ok, char* report, size_t report_len) {
  if (!csv_path || !summary_path || !ok)
    return fail(AEC_ERR_ARGUMENT, "null argument");
  return guarded([&]() -> aec_status {
    std::ifstream csv(csv_path);
    if (!csv)
      return fail(AEC_ERR_IO, std::string("cannot open: ") + csv_path);
    std::ifstream sum(summary_path);
    if (!sum)
      return fail(AEC_ERR_IO, std::string("cannot open: ") + summary_path);
    std::string rep;
    try {
      auto records = aec::read_csv(csv);
      auto claimed = aec::read_summary(sum);
      *ok = aec::verify_summary(records, claimed, &rep) ? 1 : 0;
    } catch (const std::runtime_error& e) {
      return fail(AEC_ERR_PARSE, e.what());
    }
    copy_out(rep, report, report_len);
    return AEC_OK;
  });
}

}  // extern "C"
