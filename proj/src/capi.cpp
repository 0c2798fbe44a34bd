#include "rlce/rlce.h"

#include <algorithm>
#include <fstream>
#include <memory>
#include <new>
#include <span>
#include <string>
#include <vector>

#include "rlce/grammar.hpp"
#include "rlce/lce.hpp"
#include "rlce/lz77.hpp"
#include "rlce/recompress.hpp"
#include "rlce/slp.hpp"

struct rlce_grammar {
  rlce::Rlslp g;
};

struct rlce_lz77 {
  rlce::Lz77Factorization fz;
};

namespace {

thread_local std::string last_error;

// Thrown for file-system failures so they map to RLCE_ERR_IO.
struct IoError {
  std::string what;
};

rlce_status set_error(rlce_status s, std::string msg) {
  last_error = std::move(msg);
  return s;
}

template <class F>
rlce_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return RLCE_OK;
  } catch (const rlce::Error& e) {
    return set_error(static_cast<rlce_status>(static_cast<int>(e.code())), e.what());
  } catch (const IoError& e) {
    return set_error(RLCE_ERR_IO, e.what);
  } catch (const std::bad_alloc&) {
    return set_error(RLCE_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(RLCE_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(RLCE_ERR_INTERNAL, "unknown failure");
  }
}

rlce_status null_argument(const char* name) {
  return set_error(RLCE_ERR_INVALID_INPUT, std::string("null argument: ") + name);
}

std::ifstream open_in(const char* path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError{std::string("cannot open ") + path};
  return in;
}

void write_log(const char* path, const rlce::BuildLog& log) {
  if (!path) return;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError{std::string("cannot write ") + path};
  rlce::write_level_log(out, log.contexts);
  if (!out) throw IoError{std::string("cannot write ") + path};
}

}  // namespace

extern "C" {

const char* rlce_last_error(void) { return last_error.c_str(); }

rlce_status rlce_build_from_text(const uint8_t* data, size_t len, const char* level_log_path,
                                 rlce_grammar** out) {
  if (!out) return null_argument("out");
  if (!data && len) return null_argument("data");
  return guarded([&] {
    rlce::BuildLog log;
    log.record_contexts = level_log_path != nullptr;
    std::span<const uint8_t> bytes(data, len);
    std::vector<rlce::Code> codes(bytes.begin(), bytes.end());
    auto h = std::make_unique<rlce_grammar>(rlce_grammar{rlce::ttog(std::span<const rlce::Code>(codes), &log)});
    write_log(level_log_path, log);
    *out = h.release();
  });
}

rlce_status rlce_build_from_slp_file(const char* slp_path, rlce_schedule schedule, const char* level_log_path,
                                     rlce_grammar** out) {
  if (!out) return null_argument("out");
  if (!slp_path) return null_argument("slp_path");
  if (schedule != RLCE_SCHEDULE_SIMTTOG && schedule != RLCE_SCHEDULE_GTOG)
    return set_error(RLCE_ERR_INVALID_INPUT, "unknown schedule");
  return guarded([&] {
    auto in = open_in(slp_path);
    const rlce::Slp slp = rlce::read_slp(in);
    rlce::BuildLog log;
    log.record_contexts = level_log_path != nullptr;
    const auto sched = schedule == RLCE_SCHEDULE_GTOG ? rlce::Schedule::GtoG : rlce::Schedule::SimTtoG;
    auto h = std::make_unique<rlce_grammar>(rlce_grammar{rlce::build_from_slp(slp, sched, &log)});
    write_log(level_log_path, log);
    *out = h.release();
  });
}

void rlce_grammar_free(rlce_grammar* g) { delete g; }

rlce_status rlce_grammar_load(const char* path, rlce_grammar** out) {
  if (!out) return null_argument("out");
  if (!path) return null_argument("path");
  return guarded([&] {
    auto in = open_in(path);
    *out = new rlce_grammar{rlce::read_rlslp(in)};
  });
}

rlce_status rlce_grammar_save(const rlce_grammar* g, const char* path) {
  if (!g) return null_argument("g");
  if (!path) return null_argument("path");
  return guarded([&] {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError{std::string("cannot write ") + path};
    rlce::write_rlslp(os, g->g);
    os.flush();
    if (!os) throw IoError{std::string("cannot write ") + path};
  });
}

uint64_t rlce_grammar_size(const rlce_grammar* g) { return g ? g->g.size() : 0; }
uint64_t rlce_grammar_text_length(const rlce_grammar* g) { return g ? g->g.text_length() : 0; }

uint64_t rlce_grammar_height(const rlce_grammar* g) {
  if (!g) return 0;
  try {
    return rlce::height(g->g);
  } catch (...) {
    return 0;
  }
}

rlce_status rlce_grammar_validate(const rlce_grammar* g, void (*report)(const char*, void*), void* user,
                                  size_t* count) {
  if (!g) return null_argument("g");
  return guarded([&] {
    const auto violations = rlce::validate(g->g);
    if (report)
      for (const auto& v : violations) report(v.message.c_str(), user);
    if (count) *count = violations.size();
  });
}

rlce_status rlce_lce(const rlce_grammar* g, uint64_t i, uint64_t j, uint64_t* length, uint64_t* steps) {
  if (!g) return null_argument("g");
  if (!length) return null_argument("length");
  return guarded([&] {
    rlce::LceStats stats;
    *length = rlce::lce(g->g, i, j, &stats);
    if (steps) *steps = stats.steps;
  });
}

rlce_status rlce_extract(const rlce_grammar* g, uint64_t i, uint64_t len, uint8_t* buf) {
  if (!g) return null_argument("g");
  if (!buf && len) return null_argument("buf");
  return guarded([&] {
    const auto codes = rlce::extract_codes(g->g, i, len);
    for (std::size_t k = 0; k < codes.size(); ++k) {
      if (codes[k] > 0xFF) rlce::fail(rlce::ErrorCode::InvalidInput, "terminal code does not fit in a byte");
      buf[k] = static_cast<uint8_t>(codes[k]);
    }
  });
}

rlce_status rlce_verify_text(const rlce_grammar* g, const uint8_t* data, size_t len, int* equal,
                             uint64_t* mismatch) {
  if (!g) return null_argument("g");
  if (!equal) return null_argument("equal");
  if (!data && len) return null_argument("data");
  return guarded([&] {
    const rlce::Length n = g->g.text_length();
    const rlce::Length common = std::min<rlce::Length>(n, len);
    // Compare in chunks so a long expansion never materializes in full.
    constexpr rlce::Length chunk = 1 << 16;
    for (rlce::Length at = 0; at < common; at += chunk) {
      const rlce::Length take = std::min(chunk, common - at);
      const auto codes = rlce::extract_codes(g->g, at + 1, take);
      for (rlce::Length k = 0; k < take; ++k) {
        if (codes[k] != data[at + k]) {
          *equal = 0;
          if (mismatch) *mismatch = at + k + 1;
          return;
        }
      }
    }
    *equal = n == len ? 1 : 0;
    if (!*equal && mismatch) *mismatch = common + 1;
  });
}

rlce_status rlce_lz77_factorize(const uint8_t* data, size_t len, rlce_lz77** out) {
  if (!out) return null_argument("out");
  if (!data && len) return null_argument("data");
  return guarded([&] {
    std::vector<rlce::Code> codes(data, data + len);
    *out = new rlce_lz77{rlce::lz77_factorize(std::span<const rlce::Code>(codes))};
  });
}

void rlce_lz77_free(rlce_lz77* fz) { delete fz; }

uint64_t rlce_lz77_count(const rlce_lz77* fz) { return fz ? fz->fz.z() : 0; }

rlce_status rlce_lz77_factor(const rlce_lz77* fz, uint64_t k, uint64_t* start, uint64_t* len) {
  if (!fz) return null_argument("fz");
  if (k >= fz->fz.z()) return set_error(RLCE_ERR_OUT_OF_RANGE, "factor index out of range");
  if (start) *start = fz->fz.starts[k];
  if (len) *len = fz->fz.factor_length(k);
  return RLCE_OK;
}

rlce_status rlce_size_bound_ratio(const rlce_grammar* g, const rlce_lz77* fz, double* ratio) {
  if (!g) return null_argument("g");
  if (!fz) return null_argument("fz");
  if (!ratio) return null_argument("ratio");
  return guarded([&] { *ratio = rlce::size_bound_report(g->g, fz->fz).ratio; });
}

}  // extern "C"
