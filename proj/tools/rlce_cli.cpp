// rlce: build grammars, answer LCE queries, extract substrings, verify and
// report statistics. Only the C interface is used here.
//
// Exit codes: 0 success, 1 verification mismatch, 2 usage or input error,
// 3 overflow or internal failure.

#include <CLI11.hpp>

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rlce/rlce.h"

namespace {

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kInputError = 2;
constexpr int kInternalError = 3;

struct GrammarDeleter {
  void operator()(rlce_grammar* g) const { rlce_grammar_free(g); }
};
struct Lz77Deleter {
  void operator()(rlce_lz77* f) const { rlce_lz77_free(f); }
};
using GrammarPtr = std::unique_ptr<rlce_grammar, GrammarDeleter>;
using Lz77Ptr = std::unique_ptr<rlce_lz77, Lz77Deleter>;

// Carries an exit code out of a command.
struct Exit {
  int code;
};

[[noreturn]] void die(rlce_status s) {
  std::cerr << "rlce: " << rlce_last_error() << '\n';
  throw Exit{s == RLCE_ERR_OVERFLOW || s == RLCE_ERR_INTERNAL ? kInternalError : kInputError};
}

void check(rlce_status s) {
  if (s != RLCE_OK) die(s);
}

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "rlce: cannot open " << path << '\n';
    throw Exit{kInputError};
  }
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

GrammarPtr load(const std::string& path) {
  rlce_grammar* g = nullptr;
  check(rlce_grammar_load(path.c_str(), &g));
  return GrammarPtr(g);
}

// Grammars from disk are validated before any query walks them.
void require_valid(const rlce_grammar* g) {
  std::size_t count = 0;
  check(rlce_grammar_validate(
      g, [](const char* msg, void*) { std::cerr << "rlce: invalid grammar: " << msg << '\n'; }, nullptr, &count));
  if (count) throw Exit{kInputError};
}

Lz77Ptr factorize(const std::vector<std::uint8_t>& bytes) {
  rlce_lz77* fz = nullptr;
  check(rlce_lz77_factorize(bytes.data(), bytes.size(), &fz));
  return Lz77Ptr(fz);
}

struct BuildArgs {
  std::string text, slp, schedule = "gtog", log_levels, output;
};

int cmd_build(const BuildArgs& a) {
  const char* log = a.log_levels.empty() ? nullptr : a.log_levels.c_str();
  rlce_grammar* raw = nullptr;
  if (!a.text.empty()) {
    const auto bytes = read_file(a.text);
    check(rlce_build_from_text(bytes.data(), bytes.size(), log, &raw));
  } else {
    const auto sched = a.schedule == "simttog" ? RLCE_SCHEDULE_SIMTTOG : RLCE_SCHEDULE_GTOG;
    check(rlce_build_from_slp_file(a.slp.c_str(), sched, log, &raw));
  }
  GrammarPtr g(raw);
  check(rlce_grammar_save(g.get(), a.output.c_str()));
  std::printf("g=%" PRIu64 " h=%" PRIu64 " N=%" PRIu64 "\n", rlce_grammar_size(g.get()), rlce_grammar_height(g.get()),
              rlce_grammar_text_length(g.get()));
  return kOk;
}

int cmd_lce(const std::string& path, std::uint64_t i, std::uint64_t j, bool stats) {
  GrammarPtr g = load(path);
  require_valid(g.get());
  std::uint64_t len = 0, steps = 0;
  check(rlce_lce(g.get(), i, j, &len, &steps));
  if (stats)
    std::printf("%" PRIu64 " steps=%" PRIu64 "\n", len, steps);
  else
    std::printf("%" PRIu64 "\n", len);
  return kOk;
}

int cmd_extract(const std::string& path, std::uint64_t i, std::uint64_t len) {
  GrammarPtr g = load(path);
  require_valid(g.get());
  const std::uint64_t n = rlce_grammar_text_length(g.get());
  if (len > n) {
    std::cerr << "rlce: extract length exceeds the text\n";
    return kInputError;
  }
  std::vector<std::uint8_t> buf(len);
  check(rlce_extract(g.get(), i, len, buf.data()));
  std::fwrite(buf.data(), 1, buf.size(), stdout);
  return kOk;
}

int cmd_verify(const std::string& path, const std::string& text) {
  GrammarPtr g = load(path);
  require_valid(g.get());
  const auto bytes = read_file(text);
  int equal = 0;
  std::uint64_t mismatch = 0;
  check(rlce_verify_text(g.get(), bytes.data(), bytes.size(), &equal, &mismatch));
  if (!equal) {
    std::cerr << "rlce: mismatch at offset " << mismatch << '\n';
    return kMismatch;
  }
  return kOk;
}

int cmd_stats(const std::string& path, const std::string& text) {
  GrammarPtr g = load(path);
  require_valid(g.get());
  const std::uint64_t n = rlce_grammar_text_length(g.get());
  const std::uint64_t size = rlce_grammar_size(g.get());
  const std::uint64_t h = rlce_grammar_height(g.get());
  if (text.empty()) {
    std::printf("%" PRIu64 "\t-\t%" PRIu64 "\t-\t%" PRIu64 "\n", n, size, h);
    return kOk;
  }
  const Lz77Ptr fz = factorize(read_file(text));
  double ratio = 0;
  check(rlce_size_bound_ratio(g.get(), fz.get(), &ratio));
  std::printf("%" PRIu64 "\t%" PRIu64 "\t%" PRIu64 "\t%.4f\t%" PRIu64 "\n", n, rlce_lz77_count(fz.get()), size, ratio,
              h);
  return kOk;
}

int cmd_lz77(const std::string& path, bool print_factors) {
  const Lz77Ptr fz = factorize(read_file(path));
  const std::uint64_t z = rlce_lz77_count(fz.get());
  std::printf("%" PRIu64 "\n", z);
  if (!print_factors) return kOk;
  for (std::uint64_t k = 0; k < z; ++k) {
    std::uint64_t start = 0, len = 0;
    check(rlce_lz77_factor(fz.get(), k, &start, &len));
    std::printf("%" PRIu64 " %" PRIu64 "\n", start, len);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compressed LCE queries over recompression grammars"};
  app.require_subcommand(1, 1);

  BuildArgs build;
  auto* b = app.add_subcommand("build", "Build a grammar from a text or an SLP");
  auto* text_opt = b->add_option("--text", build.text, "Input text file")->check(CLI::ExistingFile);
  auto* slp_opt = b->add_option("--slp", build.slp, "Input SLP file")->check(CLI::ExistingFile);
  text_opt->excludes(slp_opt);
  b->add_option("--schedule", build.schedule, "SLP schedule")
      ->check(CLI::IsMember({"simttog", "gtog"}))
      ->needs(slp_opt);
  b->add_option("--log-levels", build.log_levels, "Write one line per recompression level");
  b->add_option("-o,--output", build.output, "Output grammar file")->required();

  std::string grammar, text;
  std::uint64_t i = 0, j = 0, len = 0;
  bool stats_flag = false, print_factors = false;

  auto* l = app.add_subcommand("lce", "Longest common extension of positions i and j");
  l->add_option("grammar", grammar)->required();
  l->add_option("i", i)->required();
  l->add_option("j", j)->required();
  l->add_flag("--stats", stats_flag, "Append the number of matching steps");

  auto* e = app.add_subcommand("extract", "Write T[i..i+len-1] to standard output");
  e->add_option("grammar", grammar)->required();
  e->add_option("i", i)->required();
  e->add_option("len", len)->required();

  auto* v = app.add_subcommand("verify", "Check that a grammar expands to a file");
  v->add_option("grammar", grammar)->required();
  v->add_option("--text", text)->required();

  auto* s = app.add_subcommand("stats", "Print N z g ratio height");
  s->add_option("grammar", grammar)->required();
  s->add_option("--text", text);

  std::string lz_file;
  auto* z = app.add_subcommand("lz77", "Print the LZ77 factor count");
  z->add_option("file", lz_file)->required();
  z->add_flag("--print-factors", print_factors, "Also print one `start length` line per factor");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& err) {
    return app.exit(err);
  } catch (const CLI::ParseError& err) {
    app.exit(err);
    return kInputError;
  }

  try {
    if (b->parsed()) {
      if (build.text.empty() == build.slp.empty()) {
        std::cerr << "rlce: build needs exactly one of --text and --slp\n";
        return kInputError;
      }
      return cmd_build(build);
    }
    if (l->parsed()) return cmd_lce(grammar, i, j, stats_flag);
    if (e->parsed()) return cmd_extract(grammar, i, len);
    if (v->parsed()) return cmd_verify(grammar, text);
    if (s->parsed()) return cmd_stats(grammar, text);
    if (z->parsed()) return cmd_lz77(lz_file, print_factors);
  } catch (const Exit& x) {
    return x.code;
  }
  return kInputError;
}
