#pragma once

// Batch front end: table and tree rendering, table reading, and the parse /
// bench / check commands. Commands write to caller-supplied streams and return
// the process exit status.
//
// Table format, one word per row, tab separated:
//
//   INDEX  FORM  CATEGORY  HEAD
//
// HEAD is 0 for an independent word, or a comma-separated list when a naive
// parser gave the word several heads. Sentences are separated by one blank
// line. Lines starting with '#' carry "# key: value" annotations.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "incdep/algorithms.hpp"
#include "incdep/ambiguity.hpp"
#include "incdep/core.hpp"
#include "incdep/generators.hpp"
#include "incdep/grammar.hpp"

namespace incdep {

inline constexpr std::string_view kBacktrack = "backtrack";

enum class Emit { kTable, kTree, kBoth };

struct RunConfig {
  std::string algorithm = "lsup";  // a parser name or "backtrack"
  bool projective = false;         // backtrack only
  std::string grammar_path;
  Emit emit = Emit::kTable;
  bool stats = false;
  bool all_parses = false;

  // Empty when the configuration is usable.
  std::string validate() const {
    if (algorithm != kBacktrack && !algorithm_from_name(algorithm)) {
      return "unknown algorithm '" + algorithm + "'";
    }
    if (all_parses && algorithm != kBacktrack) return "--all-parses requires --algorithm backtrack";
    return {};
  }
};

struct RenderError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string render_table(const Analysis& analysis) {
  std::string out;
  for (const Word& w : analysis.sentence().words()) {
    out += std::to_string(w.index) + '\t' + w.form + '\t' + w.category + '\t';
    auto heads = analysis.heads_of(w.index);
    if (heads.empty()) {
      out += '0';
    } else {
      for (std::size_t k = 0; k < heads.size(); ++k) {
        if (k) out += ',';
        out += std::to_string(heads[k]);
      }
    }
    out += '\n';
  }
  return out;
}

// Roots at column 0 in surface order; each dependent two spaces deeper than
// its head, siblings in surface order. One "index:form" per line.
inline std::string render_tree(const Analysis& analysis) {
  const std::size_t n = analysis.size();
  for (WordIndex w = 1; w <= n; ++w) {
    if (analysis.heads_of(w).size() > 1) {
      throw RenderError("word " + std::to_string(w) + " has more than one head");
    }
  }
  std::string out;
  std::vector<bool> placed(n + 1, false);
  auto emit = [&](auto& self, WordIndex w, std::size_t depth) -> void {
    placed[w] = true;
    out += std::string(2 * depth, ' ') + std::to_string(w) + ':' + analysis.sentence()[w].form + '\n';
    for (WordIndex d : analysis.dependents_of(w)) self(self, d, depth + 1);
  };
  for (WordIndex w = 1; w <= n; ++w) {
    if (analysis.heads_of(w).empty()) emit(emit, w, 0);
  }
  // Anything not reached from a root sits on a cycle.
  for (WordIndex w = 1; w <= n; ++w) {
    if (!placed[w]) throw RenderError("cycle involving word " + std::to_string(w));
  }
  return out;
}

struct TableSentence {
  Analysis analysis;
  std::vector<std::string> comments;  // "# ..." lines, verbatim
};

// Reads blocks written by render_table; comment lines are kept aside and
// lines that are neither rows nor comments are rejected.
inline std::vector<TableSentence> read_table(std::istream& in) {
  std::vector<TableSentence> out;
  std::vector<std::pair<std::string, std::string>> tokens;
  std::vector<std::pair<WordIndex, std::string>> head_fields;
  std::vector<std::string> comments;
  std::size_t line_no = 0;

  auto flush = [&] {
    if (tokens.empty() && comments.empty()) return;
    Analysis a(Sentence::from_pairs(tokens));
    for (const auto& [dep, field] : head_fields) {
      std::stringstream heads(field);
      std::string h;
      while (std::getline(heads, h, ',')) {
        WordIndex head = std::stoul(h);
        if (head != kNoHead) a.add(Link{head, dep});
      }
    }
    out.push_back(TableSentence{std::move(a), std::move(comments)});
    tokens.clear();
    head_fields.clear();
    comments.clear();
  };

  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) {
      flush();
      continue;
    }
    if (line.front() == '#') {
      comments.push_back(line);
      continue;
    }
    std::vector<std::string> fields;
    std::stringstream row(line);
    std::string f;
    while (std::getline(row, f, '\t')) fields.push_back(f);
    if (fields.size() != 4 || fields[0] != std::to_string(tokens.size() + 1)) {
      throw InputError("table line " + std::to_string(line_no) + ": malformed row");
    }
    tokens.emplace_back(fields[1], fields[2]);
    head_fields.emplace_back(tokens.size(), fields[3]);
  }
  flush();
  return out;
}

inline std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

namespace detail {

inline void write_analysis(std::string& block, const Analysis& analysis, Emit emit) {
  if (emit != Emit::kTree) block += render_table(analysis);
  if (emit == Emit::kTable) return;
  const std::string prefix = emit == Emit::kBoth ? "# " : "";
  try {
    std::istringstream tree(render_tree(analysis));
    std::string line;
    while (std::getline(tree, line)) block += prefix + line + '\n';
  } catch (const RenderError& e) {
    block += std::string("# tree error: ") + e.what() + '\n';
  }
}

inline void write_stats(std::string& block, const QueryCounter& c) {
  block += "# permit_queries: " + std::to_string(c.permit_queries) + '\n';
  block += "# link_operations: " + std::to_string(c.link_operations) + '\n';
}

}  // namespace detail

// Parses one sentence per non-blank input line. Returns 0 iff every sentence
// reached unity (with all_parses: had at least one complete analysis) and no
// sentence failed.
inline int cmd_parse(const RunConfig& config, const RuleGrammar& grammar, std::istream& in,
                     std::ostream& out) {
  if (auto problem = config.validate(); !problem.empty()) {
    throw InputError(problem);
  }
  bool all_ok = true;
  bool first_block = true;
  auto write_block = [&](const std::string& block) {
    if (!first_block) out << '\n';
    out << block;
    first_block = false;
  };

  std::string line;
  while (std::getline(in, line)) {
    auto forms = tokenize(line);
    if (forms.empty()) continue;

    Sentence sentence;
    try {
      sentence = grammar.make_sentence(forms);
    } catch (const LookupError& e) {
      write_block(std::string("# error: ") + e.what() + '\n');
      all_ok = false;
      continue;
    }

    if (config.all_parses) {
      AnalysisSet all = parse_all(grammar, sentence, config.projective);
      for (const Analysis& a : all.analyses) {
        std::string block;
        detail::write_analysis(block, a, config.emit);
        block += "# unity: true\n";
        write_block(block);
      }
      std::string summary = "# analyses: " + std::to_string(all.size()) + '\n';
      if (config.stats) {
        detail::write_stats(summary, all.stats.counter);
        summary += "# backtracks: " + std::to_string(all.stats.backtracks) + '\n';
      }
      write_block(summary);
      all_ok = all_ok && !all.empty();
      continue;
    }

    ParseOutcome outcome = config.algorithm == kBacktrack
                               ? parse_first(grammar, sentence, config.projective)
                               : parse(*algorithm_from_name(config.algorithm), grammar, sentence);
    std::string block;
    detail::write_analysis(block, outcome.analysis, config.emit);
    block += std::string("# unity: ") + (outcome.unity ? "true" : "false") + '\n';
    if (config.stats) {
      detail::write_stats(block, outcome.stats);
      if (config.algorithm == kBacktrack) {
        block += "# backtracks: " + std::to_string(outcome.backtracks) + '\n';
      }
    }
    write_block(block);
    all_ok = all_ok && outcome.unity;
  }
  return all_ok ? 0 : 1;
}

inline std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

// ---------------------------------------------------------------------------
// bench

struct BenchConfig {
  std::vector<std::string> algorithms;
  std::string scenario;  // null-grammar | worst-case-chain | random-tree
  std::vector<std::size_t> ns;
  bool projective = false;  // backtrack only
  std::size_t backtrack_cap = 256;
  std::uint64_t seed = 20010301;
  bool timing = true;  // wall_ns column is 0 when false
};

struct BenchRow {
  std::string algorithm;
  std::size_t n = 0;
  QueryCounter counter;
  std::uint64_t wall_ns = 0;
};

inline constexpr std::string_view kBenchHeader =
    "algorithm\tn\tpermit_queries\tlink_operations\twall_ns";

namespace detail {

template <Grammar G>
BenchRow bench_one(const std::string& algorithm, const G& grammar, const Sentence& sentence,
                   bool projective) {
  auto start = std::chrono::steady_clock::now();
  QueryCounter c = algorithm == kBacktrack
                       ? parse_first(grammar, sentence, projective).stats
                       : parse(*algorithm_from_name(algorithm), grammar, sentence).stats;
  auto stop = std::chrono::steady_clock::now();
  return BenchRow{algorithm, sentence.size(), c,
                  static_cast<std::uint64_t>(
                      std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count())};
}

}  // namespace detail

// Throws InputError for unknown names, unusable sizes or sizes over the
// backtracking cap.
inline std::vector<BenchRow> run_bench(const BenchConfig& config) {
  for (const auto& a : config.algorithms) {
    if (a != kBacktrack && !algorithm_from_name(a)) throw InputError("unknown algorithm '" + a + "'");
  }
  if (config.scenario != "null-grammar" && config.scenario != "worst-case-chain" &&
      config.scenario != "random-tree") {
    throw InputError("unknown scenario '" + config.scenario + "'");
  }
  for (std::size_t n : config.ns) {
    if (n == 0) throw InputError("n must be positive");
    if (config.scenario == "worst-case-chain" && n < 2) {
      throw InputError("worst-case-chain needs n >= 2");
    }
    for (const auto& a : config.algorithms) {
      if (a == kBacktrack && n > config.backtrack_cap) {
        throw InputError("backtrack refused for n = " + std::to_string(n) + " (cap " +
                         std::to_string(config.backtrack_cap) + ")");
      }
    }
  }

  std::vector<BenchRow> rows;
  for (const auto& a : config.algorithms) {
    for (std::size_t n : config.ns) {
      BenchRow row;
      if (config.scenario == "null-grammar") {
        row = detail::bench_one(a, null_grammar(n), uniform_sentence(n), config.projective);
      } else if (config.scenario == "worst-case-chain") {
        auto chain = worst_case_chain(n);
        row = detail::bench_one(a, chain.grammar, chain.sentence, config.projective);
      } else {
        std::mt19937_64 rng(config.seed + n);
        // The projective search only reaches projective targets.
        LinkSet tree = a == kBacktrack && config.projective ? random_projective_tree(n, rng)
                                                            : random_tree(n, rng);
        row = detail::bench_one(a, TreeBackedGrammar(n, tree), uniform_sentence(n),
                                config.projective);
      }
      if (!config.timing) row.wall_ns = 0;
      rows.push_back(row);
    }
  }
  return rows;
}

inline std::string format_bench(const std::vector<BenchRow>& rows) {
  std::string out(kBenchHeader);
  out += '\n';
  for (const auto& r : rows) {
    out += r.algorithm + '\t' + std::to_string(r.n) + '\t' +
           std::to_string(r.counter.permit_queries) + '\t' +
           std::to_string(r.counter.link_operations) + '\t' + std::to_string(r.wall_ns) + '\n';
  }
  return out;
}

inline std::vector<BenchRow> read_bench(std::istream& in) {
  std::vector<BenchRow> rows;
  std::string line;
  if (!std::getline(in, line) || line != kBenchHeader) throw InputError("missing bench header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    BenchRow r;
    if (!(row >> r.algorithm >> r.n >> r.counter.permit_queries >> r.counter.link_operations >>
          r.wall_ns)) {
      throw InputError("malformed bench row '" + line + "'");
    }
    rows.push_back(r);
  }
  return rows;
}

inline int cmd_bench(const BenchConfig& config, std::ostream& out, std::ostream& err) {
  try {
    out << format_bench(run_bench(config));
    return 0;
  } catch (const InputError& e) {
    err << "bench: " << e.what() << '\n';
    return 2;
  }
}

// ---------------------------------------------------------------------------
// check

inline int cmd_check_text(std::string_view text, std::ostream& out) {
  GrammarScan scan = scan_grammar(text);
  const RuleGrammar& g = scan.grammar;
  auto join = [](const std::set<std::string>& items) {
    if (items.empty()) return std::string("none");
    std::string s;
    for (const auto& i : items) s += (s.empty() ? "" : " ") + i;
    return s;
  };
  for (const auto& d : scan.diagnostics) {
    out << (d.severity == Severity::kError ? "error" : "warning") << ": line " << d.line << ": "
        << d.message << '\n';
  }
  out << "forms: " << g.lexicon().size() << '\n';
  out << "categories: " << g.lexicon_categories().size() << " (" << join(g.lexicon_categories())
      << ")\n";
  out << "rules: " << g.rules().size() << '\n';
  out << "unknown rule categories: " << join(g.unknown_rule_categories()) << '\n';
  out << scan.error_count() << " errors, " << scan.warning_count() << " warnings\n";
  return scan.error_count() == 0 ? 0 : 1;
}

inline int cmd_check(const std::string& path, std::ostream& out, std::ostream& err) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const std::runtime_error& e) {
    err << "check: " << e.what() << '\n';
    return 2;
  }
  return cmd_check_text(text, out);
}

}  // namespace incdep
