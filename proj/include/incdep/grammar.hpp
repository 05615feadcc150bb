#pragma once

// The link-permission contract parsers consult, and its two implementations:
// a category rule table loaded from text, and a grammar that permits exactly
// the links of one known tree.

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "incdep/core.hpp"

namespace incdep {

// Answers "may `head` take `dep` as a dependent?" in time independent of
// sentence length.
template <typename G>
concept Grammar = requires(const G& g, const Word& head, const Word& dep) {
  { g.permits(head, dep) } -> std::convertible_to<bool>;
};

struct QueryCounter {
  std::uint64_t permit_queries = 0;
  // Links created, including links later undone by backtracking.
  std::uint64_t link_operations = 0;

  auto operator<=>(const QueryCounter&) const = default;
};

inline QueryCounter reset_counters(QueryCounter) { return QueryCounter{}; }

// Counted query. Every permission check a parser makes goes through here.
template <Grammar G>
bool permits(const G& grammar, const Word& head, const Word& dep, QueryCounter& counter) {
  ++counter.permit_queries;
  return grammar.permits(head, dep);
}

enum class Direction : std::uint8_t {
  kPre = 1,     // dependent precedes head
  kPost = 2,    // dependent follows head
  kEither = 3,
};

inline char direction_symbol(Direction d) {
  switch (d) {
    case Direction::kPre: return '<';
    case Direction::kPost: return '>';
    case Direction::kEither: return '~';
  }
  return '?';
}

struct LinkRule {
  std::string head_category;
  std::string dependent_category;
  Direction direction = Direction::kEither;

  auto operator<=>(const LinkRule&) const = default;
};

struct GrammarFormatError : std::runtime_error {
  GrammarFormatError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line(line) {}
  std::size_t line;
};

struct LookupError : std::out_of_range {
  explicit LookupError(const std::string& form)
      : std::out_of_range("unknown word '" + form + "'"), form(form) {}
  std::string form;
};

class RuleGrammar {
 public:
  // Throws InputError when the form is already in the lexicon.
  void add_word(const std::string& form, const std::string& category) {
    if (form.empty() || category.empty()) throw InputError("empty form or category");
    if (!lexicon_.emplace(form, category).second) {
      throw InputError("duplicate form '" + form + "'");
    }
    intern(category);
  }

  // Returns false for a rule already declared with the same direction.
  bool add_rule(const LinkRule& rule) {
    if (rule.head_category.empty() || rule.dependent_category.empty()) {
      throw InputError("empty category in rule");
    }
    auto key = pair_key(intern(rule.head_category), intern(rule.dependent_category));
    directions_[key] |= static_cast<std::uint8_t>(rule.direction);
    if (std::find(rules_.begin(), rules_.end(), rule) != rules_.end()) return false;
    rules_.push_back(rule);
    return true;
  }

  bool permits(const Word& head, const Word& dep) const {
    if (head.index == dep.index) return false;
    auto h = category_ids_.find(head.category);
    auto d = category_ids_.find(dep.category);
    if (h == category_ids_.end() || d == category_ids_.end()) return false;
    auto it = directions_.find(pair_key(h->second, d->second));
    if (it == directions_.end()) return false;
    auto wanted = dep.index < head.index ? Direction::kPre : Direction::kPost;
    return (it->second & static_cast<std::uint8_t>(wanted)) != 0;
  }

  std::optional<std::string> category_of(const std::string& form) const {
    auto it = lexicon_.find(form);
    if (it == lexicon_.end()) return std::nullopt;
    return it->second;
  }

  // Throws LookupError on the first form missing from the lexicon.
  Sentence make_sentence(std::span<const std::string> forms) const {
    std::vector<Word> words;
    words.reserve(forms.size());
    for (const auto& form : forms) {
      auto cat = category_of(form);
      if (!cat) throw LookupError(form);
      words.push_back(Word{words.size() + 1, form, *cat});
    }
    return Sentence(std::move(words));
  }

  const std::map<std::string, std::string>& lexicon() const noexcept { return lexicon_; }
  const std::vector<LinkRule>& rules() const noexcept { return rules_; }

  std::set<std::string> lexicon_categories() const {
    std::set<std::string> out;
    for (const auto& [form, cat] : lexicon_) out.insert(cat);
    return out;
  }

  // Categories named by rules that no lexicon entry carries.
  std::set<std::string> unknown_rule_categories() const {
    auto known = lexicon_categories();
    std::set<std::string> out;
    for (const auto& r : rules_) {
      if (!known.contains(r.head_category)) out.insert(r.head_category);
      if (!known.contains(r.dependent_category)) out.insert(r.dependent_category);
    }
    return out;
  }

 private:
  static std::uint64_t pair_key(std::uint32_t head, std::uint32_t dep) {
    return (std::uint64_t{head} << 32) | dep;
  }

  std::uint32_t intern(const std::string& category) {
    auto [it, inserted] =
        category_ids_.emplace(category, static_cast<std::uint32_t>(category_ids_.size()));
    return it->second;
  }

  std::map<std::string, std::string> lexicon_;
  std::unordered_map<std::string, std::uint32_t> category_ids_;
  std::unordered_map<std::uint64_t, std::uint8_t> directions_;
  std::vector<LinkRule> rules_;
};

// Permits exactly the links of a fixed target, by word index.
class TreeBackedGrammar {
 public:
  TreeBackedGrammar(std::size_t sentence_length, const LinkSet& target)
      : n_(sentence_length), allowed_((n_ + 1) * (n_ + 1), false), target_(target) {
    for (const Link& l : target) {
      if (l.head == l.dependent || l.head < 1 || l.dependent < 1 || l.head > n_ ||
          l.dependent > n_) {
        throw InputError("target link (" + std::to_string(l.head) + "," +
                         std::to_string(l.dependent) + ") invalid for " +
                         std::to_string(n_) + " words");
      }
      allowed_[l.head * (n_ + 1) + l.dependent] = true;
    }
  }

  explicit TreeBackedGrammar(const Analysis& target)
      : TreeBackedGrammar(target.size(), target.links()) {}

  bool permits(const Word& head, const Word& dep) const {
    if (head.index > n_ || dep.index > n_) return false;
    return allowed_[head.index * (n_ + 1) + dep.index];
  }

  const LinkSet& target() const noexcept { return target_; }

 private:
  std::size_t n_;
  std::vector<bool> allowed_;
  LinkSet target_;
};

// ---------------------------------------------------------------------------
// Grammar file format

enum class Severity { kWarning, kError };

struct Diagnostic {
  std::size_t line = 0;  // 0 when not tied to a line
  Severity severity = Severity::kError;
  std::string message;
};

struct GrammarScan {
  RuleGrammar grammar;
  std::vector<Diagnostic> diagnostics;

  std::size_t error_count() const {
    return static_cast<std::size_t>(std::count_if(
        diagnostics.begin(), diagnostics.end(),
        [](const Diagnostic& d) { return d.severity == Severity::kError; }));
  }
  std::size_t warning_count() const { return diagnostics.size() - error_count(); }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\f\v";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

inline bool is_single_token(std::string_view s) {
  return !s.empty() && s.find_first_of(" \t\r\f\v") == std::string_view::npos;
}

}  // namespace detail

// Reads every line, collecting errors and warnings instead of stopping at the
// first problem. Lines with errors contribute nothing to the grammar.
inline GrammarScan scan_grammar(std::string_view text) {
  GrammarScan scan;
  auto error = [&](std::size_t line, std::string msg) {
    scan.diagnostics.push_back({line, Severity::kError, std::move(msg)});
  };
  auto warn = [&](std::size_t line, std::string msg) {
    scan.diagnostics.push_back({line, Severity::kWarning, std::move(msg)});
  };

  struct PendingRule {
    std::size_t line;
    LinkRule rule;
  };
  std::vector<PendingRule> pending;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    auto raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    auto line = detail::trim(raw);
    if (line.empty() || line.front() == '#') continue;

    auto split = line.find_first_of(" \t");
    auto directive = line.substr(0, split);
    auto rest = split == std::string_view::npos ? std::string_view{}
                                                : detail::trim(line.substr(split));

    if (directive == "word") {
      auto colon = rest.rfind(':');
      if (colon == std::string_view::npos) {
        error(line_no, "expected 'word FORM : CATEGORY'");
        continue;
      }
      auto form = detail::trim(rest.substr(0, colon));
      auto cat = detail::trim(rest.substr(colon + 1));
      if (!detail::is_single_token(form) || !detail::is_single_token(cat)) {
        error(line_no, "expected 'word FORM : CATEGORY'");
        continue;
      }
      std::string f(form);
      if (scan.grammar.category_of(f)) {
        error(line_no, "duplicate form '" + f + "'");
        continue;
      }
      scan.grammar.add_word(f, std::string(cat));
    } else if (directive == "rule") {
      auto op = rest.find_first_of("<>~");
      if (op == std::string_view::npos || rest.find_first_of("<>~", op + 1) != std::string_view::npos) {
        error(line_no, "expected 'rule HEAD <|>|~ DEPENDENT'");
        continue;
      }
      auto head = detail::trim(rest.substr(0, op));
      auto dep = detail::trim(rest.substr(op + 1));
      if (!detail::is_single_token(head) || !detail::is_single_token(dep)) {
        error(line_no, "expected 'rule HEAD <|>|~ DEPENDENT'");
        continue;
      }
      Direction dir = rest[op] == '<' ? Direction::kPre
                      : rest[op] == '>' ? Direction::kPost
                                        : Direction::kEither;
      pending.push_back({line_no, LinkRule{std::string(head), std::string(dep), dir}});
    } else {
      error(line_no, "unknown directive '" + std::string(directive) + "'");
    }
  }

  // Rules are resolved after the whole lexicon is known, so a rule may precede
  // the words it mentions.
  auto known = scan.grammar.lexicon_categories();
  std::set<LinkRule> seen;
  for (const auto& [line, rule] : pending) {
    if (!seen.insert(rule).second) {
      warn(line, "duplicate rule '" + rule.head_category + " " +
                     direction_symbol(rule.direction) + " " + rule.dependent_category + "'");
      continue;
    }
    for (const auto* cat : {&rule.head_category, &rule.dependent_category}) {
      if (!known.contains(*cat)) {
        warn(line, "category '" + *cat + "' does not occur in the lexicon");
      }
    }
    scan.grammar.add_rule(rule);
  }

  std::stable_sort(scan.diagnostics.begin(), scan.diagnostics.end(),
                   [](const Diagnostic& a, const Diagnostic& b) { return a.line < b.line; });
  return scan;
}

// Throws GrammarFormatError for the first error; warnings are dropped.
inline RuleGrammar load_grammar(std::string_view text) {
  GrammarScan scan = scan_grammar(text);
  for (const auto& d : scan.diagnostics) {
    if (d.severity == Severity::kError) throw GrammarFormatError(d.line, d.message);
  }
  return std::move(scan.grammar);
}

}  // namespace incdep
