#pragma once

// Chronological backtracking over the list-based parsers' decisions, and an
// exhaustive head-assignment enumerator to check it against.
//
// Every permitted candidate link is a choice point with two branches: take
// the link (tried first) or decline it. Declining a dependent continues the
// Headlist scan in the non-projective search and ends it in the projective
// one; declining a head moves on to the next head candidate. When a branch is
// exhausted the search resumes the most recent untried alternative.

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "incdep/algorithms.hpp"
#include "incdep/core.hpp"
#include "incdep/grammar.hpp"

namespace incdep {

struct SearchStats {
  QueryCounter counter;
  std::uint64_t choice_points = 0;
  std::uint64_t backtracks = 0;
  // Complete sentence-length states reached, successful or not.
  std::uint64_t leaves = 0;
  // backtracks_at[w]: resumptions of choice points made while accepting word w.
  std::vector<std::uint64_t> backtracks_at;
  // Prefix lengths k for which the search held a single tree over words 1..k.
  std::set<std::size_t> complete_prefixes;
};

struct AnalysisSet {
  std::set<Analysis> analyses;
  SearchStats stats;

  std::size_t size() const noexcept { return analyses.size(); }
  bool empty() const noexcept { return analyses.empty(); }
  bool contains(const Analysis& a) const { return analyses.contains(a); }

  std::set<LinkSet> link_sets() const {
    std::set<LinkSet> out;
    for (const auto& a : analyses) out.insert(a.links());
    return out;
  }
};

struct EnumerationLimitError : std::length_error {
  EnumerationLimitError(std::size_t length, std::size_t bound)
      : std::length_error("sentence of " + std::to_string(length) +
                          " words exceeds the enumeration bound of " + std::to_string(bound)),
        bound(bound) {}
  std::size_t bound;
};

namespace detail {

enum class Phase { kAccept, kDependents, kHeads };

// Everything needed to resume the search: the position in the sentence, the
// position inside the current word's scans, Headlist and the links so far.
struct SearchState {
  WordIndex word = 1;
  Phase phase = Phase::kAccept;
  std::vector<WordIndex> candidates;  // Headlist as it stood when `word` arrived
  std::size_t cursor = 0;
  WordIndex head = kNoHead;           // current head candidate
  std::vector<WordIndex> headlist;    // most recent first
  std::vector<WordIndex> heads;       // heads[d], kNoHead when independent
};

// A resumable decision: the state that results from declining the link that
// was taken at `position`.
struct ChoicePoint {
  WordIndex position;
  SearchState declined;
};

template <Grammar G>
class BacktrackingSearch {
 public:
  BacktrackingSearch(const G& grammar, const Sentence& sentence, bool projective)
      : grammar_(grammar), sentence_(sentence), projective_(projective) {
    stats_.backtracks_at.assign(sentence.size() + 1, 0);
  }

  // Runs until the search space is exhausted or `on_leaf` returns false.
  // on_leaf(const Analysis&, bool unity) -> bool (continue?)
  template <typename OnLeaf>
  void run(OnLeaf&& on_leaf) {
    SearchState state;
    state.heads.assign(sentence_.size() + 1, kNoHead);
    const std::size_t n = sentence_.size();
    for (;;) {
      if (state.word > n) {
        ++stats_.leaves;
        Analysis a = to_analysis(state.heads);
        bool unity = check_unity(a);
        if (!on_leaf(a, unity)) return;
        if (stack_.empty()) return;
        state = std::move(stack_.back().declined);
        ++stats_.backtracks;
        ++stats_.backtracks_at[stack_.back().position];
        stack_.pop_back();
        continue;
      }
      advance(state);
    }
  }

  const SearchStats& stats() const noexcept { return stats_; }

 private:
  // One step of the current word's dependent scan or head search.
  void advance(SearchState& s) {
    const WordIndex w = s.word;
    switch (s.phase) {
      case Phase::kAccept:
        s.candidates = s.headlist;
        s.cursor = 0;
        s.phase = Phase::kDependents;
        return;

      case Phase::kDependents: {
        if (s.cursor >= s.candidates.size()) {
          start_head_search(s);
          return;
        }
        const WordIndex d = s.candidates[s.cursor];
        if (!query(w, d)) {
          if (projective_) {
            start_head_search(s);
          } else {
            ++s.cursor;
          }
          return;
        }
        SearchState declined = s;
        if (projective_) {
          start_head_search(declined);
        } else {
          ++declined.cursor;
        }
        push(w, std::move(declined));

        make_link(s, w, d);
        s.headlist.erase(std::find(s.headlist.begin(), s.headlist.end(), d));
        ++s.cursor;
        return;
      }

      case Phase::kHeads: {
        if (s.head == kNoHead) {
          s.headlist.insert(s.headlist.begin(), w);
          next_word(s);
          return;
        }
        const WordIndex h = s.head;
        if (!query(h, w)) {
          next_head(s);
          return;
        }
        SearchState declined = s;
        next_head(declined);
        push(w, std::move(declined));

        make_link(s, h, w);
        next_word(s);
        return;
      }
    }
  }

  void start_head_search(SearchState& s) const {
    const WordIndex w = s.word;
    s.phase = Phase::kHeads;
    WordIndex h = w - 1;
    if (projective_) {
      while (h >= 1 && dominated_by(s.heads, h, w)) --h;
    }
    s.head = h;
  }

  void next_head(SearchState& s) const {
    if (!projective_) {
      --s.head;  // next element of Wordlist
    } else {
      s.head = s.heads[s.head];  // climb; kNoHead once an independent word is passed
    }
  }

  void next_word(SearchState& s) {
    note_prefix(s);
    ++s.word;
    s.phase = Phase::kAccept;
  }

  void note_prefix(const SearchState& s) {
    if (s.headlist.size() != 1) return;
    std::vector<WordIndex> prefix_heads(s.heads.begin(), s.heads.begin() + s.word + 1);
    std::vector<Word> words(sentence_.words().begin(), sentence_.words().begin() + s.word);
    Analysis prefix(Sentence(std::move(words)));
    for (WordIndex d = 1; d <= s.word; ++d) {
      if (prefix_heads[d] != kNoHead) prefix.add(Link{prefix_heads[d], d});
    }
    if (check_unity(prefix)) stats_.complete_prefixes.insert(s.word);
  }

  bool dominated_by(const std::vector<WordIndex>& heads, WordIndex a, WordIndex b) const {
    std::size_t steps = 0;
    for (WordIndex x = heads[a]; x != kNoHead && steps <= sentence_.size(); x = heads[x], ++steps) {
      if (x == b) return true;
    }
    return false;
  }

  bool query(WordIndex h, WordIndex d) {
    return permits(grammar_, sentence_[h], sentence_[d], stats_.counter);
  }

  void make_link(SearchState& s, WordIndex h, WordIndex d) {
    s.heads[d] = h;
    ++stats_.counter.link_operations;
  }

  void push(WordIndex position, SearchState declined) {
    ++stats_.choice_points;
    stack_.push_back(ChoicePoint{position, std::move(declined)});
  }

  Analysis to_analysis(const std::vector<WordIndex>& heads) const {
    Analysis a(sentence_);
    for (WordIndex d = 1; d < heads.size(); ++d) {
      if (heads[d] != kNoHead) a.add(Link{heads[d], d});
    }
    return a;
  }

  const G& grammar_;
  const Sentence& sentence_;
  bool projective_;
  std::vector<ChoicePoint> stack_;
  SearchStats stats_;
};

}  // namespace detail

// Every complete analysis reachable by backtracking over the projective
// (LSUP) or non-projective (LSU) decision structure.
template <Grammar G>
AnalysisSet parse_all(const G& grammar, const Sentence& sentence, bool projective) {
  AnalysisSet out;
  if (sentence.empty()) return out;
  detail::BacktrackingSearch<G> search(grammar, sentence, projective);
  search.run([&](const Analysis& a, bool unity) {
    if (unity) out.analyses.insert(a);
    return true;
  });
  out.stats = search.stats();
  return out;
}

// Stops at the first complete analysis. When none exists, returns the first
// (greedy) leaf with unity false.
template <Grammar G>
ParseOutcome parse_first(const G& grammar, const Sentence& sentence, bool projective) {
  ParseOutcome out;
  out.analysis = Analysis(sentence);
  if (sentence.empty()) return out;
  detail::BacktrackingSearch<G> search(grammar, sentence, projective);
  bool have_leaf = false;
  search.run([&](const Analysis& a, bool unity) {
    if (unity || !have_leaf) {
      out.analysis = a;
      out.unity = unity;
      have_leaf = true;
    }
    return !unity;
  });
  out.stats = search.stats().counter;
  out.backtracks = search.stats().backtracks;
  return out;
}

inline constexpr std::size_t kDefaultEnumerationBound = 8;

// Tries every assignment of a head (another word, or none) to each word and
// keeps those whose links are all permitted and that form a single tree,
// projective when asked.
template <Grammar G>
AnalysisSet oracle_enumerate(const G& grammar, const Sentence& sentence, bool projective,
                             std::size_t bound = kDefaultEnumerationBound) {
  const std::size_t n = sentence.size();
  if (n > bound) throw EnumerationLimitError(n, bound);
  AnalysisSet out;
  if (n == 0) return out;

  // options[d]: kNoHead plus every word permitted to head d.
  std::vector<std::vector<WordIndex>> options(n + 1);
  for (WordIndex d = 1; d <= n; ++d) {
    options[d].push_back(kNoHead);
    for (WordIndex h = 1; h <= n; ++h) {
      if (h != d && permits(grammar, sentence[h], sentence[d], out.stats.counter)) {
        options[d].push_back(h);
      }
    }
  }

  std::vector<std::size_t> choice(n + 1, 0);
  for (;;) {
    Analysis a(sentence);
    for (WordIndex d = 1; d <= n; ++d) {
      WordIndex h = options[d][choice[d]];
      if (h != kNoHead) a.add(Link{h, d});
    }
    ++out.stats.leaves;
    if (check_unity(a) && (!projective || is_projective(a))) out.analyses.insert(std::move(a));

    // Odometer increment.
    WordIndex d = 1;
    while (d <= n && ++choice[d] == options[d].size()) {
      choice[d] = 0;
      ++d;
    }
    if (d > n) break;
  }
  return out;
}

struct ChainInstance {
  RuleGrammar grammar;
  Sentence sentence;
};

// A determiner followed by n-1 nouns under {N < D, N < N}: every prefix is
// itself a complete phrase. n = 4 gives "the green house paint".
inline ChainInstance worst_case_chain(std::size_t n) {
  if (n < 2) throw InputError("worst_case_chain needs n >= 2");
  static const char* const kNouns[] = {"green", "house", "paint"};
  ChainInstance out;
  out.grammar.add_word("the", "D");
  std::vector<std::string> forms{"the"};
  for (std::size_t k = 1; k < n; ++k) {
    std::string form = k <= 3 ? kNouns[k - 1] : "noun" + std::to_string(k);
    out.grammar.add_word(form, "N");
    forms.push_back(form);
  }
  out.grammar.add_rule(LinkRule{"N", "D", Direction::kPre});
  out.grammar.add_rule(LinkRule{"N", "N", Direction::kPre});
  out.sentence = out.grammar.make_sentence(forms);
  return out;
}

}  // namespace incdep
