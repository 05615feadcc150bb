#pragma once

// One-word-at-a-time dependency parsers.
//
//   ESH / ESD    exhaustive backward search over every earlier word, heads
//                first or dependents first; no constraints at all.
//   ESHU / ESDU  the same search with uniqueness: a word stops looking for a
//                head once it has one, and attached words are never taken as
//                dependents again.
//   LSU          list-based search: dependents come only from Headlist, the
//                head is the first permitted word in Wordlist.
//   LSUP         LSU with projectivity: dependents are a consecutive run of
//                Headlist, and the head is found by climbing from the most
//                recent word not already subordinate to the new word.
//
// All parsers make one left-to-right pass, attach eagerly and never undo a
// link. Unity is only known once the pass is over.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <string_view>
#include <vector>

#include "incdep/core.hpp"
#include "incdep/grammar.hpp"

namespace incdep {

enum class Algorithm { kEsh, kEsd, kEshu, kEsdu, kLsu, kLsup };

inline constexpr Algorithm kAllAlgorithms[] = {Algorithm::kEsh,  Algorithm::kEsd,
                                               Algorithm::kEshu, Algorithm::kEsdu,
                                               Algorithm::kLsu,  Algorithm::kLsup};

inline std::string_view algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::kEsh: return "esh";
    case Algorithm::kEsd: return "esd";
    case Algorithm::kEshu: return "eshu";
    case Algorithm::kEsdu: return "esdu";
    case Algorithm::kLsu: return "lsu";
    case Algorithm::kLsup: return "lsup";
  }
  return "?";
}

inline std::optional<Algorithm> algorithm_from_name(std::string_view name) {
  for (Algorithm a : kAllAlgorithms) {
    if (algorithm_name(a) == name) return a;
  }
  return std::nullopt;
}

// A link together with the word whose acceptance created it.
struct LinkEvent {
  Link link;
  WordIndex step{};

  auto operator<=>(const LinkEvent&) const = default;
};

struct ParseOutcome {
  Analysis analysis;
  bool unity = false;
  QueryCounter stats;
  std::uint64_t backtracks = 0;
  std::vector<LinkEvent> events;
  // Final working lists, most recent first.
  std::vector<WordIndex> wordlist;
  std::vector<WordIndex> headlist;
};

// Working data of one parse run. Wordlist and Headlist grow at the front, so
// iterating from begin() visits the most recent word first.
template <Grammar G>
class ParseState {
 public:
  ParseState(const G& grammar, const Sentence& sentence)
      : grammar_(grammar),
        sentence_(sentence),
        analysis_(sentence),
        head_(sentence.size() + 1, kNoHead),
        head_count_(sentence.size() + 1, 0) {}

  std::deque<WordIndex> wordlist;
  std::deque<WordIndex> headlist;

  void accept(WordIndex w) {
    current_ = w;
    wordlist.push_front(w);
  }

  WordIndex current() const noexcept { return current_; }

  // Counted grammar query: may h take d as a dependent?
  bool can_link(WordIndex h, WordIndex d) {
    return permits(grammar_, sentence_[h], sentence_[d], counter_);
  }

  void link(WordIndex h, WordIndex d) {
    if (!analysis_.add(Link{h, d})) return;
    ++counter_.link_operations;
    if (head_count_[d]++ == 0) head_[d] = h;
    events_.push_back(LinkEvent{Link{h, d}, current_});
  }

  bool has_head(WordIndex w) const { return head_count_[w] > 0; }

  // First head attached to w, or kNoHead.
  WordIndex head_of(WordIndex w) const { return head_[w]; }

  // Climbs head pointers from a. Only meaningful while heads are unique.
  bool dominated_by(WordIndex a, WordIndex b) const {
    std::size_t steps = 0;
    for (WordIndex x = head_[a]; x != kNoHead && steps <= sentence_.size();
         x = head_[x], ++steps) {
      if (x == b) return true;
    }
    return false;
  }

  void remove_from_headlist(WordIndex w) {
    headlist.erase(std::find(headlist.begin(), headlist.end(), w));
  }

  const Sentence& sentence() const noexcept { return sentence_; }
  const QueryCounter& counter() const noexcept { return counter_; }

  ParseOutcome finish() && {
    ParseOutcome out;
    out.unity = check_unity(analysis_);
    out.analysis = std::move(analysis_);
    out.stats = counter_;
    out.events = std::move(events_);
    out.wordlist.assign(wordlist.begin(), wordlist.end());
    out.headlist.assign(headlist.begin(), headlist.end());
    return out;
  }

 private:
  const G& grammar_;
  const Sentence& sentence_;
  Analysis analysis_;
  std::vector<WordIndex> head_;
  std::vector<int> head_count_;
  std::vector<LinkEvent> events_;
  QueryCounter counter_;
  WordIndex current_ = kNoHead;
};

namespace detail {

// The exhaustive searches keep no Headlist while parsing; report the
// headless words in the same most-recent-first order afterwards.
template <Grammar G>
void fill_headlist(ParseState<G>& state) {
  for (WordIndex w = state.sentence().size(); w >= 1; --w) {
    if (!state.has_head(w)) state.headlist.push_back(w);
  }
}

template <Grammar G>
ParseOutcome exhaustive(const G& grammar, const Sentence& sentence, bool heads_first,
                        bool unique) {
  ParseState<G> state(grammar, sentence);
  const std::size_t n = sentence.size();
  for (WordIndex i = 1; i <= n; ++i) {
    state.accept(i);
    for (WordIndex j = i - 1; j >= 1; --j) {
      auto try_head = [&] {
        if (unique && state.has_head(i)) return;
        if (state.can_link(j, i)) state.link(j, i);
      };
      auto try_dependent = [&] {
        if (unique && state.has_head(j)) return;
        if (state.can_link(i, j)) state.link(i, j);
      };
      if (heads_first) {
        try_head();
        try_dependent();
      } else {
        try_dependent();
        try_head();
      }
    }
  }
  fill_headlist(state);
  return std::move(state).finish();
}

}  // namespace detail

template <Grammar G>
ParseOutcome parse_esh(const G& grammar, const Sentence& sentence) {
  return detail::exhaustive(grammar, sentence, /*heads_first=*/true, /*unique=*/false);
}

template <Grammar G>
ParseOutcome parse_esd(const G& grammar, const Sentence& sentence) {
  return detail::exhaustive(grammar, sentence, /*heads_first=*/false, /*unique=*/false);
}

template <Grammar G>
ParseOutcome parse_eshu(const G& grammar, const Sentence& sentence) {
  return detail::exhaustive(grammar, sentence, /*heads_first=*/true, /*unique=*/true);
}

template <Grammar G>
ParseOutcome parse_esdu(const G& grammar, const Sentence& sentence) {
  return detail::exhaustive(grammar, sentence, /*heads_first=*/false, /*unique=*/true);
}

template <Grammar G>
ParseOutcome parse_lsu(const G& grammar, const Sentence& sentence) {
  ParseState<G> state(grammar, sentence);
  for (WordIndex w = 1; w <= sentence.size(); ++w) {
    state.accept(w);

    // Dependents of W can only be in Headlist. Iterate over the list as it
    // stood on entry; deletions do not disturb the iteration.
    const std::vector<WordIndex> candidates(state.headlist.begin(), state.headlist.end());
    for (WordIndex d : candidates) {
      if (state.can_link(w, d)) {
        state.link(w, d);
        state.remove_from_headlist(d);
      }
    }

    // First permitted head in Wordlist, skipping W itself at the front.
    bool found = false;
    for (auto it = std::next(state.wordlist.begin()); it != state.wordlist.end(); ++it) {
      if (state.can_link(*it, w)) {
        state.link(*it, w);
        found = true;
        break;
      }
    }
    if (!found) state.headlist.push_front(w);
  }
  return std::move(state).finish();
}

template <Grammar G>
ParseOutcome parse_lsup(const G& grammar, const Sentence& sentence) {
  ParseState<G> state(grammar, sentence);
  for (WordIndex w = 1; w <= sentence.size(); ++w) {
    state.accept(w);

    // Dependents: a consecutive run of Headlist from the most recent end.
    while (!state.headlist.empty()) {
      WordIndex d = state.headlist.front();
      if (!state.can_link(w, d)) break;
      state.link(w, d);
      state.headlist.pop_front();
    }

    // Head: start at the most recent word before W not already subordinate
    // to W, then climb towards its root.
    WordIndex h = w - 1;
    while (h >= 1 && state.dominated_by(h, w)) --h;

    bool found = false;
    while (h >= 1) {
      if (state.can_link(h, w)) {
        state.link(h, w);
        found = true;
        break;
      }
      if (!state.has_head(h)) break;
      h = state.head_of(h);
    }
    if (!found) state.headlist.push_front(w);
  }
  return std::move(state).finish();
}

template <Grammar G>
ParseOutcome parse(Algorithm algorithm, const G& grammar, const Sentence& sentence) {
  switch (algorithm) {
    case Algorithm::kEsh: return parse_esh(grammar, sentence);
    case Algorithm::kEsd: return parse_esd(grammar, sentence);
    case Algorithm::kEshu: return parse_eshu(grammar, sentence);
    case Algorithm::kEsdu: return parse_esdu(grammar, sentence);
    case Algorithm::kLsu: return parse_lsu(grammar, sentence);
    case Algorithm::kLsup: return parse_lsup(grammar, sentence);
  }
  throw InputError("unknown algorithm");
}

}  // namespace incdep
