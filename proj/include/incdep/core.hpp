#pragma once

// Words, links, analyses and the tree predicates every parser is judged by.
//
// Word indices are 1-based. Index 0 never names a word; in external output it
// marks an independent (headless) word.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace incdep {

using WordIndex = std::size_t;

inline constexpr WordIndex kNoHead = 0;

struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Word {
  WordIndex index{};
  std::string form;
  std::string category;

  auto operator<=>(const Word&) const = default;
};

// Words with consecutive indices starting at 1.
class Sentence {
 public:
  Sentence() = default;

  explicit Sentence(std::vector<Word> words) : words_(std::move(words)) {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      if (words_[k].index != k + 1) {
        throw InputError("word at position " + std::to_string(k) +
                         " has index " + std::to_string(words_[k].index) +
                         ", expected " + std::to_string(k + 1));
      }
      if (words_[k].form.empty()) {
        throw InputError("word " + std::to_string(k + 1) + " has an empty form");
      }
    }
  }

  // Builds a sentence from (form, category) pairs, numbering from 1.
  static Sentence from_pairs(
      const std::vector<std::pair<std::string, std::string>>& tokens) {
    std::vector<Word> words;
    words.reserve(tokens.size());
    for (const auto& [form, category] : tokens) {
      words.push_back(Word{words.size() + 1, form, category});
    }
    return Sentence(std::move(words));
  }

  std::size_t size() const noexcept { return words_.size(); }
  bool empty() const noexcept { return words_.empty(); }

  bool contains(WordIndex i) const noexcept { return i >= 1 && i <= words_.size(); }

  // 1-based access.
  const Word& operator[](WordIndex i) const { return words_[i - 1]; }

  const Word& at(WordIndex i) const {
    if (!contains(i)) {
      throw InputError("word index " + std::to_string(i) + " outside 1.." +
                       std::to_string(words_.size()));
    }
    return words_[i - 1];
  }

  const std::vector<Word>& words() const noexcept { return words_; }

  auto operator<=>(const Sentence&) const = default;

 private:
  std::vector<Word> words_;
};

struct Link {
  WordIndex head{};
  WordIndex dependent{};

  auto operator<=>(const Link&) const = default;
};

using LinkSet = std::set<Link>;

// A sentence plus a set of head->dependent links. Multiple heads and cycles
// are representable; the predicates below classify them.
class Analysis {
 public:
  Analysis() = default;
  explicit Analysis(Sentence sentence) : sentence_(std::move(sentence)) {}

  Analysis(Sentence sentence, const LinkSet& links) : sentence_(std::move(sentence)) {
    for (const Link& l : links) add(l);
  }

  // Returns false if the link was already present.
  bool add(Link link) {
    if (link.head == link.dependent) {
      throw InputError("self-link on word " + std::to_string(link.head));
    }
    if (!sentence_.contains(link.head) || !sentence_.contains(link.dependent)) {
      throw InputError("link (" + std::to_string(link.head) + "," +
                       std::to_string(link.dependent) + ") outside sentence of " +
                       std::to_string(sentence_.size()) + " words");
    }
    return links_.insert(link).second;
  }

  bool remove(Link link) { return links_.erase(link) > 0; }

  bool contains(Link link) const { return links_.contains(link); }

  const Sentence& sentence() const noexcept { return sentence_; }
  const LinkSet& links() const noexcept { return links_; }
  std::size_t size() const noexcept { return sentence_.size(); }

  // Heads of word w in ascending order.
  std::vector<WordIndex> heads_of(WordIndex w) const {
    std::vector<WordIndex> out;
    for (const Link& l : links_) {
      if (l.dependent == w) out.push_back(l.head);
    }
    return out;
  }

  // Dependents of word w in ascending order.
  std::vector<WordIndex> dependents_of(WordIndex w) const {
    std::vector<WordIndex> out;
    auto it = links_.lower_bound(Link{w, 0});
    for (; it != links_.end() && it->head == w; ++it) out.push_back(it->dependent);
    return out;
  }

  auto operator<=>(const Analysis&) const = default;

 private:
  Sentence sentence_;
  LinkSet links_;
};

namespace detail {

inline void require_index(const Analysis& analysis, WordIndex w) {
  if (!analysis.sentence().contains(w)) {
    throw InputError("word index " + std::to_string(w) + " outside 1.." +
                     std::to_string(analysis.size()));
  }
}

// dependents[h] lists the dependents of h.
inline std::vector<std::vector<WordIndex>> dependent_lists(const Analysis& analysis) {
  std::vector<std::vector<WordIndex>> deps(analysis.size() + 1);
  for (const Link& l : analysis.links()) deps[l.head].push_back(l.dependent);
  return deps;
}

inline std::vector<WordIndex> closure_from(
    const std::vector<std::vector<WordIndex>>& deps, WordIndex w) {
  std::vector<bool> seen(deps.size(), false);
  std::vector<WordIndex> frontier{w};
  seen[w] = true;
  std::vector<WordIndex> out;
  while (!frontier.empty()) {
    WordIndex x = frontier.back();
    frontier.pop_back();
    out.push_back(x);
    for (WordIndex d : deps[x]) {
      if (!seen[d]) {
        seen[d] = true;
        frontier.push_back(d);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

// Words comprised by w: w itself plus everything it dominates, sorted.
// Terminates on cyclic link sets.
inline std::vector<WordIndex> comprises(const Analysis& analysis, WordIndex w) {
  detail::require_index(analysis, w);
  return detail::closure_from(detail::dependent_lists(analysis), w);
}

// True iff a is dominated by b (a != b).
inline bool is_subordinate(const Analysis& analysis, WordIndex a, WordIndex b) {
  detail::require_index(analysis, a);
  detail::require_index(analysis, b);
  if (a == b) return false;
  auto c = comprises(analysis, b);
  return std::binary_search(c.begin(), c.end(), a);
}

// Every word comprises a contiguous run of indices.
inline bool is_projective(const Analysis& analysis) {
  auto deps = detail::dependent_lists(analysis);
  for (WordIndex w = 1; w <= analysis.size(); ++w) {
    auto c = detail::closure_from(deps, w);
    if (c.back() - c.front() + 1 != c.size()) return false;
  }
  return true;
}

inline bool check_uniqueness(const Analysis& analysis) {
  std::vector<int> heads(analysis.size() + 1, 0);
  for (const Link& l : analysis.links()) {
    if (++heads[l.dependent] > 1) return false;
  }
  return true;
}

// Single tree with one root comprising every word. An empty sentence has no
// root and fails; a lone word is a one-node tree.
inline bool check_unity(const Analysis& analysis) {
  const std::size_t n = analysis.size();
  if (n == 0 || !check_uniqueness(analysis)) return false;

  std::vector<WordIndex> head(n + 1, kNoHead);
  for (const Link& l : analysis.links()) head[l.dependent] = l.head;

  WordIndex root = kNoHead;
  for (WordIndex w = 1; w <= n; ++w) {
    if (head[w] != kNoHead) continue;
    if (root != kNoHead) return false;
    root = w;
  }
  if (root == kNoHead) return false;

  // Acyclic: climbing from any word reaches the root within n steps.
  for (WordIndex w = 1; w <= n; ++w) {
    WordIndex x = w;
    std::size_t steps = 0;
    while (head[x] != kNoHead && steps <= n) {
      x = head[x];
      ++steps;
    }
    if (x != root) return false;
  }
  return comprises(analysis, root).size() == n;
}

}  // namespace incdep
