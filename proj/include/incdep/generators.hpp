#pragma once

// Random inputs for benchmarks and property tests.

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "incdep/core.hpp"
#include "incdep/grammar.hpp"

namespace incdep {

// Words w1..wn, all of category `category`.
inline Sentence uniform_sentence(std::size_t n, const std::string& category = "W") {
  std::vector<Word> words;
  words.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) {
    words.push_back(Word{i, "w" + std::to_string(i), category});
  }
  return Sentence(std::move(words));
}

// Grammar whose lexicon covers uniform_sentence(n) and which permits nothing.
inline RuleGrammar null_grammar(std::size_t n, const std::string& category = "W") {
  RuleGrammar g;
  for (std::size_t i = 1; i <= n; ++i) g.add_word("w" + std::to_string(i), category);
  return g;
}

// Uniform over rooted labelled trees reachable by attaching each word, in a
// random order, beneath a random already-placed word.
template <typename Rng>
LinkSet random_tree(std::size_t n, Rng& rng) {
  std::vector<WordIndex> order(n);
  for (std::size_t k = 0; k < n; ++k) order[k] = k + 1;
  std::shuffle(order.begin(), order.end(), rng);
  LinkSet links;
  for (std::size_t k = 1; k < n; ++k) {
    std::uniform_int_distribution<std::size_t> pick(0, k - 1);
    links.insert(Link{order[pick(rng)], order[k]});
  }
  return links;
}

namespace detail {

template <typename Rng>
WordIndex grow_projective(WordIndex lo, WordIndex hi, Rng& rng, LinkSet& links) {
  std::uniform_int_distribution<WordIndex> pick(lo, hi);
  const WordIndex root = pick(rng);
  std::bernoulli_distribution cut(0.5);
  // Split each side into consecutive segments; each segment is a subtree
  // hanging from root.
  auto side = [&](WordIndex a, WordIndex b) {
    if (a > b) return;
    WordIndex start = a;
    for (WordIndex k = a; k <= b; ++k) {
      if (k == b || cut(rng)) {
        links.insert(Link{root, grow_projective(start, k, rng, links)});
        start = k + 1;
      }
    }
  };
  if (root > lo) side(lo, root - 1);
  side(root + 1, hi);
  return root;
}

}  // namespace detail

template <typename Rng>
LinkSet random_projective_tree(std::size_t n, Rng& rng) {
  LinkSet links;
  if (n > 0) detail::grow_projective(1, n, rng, links);
  return links;
}

// Any subset of (head, dependent) pairs with at most one head per word; cycles
// and forests included.
template <typename Rng>
LinkSet random_unique_headed(std::size_t n, Rng& rng) {
  LinkSet links;
  std::uniform_int_distribution<std::size_t> pick(0, n);
  for (WordIndex d = 1; d <= n; ++d) {
    WordIndex h = pick(rng);
    if (h != kNoHead && h != d) links.insert(Link{h, d});
  }
  return links;
}

// Categories A, B, C, ... each with one lexicon entry per category ("a", "b",
// ...) and up to `max_rules` random rules.
template <typename Rng>
RuleGrammar random_rule_grammar(std::size_t categories, std::size_t max_rules, Rng& rng) {
  RuleGrammar g;
  std::vector<std::string> cats;
  for (std::size_t c = 0; c < categories; ++c) {
    std::string cat(1, static_cast<char>('A' + c));
    std::string form(1, static_cast<char>('a' + c));
    cats.push_back(cat);
    g.add_word(form, cat);
  }
  std::uniform_int_distribution<std::size_t> count(0, max_rules);
  std::uniform_int_distribution<std::size_t> cat(0, categories - 1);
  std::uniform_int_distribution<int> dir(1, 3);
  const std::size_t rules = count(rng);
  for (std::size_t r = 0; r < rules; ++r) {
    g.add_rule(LinkRule{cats[cat(rng)], cats[cat(rng)], static_cast<Direction>(dir(rng))});
  }
  return g;
}

}  // namespace incdep
