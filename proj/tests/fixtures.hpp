#pragma once

#include <string>
#include <vector>

#include "incdep/algorithms.hpp"
#include "incdep/grammar.hpp"

namespace incdep::fixtures {

inline const char* const kG1 =
    "word the : D\n"
    "word dog : N\n"
    "word barks : V\n"
    "rule N < D\n"
    "rule V < N\n";

inline Sentence sentence_of(const RuleGrammar& g, const std::string& text) {
  std::vector<std::string> forms;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find(' ', pos);
    if (end == std::string::npos) end = text.size();
    if (end > pos) forms.push_back(text.substr(pos, end - pos));
    pos = end + 1;
  }
  return g.make_sentence(forms);
}

// "ate the big apple": apple is a postdependent of ate, and the two words
// between them already hang from apple when apple arrives.
inline Sentence obstacle_sentence() {
  return Sentence::from_pairs({{"ate", "V"}, {"the", "D"}, {"big", "A"}, {"apple", "N"}});
}
inline const LinkSet kObstacleTree{{1, 4}, {4, 2}, {4, 3}};

// 3 and 4 both take predependents across each other: (3,1) crosses (4,2).
inline const LinkSet kCrossingTree{{3, 1}, {4, 2}, {4, 3}};

// Projective list-based parser whose head search starts from the word
// immediately before W and gives up on reaching W.
template <Grammar G>
ParseOutcome parse_lsup_previous_word(const G& grammar, const Sentence& sentence) {
  ParseState<G> state(grammar, sentence);
  for (WordIndex w = 1; w <= sentence.size(); ++w) {
    state.accept(w);
    while (!state.headlist.empty()) {
      WordIndex d = state.headlist.front();
      if (!state.can_link(w, d)) break;
      state.link(w, d);
      state.headlist.pop_front();
    }
    bool found = false;
    WordIndex h = w - 1;
    while (h >= 1 && h != w) {
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

// Permits whatever an arbitrary (head, dependent) matrix says; no tree or
// category structure behind it.
struct MatrixGrammar {
  std::size_t n = 0;
  std::vector<bool> allowed;  // (n+1)^2, row = head

  bool permits(const Word& head, const Word& dep) const {
    return head.index != dep.index && allowed[head.index * (n + 1) + dep.index];
  }
};

template <typename Rng>
MatrixGrammar random_matrix_grammar(std::size_t n, double density, Rng& rng) {
  MatrixGrammar g{n, std::vector<bool>((n + 1) * (n + 1), false)};
  std::bernoulli_distribution coin(density);
  for (std::size_t k = 0; k < g.allowed.size(); ++k) g.allowed[k] = coin(rng);
  return g;
}

}  // namespace incdep::fixtures
