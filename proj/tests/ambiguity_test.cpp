#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "incdep/ambiguity.hpp"
#include "incdep/generators.hpp"
#include "oracles.hpp"

namespace incdep {
namespace {

using fixtures::kG1;
using fixtures::sentence_of;

// Projective analyses of "the green house paint" under {N < D, N < N},
// enumerated by brute force over all 5^4 head vectors.
const std::set<LinkSet> kCompoundProjective{
    {{2, 1}, {3, 2}, {4, 3}}, {{2, 1}, {4, 2}, {4, 3}}, {{3, 1}, {3, 2}, {4, 3}},
    {{3, 2}, {4, 1}, {4, 3}}, {{4, 1}, {4, 2}, {4, 3}}};

template <Grammar G>
std::set<LinkSet> reference_trees(const G& g, const Sentence& s, bool projective) {
  return oracle::all_trees(
      s.size(), [&](WordIndex h, WordIndex d) { return g.permits(s[h], s[d]); }, projective);
}

TEST(ParseAllTest, UnambiguousG1) {
  auto g = load_grammar(kG1);
  auto s = sentence_of(g, "the dog barks");
  auto all = parse_all(g, s, true);
  ASSERT_EQ(all.size(), 1u);
  EXPECT_EQ(all.analyses.begin()->links(), (LinkSet{{2, 1}, {3, 2}}));
  EXPECT_EQ(all.link_sets(), oracle_enumerate(g, s, true).link_sets());
  EXPECT_EQ(all.analyses.begin()->links(), parse_lsup(g, s).analysis.links());
}

TEST(ParseAllTest, GreenHousePaint) {
  auto chain = worst_case_chain(4);
  auto all = parse_all(chain.grammar, chain.sentence, true);
  EXPECT_EQ(all.link_sets(), kCompoundProjective);
  EXPECT_EQ(all.link_sets(), reference_trees(chain.grammar, chain.sentence, true));
  for (const auto& a : all.analyses) EXPECT_TRUE(a.heads_of(4).empty());
  // "the green", "the green house" and the whole phrase are each a single tree
  // at some point of the search.
  for (std::size_t k : {2u, 3u, 4u}) EXPECT_TRUE(all.stats.complete_prefixes.contains(k)) << k;
  // The search returns to a choice point inside every word after the first.
  for (WordIndex w : {2u, 3u, 4u}) EXPECT_GT(all.stats.backtracks_at[w], 0u) << w;

  auto free = parse_all(chain.grammar, chain.sentence, false);
  EXPECT_EQ(free.size(), 6u);
  EXPECT_EQ(free.link_sets(), reference_trees(chain.grammar, chain.sentence, false));
}

TEST(ParseAllTest, NullGrammarHasNoAnalyses) {
  for (std::size_t n = 2; n <= 6; ++n) {
    EXPECT_TRUE(parse_all(null_grammar(n), uniform_sentence(n), true).empty());
    EXPECT_TRUE(parse_all(null_grammar(n), uniform_sentence(n), false).empty());
  }
  EXPECT_EQ(parse_all(null_grammar(1), uniform_sentence(1), true).size(), 1u);
}

TEST(ParseAllTest, CountsUndoneLinks) {
  auto chain = worst_case_chain(4);
  auto all = parse_all(chain.grammar, chain.sentence, true);
  // Shared prefixes keep it under 5 * 3, but links undone on backtracking are
  // made again, so it exceeds the 6 distinct links used.
  std::set<Link> distinct;
  for (const auto& a : all.analyses) distinct.insert(a.links().begin(), a.links().end());
  EXPECT_EQ(distinct.size(), 6u);
  EXPECT_GT(all.stats.counter.link_operations, distinct.size());
  EXPECT_LT(all.stats.counter.link_operations, 15u);
  EXPECT_GT(all.stats.backtracks, 0u);
  EXPECT_EQ(all.stats.backtracks, all.stats.choice_points);
}

TEST(ParseFirstTest, TreeBackedProjectiveMatchesLsup) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + trial % 10;
    LinkSet t = random_projective_tree(n, rng);
    ASSERT_TRUE(oracle::projective(n, t));
    TreeBackedGrammar g(n, t);
    auto s = uniform_sentence(n);
    auto first = parse_first(g, s, true);
    ASSERT_EQ(first.backtracks, 0u);
    ASSERT_TRUE(first.unity);
    ASSERT_EQ(first.analysis, parse_lsup(g, s).analysis);
  }
}

TEST(ParseFirstTest, GreenHousePaintTakesTheEagerChain) {
  auto chain = worst_case_chain(4);
  auto first = parse_first(chain.grammar, chain.sentence, true);
  EXPECT_TRUE(first.unity);
  // Take-before-decline: each noun absorbs the phrase built so far.
  EXPECT_EQ(first.analysis.links(), (LinkSet{{2, 1}, {3, 2}, {4, 3}}));
  EXPECT_EQ(first.backtracks, 0u);
}

TEST(ParseFirstTest, NoAnalysisGivesPartialOutcome) {
  auto first = parse_first(null_grammar(2), uniform_sentence(2), true);
  EXPECT_FALSE(first.unity);
  EXPECT_TRUE(first.analysis.links().empty());
  EXPECT_EQ(first.analysis.size(), 2u);

  // Only 2 -> 1 is permitted, so no tree covers all three words.
  fixtures::MatrixGrammar none{3, std::vector<bool>(16, false)};
  none.allowed[2 * 4 + 1] = true;  // 2 heads 1
  auto partial = parse_first(none, uniform_sentence(3), true);
  EXPECT_FALSE(partial.unity);
  EXPECT_EQ(partial.analysis.links(), (LinkSet{{2, 1}}));
  EXPECT_EQ(partial.backtracks, 1u);
}

TEST(OracleEnumerateTest, Examples) {
  auto g = load_grammar(kG1);
  auto s = sentence_of(g, "the dog barks");
  auto e = oracle_enumerate(g, s, true);
  EXPECT_EQ(e.link_sets(), (std::set<LinkSet>{{{2, 1}, {3, 2}}}));

  EXPECT_TRUE(oracle_enumerate(null_grammar(3), uniform_sentence(3), true).empty());

  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 1 + trial % 7;
    LinkSet t = random_tree(n, rng);
    TreeBackedGrammar tg(n, t);
    bool proj = oracle::projective(n, t);
    ASSERT_EQ(oracle_enumerate(tg, uniform_sentence(n), proj).link_sets(),
              (std::set<LinkSet>{t}));
  }
}

TEST(OracleEnumerateTest, RefusesLongSentences) {
  try {
    oracle_enumerate(null_grammar(9), uniform_sentence(9), true);
    FAIL();
  } catch (const EnumerationLimitError& e) {
    EXPECT_EQ(e.bound, 8u);
    EXPECT_NE(std::string(e.what()).find("8"), std::string::npos);
  }
  EXPECT_NO_THROW(oracle_enumerate(null_grammar(9), uniform_sentence(9), true, 9));
}

TEST(OracleEnumerateTest, AgreesWithTestSideBruteForce) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + trial % 5;
    auto g = fixtures::random_matrix_grammar(n, 0.4, rng);
    auto s = uniform_sentence(n);
    for (bool p : {true, false}) {
      ASSERT_EQ(oracle_enumerate(g, s, p).link_sets(), reference_trees(g, s, p));
    }
  }
}

TEST(WorstCaseChainTest, Shape) {
  auto four = worst_case_chain(4);
  std::vector<std::string> forms;
  for (const auto& w : four.sentence.words()) forms.push_back(w.form);
  EXPECT_EQ(forms, (std::vector<std::string>{"the", "green", "house", "paint"}));
  EXPECT_EQ(four.grammar.lexicon(), (std::map<std::string, std::string>{
                                        {"the", "D"}, {"green", "N"}, {"house", "N"}, {"paint", "N"}}));
  EXPECT_EQ(four.grammar.rules(), (std::vector<LinkRule>{{"N", "D", Direction::kPre},
                                                         {"N", "N", Direction::kPre}}));
  EXPECT_THROW(worst_case_chain(1), InputError);

  auto two = worst_case_chain(2);
  EXPECT_EQ(parse_first(two.grammar, two.sentence, true).backtracks, 0u);

  auto links = [](std::size_t n) {
    auto c = worst_case_chain(n);
    return parse_first(c.grammar, c.sentence, true).stats.link_operations;
  };
  EXPECT_GT(links(8), links(4));
  for (std::size_t n = 2; n < 32; ++n) EXPECT_LT(links(n), links(n + 1)) << n;
}

// -------------------------------------------------------------------------
// Properties

TEST(AmbiguityPropertyTest, ParseAllEqualsOracleOnRandomRuleGrammars) {
  std::mt19937_64 rng(1965);
  for (int trial = 0; trial < 30; ++trial) {
    auto g = random_rule_grammar(3, 6, rng);
    for (std::size_t n = 1; n <= 4; ++n) {
      std::vector<std::string> forms(n);
      for (auto& f : forms) f = std::string(1, "abc"[rng() % 3]);
      auto s = g.make_sentence(forms);
      for (bool p : {true, false}) {
        auto all = parse_all(g, s, p);
        ASSERT_EQ(all.link_sets(), oracle_enumerate(g, s, p).link_sets());
        ASSERT_EQ(all.link_sets(), reference_trees(g, s, p));
        auto first = parse_first(g, s, p);
        if (all.empty()) {
          ASSERT_FALSE(first.unity);
        } else {
          ASSERT_TRUE(first.unity);
          ASSERT_TRUE(all.contains(first.analysis));
        }
      }
    }
  }
}

TEST(AmbiguityPropertyTest, ParseAllUnderAdversarialGrammars) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n = 1 + trial % 6;
    auto g = fixtures::random_matrix_grammar(n, 0.5, rng);
    auto s = uniform_sentence(n);
    for (bool p : {true, false}) {
      auto all = parse_all(g, s, p);
      for (const auto& a : all.analyses) {
        ASSERT_TRUE(check_unity(a));
        if (p) {
          ASSERT_TRUE(is_projective(a));
        }
      }
      ASSERT_EQ(all.link_sets(), reference_trees(g, s, p));
    }
  }
}

TEST(AmbiguityPropertyTest, TreeOracleDegeneracy) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n = 1 + trial % 9;
    LinkSet t = random_tree(n, rng);
    TreeBackedGrammar g(n, t);
    auto s = uniform_sentence(n);
    bool proj = oracle::projective(n, t);

    ASSERT_EQ(parse_all(g, s, false).link_sets(), (std::set<LinkSet>{t}));
    ASSERT_EQ(parse_first(g, s, false).backtracks, 0u);
    if (proj) {
      ASSERT_EQ(parse_all(g, s, true).link_sets(), (std::set<LinkSet>{t}));
      ASSERT_EQ(parse_first(g, s, true).backtracks, 0u);
    } else {
      ASSERT_TRUE(parse_all(g, s, true).empty());
    }
  }
}

}  // namespace
}  // namespace incdep
