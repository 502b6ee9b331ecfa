#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "hashlens/syntax.hpp"

using namespace hashlens;

namespace {

std::string row(int i, const std::string& lemma, const std::string& pos, int head, const std::string& rel) {
  return std::to_string(i) + "\t" + lemma + "\t" + lemma + "\t" + pos + "\t" + std::to_string(head) + "\t" + rel + "\n";
}

DependencyTree deal_with_anxiety() {
  return parse_conll("# tweet_id = 1\n" + row(1, "we", "PRON", 2, "nsubj") + row(2, "deal", "VERB", 0, "root") +
                     row(3, "with", "ADP", 2, "prep") + row(4, "anxiety", "NOUN", 3, "pobj"))
      .trees.at(0);
}

using Nouns = std::vector<std::pair<std::string, std::uint64_t>>;

}  // namespace

TEST_CASE("parse_conll reads blocks and skips invalid ones") {
  SUBCASE("single root verb") {
    const auto load = parse_conll("# tweet_id = 7\n" + row(1, "stay", "VERB", 0, "root"));
    REQUIRE(load.trees.size() == 1);
    CHECK(load.trees[0].tweet_id == "7");
    CHECK(load.trees[0].nodes[0].lemma == "stay");
    CHECK(load.diagnostics.empty());
  }
  SUBCASE("multiple roots") {
    const auto load = parse_conll("# tweet_id = 1\n" + row(1, "a", "VERB", 0, "root") + row(2, "b", "VERB", 0, "root"));
    CHECK(load.trees.empty());
    REQUIRE(load.diagnostics.size() == 1);
    CHECK(load.diagnostics[0].message.find("multiple roots") != std::string::npos);
  }
  SUBCASE("cycle") {
    const auto load = parse_conll("# tweet_id = 1\n" + row(1, "a", "NOUN", 2, "dep") + row(2, "b", "NOUN", 1, "dep"));
    CHECK(load.trees.empty());
    REQUIRE(load.diagnostics.size() == 1);
    CHECK(load.diagnostics[0].message.find("cycle") != std::string::npos);
  }
  SUBCASE("cycle below a root") {
    DependencyTree t{"x", {{1, "a", "a", "X", 0, "root"}, {2, "b", "b", "X", 3, "dep"}, {3, "c", "c", "X", 2, "dep"}}};
    CHECK(validate_tree(t) == "cycle");
  }
  SUBCASE("malformed column count skips only that block") {
    const auto load = parse_conll("# tweet_id = 1\n1\tonly\tthree\n\n# tweet_id = 2\n" + row(1, "go", "VERB", 0, "root"));
    REQUIRE(load.trees.size() == 1);
    CHECK(load.trees[0].tweet_id == "2");
    CHECK(load.diagnostics.size() == 1);
  }
  SUBCASE("full CoNLL-U rows with multiword tokens") {
    const auto load = parse_conll(
        "# tweet_id = 3\n"
        "1-2\tdon't\t_\t_\t_\t_\t_\t_\t_\t_\n"
        "1\tdo\tdo\tAUX\t_\t_\t3\taux\t_\t_\n"
        "2\tn't\tnot\tPART\t_\t_\t3\tadvmod\t_\t_\n"
        "3\tpanic\tpanic\tVERB\t_\t_\t0\troot\t_\t_\n");
    REQUIRE(load.trees.size() == 1);
    CHECK(load.trees[0].nodes.size() == 3);
    CHECK(load.trees[0].nodes[2].head == 0);
  }
  SUBCASE("missing file is fatal") {
    CHECK_THROWS_AS(load_parses("/nonexistent/parses.conllu"), IoError);
  }
}

TEST_CASE("validate_tree head checks") {
  CHECK(validate_tree({"x", {{1, "a", "a", "X", 1, "dep"}}}).find("own head") != std::string::npos);
  CHECK(validate_tree({"x", {{1, "a", "a", "X", 5, "dep"}}}).find("out of range") != std::string::npos);
  CHECK(validate_tree(deal_with_anxiety()).empty());
}

TEST_CASE("serialize_parses round-trips random valid trees") {
  std::mt19937_64 rng(53);
  const std::vector<std::string> pos = {"NOUN", "VERB", "PRON", "ADP", "PROPN"};
  const std::vector<std::string> rel = {"nsubj", "dobj", "prep", "pobj", "amod"};
  std::vector<DependencyTree> trees;
  for (int t = 0; t < 100; ++t) {
    DependencyTree tree;
    tree.tweet_id = "id" + std::to_string(t);
    const int n = std::uniform_int_distribution<int>(1, 12)(rng);
    const int root = std::uniform_int_distribution<int>(1, n)(rng);
    // Attach each node to an earlier node in a random order rooted at `root`.
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 1);
    std::shuffle(order.begin(), order.end(), rng);
    std::swap(*std::find(order.begin(), order.end(), root), order.front());
    std::vector<int> head(static_cast<std::size_t>(n + 1), 0);
    for (std::size_t k = 1; k < order.size(); ++k) {
      head[static_cast<std::size_t>(order[k])] = order[std::uniform_int_distribution<std::size_t>(0, k - 1)(rng)];
    }
    for (int i = 1; i <= n; ++i) {
      tree.nodes.push_back({i, "f" + std::to_string(i), "l" + std::to_string(i),
                            pos[std::uniform_int_distribution<std::size_t>(0, 4)(rng)],
                            head[static_cast<std::size_t>(i)],
                            i == root ? "root" : rel[std::uniform_int_distribution<std::size_t>(0, 4)(rng)]});
    }
    REQUIRE(validate_tree(tree).empty());
    trees.push_back(tree);
  }
  const auto text = serialize_parses(trees);
  const auto load = parse_conll(text);
  CHECK(load.diagnostics.empty());
  REQUIRE(load.trees.size() == trees.size());
  for (std::size_t i = 0; i < trees.size(); ++i) {
    CHECK(load.trees[i].tweet_id == trees[i].tweet_id);
    CHECK(load.trees[i].nodes == trees[i].nodes);
  }
  CHECK(serialize_parses(load.trees) == text);
}

TEST_CASE("verb_noun_pairs examples") {
  CHECK(verb_noun_pairs({deal_with_anxiety()}, "deal").nouns == Nouns{{"anxiety", 1}});
  const auto bare = parse_conll("# tweet_id = 1\n" + row(1, "we", "PRON", 2, "nsubj") + row(2, "buy", "VERB", 0, "root"));
  CHECK(verb_noun_pairs(bare.trees, "buy").nouns.empty());
  const auto buy = parse_conll("# tweet_id = 1\n" + row(1, "buy", "VERB", 0, "root") + row(2, "paper", "NOUN", 1, "dobj") +
                               "\n# tweet_id = 2\n" + row(1, "people", "NOUN", 2, "nsubj") +
                               row(2, "buy", "VERB", 0, "root") + row(3, "paper", "NOUN", 2, "dobj"));
  CHECK(verb_noun_pairs(buy.trees, "buy").nouns == Nouns{{"paper", 2}, {"people", 1}});
  CHECK(verb_noun_pairs(buy.trees, "absent").nouns.empty());
  CHECK(verb_noun_pairs(buy.trees, "BUY").verb == "buy");
}

TEST_CASE("universal relation labels and subtree mode") {
  const auto ud = parse_conll("# tweet_id = 1\n" + row(1, "we", "PRON", 2, "nsubj") + row(2, "deal", "VERB", 0, "root") +
                              row(3, "with", "ADP", 4, "case") + row(4, "anxiety", "NOUN", 2, "obl") +
                              row(5, "stress", "NOUN", 2, "obj"));
  CHECK(verb_noun_pairs(ud.trees, "deal", RelationConfig::universal()).nouns == Nouns{{"anxiety", 1}, {"stress", 1}});
  CHECK(verb_noun_pairs(ud.trees, "deal").nouns.empty());

  const auto deep = parse_conll("# tweet_id = 1\n" + row(1, "deal", "VERB", 0, "root") + row(2, "impact", "NOUN", 1, "dobj") +
                                row(3, "of", "ADP", 2, "prep") + row(4, "virus", "NOUN", 3, "pobj"));
  CHECK(verb_noun_pairs(deep.trees, "deal").nouns == Nouns{{"impact", 1}});
  RelationConfig subtree;
  subtree.whole_subtree = true;
  CHECK(verb_noun_pairs(deep.trees, "deal", subtree).nouns == Nouns{{"impact", 1}, {"virus", 1}});
}

TEST_CASE("distinctive_verbs removes verbs shared by every group") {
  const auto load = parse_conll(
      "# tweet_id = a1\n" + row(1, "close", "VERB", 0, "root") + row(2, "get", "VERB", 1, "xcomp") +
      "\n# tweet_id = a2\n" + row(1, "close", "VERB", 0, "root") + row(2, "teach", "VERB", 1, "conj") +
      "\n# tweet_id = b1\n" + row(1, "Buy", "VERB", 0, "root") + row(2, "get", "VERB", 1, "xcomp") +
      "\n# tweet_id = c1\n" + row(1, "get", "VERB", 0, "root"));
  REQUIRE(load.trees.size() == 4);
  const GroupedTrees groups = {{"school", {&load.trees[0], &load.trees[1]}},
                               {"buying", {&load.trees[2]}},
                               {"other", {&load.trees[3]}}};
  const auto profiles = distinctive_verbs(groups);
  REQUIRE(profiles.size() == 3);
  REQUIRE(profiles[0].verbs.size() == 2);
  CHECK(profiles[0].verbs[0].lemma == "close");
  CHECK(profiles[0].verbs[0].count == 2);
  CHECK(profiles[0].verbs[1].lemma == "teach");
  REQUIRE(profiles[1].verbs.size() == 1);
  CHECK(profiles[1].verbs[0].lemma == "buy");
  CHECK(profiles[2].verbs.empty());

  const auto single = distinctive_verbs({{"only", {&load.trees[0]}}});
  CHECK(single[0].verbs.size() == 2);
  CHECK(distinctive_verbs({{"empty", {}}})[0].verbs.empty());
}
