#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hashlens/text_util.hpp"

namespace hashlens {

struct DepNode {
  int index = 0;  // 1-based
  std::string form;
  std::string lemma;
  std::string pos;
  int head = 0;  // 0 = root
  std::string rel;

  friend bool operator==(const DepNode&, const DepNode&) = default;
};

struct DependencyTree {
  std::string tweet_id;
  std::vector<DepNode> nodes;

  /// Children of node `index` (0 for the virtual root), in index order.
  std::vector<const DepNode*> children(int index) const;
  const DepNode& node(int index) const { return nodes.at(static_cast<std::size_t>(index - 1)); }
};

/// Empty string when the tree is well formed, otherwise the reason:
/// "multiple roots", "no root", "cycle", ...
std::string validate_tree(const DependencyTree& tree);

struct ParseLoad {
  std::vector<DependencyTree> trees;
  std::vector<Diagnostic> diagnostics;
};

/// Blank-line separated blocks, each introduced by "# tweet_id = <id>" and
/// holding tab-separated ID FORM LEMMA UPOS HEAD DEPREL rows. Full 10-column
/// CoNLL-U rows are accepted too (multiword and empty-node rows are
/// skipped). Invalid blocks are reported and skipped.
ParseLoad parse_conll(std::string_view text);
ParseLoad load_parses(const std::filesystem::path& path);

/// Writes the 6-column block format read by parse_conll.
std::string serialize_parses(const std::vector<DependencyTree>& trees);

struct VerbScore {
  std::string lemma;
  std::uint64_t count = 0;
  double tfidf = 0.0;
};

struct VerbProfile {
  std::string category;
  std::vector<VerbScore> verbs;
};

using GroupedTrees = std::vector<std::pair<std::string, std::vector<const DependencyTree*>>>;

/// Verbs (POS VERB, casefolded lemma) of each group that survive tf-idf
/// over group pseudo-documents, ranked by in-group count then lemma.
/// A lone group keeps every verb.
std::vector<VerbProfile> distinctive_verbs(const GroupedTrees& groups, std::size_t n = 10);

struct RelationConfig {
  enum class Prepositional { PrepPobj, OblCase };

  std::set<std::string> direct = {"nsubj", "dobj"};
  Prepositional prepositional = Prepositional::PrepPobj;
  std::string prep_rel = "prep";  // PrepPobj: verb -prep-> P -pobj-> noun
  std::string pobj_rel = "pobj";  // OblCase:  verb -obl-> noun -case-> P
  std::set<std::string> noun_pos = {"NOUN", "PROPN"};
  std::string verb_pos = "VERB";
  bool whole_subtree = false;  // every noun below the verb, any relation

  /// ClearNLP / spaCy labels: nsubj, dobj, prep + pobj.
  static RelationConfig clear_style() { return {}; }
  /// Universal Dependencies labels: nsubj, obj, obl + case.
  static RelationConfig universal();
};

struct VerbNounTable {
  std::string verb;
  std::vector<std::pair<std::string, std::uint64_t>> nouns;  // count desc, lemma asc
};

VerbNounTable verb_noun_pairs(const std::vector<DependencyTree>& trees, const std::string& verb_lemma,
                              const RelationConfig& config = {});

VerbNounTable verb_noun_pairs(const std::vector<const DependencyTree*>& trees,
                              const std::string& verb_lemma, const RelationConfig& config = {});

}  // namespace hashlens
