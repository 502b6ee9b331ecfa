#include "hashlens/syntax.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <sstream>

#include <fmt/format.h>

#include "hashlens/lexstats.hpp"

namespace hashlens {

namespace {

bool parse_int(std::string_view s, int& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

struct Block {
  std::size_t line = 0;
  std::string tweet_id;
  std::vector<std::pair<std::size_t, std::string>> rows;
};

std::string parse_block(const Block& block, DependencyTree& tree) {
  if (block.tweet_id.empty()) return "missing \"# tweet_id = \" comment";
  tree.tweet_id = block.tweet_id;
  for (const auto& [line_no, row] : block.rows) {
    const auto cols = split(row, '\t');
    DepNode node;
    std::string_view id_col = cols[0];
    std::string_view head_col;
    if (cols.size() == 6) {
      head_col = cols[4];
      node.rel = cols[5];
    } else if (cols.size() == 10) {
      if (id_col.find_first_of("-.") != std::string_view::npos) continue;
      head_col = cols[6];
      node.rel = cols[7];
    } else {
      return fmt::format("line {}: expected 6 or 10 tab-separated columns, found {}", line_no,
                         cols.size());
    }
    node.form = cols[1];
    node.lemma = cols[2];
    node.pos = cols[3];
    if (!parse_int(id_col, node.index)) return fmt::format("line {}: bad ID \"{}\"", line_no, id_col);
    if (!parse_int(head_col, node.head)) return fmt::format("line {}: bad HEAD \"{}\"", line_no, head_col);
    if (node.index != static_cast<int>(tree.nodes.size()) + 1) {
      return fmt::format("line {}: IDs must run 1..n in order", line_no);
    }
    tree.nodes.push_back(std::move(node));
  }
  if (tree.nodes.empty()) return "block has no token rows";
  return validate_tree(tree);
}

// Lower-case copy used for lemma comparisons.
std::string fold(std::string_view s) { return casefold(s); }

void rank_nouns(std::map<std::string, std::uint64_t>& counts, VerbNounTable& table) {
  table.nouns.assign(counts.begin(), counts.end());
  std::stable_sort(table.nouns.begin(), table.nouns.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
}

void collect_nouns(const DependencyTree& tree, const std::string& verb, const RelationConfig& config,
                   std::map<std::string, std::uint64_t>& counts) {
  auto is_noun = [&](const DepNode& n) { return config.noun_pos.count(n.pos) > 0; };
  for (const auto& v : tree.nodes) {
    if (v.pos != config.verb_pos || fold(v.lemma) != verb) continue;

    if (config.whole_subtree) {
      std::vector<int> stack{v.index};
      while (!stack.empty()) {
        const int at = stack.back();
        stack.pop_back();
        for (const auto* child : tree.children(at)) {
          if (is_noun(*child)) ++counts[fold(child->lemma)];
          stack.push_back(child->index);
        }
      }
      continue;
    }

    for (const auto* child : tree.children(v.index)) {
      if (config.direct.count(child->rel) && is_noun(*child)) {
        ++counts[fold(child->lemma)];
        continue;
      }
      if (config.prepositional == RelationConfig::Prepositional::PrepPobj) {
        if (child->rel != config.prep_rel) continue;
        for (const auto* grandchild : tree.children(child->index)) {
          if (grandchild->rel == config.pobj_rel && is_noun(*grandchild)) {
            assert(grandchild->head == child->index && child->head == v.index);
            ++counts[fold(grandchild->lemma)];
          }
        }
      } else if (child->rel == config.prep_rel && is_noun(*child)) {
        const auto grandchildren = tree.children(child->index);
        const bool has_case = std::any_of(grandchildren.begin(), grandchildren.end(),
                                          [&](const DepNode* g) { return g->rel == config.pobj_rel; });
        if (has_case) ++counts[fold(child->lemma)];
      }
    }
  }
}

}  // namespace

std::vector<const DepNode*> DependencyTree::children(int index) const {
  std::vector<const DepNode*> out;
  for (const auto& n : nodes) {
    if (n.head == index) out.push_back(&n);
  }
  return out;
}

std::string validate_tree(const DependencyTree& tree) {
  const int n = static_cast<int>(tree.nodes.size());
  if (n == 0) return "empty tree";
  int roots = 0;
  for (int i = 0; i < n; ++i) {
    const auto& node = tree.nodes[static_cast<std::size_t>(i)];
    if (node.index != i + 1) return fmt::format("node {} has index {}", i + 1, node.index);
    if (node.head < 0 || node.head > n) return fmt::format("node {} head {} out of range", node.index, node.head);
    if (node.head == node.index) return fmt::format("node {} is its own head", node.index);
    if (node.head == 0) ++roots;
  }
  if (roots > 1) return "multiple roots";
  // every node must reach the root within n steps; a rootless tree always
  // contains a cycle, which is the more useful report
  for (int i = 1; i <= n; ++i) {
    int at = i;
    int steps = 0;
    while (at != 0) {
      if (++steps > n) return "cycle";
      at = tree.nodes[static_cast<std::size_t>(at - 1)].head;
    }
  }
  if (roots == 0) return "no root";
  return {};
}

ParseLoad parse_conll(std::string_view text) {
  ParseLoad result;
  std::vector<Block> blocks;
  Block current;
  bool open = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  auto close = [&] {
    if (open) blocks.push_back(std::move(current));
    current = Block{};
    open = false;
  };
  while (pos <= text.size()) {
    const auto end = text.find('\n', pos);
    std::string_view line = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
    pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim(line).empty()) {
      close();
      continue;
    }
    if (!open) {
      current.line = line_no;
      open = true;
    }
    if (line.front() == '#') {
      auto body = trim(line.substr(1));
      constexpr std::string_view key = "tweet_id";
      if (body.substr(0, key.size()) == key) {
        auto rest = trim(body.substr(key.size()));
        if (!rest.empty() && rest.front() == '=') current.tweet_id = std::string(trim(rest.substr(1)));
      }
      continue;
    }
    current.rows.emplace_back(line_no, std::string(line));
  }
  close();

  for (const auto& block : blocks) {
    DependencyTree tree;
    const auto problem = parse_block(block, tree);
    if (!problem.empty()) {
      result.diagnostics.push_back(
          {block.line, fmt::format("tweet \"{}\": {}, block skipped", block.tweet_id, problem)});
      continue;
    }
    result.trees.push_back(std::move(tree));
  }
  return result;
}

ParseLoad load_parses(const std::filesystem::path& path) { return parse_conll(read_file(path)); }

std::string serialize_parses(const std::vector<DependencyTree>& trees) {
  std::string out;
  for (std::size_t t = 0; t < trees.size(); ++t) {
    if (t) out += '\n';
    out += "# tweet_id = " + trees[t].tweet_id + "\n";
    for (const auto& n : trees[t].nodes) {
      out += fmt::format("{}\t{}\t{}\t{}\t{}\t{}\n", n.index, n.form, n.lemma, n.pos, n.head, n.rel);
    }
  }
  return out;
}

std::vector<VerbProfile> distinctive_verbs(const GroupedTrees& groups, std::size_t n) {
  std::vector<std::pair<std::string, TermCounts>> docs;
  for (const auto& [category, trees] : groups) {
    TermCounts verbs;
    for (const auto* tree : trees) {
      for (const auto& node : tree->nodes) {
        if (node.pos == "VERB" && !node.lemma.empty()) ++verbs[fold(node.lemma)];
      }
    }
    docs.emplace_back(category, std::move(verbs));
  }
  const auto scores = tfidf(docs, /*single_group_smoothing=*/true);

  std::vector<VerbProfile> profiles;
  for (const auto& [category, verbs] : docs) {
    VerbProfile profile{category, {}};
    for (const auto& [lemma, count] : verbs) {
      const double score = scores.at({category, lemma});
      if (score > 0.0) profile.verbs.push_back({lemma, count, score});
    }
    std::stable_sort(profile.verbs.begin(), profile.verbs.end(),
                     [](const VerbScore& a, const VerbScore& b) { return a.count > b.count; });
    if (profile.verbs.size() > n) profile.verbs.resize(n);
    profiles.push_back(std::move(profile));
  }
  return profiles;
}

RelationConfig RelationConfig::universal() {
  RelationConfig c;
  c.direct = {"nsubj", "obj"};
  c.prepositional = Prepositional::OblCase;
  c.prep_rel = "obl";
  c.pobj_rel = "case";
  return c;
}

VerbNounTable verb_noun_pairs(const std::vector<const DependencyTree*>& trees,
                              const std::string& verb_lemma, const RelationConfig& config) {
  VerbNounTable table;
  table.verb = fold(verb_lemma);
  std::map<std::string, std::uint64_t> counts;
  for (const auto* tree : trees) collect_nouns(*tree, table.verb, config, counts);
  rank_nouns(counts, table);
  return table;
}

VerbNounTable verb_noun_pairs(const std::vector<DependencyTree>& trees, const std::string& verb_lemma,
                              const RelationConfig& config) {
  std::vector<const DependencyTree*> ptrs;
  ptrs.reserve(trees.size());
  for (const auto& t : trees) ptrs.push_back(&t);
  return verb_noun_pairs(ptrs, verb_lemma, config);
}

}  // namespace hashlens
