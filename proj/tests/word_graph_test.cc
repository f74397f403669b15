// word_graph_test.cc -- node mapping stages, tie-breaks, synonym mapping,
// hand-computed edge weights, density and the digraph export.

#include "msc/word_graph.hpp"

#include <gtest/gtest.h>

#include <string>
#include <vector>

namespace {

using msc::BuildOptions;
using msc::Cluster;
using msc::LexiconSet;
using msc::parse_cluster_text;
using msc::SynonymMember;
using msc::SynonymSets;
using msc::WordGraph;

WordGraph build(const std::string& text, const LexiconSet& lex = {},
                const BuildOptions& opts = {}) {
  return WordGraph::build(parse_cluster_text(text, "t"), lex, opts);
}

int only_node(const WordGraph& g, const std::string& key,
              const std::string& pos) {
  auto ids = g.find_nodes(key, pos);
  EXPECT_EQ(ids.size(), 1u) << key << "/" << pos;
  return ids.empty() ? -1 : ids.front();
}

TEST(WordGraphTest, SingleSentenceIsAChain) {
  WordGraph g = build("The:DT cat:NN sat:VBD\n");
  EXPECT_EQ(g.size(), 5);
  EXPECT_EQ(g.edge_count(), 4);
  int the = only_node(g, "the", "DT");
  int cat = only_node(g, "cat", "NN");
  int sat = only_node(g, "sat", "VBD");
  EXPECT_TRUE(g.has_edge(WordGraph::kStart, the));
  EXPECT_TRUE(g.has_edge(the, cat));
  EXPECT_TRUE(g.has_edge(cat, sat));
  EXPECT_TRUE(g.has_edge(sat, WordGraph::kEnd));
  EXPECT_EQ(g.node(cat).mappings,
            (std::vector<std::pair<int, int>>{{1, 2}}));
}

TEST(WordGraphTest, SameWordAndTagShareANode) {
  WordGraph g = build(
      "boys:NNS eat:VBP food:NN\n"
      "girls:NNS eat:VBP food:NN\n");
  int eat = only_node(g, "eat", "VBP");
  EXPECT_EQ(g.freq(eat), 2);
  EXPECT_EQ(g.node(eat).mappings,
            (std::vector<std::pair<int, int>>{{1, 2}, {2, 2}}));
  // Same word under a different tag is a different node.
  WordGraph h = build(
      "they:PRP run:VBP\n"
      "the:DT run:NN\n");
  EXPECT_EQ(h.find_nodes("run", "VBP").size(), 1u);
  EXPECT_EQ(h.find_nodes("run", "NN").size(), 1u);
}

TEST(WordGraphTest, RepeatedWordInOneSentenceSplitsNodes) {
  WordGraph g = build("sales:NNS beat:VBD sales:NNS\n");
  EXPECT_EQ(g.find_nodes("sales", "NNS").size(), 2u);
  // A later sentence has both nodes to choose from; with equal context
  // overlap the higher-frequency node wins, then creation order.
  WordGraph h = build(
      "b:NN\n"
      "b:NN b:NN\n"
      "x:JJ b:NN y:JJ\n");
  auto ids = h.find_nodes("b", "NN");
  ASSERT_EQ(ids.size(), 2u);
  EXPECT_EQ(h.freq(ids[0]), 3);  // s1, s2 first token, s3 (freq tie-break)
  EXPECT_EQ(h.freq(ids[1]), 1);
  EXPECT_EQ(h.node(ids[0]).mappings,
            (std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {3, 2}}));
}

TEST(WordGraphTest, ContextOverlapBreaksMappingTies) {
  // Sentence 1 creates two "sales" nodes; in sentence 2 the one whose
  // neighbours (as ... fell) match wins even though frequencies tie.
  WordGraph g = build(
      "sales:NNS rose:VBD as:IN sales:NNS fell:VBD\n"
      "as:IN sales:NNS fell:VBD\n");
  auto ids = g.find_nodes("sales", "NNS");
  ASSERT_EQ(ids.size(), 2u);
  const msc::GraphNode& second = g.node(ids[1]);
  EXPECT_EQ(second.mappings,
            (std::vector<std::pair<int, int>>{{1, 4}, {2, 2}}));
  EXPECT_EQ(g.node(ids[0]).mappings,
            (std::vector<std::pair<int, int>>{{1, 1}}));
}

TEST(WordGraphTest, StopwordsOnlyMergeOnExactMatch) {
  SynonymSets syns;
  syns.add_group({SynonymMember{"the", "DT"}, SynonymMember{"a", "DT"}});
  LexiconSet lex;
  lex.stopwords = msc::StopwordList::from_words({"the", "a"});
  lex.synonyms = syns;
  WordGraph g = build(
      "the:DT cat:NN\n"
      "a:DT cat:NN\n",
      lex);
  // Despite the synonym set, the stopword "a" must not map onto "the".
  EXPECT_EQ(g.find_nodes("the", "DT").size(), 1u);
  EXPECT_EQ(g.find_nodes("a", "DT").size(), 1u);
  EXPECT_TRUE(g.node(only_node(g, "a", "DT")).synonym_members.empty());
}

TEST(WordGraphTest, SynonymMappingAbsorbsNonStopwords) {
  LexiconSet lex;
  lex.synonyms.add_group(
      {SynonymMember{"teenage", "JJ"}, SynonymMember{"young", "JJ"}});
  WordGraph g = build(
      "teenage:JJ boys:NNS\n"
      "young:JJ girls:NNS\n",
      lex);
  int teen = only_node(g, "teenage", "JJ");
  EXPECT_EQ(g.freq(teen), 2);
  EXPECT_TRUE(g.find_nodes("young", "JJ").empty());
  ASSERT_EQ(g.node(teen).synonym_members.size(), 1u);
  EXPECT_EQ(g.node(teen).synonym_members.at("young"), 1);
  EXPECT_EQ(g.node(teen).label, "teenage");

  BuildOptions off;
  off.enable_synonym_mapping = false;
  WordGraph h = build(
      "teenage:JJ boys:NNS\n"
      "young:JJ girls:NNS\n",
      lex, off);
  EXPECT_EQ(h.find_nodes("young", "JJ").size(), 1u);
  EXPECT_EQ(h.freq(only_node(h, "teenage", "JJ")), 1);
}

TEST(WordGraphTest, MweMergeAndSynonymSubstitutionFeedTheGraph) {
  LexiconSet lex;
  lex.mwes.add(msc::MweEntry{{"junk", "food"}, {}, "NN"});
  lex.mwes.add(msc::MweEntry{{"fast", "food"}, {}, "NN"});
  lex.synonyms.add_group(
      {SynonymMember{"junk-food", "NN"}, SynonymMember{"fast-food", "NN"}});
  WordGraph g = build(
      "boys:NNS like:VBP junk:NN food:NN\n"
      "girls:NNS like:VBP fast:JJ food:NN\n",
      lex);
  int jf = only_node(g, "junk-food", "NN");
  EXPECT_EQ(g.freq(jf), 2);
  EXPECT_EQ(g.node(jf).word_count, 2);
  EXPECT_EQ(g.node(jf).synonym_members.at("fast-food"), 1);
  EXPECT_TRUE(g.find_nodes("fast-food", "NN").empty());
  EXPECT_TRUE(g.find_nodes("food", "NN").empty());

  BuildOptions off;
  off.enable_mwe_merging = false;
  WordGraph h = build(
      "boys:NNS like:VBP junk:NN food:NN\n"
      "girls:NNS like:VBP fast:JJ food:NN\n",
      lex, off);
  EXPECT_TRUE(h.find_nodes("junk-food", "NN").empty());
  EXPECT_EQ(h.find_nodes("food", "NN").size(), 1u);
  EXPECT_EQ(h.freq(only_node(h, "food", "NN")), 2);
}

TEST(WordGraphTest, SynonymMappingMayShareANodeWithinOneSentence) {
  // The claim rule keeps a repeated word on distinct nodes; a synonym is a
  // different word, so "auto" may join the node "car" claimed earlier in
  // the same sentence as long as the two are not adjacent.
  LexiconSet lex;
  lex.stopwords = msc::StopwordList::from_words({"the", "an"});
  lex.synonyms.add_group(
      {SynonymMember{"car", "NN"}, SynonymMember{"auto", "NN"}});
  WordGraph g = build("the:DT car:NN overtook:VBD an:DT auto:NN\n", lex);
  int car = only_node(g, "car", "NN");
  EXPECT_EQ(g.freq(car), 2);
  EXPECT_TRUE(g.find_nodes("auto", "NN").empty());
  EXPECT_EQ(g.node(car).synonym_members.at("auto"), 1);
  ASSERT_EQ(g.node(car).mappings.size(), 2u);
  EXPECT_EQ(g.node(car).mappings[0], (std::pair<int, int>(1, 2)));
  EXPECT_EQ(g.node(car).mappings[1], (std::pair<int, int>(1, 5)));
}

TEST(WordGraphTest, AdjacentSynonymsNeverFoldIntoASelfLoop) {
  LexiconSet lex;
  lex.synonyms.add_group(
      {SynonymMember{"car", "NN"}, SynonymMember{"auto", "NN"}});
  WordGraph g = build("car:NN auto:NN crashed:VBD\n", lex);
  int car = only_node(g, "car", "NN");
  int aut = only_node(g, "auto", "NN");
  EXPECT_EQ(g.freq(car), 1);
  EXPECT_EQ(g.freq(aut), 1);
  EXPECT_FALSE(g.has_edge(car, car));
  EXPECT_TRUE(g.has_edge(car, aut));
}

TEST(WordGraphTest, HandComputedEdgeWeights) {
  // s1: a b         offsets: a=1 b=2, length 2
  // s2: a c b       offsets: a=1 c=2 b=3, length 3
  WordGraph g = build(
      "a:NN b:NN\n"
      "a:NN c:NN b:NN\n");
  int a = only_node(g, "a", "NN");
  int b = only_node(g, "b", "NN");
  int c = only_node(g, "c", "NN");
  // a -> b: freq 2 and 2; diffs 1 (s1) and 2 (s2).
  EXPECT_DOUBLE_EQ(g.edge_weight(a, b),
                   ((2.0 + 2.0) / (1.0 / 1.0 + 1.0 / 2.0)) / (2.0 * 2.0));
  // start -> a: the boundary nodes count every sentence.
  EXPECT_DOUBLE_EQ(g.edge_weight(WordGraph::kStart, a),
                   ((2.0 + 2.0) / (1.0 + 1.0)) / (2.0 * 2.0));
  // a -> c exists only in s2: freqs 2 and 1, one diff of 1.
  EXPECT_DOUBLE_EQ(g.edge_weight(a, c),
                   ((2.0 + 1.0) / 1.0) / (2.0 * 1.0));
  // c -> b likewise.
  EXPECT_DOUBLE_EQ(g.edge_weight(c, b),
                   ((1.0 + 2.0) / 1.0) / (1.0 * 2.0));
  EXPECT_THROW(g.edge_weight(b, a), std::invalid_argument);
}

TEST(WordGraphTest, LowerWeightMeansStrongerLink) {
  // "b" follows "a" immediately in both sentences; "c" follows "a"
  // immediately once and at distance 3 once. The stretched support makes
  // the a->c edge more expensive.
  WordGraph g = build(
      "a:NN b:NN\n"
      "a:NN b:NN\n");
  WordGraph h = build(
      "a:NN c:NN\n"
      "a:NN x:NN y:NN c:NN\n");
  double ab = g.edge_weight(only_node(g, "a", "NN"), only_node(g, "b", "NN"));
  double ac = h.edge_weight(only_node(h, "a", "NN"), only_node(h, "c", "NN"));
  EXPECT_DOUBLE_EQ(ab, ((2.0 + 2.0) / (1.0 + 1.0)) / (2.0 * 2.0));
  EXPECT_DOUBLE_EQ(ac, ((2.0 + 2.0) / (1.0 / 1.0 + 1.0 / 3.0)) / (2.0 * 2.0));
  EXPECT_LT(ab, ac);
}

TEST(WordGraphTest, DensityCountsBoundaryNodes) {
  WordGraph g = build(
      "a:NN b:NN\n"
      "a:NN c:NN b:NN\n");
  // V = 5 (start, end, a, b, c); E = start->a, a->b, a->c, c->b, b->end.
  EXPECT_EQ(g.size(), 5);
  EXPECT_EQ(g.edge_count(), 5);
  EXPECT_DOUBLE_EQ(g.density(), 5.0 / (5.0 * 4.0));
}

TEST(WordGraphTest, FrequencyConservation) {
  // Without synonym mapping, total node frequency equals total token count
  // and each sentence is recoverable from the mappings.
  std::string text =
      "the:DT tired:JJ boys:NNS eat:VBP the:DT food:NN\n"
      "the:DT girls:NNS eat:VBP food:NN quickly:RB\n"
      "food:NN is:VBZ eaten:VBN by:IN the:DT boys:NNS\n";
  Cluster cluster = parse_cluster_text(text, "t");
  LexiconSet lex;
  lex.stopwords = msc::StopwordList::from_words({"the", "by", "is"});
  WordGraph g = WordGraph::build(cluster, lex);
  long total_tokens = 0;
  for (const auto& s : cluster.sentences) total_tokens += s.length();
  long total_freq = 0;
  for (int id = 2; id < g.size(); ++id) total_freq += g.freq(id);
  EXPECT_EQ(total_freq, total_tokens);
  for (const auto& sent : cluster.sentences) {
    std::vector<std::string> got(sent.tokens.size());
    for (int id = 2; id < g.size(); ++id)
      for (const auto& [sid, pid] : g.node(id).mappings)
        if (sid == sent.sid) {
          ASSERT_TRUE(got[static_cast<std::size_t>(pid - 1)].empty());
          got[static_cast<std::size_t>(pid - 1)] = g.node(id).key;
        }
    for (std::size_t i = 0; i < sent.tokens.size(); ++i)
      EXPECT_EQ(got[i], sent.tokens[i].key()) << "sid " << sent.sid;
  }
}

TEST(WordGraphTest, DigraphExportCarriesWeightsAndPayloads) {
  WordGraph g = build(
      "a:NN b:NN\n"
      "a:NN c:NN b:NN\n");
  msc::WeightedDigraph d = g.to_digraph();
  EXPECT_EQ(d.size(), g.size());
  EXPECT_EQ(d.edge_count(), g.edge_count());
  for (int u = 0; u < g.size(); ++u)
    for (int v : g.successors(u)) {
      EXPECT_TRUE(d.has_edge(u, v));
      EXPECT_DOUBLE_EQ(d.weight(u, v), g.edge_weight(u, v));
    }
  int a = only_node(g, "a", "NN");
  EXPECT_EQ(d.node(a).label, "a");
  EXPECT_EQ(d.node(a).pos, "NN");
}

TEST(WordGraphTest, DumpIsDeterministic) {
  std::string text =
      "b:NN a:NN\n"
      "a:NN b:NN\n";
  WordGraph g1 = build(text);
  WordGraph g2 = build(text);
  EXPECT_EQ(g1.dump(), g2.dump());
  std::string dump = g1.dump();
  EXPECT_NE(dump.find("nodes 4 edges"), std::string::npos);
  EXPECT_NE(dump.find("node a/NN freq=2 mapped=[(1,2),(2,1)]"),
            std::string::npos);
  EXPECT_NE(dump.find("edge a/NN -> b/NN"), std::string::npos);
  // Node section is sorted by key: "a" precedes "b".
  EXPECT_LT(dump.find("node a/NN"), dump.find("node b/NN"));
}

TEST(WordGraphTest, RejectsDegenerateInput) {
  EXPECT_THROW(
      WordGraph::from_sentences({}, SynonymSets{}, true),
      std::invalid_argument);
  msc::TaggedSentence empty;
  empty.sid = 1;
  EXPECT_THROW(WordGraph::from_sentences({empty}, SynonymSets{}, true),
               std::invalid_argument);
}

}  // namespace
