// pipeline.hpp -- end-to-end compression of one sentence cluster: graph
// construction, path search, filtering, scoring and final ranking.

#ifndef MSC_PIPELINE_HPP
#define MSC_PIPELINE_HPP

#include <set>
#include <string>
#include <vector>

#include "msc/corpus.hpp"
#include "msc/lexicon.hpp"
#include "msc/pathfinder.hpp"
#include "msc/pos_lm.hpp"
#include "msc/reranker.hpp"
#include "msc/textrank.hpp"
#include "msc/word_graph.hpp"

namespace msc {

struct PipelineOptions {
  std::size_t k = 150;  // shortest paths drawn from the graph
  double mu = 0.4;      // informativity weight in the final score
  int min_words = 8;    // shortest admissible compression, in surface words
  std::set<std::string> verb_tags = default_verb_tags();
  TextRankOptions textrank;
  BuildOptions graph;
};

inline constexpr int kDefaultLmOrder = 7;

struct PipelineResult {
  RankedOutput ranking;  // every surviving candidate, best first
  double density = 0.0;
  double ratio = 0.0;  // best candidate words / mean input sentence words
  int paths_found = 0;
  int paths_kept = 0;
  std::vector<TaggedSentence> preprocessed;

  const CompressionCandidate& best() const {
    return ranking.best().candidate;
  }
};

inline PipelineResult compress_cluster(const Cluster& cluster,
                                       const LexiconSet& lexicons,
                                       const PosLanguageModel& lm,
                                       const PipelineOptions& opts = {}) {
  PipelineResult result;

  PreprocessOptions popts;
  popts.merge_mwes = opts.graph.enable_mwe_merging;
  popts.substitute_mwe_synonyms =
      opts.graph.enable_mwe_merging && opts.graph.enable_synonym_mapping;
  result.preprocessed = preprocess_cluster(cluster, lexicons, popts);

  WordGraph graph = WordGraph::from_sentences(
      result.preprocessed, lexicons.synonyms,
      opts.graph.enable_synonym_mapping);
  result.density = graph.density();

  WeightedDigraph digraph = graph.to_digraph();
  std::vector<GraphPath> paths = k_shortest_paths(digraph, opts.k);
  result.paths_found = static_cast<int>(paths.size());

  std::vector<CompressionCandidate> candidates = filter_candidates(
      to_candidates(digraph, paths), opts.min_words, opts.verb_tags);
  result.paths_kept = static_cast<int>(candidates.size());
  if (candidates.empty()) throw NoCompressionError(cluster.id);

  SalienceTable salience =
      compute_salience(result.preprocessed, opts.textrank);
  for (CompressionCandidate& c : candidates) {
    c.informativity_cost = informativity_cost(c, salience);
    c.lm_score = lm.grammaticality(c.pos_tags());
  }

  result.ranking = final_rank(std::move(candidates), opts.mu, cluster.id);
  result.ratio = compression_ratio(result.best().word_count, cluster);
  return result;
}

}  // namespace msc

#endif  // MSC_PIPELINE_HPP
