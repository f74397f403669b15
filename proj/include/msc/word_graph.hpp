// word_graph.hpp -- the compression word graph: node mapping, edge weights,
// density, and export to a plain weighted digraph for path search.

#ifndef MSC_WORD_GRAPH_HPP
#define MSC_WORD_GRAPH_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "msc/corpus.hpp"
#include "msc/lexicon.hpp"

namespace msc {

// ---------------------------------------------------------------------------
// Plain weighted digraph handed to the path finder. Node 0 is the source,
// node 1 the sink; both carry empty labels of zero word count.

struct DigraphNode {
  std::string label;  // display form
  std::string key;    // lowercase form
  std::string pos;
  int word_count = 1;
  bool is_stop = false;
};

class WeightedDigraph {
 public:
  static constexpr int kStart = 0;
  static constexpr int kEnd = 1;

  WeightedDigraph() {
    nodes_.push_back(DigraphNode{"<start>", "<start>", "", 0, true});
    nodes_.push_back(DigraphNode{"<end>", "<end>", "", 0, true});
    out_.resize(2);
    in_.resize(2);
  }

  int add_node(DigraphNode n) {
    nodes_.push_back(std::move(n));
    out_.emplace_back();
    in_.emplace_back();
    return static_cast<int>(nodes_.size()) - 1;
  }

  void add_edge(int u, int v, double w) {
    check(u);
    check(v);
    if (u == v) throw std::invalid_argument("self loops are not allowed");
    if (v == kStart) throw std::invalid_argument("edge into the source");
    if (u == kEnd) throw std::invalid_argument("edge out of the sink");
    if (!(w > 0.0) || !std::isfinite(w))
      throw std::invalid_argument("edge weights must be finite and positive");
    out_[static_cast<std::size_t>(u)][v] = w;
    in_[static_cast<std::size_t>(v)].insert(u);
  }

  int size() const { return static_cast<int>(nodes_.size()); }
  int edge_count() const {
    int m = 0;
    for (const auto& a : out_) m += static_cast<int>(a.size());
    return m;
  }
  const DigraphNode& node(int id) const {
    check(id);
    return nodes_[static_cast<std::size_t>(id)];
  }
  const std::map<int, double>& out(int u) const {
    check(u);
    return out_[static_cast<std::size_t>(u)];
  }
  const std::set<int>& in(int v) const {
    check(v);
    return in_[static_cast<std::size_t>(v)];
  }
  bool has_edge(int u, int v) const {
    check(u);
    check(v);
    return out_[static_cast<std::size_t>(u)].count(v) > 0;
  }
  double weight(int u, int v) const {
    auto it = out_[static_cast<std::size_t>(u)].find(v);
    if (it == out_[static_cast<std::size_t>(u)].end())
      throw std::invalid_argument("no such edge");
    return it->second;
  }

 private:
  void check(int id) const {
    if (id < 0 || id >= size()) throw std::out_of_range("node id out of range");
  }

  std::vector<DigraphNode> nodes_;
  std::vector<std::map<int, double>> out_;
  std::vector<std::set<int>> in_;
};

// ---------------------------------------------------------------------------
// Word graph

struct GraphNode {
  int id = 0;
  std::string label;  // surface of the first token mapped here
  std::string key;    // lowercase label
  std::string pos;
  int word_count = 1;
  bool is_stop = false;
  // (sid, pid): sentence id and 1-based token offset, both post-merge.
  std::vector<std::pair<int, int>> mappings;
  // Lowercased surfaces absorbed through synonym mapping, with counts.
  std::map<std::string, int> synonym_members;

  int freq() const { return static_cast<int>(mappings.size()); }
};

struct BuildOptions {
  bool enable_mwe_merging = true;
  bool enable_synonym_mapping = true;
};

class WordGraph {
 public:
  static constexpr int kStart = 0;
  static constexpr int kEnd = 1;

  // Sentences must be pre-processed (stems, stopword flags, MWEs merged).
  static WordGraph from_sentences(const std::vector<TaggedSentence>& sentences,
                                  const SynonymSets& synonyms,
                                  bool enable_synonym_mapping = true) {
    if (sentences.empty())
      throw std::invalid_argument("cannot build a graph from zero sentences");
    WordGraph g;
    g.n_sentences_ = static_cast<int>(sentences.size());
    g.synonyms_enabled_ = enable_synonym_mapping;
    for (const TaggedSentence& sent : sentences) {
      if (sent.tokens.empty())
        throw std::invalid_argument("cannot add an empty sentence");
      g.map_sentence(sent, synonyms);
    }
    return g;
  }

  static WordGraph build(const Cluster& cluster, const LexiconSet& lex,
                         const BuildOptions& opts = {}) {
    PreprocessOptions popts;
    popts.merge_mwes = opts.enable_mwe_merging;
    popts.substitute_mwe_synonyms =
        opts.enable_mwe_merging && opts.enable_synonym_mapping;
    return from_sentences(preprocess_cluster(cluster, lex, popts),
                          lex.synonyms, opts.enable_synonym_mapping);
  }

  int size() const { return static_cast<int>(nodes_.size()); }
  int edge_count() const {
    int m = 0;
    for (const auto& s : out_) m += static_cast<int>(s.size());
    return m;
  }
  int sentence_count() const { return n_sentences_; }
  const GraphNode& node(int id) const {
    return nodes_[static_cast<std::size_t>(id)];
  }
  const std::set<int>& successors(int id) const {
    return out_[static_cast<std::size_t>(id)];
  }
  const std::set<int>& predecessors(int id) const {
    return in_[static_cast<std::size_t>(id)];
  }
  bool has_edge(int u, int v) const {
    return out_[static_cast<std::size_t>(u)].count(v) > 0;
  }

  // All nodes carrying this lowercase form + tag, in creation order.
  std::vector<int> find_nodes(std::string_view key, std::string_view pos) const {
    auto it = index_.find(identity(std::string(key), std::string(pos)));
    if (it == index_.end()) return {};
    return it->second;
  }

  // Frequency used by the weight formula: word nodes count their mapped
  // tokens; the boundary nodes count every sentence.
  int freq(int id) const {
    if (id == kStart || id == kEnd) return n_sentences_;
    return nodes_[static_cast<std::size_t>(id)].freq();
  }

  // Inverse-frequency-and-distance weight; lower means a better edge.
  //
  //   w'(e) = (freq(i) + freq(j)) / sum_s diff(s, i, j)^-1
  //   w(e)  = w'(e) / (freq(i) * freq(j))
  //
  // diff(s, i, j) is the smallest positive offset difference between an
  // occurrence of i and one of j within sentence s; sentences lacking such a
  // pair contribute nothing. The source sits at offset 0 and the sink at
  // length + 1 in every sentence.
  double edge_weight(int u, int v) const {
    if (!has_edge(u, v)) throw std::invalid_argument("no such edge");
    double inv_diff_sum = 0.0;
    for (int s = 1; s <= n_sentences_; ++s) {
      int best = std::numeric_limits<int>::max();
      for (int pu : positions(u, s))
        for (int pv : positions(v, s)) {
          int d = pv - pu;
          if (d > 0 && d < best) best = d;
        }
      if (best != std::numeric_limits<int>::max())
        inv_diff_sum += 1.0 / static_cast<double>(best);
    }
    if (!(inv_diff_sum > 0.0))
      throw std::logic_error("edge without a co-occurrence");
    double fu = freq(u), fv = freq(v);
    double wprime = (fu + fv) / inv_diff_sum;
    return wprime / (fu * fv);
  }

  // |E| / (|V| * (|V| - 1)), boundary nodes included.
  double density() const {
    double v = size();
    return edge_count() / (v * (v - 1.0));
  }

  WeightedDigraph to_digraph() const {
    WeightedDigraph g;
    // Word nodes keep their ids: construction order matches, offset by the
    // two boundary nodes present in both representations.
    for (int id = 2; id < size(); ++id) {
      const GraphNode& n = nodes_[static_cast<std::size_t>(id)];
      int got = g.add_node(
          DigraphNode{n.label, n.key, n.pos, n.word_count, n.is_stop});
      (void)got;
    }
    for (int u = 0; u < size(); ++u)
      for (int v : out_[static_cast<std::size_t>(u)])
        g.add_edge(u, v, edge_weight(u, v));
    return g;
  }

  // Diff-friendly plain-text listing: header, then nodes, then edges, each
  // section sorted on (key, POS, id).
  std::string dump() const {
    std::ostringstream os;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", density());
    os << "nodes " << size() << " edges " << edge_count() << " density "
       << buf << "\n";
    std::vector<int> order(static_cast<std::size_t>(size()));
    for (int i = 0; i < size(); ++i) order[static_cast<std::size_t>(i)] = i;
    auto node_key = [this](int id) {
      const GraphNode& n = nodes_[static_cast<std::size_t>(id)];
      // Boundary nodes come first in a fixed order.
      int rank = id == kStart ? 0 : id == kEnd ? 1 : 2;
      return std::make_tuple(rank, n.key, n.pos, id);
    };
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return node_key(a) < node_key(b); });
    auto print_name = [this](std::ostream& o, int id) {
      const GraphNode& n = nodes_[static_cast<std::size_t>(id)];
      o << n.label;
      if (!n.pos.empty()) o << '/' << n.pos;
    };
    for (int id : order) {
      const GraphNode& n = nodes_[static_cast<std::size_t>(id)];
      os << "node ";
      print_name(os, id);
      os << " freq=" << freq(id) << " mapped=[";
      for (std::size_t i = 0; i < n.mappings.size(); ++i) {
        if (i) os << ',';
        os << '(' << n.mappings[i].first << ',' << n.mappings[i].second << ')';
      }
      os << ']';
      if (!n.synonym_members.empty()) {
        os << " synonyms={";
        bool first = true;
        for (const auto& [w, c] : n.synonym_members) {
          if (!first) os << ',';
          first = false;
          os << w << ':' << c;
        }
        os << '}';
      }
      os << "\n";
    }
    for (int u : order)
      for (int v : order) {
        if (!has_edge(u, v)) continue;
        std::snprintf(buf, sizeof buf, "%.12g", edge_weight(u, v));
        os << "edge ";
        print_name(os, u);
        os << " -> ";
        print_name(os, v);
        os << " w=" << buf << "\n";
      }
    return os.str();
  }

 private:
  WordGraph() {
    for (const char* name : {"<start>", "<end>"}) {
      GraphNode n;
      n.id = static_cast<int>(nodes_.size());
      n.label = n.key = name;
      n.word_count = 0;
      n.is_stop = true;
      nodes_.push_back(std::move(n));
    }
    out_.resize(2);
    in_.resize(2);
  }

  static std::string identity(const std::string& key, const std::string& pos) {
    return key + '\t' + pos;
  }

  std::vector<int> positions(int id, int sid) const {
    if (id == kStart) return {0};
    if (id == kEnd)
      return {sentence_lengths_[static_cast<std::size_t>(sid - 1)] + 1};
    std::vector<int> out;
    for (const auto& [s, p] : nodes_[static_cast<std::size_t>(id)].mappings)
      if (s == sid) out.push_back(p);
    return out;
  }

  int create_node(const Token& tok) {
    GraphNode n;
    n.id = static_cast<int>(nodes_.size());
    n.label = tok.surface;
    n.key = tok.key();
    n.pos = tok.pos;
    n.word_count = tok.word_count();
    n.is_stop = tok.is_stopword;
    nodes_.push_back(std::move(n));
    out_.emplace_back();
    in_.emplace_back();
    index_[identity(nodes_.back().key, nodes_.back().pos)].push_back(
        nodes_.back().id);
    return nodes_.back().id;
  }

  void add_edge(int u, int v) {
    out_[static_cast<std::size_t>(u)].insert(v);
    in_[static_cast<std::size_t>(v)].insert(u);
  }

  // Maps one sentence into the graph in three passes: unambiguous
  // non-stopwords first, then ambiguous or repeated non-stopwords, then
  // stopwords. Within a sentence, tokens with the same word form claim
  // distinct nodes; synonym mapping may share a node (see synonym_node).
  void map_sentence(const TaggedSentence& sent, const SynonymSets& synonyms) {
    const int n = sent.length();
    const int sid = sent.sid;
    std::vector<int> mapped(static_cast<std::size_t>(n), -1);
    std::set<int> claimed;

    std::map<std::string, int> mult;
    for (const Token& tok : sent.tokens) ++mult[identity(tok.key(), tok.pos)];

    auto same_nodes = [&](const Token& tok) {
      std::vector<int> out;
      auto it = index_.find(identity(tok.key(), tok.pos));
      if (it == index_.end()) return out;
      for (int id : it->second)
        if (!claimed.count(id)) out.push_back(id);
      return out;
    };

    // How many of the token's sentence neighbours (source/sink included)
    // already border the candidate node in the graph. Unmapped neighbours
    // are matched by word form + tag.
    auto matches_side = [&](const std::set<int>& side, int i) {
      if (i < 0) return side.count(kStart) > 0;
      if (i >= n) return side.count(kEnd) > 0;
      if (mapped[static_cast<std::size_t>(i)] >= 0)
        return side.count(mapped[static_cast<std::size_t>(i)]) > 0;
      const Token& t = sent.tokens[static_cast<std::size_t>(i)];
      for (int x : side) {
        if (x == kStart || x == kEnd) continue;
        const GraphNode& nn = nodes_[static_cast<std::size_t>(x)];
        if (nn.key == t.key() && nn.pos == t.pos) return true;
      }
      return false;
    };
    auto overlap = [&](int cand, int i) {
      int score = 0;
      if (matches_side(in_[static_cast<std::size_t>(cand)], i - 1)) ++score;
      if (matches_side(out_[static_cast<std::size_t>(cand)], i + 1)) ++score;
      return score;
    };

    auto pick = [&](const std::vector<int>& cands, int i) {
      int best = cands.front();
      if (cands.size() == 1) return best;
      int best_overlap = overlap(best, i);
      for (std::size_t c = 1; c < cands.size(); ++c) {
        int cur = cands[c];
        int cur_overlap = overlap(cur, i);
        if (cur_overlap > best_overlap ||
            (cur_overlap == best_overlap &&
             nodes_[static_cast<std::size_t>(cur)].freq() >
                 nodes_[static_cast<std::size_t>(best)].freq())) {
          best = cur;
          best_overlap = cur_overlap;
        }
        // Remaining ties keep the earliest-created node: candidate lists
        // are in creation order already.
      }
      return best;
    };

    // Synonym mapping may land on a node that another token of this
    // sentence already claimed: the claim rule keeps a repeated word on
    // distinct nodes, and a synonym is a different word. The one exception
    // is a node held by an adjacent token, which would fold two consecutive
    // tokens together and create a self loop.
    auto synonym_node = [&](const Token& tok, int i) -> int {
      if (!synonyms_enabled_) return -1;
      auto adjacent = [&](int id) {
        return (i > 0 && mapped[static_cast<std::size_t>(i - 1)] == id) ||
               (i + 1 < n && mapped[static_cast<std::size_t>(i + 1)] == id);
      };
      std::vector<int> options;
      for (const std::string& lemma :
           synonyms.candidates(tok.surface, tok.pos)) {
        auto it = index_.find(identity(lemma, tok.pos));
        if (it == index_.end()) continue;
        for (int id : it->second)
          if (!adjacent(id)) options.push_back(id);
      }
      if (options.empty()) return -1;
      int best = options.front();
      for (int cand : options)
        if (nodes_[static_cast<std::size_t>(cand)].freq() >
            nodes_[static_cast<std::size_t>(best)].freq())
          best = cand;
      return best;
    };

    auto attach = [&](int i, int id) {
      nodes_[static_cast<std::size_t>(id)].mappings.emplace_back(sid, i + 1);
      claimed.insert(id);
      mapped[static_cast<std::size_t>(i)] = id;
    };

    auto place = [&](int i) {
      const Token& tok = sent.tokens[static_cast<std::size_t>(i)];
      std::vector<int> cands = same_nodes(tok);
      int id;
      if (!cands.empty()) {
        id = pick(cands, i);
      } else if (!tok.is_stopword) {
        id = synonym_node(tok, i);
        if (id >= 0)
          ++nodes_[static_cast<std::size_t>(id)].synonym_members[tok.key()];
        else
          id = create_node(tok);
      } else {
        id = create_node(tok);
      }
      attach(i, id);
    };

    // Pass 1: unambiguous non-stopwords (unique in the sentence, at most
    // one unclaimed node to land on).
    for (int i = 0; i < n; ++i) {
      const Token& tok = sent.tokens[static_cast<std::size_t>(i)];
      if (tok.is_stopword) continue;
      if (mult[identity(tok.key(), tok.pos)] > 1) continue;
      if (same_nodes(tok).size() > 1) continue;
      place(i);
    }
    // Pass 2: the ambiguous or repeated non-stopwords.
    for (int i = 0; i < n; ++i) {
      const Token& tok = sent.tokens[static_cast<std::size_t>(i)];
      if (tok.is_stopword || mapped[static_cast<std::size_t>(i)] >= 0)
        continue;
      place(i);
    }
    // Pass 3: stopwords.
    for (int i = 0; i < n; ++i) {
      if (mapped[static_cast<std::size_t>(i)] >= 0) continue;
      place(i);
    }

    add_edge(kStart, mapped[0]);
    for (int i = 0; i + 1 < n; ++i)
      add_edge(mapped[static_cast<std::size_t>(i)],
               mapped[static_cast<std::size_t>(i + 1)]);
    add_edge(mapped[static_cast<std::size_t>(n - 1)], kEnd);
    sentence_lengths_.push_back(n);
  }

  std::vector<GraphNode> nodes_;
  std::map<std::string, std::vector<int>> index_;  // "key\tpos" -> node ids
  std::vector<std::set<int>> out_;
  std::vector<std::set<int>> in_;
  std::vector<int> sentence_lengths_;
  int n_sentences_ = 0;
  bool synonyms_enabled_ = true;
};

}  // namespace msc

#endif  // MSC_WORD_GRAPH_HPP
