// textrank.hpp -- graph-based keyword salience and the keyphrase
// informativity score used to re-rank compression candidates.

#ifndef MSC_TEXTRANK_HPP
#define MSC_TEXTRANK_HPP

#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "msc/corpus.hpp"
#include "msc/pathfinder.hpp"

namespace msc {

struct TextRankOptions {
  int window = 10;        // co-occurrence window, in token positions
  double damping = 0.85;  // d
  double epsilon = 1e-6;  // convergence threshold on the max score delta
  int max_iterations = 1000;
};

// Salience per (lowercase form, POS) vertex. Unknown pairs score 0.
class SalienceTable {
 public:
  using Key = std::pair<std::string, std::string>;

  void set(const Key& k, double v) { scores_[k] = v; }
  double get(std::string_view key, std::string_view pos) const {
    auto it = scores_.find(Key{std::string(key), std::string(pos)});
    return it == scores_.end() ? 0.0 : it->second;
  }
  const std::map<Key, double>& all() const { return scores_; }
  std::size_t size() const { return scores_.size(); }

 private:
  std::map<Key, double> scores_;
};

// Unweighted co-occurrence recursion:
//
//   WS(v) = (1 - d) + d * sum_{u ~ v} WS(u) / deg(u)
//
// over the non-stopword tokens of the pre-processed sentences. Two vertices
// are adjacent when their tokens fall within `window` positions of each
// other inside one sentence; windows never cross sentence boundaries.
inline SalienceTable compute_salience(
    const std::vector<TaggedSentence>& sentences,
    const TextRankOptions& opts = {}) {
  if (sentences.empty())
    throw std::invalid_argument("salience of an empty sentence set");
  if (opts.window < 2)
    throw std::invalid_argument("co-occurrence window must be at least 2");

  using Key = SalienceTable::Key;
  std::map<Key, int> vertex_of;
  std::vector<Key> keys;
  auto intern = [&](const Token& t) {
    Key k{t.key(), t.pos};
    auto [it, fresh] = vertex_of.emplace(k, static_cast<int>(keys.size()));
    if (fresh) keys.push_back(k);
    return it->second;
  };

  std::vector<std::set<int>> adj;
  auto link = [&](int a, int b) {
    if (a == b) return;
    std::size_t need = static_cast<std::size_t>(std::max(a, b)) + 1;
    if (adj.size() < need) adj.resize(need);
    adj[static_cast<std::size_t>(a)].insert(b);
    adj[static_cast<std::size_t>(b)].insert(a);
  };

  for (const TaggedSentence& sent : sentences) {
    std::vector<int> ids;
    ids.reserve(sent.tokens.size());
    for (const Token& t : sent.tokens)
      ids.push_back(t.is_stopword ? -1 : intern(t));
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (ids[i] < 0) continue;
      for (std::size_t j = i + 1;
           j < ids.size() && j - i < static_cast<std::size_t>(opts.window);
           ++j) {
        if (ids[j] < 0) continue;
        link(ids[i], ids[j]);
      }
    }
  }

  adj.resize(keys.size());
  std::vector<double> score(keys.size(), 1.0);
  std::vector<double> next(keys.size());
  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    double delta = 0.0;
    for (std::size_t v = 0; v < keys.size(); ++v) {
      double sum = 0.0;
      for (int u : adj[v]) {
        std::size_t su = static_cast<std::size_t>(u);
        sum += score[su] / static_cast<double>(adj[su].size());
      }
      next[v] = (1.0 - opts.damping) + opts.damping * sum;
      delta = std::max(delta, std::fabs(next[v] - score[v]));
    }
    score.swap(next);
    if (delta < opts.epsilon) break;
  }

  SalienceTable table;
  for (std::size_t v = 0; v < keys.size(); ++v) table.set(keys[v], score[v]);
  return table;
}

// ---------------------------------------------------------------------------
// Keyphrases

struct Keyphrase {
  std::vector<std::string> words;  // display forms
  double score = 0.0;              // sum of salience over (length + 1)
  int length = 0;                  // surface words, MWEs expanded
};

namespace detail {

inline bool keyphrase_member(const DigraphNode& t) {
  if (t.is_stop) return false;
  if (t.word_count >= 2) return true;  // merged MWEs always qualify
  return t.pos.rfind("JJ", 0) == 0 || t.pos.rfind("NN", 0) == 0;
}

inline bool keyphrase_head(const DigraphNode& t) {
  if (t.is_stop) return false;
  return t.word_count >= 2 || t.pos.rfind("NN", 0) == 0;
}

}  // namespace detail

// Maximal runs of adjectives/nouns (merged MWEs count as nouns), trimmed so
// every phrase ends in a noun-class token. Scored as
//
//   score(p) = sum_{w in p} salience(w) / (length(p) + 1)
inline std::vector<Keyphrase> extract_keyphrases(
    const CompressionCandidate& cand, const SalienceTable& salience) {
  std::vector<Keyphrase> out;
  const auto& toks = cand.tokens;
  std::size_t i = 0;
  while (i < toks.size()) {
    if (!detail::keyphrase_member(toks[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < toks.size() && detail::keyphrase_member(toks[j])) ++j;
    std::size_t end = j;  // exclusive
    while (end > i && !detail::keyphrase_head(toks[end - 1])) --end;
    if (end > i) {
      Keyphrase p;
      double sum = 0.0;
      for (std::size_t t = i; t < end; ++t) {
        p.words.push_back(toks[t].label);
        p.length += toks[t].word_count;
        sum += salience.get(toks[t].key, toks[t].pos);
      }
      p.score = sum / static_cast<double>(p.length + 1);
      out.push_back(std::move(p));
    }
    i = j;
  }
  return out;
}

// Informativity as a cost: path weight over candidate length times the
// keyphrase mass it covers,
//
//   I(c) = sum_e w(e) / (length(c) * sum_k score(k))
//
// Lower is better; a candidate with no keyphrases costs +infinity.
inline double informativity_cost(const CompressionCandidate& cand,
                                 const std::vector<Keyphrase>& phrases) {
  double mass = 0.0;
  for (const Keyphrase& p : phrases) mass += p.score;
  if (!(mass > 0.0)) return std::numeric_limits<double>::infinity();
  if (cand.word_count <= 0)
    throw std::invalid_argument("candidate without words");
  return cand.total_weight /
         (static_cast<double>(cand.word_count) * mass);
}

inline double informativity_cost(const CompressionCandidate& cand,
                                 const SalienceTable& salience) {
  return informativity_cost(cand, extract_keyphrases(cand, salience));
}

}  // namespace msc

#endif  // MSC_TEXTRANK_HPP
