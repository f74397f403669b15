// metrics.hpp -- ROUGE-N, ROUGE-SU4, corpus BLEU-4 and the density-based
// cluster classification used by the evaluation harness.

#ifndef MSC_METRICS_HPP
#define MSC_METRICS_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "msc/lexicon.hpp"

namespace msc {

struct PRF {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

namespace detail {

inline PRF prf(long match, long cand_total, long ref_total) {
  PRF s;
  s.precision = cand_total > 0 ? static_cast<double>(match) / cand_total : 0.0;
  s.recall = ref_total > 0 ? static_cast<double>(match) / ref_total : 0.0;
  s.f1 = (s.precision + s.recall) > 0.0
             ? 2.0 * s.precision * s.recall / (s.precision + s.recall)
             : 0.0;
  return s;
}

using UnitCounts = std::map<std::vector<std::string>, long>;

inline UnitCounts ngram_counts(const std::vector<std::string>& words, int n) {
  UnitCounts counts;
  if (n <= 0) throw std::invalid_argument("ngram order must be positive");
  for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= words.size(); ++i)
    ++counts[std::vector<std::string>(words.begin() + static_cast<long>(i),
                                      words.begin() + static_cast<long>(i) +
                                          n)];
  return counts;
}

// Unigrams plus skip-bigrams with at most `max_gap` intervening words. The
// two unit kinds are namespaced so they can share one multiset.
inline UnitCounts su_counts(const std::vector<std::string>& words,
                            int max_gap) {
  UnitCounts counts;
  for (const std::string& w : words) ++counts[{"u", w}];
  for (std::size_t i = 0; i < words.size(); ++i)
    for (std::size_t j = i + 1;
         j < words.size() && j - i - 1 <= static_cast<std::size_t>(max_gap);
         ++j)
      ++counts[{"s", words[i], words[j]}];
  return counts;
}

inline long clipped_overlap(const UnitCounts& cand, const UnitCounts& ref) {
  long match = 0;
  for (const auto& [unit, c] : cand) {
    auto it = ref.find(unit);
    if (it != ref.end()) match += std::min(c, it->second);
  }
  return match;
}

inline long total(const UnitCounts& counts) {
  long t = 0;
  for (const auto& [unit, c] : counts) t += c;
  return t;
}

template <typename CountFn>
PRF rouge_generic(const std::vector<std::string>& candidate,
                  const std::vector<std::vector<std::string>>& references,
                  bool average, CountFn count_units) {
  if (references.empty())
    throw std::invalid_argument("ROUGE needs at least one reference");
  UnitCounts cand = count_units(candidate);
  long cand_total = total(cand);
  PRF best;
  double psum = 0.0, rsum = 0.0, fsum = 0.0;
  bool first = true;
  for (const auto& ref : references) {
    UnitCounts rc = count_units(ref);
    PRF s = prf(clipped_overlap(cand, rc), cand_total, total(rc));
    psum += s.precision;
    rsum += s.recall;
    fsum += s.f1;
    if (first || s.f1 > best.f1) best = s;
    first = false;
  }
  if (!average) return best;
  double n = static_cast<double>(references.size());
  return PRF{psum / n, rsum / n, fsum / n};
}

}  // namespace detail

// ROUGE-N against one or more references. The default takes the best-F1
// reference; `average` switches to the mean of P, R and F across references.
inline PRF rouge_n(const std::vector<std::string>& candidate,
                   const std::vector<std::vector<std::string>>& references,
                   int n, bool average = false) {
  return detail::rouge_generic(
      candidate, references, average,
      [n](const std::vector<std::string>& w) {
        return detail::ngram_counts(w, n);
      });
}

// ROUGE-SU4: unigrams plus skip-bigrams allowing up to four intervening
// words (so "a x x x x b" still pairs a with b).
inline PRF rouge_su4(const std::vector<std::string>& candidate,
                     const std::vector<std::vector<std::string>>& references,
                     bool average = false) {
  return detail::rouge_generic(
      candidate, references, average, [](const std::vector<std::string>& w) {
        return detail::su_counts(w, 4);
      });
}

// Corpus-level BLEU-4: clipped modified precisions pooled over all segments,
// geometric mean with uniform 1/4 weights, no smoothing (a zero match count
// at any order zeroes the score), and the brevity penalty uses the closest
// reference length per segment with ties going to the shorter reference.
struct BleuSegment {
  std::vector<std::string> candidate;
  std::vector<std::vector<std::string>> references;
};

inline double bleu4(const std::vector<BleuSegment>& corpus) {
  if (corpus.empty()) throw std::invalid_argument("BLEU of an empty corpus");
  long match[4] = {0, 0, 0, 0};
  long guess[4] = {0, 0, 0, 0};
  long cand_len = 0, ref_len = 0;
  for (const BleuSegment& seg : corpus) {
    if (seg.references.empty())
      throw std::invalid_argument("BLEU segment without references");
    cand_len += static_cast<long>(seg.candidate.size());
    long best_ref = static_cast<long>(seg.references.front().size());
    for (const auto& ref : seg.references) {
      long len = static_cast<long>(ref.size());
      long cur = std::labs(len - static_cast<long>(seg.candidate.size()));
      long old = std::labs(best_ref - static_cast<long>(seg.candidate.size()));
      if (cur < old || (cur == old && len < best_ref)) best_ref = len;
    }
    ref_len += best_ref;
    for (int n = 1; n <= 4; ++n) {
      detail::UnitCounts cand = detail::ngram_counts(seg.candidate, n);
      detail::UnitCounts max_ref;
      for (const auto& ref : seg.references)
        for (const auto& [gram, c] : detail::ngram_counts(ref, n)) {
          long& slot = max_ref[gram];
          slot = std::max(slot, c);
        }
      match[n - 1] += detail::clipped_overlap(cand, max_ref);
      guess[n - 1] += detail::total(cand);
    }
  }
  double log_precision = 0.0;
  for (int n = 0; n < 4; ++n) {
    if (match[n] == 0 || guess[n] == 0) return 0.0;
    log_precision +=
        0.25 * std::log(static_cast<double>(match[n]) / guess[n]);
  }
  if (cand_len == 0) return 0.0;
  double bp = cand_len >= ref_len
                  ? 1.0
                  : std::exp(1.0 - static_cast<double>(ref_len) / cand_len);
  return bp * std::exp(log_precision);
}

// ---------------------------------------------------------------------------
// Cluster classification and evaluation-time normalization

enum class ClusterKind { kNormal, kDiverse };

// Dense graphs point at redundant clusters that compress well; sparse ones
// warn that the sentences share too little material.
inline ClusterKind classify_cluster(double density,
                                    double threshold = 0.05) {
  return density >= threshold ? ClusterKind::kNormal : ClusterKind::kDiverse;
}

// Lowercases and, when synonym sets are given, rewrites every token to the
// canonical head of its set so that synonymous candidate/reference pairs can
// match during evaluation.
inline std::vector<std::string> normalize_for_eval(
    const std::vector<std::string>& tokens,
    const SynonymSets* synonyms = nullptr) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const std::string& tok : tokens) {
    std::string w = to_lower_copy(tok);
    if (synonyms) {
      std::optional<std::string> head = synonyms->head_for(w);
      if (head) w = *head;
    }
    out.push_back(std::move(w));
  }
  return out;
}

}  // namespace msc

#endif  // MSC_METRICS_HPP
