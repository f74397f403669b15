// reranker.hpp -- fusing informativity and grammaticality into the final
// candidate ranking.

#ifndef MSC_RERANKER_HPP
#define MSC_RERANKER_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "msc/errors.hpp"
#include "msc/pathfinder.hpp"

namespace msc {

// Rescales onto [0, 1] with (v - min) / (max - min). A constant vector maps
// to all 0.5 so it neither helps nor hurts in the fusion.
inline std::vector<double> normalize_unity(const std::vector<double>& values) {
  if (values.empty())
    throw std::invalid_argument("cannot normalize an empty vector");
  double lo = values.front(), hi = values.front();
  for (double v : values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  std::vector<double> out(values.size());
  if (hi == lo) {
    std::fill(out.begin(), out.end(), 0.5);
    return out;
  }
  for (std::size_t i = 0; i < values.size(); ++i)
    out[i] = (values[i] - lo) / (hi - lo);
  return out;
}

struct RankedCandidate {
  CompressionCandidate candidate;
  double info_fitness = 0.0;  // normalized, 1 = most informative
  double lm_fitness = 0.0;    // normalized, 1 = most grammatical
  double final_score = 0.0;
  int rank = 0;
};

struct RankedOutput {
  std::vector<RankedCandidate> ranked;  // best first
  const RankedCandidate& best() const { return ranked.front(); }
};

// final = mu * informativity fitness + (1 - mu) * grammaticality fitness.
//
// Informativity arrives as a cost (lower = better) so its normalized value
// is flipped; candidates costing +infinity get fitness 0 outright, and the
// normalization runs over the finite costs only. The language-model score is
// already a fitness. Ties sort by lower raw informativity cost, then fewer
// words, then text.
inline RankedOutput final_rank(std::vector<CompressionCandidate> candidates,
                               double mu,
                               const std::string& cluster_id = "") {
  if (candidates.empty()) throw NoCompressionError(cluster_id);
  if (!(mu >= 0.0 && mu <= 1.0))
    throw std::invalid_argument("mu must lie in [0, 1]");

  std::vector<double> finite;
  for (const CompressionCandidate& c : candidates)
    if (std::isfinite(c.informativity_cost))
      finite.push_back(c.informativity_cost);
  std::vector<double> finite_norm;
  if (!finite.empty()) finite_norm = normalize_unity(finite);

  std::vector<double> lm;
  lm.reserve(candidates.size());
  for (const CompressionCandidate& c : candidates) lm.push_back(c.lm_score);
  std::vector<double> lm_norm = normalize_unity(lm);

  RankedOutput out;
  std::size_t fi = 0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    RankedCandidate rc;
    rc.candidate = std::move(candidates[i]);
    if (std::isfinite(rc.candidate.informativity_cost))
      rc.info_fitness = 1.0 - finite_norm[fi++];
    else
      rc.info_fitness = 0.0;
    rc.lm_fitness = lm_norm[i];
    rc.final_score = mu * rc.info_fitness + (1.0 - mu) * rc.lm_fitness;
    out.ranked.push_back(std::move(rc));
  }

  std::stable_sort(out.ranked.begin(), out.ranked.end(),
                   [](const RankedCandidate& a, const RankedCandidate& b) {
                     if (a.final_score != b.final_score)
                       return a.final_score > b.final_score;
                     double ac = a.candidate.informativity_cost;
                     double bc = b.candidate.informativity_cost;
                     if (ac != bc) return ac < bc;
                     if (a.candidate.word_count != b.candidate.word_count)
                       return a.candidate.word_count < b.candidate.word_count;
                     return a.candidate.text() < b.candidate.text();
                   });
  for (std::size_t i = 0; i < out.ranked.size(); ++i)
    out.ranked[i].rank = static_cast<int>(i) + 1;
  return out;
}

}  // namespace msc

#endif  // MSC_RERANKER_HPP
