// lexicon.hpp -- stopword list, multiword-expression lexicon, synonym sets,
// and the per-sentence pre-processing they drive (stemming, MWE merging,
// one-word synonym substitution).

#ifndef MSC_LEXICON_HPP
#define MSC_LEXICON_HPP

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "msc/corpus.hpp"
#include "msc/errors.hpp"
#include "msc/porter_stemmer.hpp"

namespace msc {

namespace detail {

inline std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

inline std::vector<std::string> split_tabs(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = s.find('\t', start);
    if (tab == std::string::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, tab - start));
    start = tab + 1;
  }
}

inline std::string strip(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Stopwords

class StopwordList {
 public:
  StopwordList() = default;

  static StopwordList from_words(const std::vector<std::string>& words) {
    StopwordList list;
    for (const std::string& w : words) list.words_.insert(to_lower_copy(w));
    return list;
  }

  // One word per line; '#' starts a comment; blank lines ignored.
  static StopwordList load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
      throw std::runtime_error("cannot open stopword file '" + path.string() +
                               "'");
    StopwordList list;
    std::string line;
    while (std::getline(in, line)) {
      std::size_t hash = line.find('#');
      if (hash != std::string::npos) line.resize(hash);
      std::string w = detail::strip(line);
      if (!w.empty()) list.words_.insert(to_lower_copy(w));
    }
    return list;
  }

  // Punctuation counts as a stopword regardless of the list.
  bool contains(std::string_view surface) const {
    if (is_punctuation(surface)) return true;
    return words_.count(to_lower_copy(surface)) > 0;
  }

  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

// ---------------------------------------------------------------------------
// Multiword expressions

struct MweEntry {
  std::vector<std::string> stems;  // stemmed component words, in order
  std::vector<std::string> pos;    // optional per-component tags; empty = any
  std::string head_pos;            // optional; derived from the match if empty
};

struct MweOccurrence {
  int start = 0;   // 0-based token index within the sentence
  int length = 0;  // number of tokens covered
  int entry = 0;   // index into the lexicon
};

class MweLexicon {
 public:
  MweLexicon() = default;

  void add(MweEntry entry) {
    if (entry.stems.size() < 2)
      throw std::invalid_argument("an MWE needs at least two words");
    if (!entry.pos.empty() && entry.pos.size() != entry.stems.size())
      throw std::invalid_argument(
          "MWE POS constraint length does not match its word count");
    // Entries are stored stemmed no matter how the caller spelled them;
    // porter_stem is idempotent so re-stemming stemmed input is safe.
    for (std::string& s : entry.stems) s = porter_stem(s);
    by_first_[entry.stems.front()].push_back(
        static_cast<int>(entries_.size()));
    entries_.push_back(std::move(entry));
  }

  // Tab-separated: words, optional per-word POS tags, optional head POS.
  //   kick the bucket<TAB>VB DT NN<TAB>VB
  //   junk food
  // '#' comments and blank lines are skipped.
  static MweLexicon load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
      throw std::runtime_error("cannot open MWE lexicon '" + path.string() +
                               "'");
    MweLexicon lex;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      std::string stripped = detail::strip(line);
      if (stripped.empty() || stripped[0] == '#') continue;
      std::vector<std::string> fields = detail::split_tabs(line);
      MweEntry entry;
      entry.stems = detail::split_ws(fields[0]);
      if (entry.stems.size() < 2)
        throw ParseError("MWE entry has fewer than two words", lineno);
      if (fields.size() > 1) {
        entry.pos = detail::split_ws(fields[1]);
        if (!entry.pos.empty() && entry.pos.size() != entry.stems.size())
          throw ParseError("MWE POS constraint does not match word count",
                           lineno);
      }
      if (fields.size() > 2) entry.head_pos = detail::strip(fields[2]);
      if (fields.size() > 3)
        throw ParseError("MWE entry has more than three fields", lineno);
      lex.add(std::move(entry));
    }
    return lex;
  }

  const std::vector<MweEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  // Greedy longest-match, left to right, non-overlapping. Tokens must
  // already carry stems. A POS-constrained entry must match tag-for-tag.
  std::vector<MweOccurrence> detect(const TaggedSentence& sent) const {
    std::vector<MweOccurrence> found;
    if (entries_.empty()) return found;
    const int n = sent.length();
    int i = 0;
    while (i < n) {
      int best_entry = -1;
      int best_len = 0;
      auto it = by_first_.find(sent.tokens[static_cast<std::size_t>(i)].stem);
      if (it != by_first_.end()) {
        for (int e : it->second) {
          const MweEntry& entry = entries_[static_cast<std::size_t>(e)];
          int len = static_cast<int>(entry.stems.size());
          if (i + len > n) continue;
          bool ok = true;
          for (int d = 0; d < len && ok; ++d) {
            const Token& tok = sent.tokens[static_cast<std::size_t>(i + d)];
            if (tok.stem != entry.stems[static_cast<std::size_t>(d)])
              ok = false;
            else if (!entry.pos.empty() &&
                     tok.pos != entry.pos[static_cast<std::size_t>(d)])
              ok = false;
          }
          // Longest match wins; earlier lexicon entry breaks length ties.
          if (ok && len > best_len) {
            best_len = len;
            best_entry = e;
          }
        }
      }
      if (best_entry >= 0) {
        found.push_back(MweOccurrence{i, best_len, best_entry});
        i += best_len;
      } else {
        ++i;
      }
    }
    return found;
  }

 private:
  std::vector<MweEntry> entries_;
  std::unordered_map<std::string, std::vector<int>> by_first_;
};

// Collapses each detected occurrence into one token: hyphen-joined surface,
// the entry's head POS (or the last noun's tag, or the last word's tag), and
// the original words kept as components. Stems are hyphen-joined too.
inline TaggedSentence merge_mwes(const TaggedSentence& sent,
                                 const std::vector<MweOccurrence>& occs) {
  TaggedSentence out;
  out.sid = sent.sid;
  std::size_t oi = 0;
  int next_mwe_id = 0;
  int i = 0;
  const int n = sent.length();
  while (i < n) {
    if (oi < occs.size() && occs[oi].start == i) {
      const MweOccurrence& occ = occs[oi];
      Token merged;
      std::string head_pos;
      std::string last_noun_pos;
      for (int d = 0; d < occ.length; ++d) {
        const Token& part = sent.tokens[static_cast<std::size_t>(i + d)];
        if (d) {
          merged.surface += '-';
          merged.stem += '-';
        }
        merged.surface += part.surface;
        merged.stem += part.stem;
        merged.components.push_back(part.surface);
        if (part.pos.rfind("NN", 0) == 0) last_noun_pos = part.pos;
      }
      merged.pos = sent.tokens[static_cast<std::size_t>(i + occ.length - 1)].pos;
      if (!last_noun_pos.empty()) merged.pos = last_noun_pos;
      merged.mwe_id = next_mwe_id++;
      out.tokens.push_back(std::move(merged));
      i += occ.length;
      ++oi;
    } else {
      out.tokens.push_back(sent.tokens[static_cast<std::size_t>(i)]);
      ++i;
    }
  }
  return out;
}

inline TaggedSentence merge_mwes(const TaggedSentence& sent,
                                 const std::vector<MweOccurrence>& occs,
                                 const MweLexicon& lex) {
  TaggedSentence out = merge_mwes(sent, occs);
  // Apply explicit head tags where the lexicon provides them.
  std::size_t oi = 0;
  for (Token& tok : out.tokens) {
    if (tok.mwe_id >= 0) {
      const MweEntry& entry =
          lex.entries()[static_cast<std::size_t>(occs[oi].entry)];
      if (!entry.head_pos.empty()) tok.pos = entry.head_pos;
      ++oi;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Synonyms

struct SynonymMember {
  std::string lemma;  // lowercase; hyphenated when multiword
  std::string pos;
};

class SynonymSets {
 public:
  SynonymSets() = default;

  void add_group(std::vector<SynonymMember> members) {
    if (members.size() < 2)
      throw std::invalid_argument("a synonym set needs at least two members");
    int g = static_cast<int>(groups_.size());
    for (SynonymMember& m : members) {
      m.lemma = to_lower_copy(m.lemma);
      by_lemma_pos_[key(m.lemma, m.pos)].push_back(g);
      by_lemma_[m.lemma].push_back(g);
    }
    groups_.push_back(std::move(members));
  }

  // One set per line, members tab-separated as lemma:POS, ordered by
  // descending corpus frequency. '#' comments and blank lines are skipped.
  static SynonymSets load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
      throw std::runtime_error("cannot open synonym file '" + path.string() +
                               "'");
    SynonymSets sets;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      std::string stripped = detail::strip(line);
      if (stripped.empty() || stripped[0] == '#') continue;
      std::vector<SynonymMember> members;
      for (const std::string& field : detail::split_tabs(line)) {
        std::string item = detail::strip(field);
        if (item.empty()) continue;
        std::size_t colon = item.rfind(':');
        if (colon == std::string::npos || colon == 0 ||
            colon + 1 == item.size())
          throw ParseError("synonym member '" + item +
                               "' is not of the form lemma:POS",
                           lineno);
        members.push_back(
            SynonymMember{item.substr(0, colon), item.substr(colon + 1)});
      }
      if (members.size() < 2)
        throw ParseError("synonym set has fewer than two members", lineno);
      sets.add_group(std::move(members));
    }
    return sets;
  }

  std::size_t size() const { return groups_.size(); }
  bool empty() const { return groups_.empty(); }
  const std::vector<std::vector<SynonymMember>>& groups() const {
    return groups_;
  }

  // All same-POS lemmas sharing a set with (surface, pos), excluding the
  // word itself. Order: file order of sets, then member order, first
  // occurrence kept.
  std::vector<std::string> candidates(std::string_view surface,
                                      std::string_view pos) const {
    std::vector<std::string> out;
    std::string lemma = to_lower_copy(surface);
    auto it = by_lemma_pos_.find(key(lemma, pos));
    if (it == by_lemma_pos_.end()) return out;
    std::set<std::string> seen;
    for (int g : it->second) {
      for (const SynonymMember& m : groups_[static_cast<std::size_t>(g)]) {
        if (m.pos != pos || m.lemma == lemma) continue;
        if (seen.insert(m.lemma).second) out.push_back(m.lemma);
      }
    }
    return out;
  }

  // One-word synonym for a merged MWE: same-POS single-word co-members,
  // ranked by how often they occur in the cluster's other sentences
  // (case-insensitive surface match); ties keep synonym-file order. When no
  // co-member occurs at all, the first listed one-word member is taken.
  std::optional<std::string> best_one_word_synonym(std::string_view canonical,
                                                   std::string_view pos,
                                                   const Cluster& cluster,
                                                   int self_sid) const {
    std::vector<std::string> options;
    std::string lemma = to_lower_copy(canonical);
    auto it = by_lemma_pos_.find(key(lemma, pos));
    if (it == by_lemma_pos_.end()) return std::nullopt;
    std::set<std::string> seen;
    for (int g : it->second) {
      for (const SynonymMember& m : groups_[static_cast<std::size_t>(g)]) {
        if (m.pos != pos || m.lemma == lemma) continue;
        if (m.lemma.find('-') != std::string::npos) continue;  // multiword
        if (seen.insert(m.lemma).second) options.push_back(m.lemma);
      }
    }
    if (options.empty()) return std::nullopt;
    std::string best = options.front();
    long best_count = -1;
    for (const std::string& option : options) {
      long count = 0;
      for (const TaggedSentence& sent : cluster.sentences) {
        if (sent.sid == self_sid) continue;
        for (const Token& tok : sent.tokens)
          if (to_lower_copy(tok.surface) == option) ++count;
      }
      if (count > best_count) {
        best_count = count;
        best = option;
      }
    }
    return best;
  }

  // Canonical representative of the set containing `lemma` (any POS): the
  // first one-word member, else the first member. Used when rewriting
  // candidate/reference tokens before evaluation.
  std::optional<std::string> head_for(std::string_view lemma) const {
    auto it = by_lemma_.find(to_lower_copy(lemma));
    if (it == by_lemma_.end()) return std::nullopt;
    const auto& group = groups_[static_cast<std::size_t>(it->second.front())];
    for (const SynonymMember& m : group)
      if (m.lemma.find('-') == std::string::npos) return m.lemma;
    return group.front().lemma;
  }

 private:
  static std::string key(std::string_view lemma, std::string_view pos) {
    std::string k(lemma);
    k += '\t';
    k += pos;
    return k;
  }

  std::vector<std::vector<SynonymMember>> groups_;
  std::unordered_map<std::string, std::vector<int>> by_lemma_pos_;
  std::unordered_map<std::string, std::vector<int>> by_lemma_;
};

// ---------------------------------------------------------------------------
// Pre-processing

struct LexiconSet {
  StopwordList stopwords;
  MweLexicon mwes;
  SynonymSets synonyms;
};

struct PreprocessOptions {
  bool merge_mwes = true;
  // Replace a merged MWE by a one-word synonym when the synonym sets offer
  // one (implies merge_mwes did something to replace).
  bool substitute_mwe_synonyms = true;
};

// Stems, flags stopwords, merges MWEs and substitutes one-word synonyms for
// them. `cluster` provides the other sentences consulted by the synonym
// frequency vote.
inline TaggedSentence preprocess_sentence(const TaggedSentence& sent,
                                          const LexiconSet& lex,
                                          const Cluster& cluster,
                                          const PreprocessOptions& opts = {}) {
  TaggedSentence work = sent;
  for (Token& tok : work.tokens) {
    tok.stem = porter_stem(tok.surface);
    tok.is_stopword = lex.stopwords.contains(tok.surface);
  }
  if (opts.merge_mwes && !lex.mwes.empty()) {
    std::vector<MweOccurrence> occs = lex.mwes.detect(work);
    if (!occs.empty()) work = merge_mwes(work, occs, lex.mwes);
  }
  for (Token& tok : work.tokens) {
    if (!tok.is_merged_mwe()) continue;
    tok.is_stopword = lex.stopwords.contains(tok.surface);
    if (!opts.substitute_mwe_synonyms || lex.synonyms.empty()) continue;
    std::optional<std::string> one_word = lex.synonyms.best_one_word_synonym(
        tok.surface, tok.pos, cluster, work.sid);
    if (one_word) {
      tok.surface = *one_word;
      tok.stem = porter_stem(*one_word);
      tok.components.clear();  // single word again
      tok.is_stopword = lex.stopwords.contains(tok.surface);
    }
  }
  return work;
}

inline std::vector<TaggedSentence> preprocess_cluster(
    const Cluster& cluster, const LexiconSet& lex,
    const PreprocessOptions& opts = {}) {
  std::vector<TaggedSentence> out;
  out.reserve(cluster.sentences.size());
  for (const TaggedSentence& sent : cluster.sentences)
    out.push_back(preprocess_sentence(sent, lex, cluster, opts));
  return out;
}

}  // namespace msc

#endif  // MSC_LEXICON_HPP
