// corpus.hpp -- POS-tagged sentence clusters: parsing, serialization,
// reference sets and the compression-ratio statistic.

#ifndef MSC_CORPUS_HPP
#define MSC_CORPUS_HPP

#include <cctype>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "msc/errors.hpp"

namespace msc {

inline std::string to_lower_copy(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

// A token is punctuation when its surface holds no alphanumeric character.
inline bool is_punctuation(std::string_view surface) {
  for (char c : surface)
    if (std::isalnum(static_cast<unsigned char>(c))) return false;
  return !surface.empty();
}

struct Token {
  std::string surface;  // display form; hyphen-joined for merged MWEs
  std::string pos;      // Penn Treebank tag as annotated
  std::string stem;     // filled by preprocessing
  bool is_stopword = false;
  int mwe_id = -1;  // occurrence id within the sentence, -1 when not an MWE
  // Original surfaces of a merged multiword expression; empty for plain
  // tokens and for MWEs replaced by a one-word synonym.
  std::vector<std::string> components;

  // Number of surface words this token expands to in output text.
  int word_count() const {
    return components.empty() ? 1 : static_cast<int>(components.size());
  }
  bool is_merged_mwe() const { return components.size() >= 2; }
  std::string key() const { return to_lower_copy(surface); }
};

struct TaggedSentence {
  int sid = 0;  // 1-based position within the cluster
  std::vector<Token> tokens;

  int length() const { return static_cast<int>(tokens.size()); }
  // Length in surface words, i.e. with merged MWEs expanded.
  int word_length() const {
    int n = 0;
    for (const Token& t : tokens) n += t.word_count();
    return n;
  }
};

struct Cluster {
  std::string id;
  std::vector<TaggedSentence> sentences;
  // Human reference compressions, one vector of whitespace tokens each.
  std::vector<std::vector<std::string>> references;

  bool empty() const { return sentences.empty(); }
};

namespace detail {

// Splits "surface:POS" at the first unescaped ':'. Inside the surface "\:"
// escapes a literal colon and "\\" a literal backslash; the tag is taken
// verbatim.
inline Token parse_token(std::string_view item, int line, int column) {
  std::string surface;
  std::size_t i = 0;
  bool found = false;
  for (; i < item.size(); ++i) {
    char c = item[i];
    if (c == '\\' && i + 1 < item.size() &&
        (item[i + 1] == ':' || item[i + 1] == '\\')) {
      surface.push_back(item[i + 1]);
      ++i;
    } else if (c == ':') {
      found = true;
      break;
    } else {
      surface.push_back(c);
    }
  }
  if (!found)
    throw ParseError("token '" + std::string(item) + "' has no POS tag", line,
                     column);
  if (surface.empty())
    throw ParseError("token with empty surface form", line, column);
  std::string pos(item.substr(i + 1));
  if (pos.empty())
    throw ParseError("token '" + std::string(item) + "' has an empty POS tag",
                     line, column);
  Token tok;
  tok.surface = std::move(surface);
  tok.pos = std::move(pos);
  return tok;
}

}  // namespace detail

// Parses cluster text: one sentence per line, whitespace-separated
// "surface:POS" items. Blank lines are skipped.
inline Cluster parse_cluster_text(std::string_view text,
                                  const std::string& id = "") {
  Cluster cluster;
  cluster.id = id;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    TaggedSentence sent;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() &&
             std::isspace(static_cast<unsigned char>(line[i])))
        ++i;
      if (i >= line.size()) break;
      std::size_t start = i;
      while (i < line.size() &&
             !std::isspace(static_cast<unsigned char>(line[i])))
        ++i;
      sent.tokens.push_back(detail::parse_token(
          std::string_view(line).substr(start, i - start), lineno,
          static_cast<int>(start) + 1));
    }
    if (sent.tokens.empty()) continue;  // blank line
    sent.sid = static_cast<int>(cluster.sentences.size()) + 1;
    cluster.sentences.push_back(std::move(sent));
  }
  if (cluster.sentences.empty())
    throw ParseError("cluster '" + id + "' contains no sentences");
  return cluster;
}

// Reads sibling reference files "<base>.ref1.txt", "<base>.ref2.txt", ...
// next to the cluster file. Numbering starts at 1 and stops at the first gap.
inline std::vector<std::vector<std::string>> load_references(
    const std::filesystem::path& cluster_path) {
  std::vector<std::vector<std::string>> refs;
  std::filesystem::path dir = cluster_path.parent_path();
  std::string base = cluster_path.stem().string();
  for (int k = 1;; ++k) {
    std::filesystem::path p =
        dir / (base + ".ref" + std::to_string(k) + ".txt");
    std::ifstream in(p);
    if (!in) break;
    std::vector<std::string> words;
    std::string w;
    while (in >> w) words.push_back(w);
    refs.push_back(std::move(words));
  }
  return refs;
}

inline Cluster parse_cluster_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open cluster file '" + path.string() +
                             "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  Cluster cluster = parse_cluster_text(buf.str(), path.stem().string());
  cluster.references = load_references(path);
  return cluster;
}

// Inverse of parse_cluster_text for the token fields it covers
// (surface + POS); colons and backslashes in surfaces are re-escaped.
inline std::string serialize_cluster(const Cluster& cluster) {
  std::ostringstream out;
  for (const TaggedSentence& sent : cluster.sentences) {
    for (std::size_t i = 0; i < sent.tokens.size(); ++i) {
      if (i) out << ' ';
      for (char c : sent.tokens[i].surface) {
        if (c == ':' || c == '\\') out << '\\';
        out << c;
      }
      out << ':' << sent.tokens[i].pos;
    }
    out << '\n';
  }
  return out.str();
}

// Candidate length (MWEs expanded) over the mean input sentence length.
inline double compression_ratio(int candidate_words, const Cluster& cluster) {
  if (cluster.empty())
    throw std::invalid_argument("compression ratio of an empty cluster");
  if (candidate_words <= 0)
    throw std::invalid_argument("compression ratio of an empty candidate");
  long total = 0;
  for (const TaggedSentence& s : cluster.sentences) total += s.word_length();
  double mean = static_cast<double>(total) /
                static_cast<double>(cluster.sentences.size());
  return static_cast<double>(candidate_words) / mean;
}

inline double compression_ratio(const std::vector<Token>& candidate,
                                const Cluster& cluster) {
  int cand = 0;
  for (const Token& t : candidate) cand += t.word_count();
  return compression_ratio(cand, cluster);
}

}  // namespace msc

#endif  // MSC_CORPUS_HPP
