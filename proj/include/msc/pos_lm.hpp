// pos_lm.hpp -- backoff n-gram language model over POS tags, estimated with
// interpolated modified Kneser-Ney discounting; ARPA text format I/O.
//
// Training follows the Chen & Goodman recipe: counts below the top order are
// replaced by continuation counts (number of distinct left extensions),
// except for n-grams starting with <s> which keep their raw counts since
// nothing can precede them. Three discounts per order are estimated from the
// counts of counts,
//
//   Y  = n1 / (n1 + 2 n2)
//   D1 = 1 - 2 Y n2 / n1,  D2 = 2 - 3 Y n3 / n2,  D3+ = 3 - 4 Y n4 / n3
//
// falling back to a flat 0.5 discount (with a warning) when a count of
// counts is zero or a discount comes out negative. Probabilities interpolate
// with the next lower order; unigrams interpolate with the uniform
// distribution over the prediction vocabulary. <s> is never predicted, <unk>
// receives a unigram count floor of one.

#ifndef MSC_POS_LM_HPP
#define MSC_POS_LM_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "msc/errors.hpp"
#include "msc/zio.hpp"

namespace msc {

class PosLanguageModel {
 public:
  static constexpr const char* kSentStart = "<s>";
  static constexpr const char* kSentEnd = "</s>";
  static constexpr const char* kUnknown = "<unk>";

  struct Discounts {
    double d1 = 0.5, d2 = 0.5, d3 = 0.5;
    bool fallback = false;
  };

  int order() const { return order_; }
  const std::vector<std::string>& vocab() const { return vocab_; }
  const std::vector<Discounts>& discounts() const { return discounts_; }
  std::size_t ngram_count(int k) const {
    return tables_[static_cast<std::size_t>(k)].size();
  }

  // -------------------------------------------------------------------------
  // Estimation

  static PosLanguageModel train(
      const std::vector<std::vector<std::string>>& sentences, int order) {
    if (order < 1) throw std::invalid_argument("model order must be >= 1");
    if (sentences.empty())
      throw std::invalid_argument("training corpus is empty");
    PosLanguageModel lm;
    lm.order_ = order;
    lm.bos_ = lm.intern(kSentStart);
    lm.eos_ = lm.intern(kSentEnd);
    lm.unk_ = lm.intern(kUnknown);

    // Raw counts of every window of every order in the padded sentences.
    std::vector<std::unordered_map<std::string, long>> raw(
        static_cast<std::size_t>(order) + 1);
    std::vector<int> seq;
    for (const auto& sent : sentences) {
      if (sent.empty()) continue;
      seq.clear();
      seq.push_back(lm.bos_);
      for (const std::string& tag : sent) seq.push_back(lm.intern(tag));
      seq.push_back(lm.eos_);
      const int len = static_cast<int>(seq.size());
      for (int k = 1; k <= order; ++k)
        for (int i = 0; i + k <= len; ++i)
          ++raw[static_cast<std::size_t>(k)][pack(&seq[static_cast<std::size_t>(i)], k)];
    }
    if (raw[1].empty())
      throw std::invalid_argument("training corpus holds no tokens");

    // Adjusted counts: top order raw; lower orders use continuation counts
    // except for <s>-initial grams, which keep raw counts.
    std::vector<std::unordered_map<std::string, long>> adj(
        static_cast<std::size_t>(order) + 1);
    adj[static_cast<std::size_t>(order)] = raw[static_cast<std::size_t>(order)];
    const std::string bos_key = pack1(lm.bos_);
    for (int k = order - 1; k >= 1; --k) {
      auto& a = adj[static_cast<std::size_t>(k)];
      for (const auto& [key, c] : raw[static_cast<std::size_t>(k + 1)]) {
        (void)c;
        a[key.substr(2)] += 1;
      }
      for (const auto& [key, c] : raw[static_cast<std::size_t>(k)])
        if (key.compare(0, 2, bos_key) == 0) a[key] = c;
    }
    {
      long& u = adj[1][pack1(lm.unk_)];
      if (u == 0) u = 1;
    }

    // Discounts from the counts of counts of adjusted counts.
    lm.discounts_.resize(static_cast<std::size_t>(order));
    for (int k = 1; k <= order; ++k) {
      long n1 = 0, n2 = 0, n3 = 0, n4 = 0;
      for (const auto& [key, c] : adj[static_cast<std::size_t>(k)]) {
        if (k == 1 && key == bos_key) continue;
        if (c == 1) ++n1;
        else if (c == 2) ++n2;
        else if (c == 3) ++n3;
        else if (c == 4) ++n4;
      }
      Discounts d;
      if (n1 > 0 && n2 > 0 && n3 > 0 && n4 > 0) {
        double y = static_cast<double>(n1) / (n1 + 2.0 * n2);
        d.d1 = 1.0 - 2.0 * y * n2 / n1;
        d.d2 = 2.0 - 3.0 * y * n3 / n2;
        d.d3 = 3.0 - 4.0 * y * n4 / n3;
        if (d.d1 < 0.0 || d.d2 < 0.0 || d.d3 < 0.0) d.fallback = true;
      } else {
        d.fallback = true;
      }
      if (d.fallback) {
        d.d1 = d.d2 = d.d3 = 0.5;
        if (!adj[static_cast<std::size_t>(k)].empty())
          std::cerr << "pos_lm: order " << k
                    << " lacks the counts of counts for modified Kneser-Ney"
                       " discounts; falling back to a flat 0.5 discount\n";
      }
      lm.discounts_[static_cast<std::size_t>(k - 1)] = d;
    }

    lm.tables_.assign(static_cast<std::size_t>(order) + 1, {});

    // Unigrams: interpolate with the uniform distribution.
    {
      const Discounts& d = lm.discounts_[0];
      long total = 0, m1 = 0, m2 = 0, m3p = 0, vpred = 0;
      for (const auto& [key, c] : adj[1]) {
        if (key == bos_key) continue;
        total += c;
        ++vpred;
        if (c == 1) ++m1;
        else if (c == 2) ++m2;
        else ++m3p;
      }
      double gamma =
          (d.d1 * m1 + d.d2 * m2 + d.d3 * m3p) / static_cast<double>(total);
      double uniform = 1.0 / static_cast<double>(vpred);
      for (const auto& [key, c] : adj[1]) {
        if (key == bos_key) continue;
        double disc = c == 1 ? d.d1 : c == 2 ? d.d2 : d.d3;
        double p = std::max(static_cast<double>(c) - disc, 0.0) /
                       static_cast<double>(total) +
                   gamma * uniform;
        lm.tables_[1][key] = Entry{std::log10(p), 0.0, false};
      }
      lm.tables_[1][bos_key] = Entry{-99.0, 0.0, false};
    }

    // Higher orders; backoff weights land on the context entries one order
    // down.
    for (int k = 2; k <= order; ++k) {
      struct Agg {
        long total = 0, n1 = 0, n2 = 0, n3p = 0;
      };
      std::unordered_map<std::string, Agg> contexts;
      for (const auto& [key, c] : adj[static_cast<std::size_t>(k)]) {
        Agg& a = contexts[key.substr(0, key.size() - 2)];
        a.total += c;
        if (c == 1) ++a.n1;
        else if (c == 2) ++a.n2;
        else ++a.n3p;
      }
      const Discounts& d = lm.discounts_[static_cast<std::size_t>(k - 1)];
      for (const auto& [key, c] : adj[static_cast<std::size_t>(k)]) {
        const Agg& a = contexts[key.substr(0, key.size() - 2)];
        double disc = c == 1 ? d.d1 : c == 2 ? d.d2 : d.d3;
        double gamma = (d.d1 * a.n1 + d.d2 * a.n2 + d.d3 * a.n3p) /
                       static_cast<double>(a.total);
        auto lower = lm.tables_[static_cast<std::size_t>(k - 1)].find(
            key.substr(2));
        if (lower == lm.tables_[static_cast<std::size_t>(k - 1)].end())
          throw std::logic_error("lower-order gram missing during training");
        double p = std::max(static_cast<double>(c) - disc, 0.0) /
                       static_cast<double>(a.total) +
                   gamma * std::pow(10.0, lower->second.logp);
        lm.tables_[static_cast<std::size_t>(k)][key] =
            Entry{std::log10(p), 0.0, false};
      }
      for (const auto& [ckey, a] : contexts) {
        double gamma = (d.d1 * a.n1 + d.d2 * a.n2 + d.d3 * a.n3p) /
                       static_cast<double>(a.total);
        auto it = lm.tables_[static_cast<std::size_t>(k - 1)].find(ckey);
        if (it == lm.tables_[static_cast<std::size_t>(k - 1)].end())
          throw std::logic_error("backoff context missing during training");
        it->second.bow = std::log10(gamma);
        it->second.has_bow = true;
      }
    }
    return lm;
  }

  // One sentence of whitespace-separated tags per line; .gz transparently.
  static PosLanguageModel train_file(const std::filesystem::path& path,
                                     int order) {
    std::vector<std::vector<std::string>> sentences;
    for (const std::string& line : read_lines(path)) {
      std::istringstream in(line);
      std::vector<std::string> tags;
      std::string t;
      while (in >> t) tags.push_back(t);
      if (!tags.empty()) sentences.push_back(std::move(tags));
    }
    if (sentences.empty())
      throw std::runtime_error("tag corpus '" + path.string() +
                               "' holds no sentences");
    return train(sentences, order);
  }

  // -------------------------------------------------------------------------
  // Queries

  // log10 p(word | context), full backoff walk. Unknown tags are read as
  // <unk>; models without <unk> score unknowns at -99.
  double conditional_log10(const std::vector<std::string>& context,
                           const std::string& word) const {
    std::vector<int> ctx;
    std::size_t keep = std::min(context.size(),
                                static_cast<std::size_t>(order_ - 1));
    for (std::size_t i = context.size() - keep; i < context.size(); ++i)
      ctx.push_back(id_or_unk(context[i]));
    return conditional_ids(ctx, id_or_unk(word));
  }

  // log10 of the padded (or raw) sequence probability under the chain rule.
  double sequence_log10(const std::vector<std::string>& tags,
                        bool pad = true) const {
    std::vector<int> ctx;
    if (pad) ctx.push_back(bos_ >= 0 ? bos_ : kMissing);
    double lp = 0.0;
    for (const std::string& tag : tags) {
      int id = id_or_unk(tag);
      if (ctx.size() >= static_cast<std::size_t>(order_))
        ctx.erase(ctx.begin());
      lp += conditional_ids(ctx, id);
      ctx.push_back(id);
    }
    if (pad) lp += conditional_ids(ctx, eos_ >= 0 ? eos_ : kMissing);
    return lp;
  }

  // Per-word grammaticality: p(c)^(1 / #words), in [0, 1]; higher is better.
  double grammaticality(const std::vector<std::string>& tags) const {
    if (tags.empty())
      throw std::invalid_argument("grammaticality of an empty sequence");
    return std::pow(10.0, sequence_log10(tags, true) /
                              static_cast<double>(tags.size()));
  }

  // Raw table inspection (tests): log10 prob and optional log10 backoff.
  std::optional<std::pair<double, std::optional<double>>> lookup(
      const std::vector<std::string>& tags) const {
    if (tags.empty() || tags.size() > static_cast<std::size_t>(order_))
      return std::nullopt;
    std::vector<int> ids;
    for (const std::string& t : tags) {
      auto it = ids_.find(t);
      if (it == ids_.end()) return std::nullopt;
      ids.push_back(it->second);
    }
    const auto& table = tables_[ids.size()];
    auto it = table.find(pack(ids.data(), static_cast<int>(ids.size())));
    if (it == table.end()) return std::nullopt;
    std::optional<double> bow;
    if (it->second.has_bow) bow = it->second.bow;
    return std::make_pair(it->second.logp, bow);
  }

  // -------------------------------------------------------------------------
  // ARPA text format

  void save_arpa(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out)
      throw std::runtime_error("cannot write '" + path.string() + "'");
    out << "\\data\\\n";
    for (int k = 1; k <= order_; ++k)
      out << "ngram " << k << '=' << tables_[static_cast<std::size_t>(k)].size()
          << '\n';
    char buf[64];
    for (int k = 1; k <= order_; ++k) {
      out << "\n\\" << k << "-grams:\n";
      const auto& table = tables_[static_cast<std::size_t>(k)];
      std::vector<const std::string*> keys;
      keys.reserve(table.size());
      for (const auto& [key, e] : table) keys.push_back(&key);
      std::sort(keys.begin(), keys.end(),
                [this](const std::string* a, const std::string* b) {
                  return tag_tuple(*a) < tag_tuple(*b);
                });
      for (const std::string* key : keys) {
        const Entry& e = table.at(*key);
        std::snprintf(buf, sizeof buf, "%.17g", e.logp);
        out << buf;
        for (int i = 0; i < k; ++i)
          out << (i ? ' ' : '\t')
              << vocab_[static_cast<std::size_t>(unpack(*key, i))];
        if (e.has_bow) {
          std::snprintf(buf, sizeof buf, "%.17g", e.bow);
          out << '\t' << buf;
        }
        out << '\n';
      }
    }
    out << "\n\\end\\\n";
    if (!out)
      throw std::runtime_error("error writing '" + path.string() + "'");
  }

  static PosLanguageModel load_arpa(const std::filesystem::path& path) {
    std::vector<std::string> lines = read_lines(path);
    PosLanguageModel lm;
    std::size_t i = 0;
    auto line_no = [&i] { return static_cast<int>(i) + 1; };
    while (i < lines.size() && detail_strip(lines[i]) != "\\data\\") ++i;
    if (i >= lines.size())
      throw ParseError("no \\data\\ section in '" + path.string() + "'");
    ++i;
    std::vector<long> declared;  // declared[k-1] = count of k-grams
    for (; i < lines.size(); ++i) {
      std::string s = detail_strip(lines[i]);
      if (s.empty()) continue;
      if (s.rfind("ngram ", 0) != 0) break;
      std::size_t eq = s.find('=');
      if (eq == std::string::npos)
        throw ParseError("malformed ngram count declaration", line_no());
      int k = 0;
      long n = -1;
      try {
        k = std::stoi(s.substr(6, eq - 6));
        n = std::stol(s.substr(eq + 1));
      } catch (const std::exception&) {
        throw ParseError("malformed ngram count declaration", line_no());
      }
      if (k != static_cast<int>(declared.size()) + 1 || n < 0)
        throw ParseError("ngram orders must be declared contiguously from 1",
                         line_no());
      declared.push_back(n);
    }
    if (declared.empty())
      throw ParseError("\\data\\ section declares no ngram orders",
                       static_cast<int>(i));
    lm.order_ = static_cast<int>(declared.size());
    lm.tables_.assign(static_cast<std::size_t>(lm.order_) + 1, {});

    for (int k = 1; k <= lm.order_; ++k) {
      std::string want = "\\" + std::to_string(k) + "-grams:";
      while (i < lines.size() && detail_strip(lines[i]).empty()) ++i;
      if (i >= lines.size() || detail_strip(lines[i]) != want)
        throw ParseError("expected section header " + want, line_no());
      ++i;
      auto& table = lm.tables_[static_cast<std::size_t>(k)];
      while (i < lines.size()) {
        std::string s = detail_strip(lines[i]);
        if (s.empty() || s[0] == '\\') break;
        std::istringstream in(lines[i]);
        std::vector<std::string> fields;
        std::string f;
        while (in >> f) fields.push_back(std::move(f));
        std::size_t want_tags = static_cast<std::size_t>(k);
        if (fields.size() != want_tags + 1 && fields.size() != want_tags + 2)
          throw ParseError("expected log10 prob, " + std::to_string(k) +
                               " tags and an optional backoff weight",
                           line_no());
        Entry e;
        if (!parse_double(fields[0], &e.logp))
          throw ParseError("malformed log probability '" + fields[0] + "'",
                           line_no());
        std::vector<int> ids;
        for (std::size_t t = 1; t <= want_tags; ++t)
          ids.push_back(lm.intern(fields[t]));
        if (fields.size() == want_tags + 2) {
          if (!parse_double(fields[want_tags + 1], &e.bow))
            throw ParseError("malformed backoff weight '" +
                                 fields[want_tags + 1] + "'",
                             line_no());
          e.has_bow = true;
        }
        if (!table.emplace(pack(ids.data(), k), e).second)
          throw ParseError("duplicate " + std::to_string(k) + "-gram",
                           line_no());
        ++i;
      }
      if (static_cast<long>(table.size()) != declared[static_cast<std::size_t>(k - 1)])
        throw ParseError("section \\" + std::to_string(k) + "-grams: holds " +
                             std::to_string(table.size()) + " entries, " +
                             std::to_string(declared[static_cast<std::size_t>(k - 1)]) +
                             " declared",
                         line_no());
    }
    while (i < lines.size() && detail_strip(lines[i]).empty()) ++i;
    if (i >= lines.size() || detail_strip(lines[i]) != "\\end\\")
      throw ParseError("missing \\end\\ marker", line_no());
    auto id_of = [&lm](const char* s) {
      auto it = lm.ids_.find(s);
      return it == lm.ids_.end() ? -1 : it->second;
    };
    lm.bos_ = id_of(kSentStart);
    lm.eos_ = id_of(kSentEnd);
    lm.unk_ = id_of(kUnknown);
    return lm;
  }

 private:
  struct Entry {
    double logp = 0.0;
    double bow = 0.0;
    bool has_bow = false;
  };

  static constexpr int kMissing = 0xFFFF;

  static std::string pack(const int* ids, int n) {
    std::string key(static_cast<std::size_t>(n) * 2, '\0');
    for (int i = 0; i < n; ++i) {
      key[static_cast<std::size_t>(2 * i)] =
          static_cast<char>(ids[i] & 0xFF);
      key[static_cast<std::size_t>(2 * i + 1)] =
          static_cast<char>((ids[i] >> 8) & 0xFF);
    }
    return key;
  }
  static std::string pack1(int id) { return pack(&id, 1); }
  static int unpack(const std::string& key, int i) {
    return (static_cast<unsigned char>(key[static_cast<std::size_t>(2 * i)])) |
           (static_cast<unsigned char>(key[static_cast<std::size_t>(2 * i + 1)])
            << 8);
  }

  std::vector<std::string> tag_tuple(const std::string& key) const {
    std::vector<std::string> tags;
    for (int i = 0; 2 * i < static_cast<int>(key.size()); ++i)
      tags.push_back(vocab_[static_cast<std::size_t>(unpack(key, i))]);
    return tags;
  }

  static bool parse_double(const std::string& s, double* out) {
    const char* begin = s.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end != begin + s.size()) return false;
    *out = v;
    return true;
  }

  static std::string detail_strip(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
  }

  int intern(const std::string& tag) {
    auto it = ids_.find(tag);
    if (it != ids_.end()) return it->second;
    if (vocab_.size() >= static_cast<std::size_t>(kMissing))
      throw std::runtime_error("tag vocabulary too large");
    int id = static_cast<int>(vocab_.size());
    vocab_.push_back(tag);
    ids_.emplace(tag, id);
    return id;
  }

  int id_or_unk(const std::string& tag) const {
    auto it = ids_.find(tag);
    if (it != ids_.end()) return it->second;
    return unk_ >= 0 ? unk_ : kMissing;
  }

  // Backoff walk over ids; kMissing never matches a stored key.
  double conditional_ids(std::vector<int> ctx, int w) const {
    if (ctx.size() >= static_cast<std::size_t>(order_))
      ctx.erase(ctx.begin(),
                ctx.end() - static_cast<long>(order_ - 1));
    double acc = 0.0;
    while (true) {
      std::vector<int> full = ctx;
      full.push_back(w);
      const auto& table = tables_[full.size()];
      auto it = table.find(pack(full.data(), static_cast<int>(full.size())));
      if (it != table.end()) return acc + it->second.logp;
      if (ctx.empty()) return acc - 99.0;  // unknown without <unk>
      const auto& ctable = tables_[ctx.size()];
      auto cit = ctable.find(pack(ctx.data(), static_cast<int>(ctx.size())));
      if (cit != ctable.end() && cit->second.has_bow)
        acc += cit->second.bow;
      ctx.erase(ctx.begin());
    }
  }

  int order_ = 0;
  std::vector<std::string> vocab_;
  std::unordered_map<std::string, int> ids_;
  std::vector<std::unordered_map<std::string, Entry>> tables_;
  std::vector<Discounts> discounts_;
  int bos_ = -1, eos_ = -1, unk_ = -1;
};

}  // namespace msc

#endif  // MSC_POS_LM_HPP
