// pos_lm_test.cc -- Kneser-Ney estimation against an independent reference
// implementation, normalization, discount math, backoff walks, padding, and
// ARPA round trips.

#include "msc/pos_lm.hpp"

#include "ref_lm_oracle.hpp"

#include <gtest/gtest.h>
#include <zlib.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace {

using msc::ParseError;
using msc::PosLanguageModel;
using ref_lm::build_reference;
using ref_lm::Corpus;
using ref_lm::random_corpus;
using ref_lm::RefModel;

TEST(PosLmTest, MatchesReferenceModelOnRandomCorpora) {
  std::mt19937 rng(20260815);
  for (int trial = 0; trial < 50; ++trial) {
    Corpus corpus = random_corpus(rng);
    for (int order : {2, 3}) {
      PosLanguageModel lm = PosLanguageModel::train(corpus, order);
      RefModel ref = build_reference(corpus, order);

      // Every observed context, every predictable word.
      for (int k = 1; k < order; ++k)
        for (const auto& [ctx, agg] : ref.stats[static_cast<std::size_t>(k + 1)]) {
          (void)agg;
          for (const std::string& w : ref.tags) {
            double pm = std::pow(10.0, lm.conditional_log10(ctx, w));
            double pr = ref.p(ctx, w);
            ASSERT_NEAR(pm, pr, pr * 1e-9)
                << "trial " << trial << " order " << order << " word " << w;
          }
        }
      // Unigrams and normalization per context.
      double sum = 0.0;
      for (const std::string& w : ref.tags) {
        double pm = std::pow(10.0, lm.conditional_log10({}, w));
        ASSERT_NEAR(pm, ref.unigram(w), ref.unigram(w) * 1e-9);
        sum += pm;
      }
      EXPECT_NEAR(sum, 1.0, 1e-9) << "trial " << trial;
      for (const auto& [ctx, agg] : ref.stats[2]) {
        (void)agg;
        double csum = 0.0;
        for (const std::string& w : ref.tags)
          csum += std::pow(10.0, lm.conditional_log10(ctx, w));
        ASSERT_NEAR(csum, 1.0, 1e-9)
            << "trial " << trial << " ctx " << ctx.front();
      }
      // Chain rule over random sequences, unseen tags included.
      std::uniform_int_distribution<int> n_len(1, 6);
      static const std::vector<std::string> pool{"A", "B", "C", "D", "E",
                                                 "ZZ"};
      std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
      for (int q = 0; q < 10; ++q) {
        std::vector<std::string> seq;
        int len = n_len(rng);
        for (int i = 0; i < len; ++i) seq.push_back(pool[pick(rng)]);
        EXPECT_NEAR(lm.sequence_log10(seq, true), ref.sequence_log10(seq),
                    1e-9)
            << "trial " << trial;
      }
    }
  }
}

// Contrived corpus with unigram count-of-count classes n1=8 (seven
// singletons plus the <unk> floor), n2=4, n3=2, n4=1; five sentences keep
// </s> out of the classes.
TEST(PosLmTest, DiscountEstimatesFollowTheCountsOfCounts) {
  Corpus corpus{{"A1", "A2", "A3", "A4", "A5"},
                {"A6", "A7", "B1", "B1", "B2"},
                {"B2", "B3", "B3", "B4", "B4"},
                {"C1", "C1", "C1", "C2", "C2"},
                {"C2", "D1", "D1", "D1", "D1"}};
  PosLanguageModel lm = PosLanguageModel::train(corpus, 1);
  ASSERT_EQ(lm.discounts().size(), 1u);
  const PosLanguageModel::Discounts& d = lm.discounts()[0];
  EXPECT_FALSE(d.fallback);
  double y = 8.0 / (8.0 + 2.0 * 4.0);
  EXPECT_DOUBLE_EQ(d.d1, 1.0 - 2.0 * y * 4.0 / 8.0);  // 0.5
  EXPECT_DOUBLE_EQ(d.d2, 2.0 - 3.0 * y * 2.0 / 4.0);  // 1.25
  EXPECT_DOUBLE_EQ(d.d3, 3.0 - 4.0 * y * 1.0 / 2.0);  // 2.0

  // Hand-computed unigram probabilities: total 31 (25 words + 5 </s> +
  // <unk>), 16 predictable types, gamma = (0.5*8 + 1.25*4 + 2*4)/31.
  auto prob = [&lm](const std::string& w) {
    return std::pow(10.0, lm.conditional_log10({}, w));
  };
  EXPECT_NEAR(prob("A1"), 25.0 / 496.0, 1e-14);
  EXPECT_NEAR(prob("D1"), 49.0 / 496.0, 1e-14);
  EXPECT_NEAR(prob("</s>"), 65.0 / 496.0, 1e-14);
}

TEST(PosLmTest, FlatFallbackOnSparseCounts) {
  // Two sentences cannot produce all four count-of-count classes.
  PosLanguageModel lm =
      PosLanguageModel::train({{"A", "B"}, {"A", "B"}}, 2);
  for (const auto& d : lm.discounts()) {
    EXPECT_TRUE(d.fallback);
    EXPECT_DOUBLE_EQ(d.d1, 0.5);
    EXPECT_DOUBLE_EQ(d.d2, 0.5);
    EXPECT_DOUBLE_EQ(d.d3, 0.5);
  }
}

TEST(PosLmTest, SentenceStartKeepsRawCountsAndIsNeverPredicted) {
  PosLanguageModel lm = PosLanguageModel::train(
      {{"A", "B"}, {"A", "B"}, {"A", "C"}, {"B", "A"}}, 2);
  auto uni = lm.lookup({"<s>"});
  ASSERT_TRUE(uni.has_value());
  EXPECT_DOUBLE_EQ(uni->first, -99.0);
  EXPECT_DOUBLE_EQ(lm.conditional_log10({"A"}, "<s>"),
                   lm.lookup({"A"})->second.value() + -99.0);
  // Three of four sentences open with A.
  double pa = std::pow(10.0, lm.conditional_log10({"<s>"}, "A"));
  double pb = std::pow(10.0, lm.conditional_log10({"<s>"}, "B"));
  EXPECT_GT(pa, pb);
  EXPECT_GT(pb, 0.0);
}

TEST(PosLmTest, SeenSequencesOutscoreShuffledOnes) {
  Corpus corpus(50, {"DT", "NN", "VB"});
  PosLanguageModel lm = PosLanguageModel::train(corpus, 3);
  double good = lm.grammaticality({"DT", "NN", "VB"});
  double bad = lm.grammaticality({"VB", "DT", "NN"});
  EXPECT_GT(good, 0.8);
  EXPECT_LT(bad, good);
  EXPECT_GT(bad, 0.0);
}

TEST(PosLmTest, UnknownTagsReadAsUnk) {
  PosLanguageModel lm =
      PosLanguageModel::train({{"A", "B"}, {"B", "A"}}, 2);
  EXPECT_DOUBLE_EQ(lm.conditional_log10({}, "XYZ"),
                   lm.lookup({"<unk>"})->first);
  EXPECT_DOUBLE_EQ(lm.conditional_log10({"XYZ"}, "A"),
                   lm.conditional_log10({"<unk>"}, "A"));
}

TEST(PosLmTest, PaddedSequenceWalksTheStoredGrams) {
  PosLanguageModel lm =
      PosLanguageModel::train({{"A", "B"}, {"A", "B"}}, 2);
  double padded = lm.sequence_log10({"A", "B"}, true);
  EXPECT_DOUBLE_EQ(padded, lm.lookup({"<s>", "A"})->first +
                               lm.lookup({"A", "B"})->first +
                               lm.lookup({"B", "</s>"})->first);
  double raw = lm.sequence_log10({"A", "B"}, false);
  EXPECT_DOUBLE_EQ(raw,
                   lm.lookup({"A"})->first + lm.lookup({"A", "B"})->first);
  EXPECT_DOUBLE_EQ(lm.grammaticality({"A", "B"}),
                   std::pow(10.0, padded / 2.0));
  EXPECT_THROW(lm.grammaticality({}), std::invalid_argument);
}

TEST(PosLmTest, LongContextsAreTrimmedToTheModelOrder) {
  PosLanguageModel lm = PosLanguageModel::train(
      {{"A", "B", "C"}, {"B", "C", "A"}, {"C", "A", "B"}}, 2);
  EXPECT_EQ(lm.conditional_log10({"X", "Y", "A"}, "B"),
            lm.conditional_log10({"A"}, "B"));
}

TEST(PosLmTest, OrderBeyondTheDataStillTrains) {
  PosLanguageModel lm = PosLanguageModel::train({{"A"}, {"B"}}, 5);
  EXPECT_EQ(lm.order(), 5);
  EXPECT_EQ(lm.ngram_count(5), 0u);
  EXPECT_TRUE(std::isfinite(lm.sequence_log10({"A", "B", "A"}, true)));
  EXPECT_GT(lm.grammaticality({"A"}), 0.0);
}

TEST(PosLmTest, RejectsDegenerateTraining) {
  EXPECT_THROW(PosLanguageModel::train({}, 2), std::invalid_argument);
  EXPECT_THROW(PosLanguageModel::train({{"A"}}, 0), std::invalid_argument);
  EXPECT_THROW(PosLanguageModel::train({{}}, 2), std::invalid_argument);
}

// ----------------------------------------------------------------------------
// ARPA I/O

TEST(PosLmTest, ArpaRoundTripPreservesEveryQuery) {
  std::mt19937 rng(7);
  Corpus corpus = random_corpus(rng);
  PosLanguageModel lm = PosLanguageModel::train(corpus, 3);
  std::filesystem::path dir(testing::TempDir());
  std::filesystem::path f1 = dir / "model1.arpa";
  std::filesystem::path f2 = dir / "model2.arpa";
  lm.save_arpa(f1);
  PosLanguageModel back = PosLanguageModel::load_arpa(f1);
  EXPECT_EQ(back.order(), lm.order());
  for (int k = 1; k <= lm.order(); ++k)
    EXPECT_EQ(back.ngram_count(k), lm.ngram_count(k));
  std::vector<std::string> pool{"A", "B", "C", "D", "E", "</s>", "<unk>"};
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (int q = 0; q < 500; ++q) {
    std::vector<std::string> ctx;
    ctx.push_back(pool[pick(rng)]);
    if (q % 2) ctx.push_back(pool[pick(rng)]);
    const std::string& w = pool[pick(rng)];
    EXPECT_EQ(back.conditional_log10(ctx, w), lm.conditional_log10(ctx, w));
  }
  // Saving the loaded model reproduces the file byte for byte.
  back.save_arpa(f2);
  std::ifstream a(f1), b(f2);
  std::stringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  EXPECT_EQ(sa.str(), sb.str());
  EXPECT_GT(sa.str().size(), 0u);
}

const char* kTinyArpa =
    "header noise to skip\n"
    "\n"
    "\\data\\\n"
    "ngram 1=3\n"
    "ngram 2=1\n"
    "\n"
    "\\1-grams:\n"
    "-0.301029995663981\tA\t-0.1\n"
    "-0.602059991327962\tB\n"
    "-99\t<s>\n"
    "\n"
    "\\2-grams:\n"
    "-0.15\t<s> A\n"
    "\n"
    "\\end\\\n";

std::filesystem::path write_file(const std::string& name,
                                 const std::string& text) {
  std::filesystem::path p = std::filesystem::path(testing::TempDir()) / name;
  std::ofstream out(p);
  out << text;
  return p;
}

TEST(PosLmTest, LoadsHandWrittenArpa) {
  PosLanguageModel lm =
      PosLanguageModel::load_arpa(write_file("tiny.arpa", kTinyArpa));
  EXPECT_EQ(lm.order(), 2);
  EXPECT_EQ(lm.ngram_count(1), 3u);
  EXPECT_EQ(lm.ngram_count(2), 1u);
  auto a = lm.lookup({"A"});
  ASSERT_TRUE(a.has_value());
  EXPECT_DOUBLE_EQ(a->first, -0.301029995663981);
  ASSERT_TRUE(a->second.has_value());
  EXPECT_DOUBLE_EQ(a->second.value(), -0.1);
  EXPECT_FALSE(lm.lookup({"B"})->second.has_value());
  // Direct hit, backoff with a weight, and backoff without one.
  EXPECT_DOUBLE_EQ(lm.conditional_log10({"<s>"}, "A"), -0.15);
  EXPECT_DOUBLE_EQ(lm.conditional_log10({"A"}, "B"),
                   -0.1 + -0.602059991327962);
  EXPECT_DOUBLE_EQ(lm.conditional_log10({"B"}, "A"), -0.301029995663981);
  // No <unk> in this file: unknown tags bottom out at -99.
  EXPECT_DOUBLE_EQ(lm.conditional_log10({}, "ZZ"), -99.0);
}

int arpa_error_line(const std::string& name, const std::string& text) {
  try {
    PosLanguageModel::load_arpa(write_file(name, text));
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

TEST(PosLmTest, MalformedArpaFilesNameTheLine) {
  EXPECT_THROW(
      PosLanguageModel::load_arpa(write_file("e0.arpa", "no data here\n")),
      ParseError);
  // Orders must start at 1 and be contiguous.
  EXPECT_EQ(arpa_error_line("e1.arpa", "\\data\\\nngram 2=1\n"), 2);
  EXPECT_EQ(arpa_error_line("e2.arpa", "\\data\\\nngram x=1\n"), 2);
  // Wrong field count inside a section.
  EXPECT_EQ(arpa_error_line("e3.arpa",
                            "\\data\\\n"
                            "ngram 1=1\n"
                            "\\1-grams:\n"
                            "-0.5\n"
                            "\\end\\\n"),
            4);
  // Malformed probability.
  EXPECT_EQ(arpa_error_line("e4.arpa",
                            "\\data\\\n"
                            "ngram 1=1\n"
                            "\\1-grams:\n"
                            "zero\tA\n"
                            "\\end\\\n"),
            4);
  // Duplicated gram.
  EXPECT_EQ(arpa_error_line("e5.arpa",
                            "\\data\\\n"
                            "ngram 1=2\n"
                            "\\1-grams:\n"
                            "-0.5\tA\n"
                            "-0.6\tA\n"
                            "\\end\\\n"),
            5);
  // Declared and actual counts disagree.
  EXPECT_THROW(PosLanguageModel::load_arpa(write_file("e6.arpa",
                                                      "\\data\\\n"
                                                      "ngram 1=2\n"
                                                      "\\1-grams:\n"
                                                      "-0.5\tA\n"
                                                      "\\end\\\n")),
               ParseError);
  // Missing \end\ marker.
  EXPECT_THROW(PosLanguageModel::load_arpa(write_file("e7.arpa",
                                                      "\\data\\\n"
                                                      "ngram 1=1\n"
                                                      "\\1-grams:\n"
                                                      "-0.5\tA\n")),
               ParseError);
  // The message carries the line too.
  try {
    PosLanguageModel::load_arpa(write_file("e8.arpa",
                                           "\\data\\\n"
                                           "ngram 1=1\n"
                                           "\\1-grams:\n"
                                           "zero\tA\n"
                                           "\\end\\\n"));
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos);
  }
}

TEST(PosLmTest, TrainsFromPlainAndGzippedFiles) {
  std::string text = "DT NN VB\nDT NN\nNN VB DT\n";
  std::filesystem::path plain = write_file("corpus.txt", text);
  std::filesystem::path gz =
      std::filesystem::path(testing::TempDir()) / "corpus.txt.gz";
  gzFile zf = gzopen(gz.string().c_str(), "wb");
  ASSERT_NE(zf, nullptr);
  ASSERT_EQ(gzwrite(zf, text.data(), static_cast<unsigned>(text.size())),
            static_cast<int>(text.size()));
  gzclose(zf);

  PosLanguageModel a = PosLanguageModel::train_file(plain, 2);
  PosLanguageModel b = PosLanguageModel::train_file(gz, 2);
  EXPECT_EQ(a.ngram_count(1), b.ngram_count(1));
  EXPECT_EQ(a.ngram_count(2), b.ngram_count(2));
  EXPECT_EQ(a.conditional_log10({"DT"}, "NN"),
            b.conditional_log10({"DT"}, "NN"));
  EXPECT_EQ(a.sequence_log10({"DT", "NN", "VB"}, true),
            b.sequence_log10({"DT", "NN", "VB"}, true));
  std::filesystem::path empty = write_file("empty.txt", "\n\n");
  EXPECT_THROW(PosLanguageModel::train_file(empty, 2), std::runtime_error);
}

}  // namespace
