// msc.cpp -- command-line front end: compress clusters, train tag language
// models, evaluate outputs, inspect word graphs.

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "msc/metrics.hpp"
#include "msc/pipeline.hpp"

namespace fs = std::filesystem;

namespace {

std::string fmt(double v, const char* spec = "%.6g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

struct LexiconArgs {
  std::string stopwords;
  std::string mwe_lexicon;
  std::string synonyms;

  msc::LexiconSet load() const {
    msc::LexiconSet lex;
    if (!stopwords.empty()) lex.stopwords = msc::StopwordList::load(stopwords);
    if (!mwe_lexicon.empty()) lex.mwes = msc::MweLexicon::load(mwe_lexicon);
    if (!synonyms.empty()) lex.synonyms = msc::SynonymSets::load(synonyms);
    return lex;
  }
};

void add_lexicon_flags(CLI::App* cmd, LexiconArgs* args,
                       bool stopwords_required) {
  auto* sw = cmd->add_option("--stopwords", args->stopwords,
                             "Stopword list, one word per line");
  if (stopwords_required) sw->required();
  cmd->add_option("--mwe-lexicon", args->mwe_lexicon,
                  "Multiword expression lexicon (TSV)");
  cmd->add_option("--synonyms", args->synonyms,
                  "Synonym sets, one tab-separated set per line");
}

struct CompressArgs {
  std::vector<std::string> clusters;
  LexiconArgs lexicons;
  std::string lm_path;
  std::string out_dir;
  msc::PipelineOptions opts;
  std::vector<std::string> verb_tags;
  bool no_mwe = false;
  bool no_synonym_mapping = false;
  bool explain = false;
  int jobs = 1;
};

int run_compress(const CompressArgs& args) {
  msc::LexiconSet lexicons = args.lexicons.load();
  msc::PosLanguageModel lm = msc::PosLanguageModel::load_arpa(args.lm_path);
  msc::PipelineOptions opts = args.opts;
  opts.graph.enable_mwe_merging = !args.no_mwe;
  opts.graph.enable_synonym_mapping = !args.no_synonym_mapping;
  if (!args.verb_tags.empty())
    opts.verb_tags = std::set<std::string>(args.verb_tags.begin(),
                                           args.verb_tags.end());

  struct Slot {
    bool ok = false;
    std::string out;
    std::string err;
  };
  std::vector<Slot> slots(args.clusters.size());
  std::atomic<std::size_t> next{0};

  auto work = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= args.clusters.size()) return;
      Slot& slot = slots[i];
      try {
        msc::Cluster cluster = msc::parse_cluster_file(args.clusters[i]);
        msc::PipelineResult result =
            msc::compress_cluster(cluster, lexicons, lm, opts);
        std::ostringstream os;
        os << cluster.id << '\t' << result.best().text() << '\n';
        if (args.explain) {
          os << "# cluster\trank\tfinal\tinfo_cost\tinfo_fitness\tlm_score"
                "\tlm_fitness\twords\ttext\n";
          for (const msc::RankedCandidate& rc : result.ranking.ranked) {
            os << cluster.id << '\t' << rc.rank << '\t'
               << fmt(rc.final_score) << '\t'
               << fmt(rc.candidate.informativity_cost) << '\t'
               << fmt(rc.info_fitness) << '\t' << fmt(rc.candidate.lm_score)
               << '\t' << fmt(rc.lm_fitness) << '\t'
               << rc.candidate.word_count << '\t' << rc.candidate.text()
               << '\n';
          }
          os << "# density " << fmt(result.density, "%.12g") << " ratio "
             << fmt(result.ratio) << " paths " << result.paths_found
             << " kept " << result.paths_kept << '\n';
        }
        if (!args.out_dir.empty()) {
          fs::create_directories(args.out_dir);
          fs::path out = fs::path(args.out_dir) / (cluster.id + ".txt");
          std::ofstream f(out);
          f << result.best().text() << '\n';
          if (!f) throw std::runtime_error("cannot write " + out.string());
        }
        slot.out = os.str();
        slot.ok = true;
      } catch (const std::exception& e) {
        slot.err = std::string(e.what());
      }
    }
  };

  int jobs = std::max(1, args.jobs);
  if (jobs == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }

  bool failed = false;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (slots[i].ok) {
      std::cout << slots[i].out;
    } else {
      failed = true;
      std::cerr << args.clusters[i] << ": " << slots[i].err << '\n';
    }
  }
  return failed ? 1 : 0;
}

int run_train_lm(const std::string& in, const std::string& out, int order) {
  msc::PosLanguageModel lm = msc::PosLanguageModel::train_file(in, order);
  lm.save_arpa(out);
  std::cout << "order " << lm.order();
  for (int k = 1; k <= lm.order(); ++k)
    std::cout << " " << k << "-grams " << lm.ngram_count(k);
  std::cout << '\n';
  return 0;
}

std::vector<std::string> read_tokens(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::vector<std::string> words;
  std::string w;
  while (in >> w) words.push_back(w);
  return words;
}

struct EvaluateArgs {
  std::string candidates;
  std::string references;
  std::string synonyms;
  bool average = false;
};

int run_evaluate(const EvaluateArgs& args) {
  msc::SynonymSets synonyms;
  if (!args.synonyms.empty())
    synonyms = msc::SynonymSets::load(args.synonyms);
  const msc::SynonymSets* syn = args.synonyms.empty() ? nullptr : &synonyms;

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(args.candidates)) {
    if (!entry.is_regular_file()) continue;
    fs::path p = entry.path();
    if (p.extension() != ".txt") continue;
    if (p.stem().string().find(".ref") != std::string::npos) continue;
    files.push_back(p);
  }
  std::sort(files.begin(), files.end());
  if (files.empty())
    throw std::runtime_error("no candidate .txt files under '" +
                             args.candidates + "'");

  fs::path ref_dir(args.references.empty() ? args.candidates
                                           : args.references);

  std::cout << "# cluster\trouge1_p\trouge1_r\trouge1_f\trouge2_p\trouge2_r"
               "\trouge2_f\tsu4_p\tsu4_r\tsu4_f\n";
  std::vector<msc::BleuSegment> segments;
  double sums[9] = {0};
  long scored = 0;
  bool failed = false;
  for (const fs::path& p : files) {
    std::string id = p.stem().string();
    std::vector<std::vector<std::string>> refs =
        msc::load_references(ref_dir / (id + ".txt"));
    if (refs.empty()) {
      std::cerr << id << ": no reference files\n";
      failed = true;
      continue;
    }
    std::vector<std::string> cand =
        msc::normalize_for_eval(read_tokens(p), syn);
    std::vector<std::vector<std::string>> nrefs;
    for (const auto& r : refs) nrefs.push_back(msc::normalize_for_eval(r, syn));
    msc::PRF r1 = msc::rouge_n(cand, nrefs, 1, args.average);
    msc::PRF r2 = msc::rouge_n(cand, nrefs, 2, args.average);
    msc::PRF su = msc::rouge_su4(cand, nrefs, args.average);
    double row[9] = {r1.precision, r1.recall, r1.f1,
                     r2.precision, r2.recall, r2.f1,
                     su.precision, su.recall, su.f1};
    std::cout << id;
    for (int c = 0; c < 9; ++c) {
      sums[c] += row[c];
      std::cout << '\t' << fmt(row[c]);
    }
    std::cout << '\n';
    segments.push_back(msc::BleuSegment{cand, nrefs});
    ++scored;
  }
  if (scored > 0) {
    std::cout << "average";
    for (int c = 0; c < 9; ++c) std::cout << '\t' << fmt(sums[c] / scored);
    std::cout << '\n';
    std::cout << "bleu4\t" << fmt(msc::bleu4(segments)) << '\n';
  }
  return failed || scored == 0 ? 1 : 0;
}

int run_inspect(const std::string& cluster_path, const LexiconArgs& lexargs,
                bool no_mwe, bool no_synonym_mapping) {
  msc::Cluster cluster = msc::parse_cluster_file(cluster_path);
  msc::BuildOptions opts;
  opts.enable_mwe_merging = !no_mwe;
  opts.enable_synonym_mapping = !no_synonym_mapping;
  msc::WordGraph graph = msc::WordGraph::build(cluster, lexargs.load(), opts);
  std::cout << graph.dump();
  return 0;
}

int run_density(const std::string& cluster_path, const LexiconArgs& lexargs,
                bool no_mwe, bool no_synonym_mapping, double threshold) {
  msc::Cluster cluster = msc::parse_cluster_file(cluster_path);
  msc::BuildOptions opts;
  opts.enable_mwe_merging = !no_mwe;
  opts.enable_synonym_mapping = !no_synonym_mapping;
  msc::WordGraph graph = msc::WordGraph::build(cluster, lexargs.load(), opts);
  double d = graph.density();
  const char* kind = msc::classify_cluster(d, threshold) ==
                             msc::ClusterKind::kNormal
                         ? "normal"
                         : "diverse";
  std::cout << cluster.id << '\t' << fmt(d, "%.12g") << '\t' << kind << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-sentence compression over POS-tagged clusters"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a key=value file");

  CompressArgs cargs;
  CLI::App* compress =
      app.add_subcommand("compress", "Compress one or more clusters");
  compress->add_option("clusters", cargs.clusters, "Cluster files")
      ->required()
      ->expected(-1);
  add_lexicon_flags(compress, &cargs.lexicons, /*stopwords_required=*/true);
  compress->add_option("--lm", cargs.lm_path, "POS language model (ARPA)")
      ->required();
  compress->add_option("--k", cargs.opts.k, "Shortest paths to draw")
      ->capture_default_str();
  compress->add_option("--mu", cargs.opts.mu, "Informativity weight in [0,1]")
      ->capture_default_str();
  compress
      ->add_option("--min-words", cargs.opts.min_words,
                   "Minimum compression length in words")
      ->capture_default_str();
  compress
      ->add_option("--verb-tags", cargs.verb_tags,
                   "Tags satisfying the verb filter "
                   "(default: VB,VBD,VBG,VBN,VBP,VBZ)")
      ->delimiter(',');
  compress
      ->add_option("--tr-window", cargs.opts.textrank.window,
                   "Co-occurrence window")
      ->capture_default_str();
  compress
      ->add_option("--tr-damping", cargs.opts.textrank.damping,
                   "Damping factor")
      ->capture_default_str();
  compress->add_flag("--no-mwe", cargs.no_mwe, "Disable MWE merging");
  compress->add_flag("--no-synonym-mapping", cargs.no_synonym_mapping,
                     "Disable synonym node mapping");
  compress->add_flag("--explain", cargs.explain,
                     "Print the full candidate table");
  compress->add_option("--jobs", cargs.jobs, "Worker threads")
      ->capture_default_str();
  compress->add_option("--out-dir", cargs.out_dir,
                       "Write <cluster>.txt files here as well");

  std::string lm_in, lm_out;
  int lm_order = msc::kDefaultLmOrder;
  CLI::App* train =
      app.add_subcommand("train-lm", "Estimate a POS n-gram model");
  train
      ->add_option("--in", lm_in,
                   "Tag corpus: one sentence of tags per line (.gz ok)")
      ->required();
  train->add_option("--out", lm_out, "ARPA output path")->required();
  train->add_option("--order", lm_order, "Model order")
      ->capture_default_str();

  EvaluateArgs eargs;
  CLI::App* evaluate = app.add_subcommand(
      "evaluate", "Score candidate compressions against references");
  evaluate
      ->add_option("--candidates", eargs.candidates,
                   "Directory of <cluster>.txt candidates")
      ->required();
  evaluate->add_option("--references", eargs.references,
                       "Directory of <cluster>.ref<k>.txt files "
                       "(default: the candidate directory)");
  evaluate->add_option("--synonyms", eargs.synonyms,
                       "Rewrite synonyms to a canonical head before scoring");
  evaluate->add_flag("--average", eargs.average,
                     "Average ROUGE over references instead of best-F1");

  std::string graph_cluster;
  LexiconArgs graph_lex;
  bool graph_no_mwe = false, graph_no_syn = false;
  CLI::App* inspect =
      app.add_subcommand("inspect-graph", "Dump a cluster's word graph");
  inspect->add_option("cluster", graph_cluster, "Cluster file")->required();
  add_lexicon_flags(inspect, &graph_lex, /*stopwords_required=*/false);
  inspect->add_flag("--no-mwe", graph_no_mwe, "Disable MWE merging");
  inspect->add_flag("--no-synonym-mapping", graph_no_syn,
                    "Disable synonym node mapping");

  std::string dens_cluster;
  LexiconArgs dens_lex;
  bool dens_no_mwe = false, dens_no_syn = false;
  double dens_threshold = 0.05;
  CLI::App* density = app.add_subcommand(
      "density", "Report a cluster's graph density and its class");
  density->add_option("cluster", dens_cluster, "Cluster file")->required();
  add_lexicon_flags(density, &dens_lex, /*stopwords_required=*/false);
  density->add_flag("--no-mwe", dens_no_mwe, "Disable MWE merging");
  density->add_flag("--no-synonym-mapping", dens_no_syn,
                    "Disable synonym node mapping");
  density
      ->add_option("--density-threshold", dens_threshold,
                   "Normal/diverse boundary")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (compress->parsed()) return run_compress(cargs);
    if (train->parsed()) return run_train_lm(lm_in, lm_out, lm_order);
    if (evaluate->parsed()) return run_evaluate(eargs);
    if (inspect->parsed())
      return run_inspect(graph_cluster, graph_lex, graph_no_mwe,
                         graph_no_syn);
    if (density->parsed())
      return run_density(dens_cluster, dens_lex, dens_no_mwe, dens_no_syn,
                         dens_threshold);
  } catch (const std::exception& e) {
    std::cerr << "msc: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
