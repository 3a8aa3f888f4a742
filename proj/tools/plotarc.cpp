// plotarc: sentiment-arc featurization, happy-ending classification
// experiments and synthetic corpora from the command line.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "plotarc/plotarc.hpp"

namespace fs = std::filesystem;
using namespace plotarc;

namespace {

struct RunConfig {
  std::string corpus_dir;
  std::string metadata;
  std::string lexicon;
  std::string lemma_map;
  std::string profiles;
  std::size_t segments = kDefaultSegments;
  std::size_t final_len = 4;
  std::optional<std::size_t> late_len;
  int feature_set = 3;
  std::size_t folds = 10;
  std::uint64_t seed = 42;
  double C = 1.0;
  std::size_t epochs = 200;
  std::string out = ".";
  std::size_t jobs = 1;
  bool dry_run = false;
  std::string oov = "matched";
  std::vector<double> fractions;
  std::size_t max_final_len = 37;
  std::vector<int> boundaries = kDefaultPeriodBoundaries;
  std::string experiment;

  // synth
  std::size_t novels = 40;
  std::size_t tokens = 1500;
  std::size_t ending = 4;

  ExperimentConfig experiment_config() const {
    ExperimentConfig cfg;
    cfg.n_segments = segments;
    cfg.final_len = final_len;
    cfg.late_len = late_len.value_or(final_len);
    cfg.oov_policy = oov == "all" ? OovPolicy::all_tokens : OovPolicy::matched_only;
    cfg.cv = {folds, seed, C, epochs, jobs};
    return cfg;
  }
};

void add_corpus_options(CLI::App& cmd, RunConfig& rc) {
  cmd.add_option("--corpus", rc.corpus_dir, "Directory holding <id>.txt files");
  cmd.add_option("--metadata", rc.metadata, "Metadata TSV (id, title, author, year, label)");
  cmd.add_option("--lexicon", rc.lexicon, "Emotion lexicon TSV");
  cmd.add_option("--lemma-map", rc.lemma_map, "Optional surface<TAB>lemma TSV");
  cmd.add_option("--segments", rc.segments, "Segments per novel")->capture_default_str()->check(CLI::Range(2, 100000));
  cmd.add_option("--oov-policy", rc.oov, "Segment average denominator: matched or all")
      ->capture_default_str()
      ->check(CLI::IsMember({"matched", "all"}));
  cmd.add_option("--out", rc.out, "Output directory")->capture_default_str();
  cmd.add_option("--jobs", rc.jobs, "Worker threads")->capture_default_str()->check(CLI::Range(1, 1024));
  cmd.add_flag("--dry-run", rc.dry_run, "Print the resolved configuration and exit");
}

void add_classifier_options(CLI::App& cmd, RunConfig& rc) {
  cmd.add_option("--final-len", rc.final_len, "Segments in the final section")->capture_default_str();
  cmd.add_option("--late-len", rc.late_len, "Segments in the late-main section (default: final-len)");
  cmd.add_option("--feature-set", rc.feature_set, "Feature set 1..6 (sweep, periods)")
      ->capture_default_str()
      ->check(CLI::Range(1, 6));
  cmd.add_option("--folds", rc.folds, "Cross-validation folds")->capture_default_str()->check(CLI::Range(2, 1000));
  cmd.add_option("--seed", rc.seed, "Random seed")->capture_default_str();
  cmd.add_option("--c", rc.C, "SVM regularization trade-off C")->capture_default_str()->check(CLI::PositiveNumber);
  cmd.add_option("--epochs", rc.epochs, "SVM training epochs")->capture_default_str()->check(CLI::Range(1, 1000000));
  cmd.add_option("--fractions", rc.fractions, "Main-section fractions to sweep (default: one per segment)")
      ->delimiter(',');
  cmd.add_option("--max-final-len", rc.max_final_len, "Largest final section in the default sweep grid")
      ->capture_default_str()
      ->check(CLI::Range(1, 100000));
  cmd.add_option("--boundaries", rc.boundaries, "Period boundary years, inclusive upper ends")
      ->delimiter(',')
      ->capture_default_str();
  cmd.add_option("--profiles", rc.profiles, "Profile cache from `featurize` to reuse instead of --corpus/--lexicon");
}

void echo(const std::string& command, const RunConfig& rc) {
  std::cout << "command=" << command << '\n';
  if (command == "synth") {
    std::cout << "seed=" << rc.seed << "\nnovels=" << rc.novels << "\ntokens=" << rc.tokens << "\nending=" << rc.ending
              << "\nsegments=" << rc.segments << "\nlexicon=" << (rc.lexicon.empty() ? "(builtin)" : rc.lexicon)
              << "\nout=" << rc.out << '\n';
    return;
  }
  const ExperimentConfig cfg = rc.experiment_config();
  if (!rc.experiment.empty()) std::cout << "experiment=" << rc.experiment << '\n';
  std::cout << "corpus=" << rc.corpus_dir << "\nmetadata=" << rc.metadata << "\nlexicon=" << rc.lexicon
            << "\nlemma_map=" << (rc.lemma_map.empty() ? "(none)" : rc.lemma_map)
            << "\nprofiles=" << (rc.profiles.empty() ? "(none)" : rc.profiles) << "\nsegments=" << cfg.n_segments
            << "\noov_policy=" << oov_policy_name(cfg.oov_policy) << "\nfinal_len=" << cfg.final_len
            << "\nlate_len=" << cfg.late_len << "\nfeature_set=" << rc.feature_set << "\nfolds=" << cfg.cv.folds
            << "\nseed=" << cfg.cv.seed << "\nC=" << text::format_exact(cfg.cv.C) << "\nepochs=" << cfg.cv.epochs
            << "\njobs=" << cfg.cv.jobs << "\nout=" << rc.out << '\n';
  std::cout.flush();
}

void require(const std::string& value, const std::string& flag) {
  if (value.empty()) throw ConfigError("missing required option " + flag);
}

Corpus load_inputs_corpus(const RunConfig& rc) {
  require(rc.corpus_dir, "--corpus");
  require(rc.metadata, "--metadata");
  const LemmaMap lemmas = rc.lemma_map.empty() ? LemmaMap{} : load_lemma_map(rc.lemma_map);
  return load_corpus(rc.corpus_dir, rc.metadata, lemmas, rc.jobs);
}

ProfiledCorpus load_profiled(const RunConfig& rc, const ExperimentConfig& cfg) {
  if (rc.profiles.empty()) {
    require(rc.lexicon, "--lexicon");
    const SentimentLexicon lexicon = load_lexicon(rc.lexicon);
    return profile_corpus(load_inputs_corpus(rc), lexicon, cfg.n_segments, cfg.oov_policy, cfg.cv.jobs);
  }
  // Profiles come from the cache; metadata still supplies labels and years.
  require(rc.metadata, "--metadata");
  std::ifstream meta(rc.metadata, std::ios::binary);
  if (!meta) throw LoadError("cannot open metadata file: " + rc.metadata);
  const auto rows = parse_metadata(meta);
  std::ifstream cache(rc.profiles, std::ios::binary);
  if (!cache) throw LoadError("cannot open profile cache: " + rc.profiles);
  auto cached = parse_profiles(cache);
  std::map<std::string, SegmentProfile> by_id;
  for (auto& p : cached) by_id.emplace(p.novel_id, std::move(p));
  ProfiledCorpus pc;
  Fnv1a h;
  h.update(text::read_file(rc.profiles));
  for (const auto& m : rows) {
    const auto it = by_id.find(m.id);
    if (it == by_id.end()) throw LoadError("profile cache has no entry for novel '" + m.id + "'");
    if (it->second.n_segments() != cfg.n_segments)
      throw ConfigError("cached profile of '" + m.id + "' has " + std::to_string(it->second.n_segments()) +
                        " segments, expected " + std::to_string(cfg.n_segments));
    pc.profiles.push_back(it->second);
    pc.metadata.push_back(m);
    h.update(m.id).update(std::to_string(m.year)).update(label_name(m.label));
  }
  pc.corpus_checksum = h.hex();
  pc.lexicon_checksum = "profile-cache:" + Fnv1a{}.update(text::read_file(rc.profiles)).hex();
  return pc;
}

struct PendingFile {
  fs::path path;
  std::string content;
};

void write_all(const fs::path& dir, const std::vector<PendingFile>& files) {
  fs::create_directories(dir);
  for (const auto& f : files) {
    text::write_file((dir / f.path).string(), f.content);
    std::cout << "wrote " << (dir / f.path).string() << '\n';
  }
}

int cmd_featurize(const RunConfig& rc) {
  const ExperimentConfig cfg = rc.experiment_config();
  require(rc.lexicon, "--lexicon");
  const SentimentLexicon lexicon = load_lexicon(rc.lexicon);
  const Corpus corpus = load_inputs_corpus(rc);
  const auto profiles = build_profiles(corpus, lexicon, cfg.n_segments, cfg.oov_policy, rc.jobs);
  for (const auto& p : profiles) {
    std::size_t matched = 0, lo = p.matched_counts.front(), hi = p.matched_counts.front();
    for (std::size_t c : p.matched_counts) {
      matched += c;
      lo = std::min(lo, c);
      hi = std::max(hi, c);
    }
    std::cout << p.novel_id << ": matched=" << matched << " per_segment_min=" << lo << " per_segment_max=" << hi
              << '\n';
  }
  write_all(rc.out, {{"profiles.csv", serialize_profiles(profiles)}});
  return 0;
}

std::vector<double> sweep_fractions(const RunConfig& rc) {
  return rc.fractions.empty() ? default_sweep_fractions(rc.segments, rc.max_final_len) : rc.fractions;
}

int cmd_run(const RunConfig& rc) {
  const ExperimentConfig cfg = rc.experiment_config();
  std::vector<PendingFile> files;
  if (rc.experiment == "baselines") {
    // Only labels matter, so a profile cache plus metadata is enough.
    std::size_t n_novels = 0, n_happy = 0;
    std::string checksum;
    if (rc.profiles.empty()) {
      const Corpus corpus = load_inputs_corpus(rc);
      n_novels = corpus.total();
      n_happy = corpus.happy();
      checksum = corpus_checksum(corpus);
    } else {
      const ProfiledCorpus pc = load_profiled(rc, cfg);
      n_novels = pc.metadata.size();
      for (const auto& m : pc.metadata) n_happy += m.label == Label::happy;
      checksum = pc.corpus_checksum;
    }
    const Baselines b = baselines_from_counts(n_happy, n_novels);
    files.push_back({"baselines.csv", "random_accuracy,majority_accuracy,random_f1\n" + metric(b.random_accuracy) +
                                          ',' + metric(b.majority_accuracy) + ',' + metric(b.random_f1) + '\n'});
    files.push_back({"baselines.meta.txt", render_meta({{"format", std::string(kReportFormatVersion)},
                                                        {"experiment", "baselines"},
                                                        {"n_novels", std::to_string(n_novels)},
                                                        {"n_happy", std::to_string(n_happy)},
                                                        {"corpus_checksum", checksum}})});
    write_all(rc.out, files);
    return 0;
  }

  const ProfiledCorpus pc = load_profiled(rc, cfg);
  if (rc.experiment == "ladder") {
    const LadderReport report = run_feature_ladder(pc, cfg);
    for (const auto& r : report.rows)
      std::cout << "feature set " << r.feature_set_id << ": f1=" << metric(r.f1) << " accuracy=" << metric(r.accuracy)
                << '\n';
    files.push_back({"ladder.csv", render_ladder_csv(report)});
    files.push_back({"ladder.meta.txt", render_meta(ladder_meta(report, pc))});
  } else if (rc.experiment == "sweep") {
    const SweepCurve curve = run_partition_sweep(pc, sweep_fractions(rc), rc.feature_set, cfg);
    if (const auto* b = curve.best())
      std::cout << "best final_len=" << b->final_len << " main_fraction=" << metric(b->main_fraction)
                << " f1=" << metric(b->f1) << '\n';
    files.push_back({"sweep.csv", render_sweep_csv(curve)});
    files.push_back({"sweep.meta.txt", render_meta(sweep_meta(curve, cfg, pc))});
    files.push_back({"sweep.svg", render_sweep_svg(curve)});
    files.push_back({"sweep_novels.csv", render_sweep_novels_csv(curve)});
  } else if (rc.experiment == "periods") {
    const auto fractions = sweep_fractions(rc);
    const PeriodReport report = run_period_analysis(pc, rc.boundaries, fractions, rc.feature_set, cfg);
    for (const auto& g : report.groups) {
      if (g.skipped)
        std::cerr << "warning: period " << g.label << " skipped: " << g.skip_reason << '\n';
      else if (const auto* b = g.curve.best())
        std::cout << "period " << g.label << ": n=" << g.n_novels << " best final_len=" << b->final_len
                  << " f1=" << metric(b->f1) << '\n';
    }
    files.push_back({"periods.csv", render_periods_csv(report)});
    files.push_back({"periods.meta.txt", render_meta(periods_meta(report, fractions, cfg, pc))});
    files.push_back({"periods.svg", render_periods_svg(report)});
  }
  write_all(rc.out, files);
  return 0;
}

// Range checks that do not need any input file, so --dry-run reports them too.
void validate(const std::string& command, const RunConfig& rc) {
  if (command == "synth") {
    if (rc.novels == 0 || rc.novels % 2 != 0) throw ConfigError("--novels must be even and positive (balanced labels)");
    if (rc.ending < 1 || rc.ending > 10) throw ConfigError("--ending must be in 1..10");
    if (rc.tokens < rc.segments) throw ConfigError("--tokens must be at least --segments");
    return;
  }
  if (command == "run" && rc.experiment != "baselines") {
    const ExperimentConfig cfg = rc.experiment_config();
    if (rc.experiment == "ladder") cfg.partition().validate();
    for (double f : rc.fractions) final_len_for_fraction(f, rc.segments);
    for (std::size_t i = 1; i < rc.boundaries.size(); ++i)
      if (rc.boundaries[i] <= rc.boundaries[i - 1]) throw ConfigError("--boundaries must be strictly increasing");
  }
}

int cmd_synth(const RunConfig& rc) {
  SyntheticOptions opt;
  opt.seed = rc.seed;
  opt.n_novels = rc.novels;
  opt.tokens_per_novel = rc.tokens;
  opt.ending_len_segments = rc.ending;
  opt.n_segments = rc.segments;
  const SentimentLexicon lexicon = rc.lexicon.empty() ? builtin_toy_lexicon() : load_lexicon(rc.lexicon);
  const Corpus corpus = generate_synthetic_corpus(opt, lexicon);
  std::vector<PendingFile> files;
  for (const auto& n : corpus.novels()) files.push_back({n.metadata.id + ".txt", render_novel_text(n)});
  files.push_back({"metadata.tsv", serialize_metadata(corpus)});
  files.push_back({"lexicon.tsv", serialize_lexicon(lexicon)});
  write_all(rc.out, files);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"plotarc: sentiment arcs and happy-ending classification for novels"};
  app.require_subcommand(1);
  RunConfig rc;

  auto* featurize = app.add_subcommand("featurize", "Write per-segment sentiment profiles (profiles.csv)");
  add_corpus_options(*featurize, rc);

  auto* run = app.add_subcommand("run", "Run an experiment: ladder, sweep, periods or baselines");
  run->add_option("experiment", rc.experiment, "ladder | sweep | periods | baselines")
      ->required()
      ->check(CLI::IsMember({"ladder", "sweep", "periods", "baselines"}));
  add_corpus_options(*run, rc);
  add_classifier_options(*run, rc);

  auto* synth = app.add_subcommand("synth", "Generate a synthetic corpus with planted endings");
  synth->add_option("--seed", rc.seed, "Random seed")->capture_default_str();
  synth->add_option("--novels", rc.novels, "Number of novels (even)")->capture_default_str();
  synth->add_option("--tokens", rc.tokens, "Tokens per novel")->capture_default_str();
  synth->add_option("--ending", rc.ending, "Planted ending length in segments (1..10)")->capture_default_str();
  synth->add_option("--segments", rc.segments, "Segments per novel")->capture_default_str();
  synth->add_option("--lexicon", rc.lexicon, "Lexicon TSV (default: builtin toy lexicon)");
  synth->add_option("--out", rc.out, "Output directory")->capture_default_str();
  synth->add_flag("--dry-run", rc.dry_run, "Print the resolved configuration and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const std::string command = app.got_subcommand(featurize) ? "featurize" : app.got_subcommand(run) ? "run" : "synth";
  try {
    validate(command, rc);
    echo(command, rc);
    if (rc.dry_run) return 0;
    if (command == "featurize") return cmd_featurize(rc);
    if (command == "run") return cmd_run(rc);
    return cmd_synth(rc);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const LoadError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
