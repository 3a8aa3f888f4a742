#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "plotarc/text_table.hpp"
#include "test_util.hpp"

namespace fs = std::filesystem;
using plotarc::text::read_file;

namespace {

// Runs the CLI with stdout/stderr captured in `dir`; returns the exit status.
int run_cli(const testutil::TempDir& dir, const std::string& args) {
  const std::string cmd = std::string(PLOTARC_CLI) + " " + args + " > " + (dir / "stdout.txt").string() + " 2> " +
                          (dir / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

std::size_t count_files(const fs::path& dir, const std::string& ext) {
  std::size_t n = 0;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ext) ++n;
  return n;
}

std::string corpus_flags(const fs::path& c) {
  return "--corpus " + c.string() + " --metadata " + (c / "metadata.tsv").string() + " --lexicon " +
         (c / "lexicon.tsv").string();
}

}  // namespace

TEST(CliSynth, WritesCorpusDeterministically) {
  testutil::TempDir dir;
  ASSERT_EQ(run_cli(dir, "synth --seed 1 --novels 40 --out " + (dir / "a").string()), 0);
  ASSERT_EQ(run_cli(dir, "synth --seed 1 --novels 40 --out " + (dir / "b").string()), 0);
  EXPECT_EQ(count_files(dir / "a", ".txt"), 40u);
  EXPECT_EQ(lines(read_file((dir / "a" / "metadata.tsv").string())), 41u);
  for (const auto& e : fs::directory_iterator(dir / "a"))
    EXPECT_EQ(read_file(e.path().string()), read_file((dir / "b" / e.path().filename()).string())) << e.path();
}

TEST(CliSynth, OddNovelCountIsUsageError) {
  testutil::TempDir dir;
  EXPECT_EQ(run_cli(dir, "synth --novels 41 --out " + (dir / "x").string()), 2);
  EXPECT_FALSE(fs::exists(dir / "x"));
}

TEST(CliFeaturize, ProfileCacheRowsAndDeterminism) {
  testutil::TempDir dir;
  ASSERT_EQ(run_cli(dir, "synth --novels 4 --tokens 200 --out " + (dir / "c").string()), 0);
  ASSERT_EQ(run_cli(dir, "featurize " + corpus_flags(dir / "c") + " --out " + (dir / "f1").string()), 0);
  ASSERT_EQ(run_cli(dir, "featurize " + corpus_flags(dir / "c") + " --out " + (dir / "f2").string() + " --jobs 3"), 0);
  const std::string cache = read_file((dir / "f1" / "profiles.csv").string());
  EXPECT_EQ(lines(cache), 1u + 4u * 75u);
  EXPECT_EQ(cache, read_file((dir / "f2" / "profiles.csv").string()));
  EXPECT_NE(read_file((dir / "stdout.txt").string()).find("matched="), std::string::npos);
}

TEST(CliFeaturize, MissingLexiconExitsTwoAndNamesPath) {
  testutil::TempDir dir;
  ASSERT_EQ(run_cli(dir, "synth --novels 4 --tokens 200 --out " + (dir / "c").string()), 0);
  const std::string missing = (dir / "nope.tsv").string();
  EXPECT_EQ(run_cli(dir, "featurize --corpus " + (dir / "c").string() + " --metadata " +
                             (dir / "c" / "metadata.tsv").string() + " --lexicon " + missing + " --out " +
                             (dir / "f").string()),
            2);
  EXPECT_NE(read_file((dir / "stderr.txt").string()).find(missing), std::string::npos);
}

TEST(CliRun, LadderSweepPeriodsBaselines) {
  testutil::TempDir dir;
  ASSERT_EQ(run_cli(dir, "synth --seed 42 --novels 60 --tokens 1500 --out " + (dir / "c").string()), 0);
  const std::string flags = corpus_flags(dir / "c") + " --out " + (dir / "r").string() + " --epochs 50";

  ASSERT_EQ(run_cli(dir, "run ladder " + flags), 0);
  EXPECT_EQ(lines(read_file((dir / "r" / "ladder.csv").string())), 7u);
  EXPECT_TRUE(fs::exists(dir / "r" / "ladder.meta.txt"));
  // resolved config is echoed before any output file is written
  const std::string out = read_file((dir / "stdout.txt").string());
  EXPECT_LT(out.find("seed=42"), out.find("wrote"));

  ASSERT_EQ(run_cli(dir, "run sweep " + flags + " --max-final-len 10"), 0);
  EXPECT_EQ(lines(read_file((dir / "r" / "sweep.csv").string())), 11u);
  const std::string svg = read_file((dir / "r" / "sweep.svg").string());
  EXPECT_NE(svg.find("<polyline"), std::string::npos);
  EXPECT_NE(svg.find("stroke-dasharray=\"8 5\""), std::string::npos);
  EXPECT_NE(svg.find("stroke-dasharray=\"2 3\""), std::string::npos);
  EXPECT_TRUE(fs::exists(dir / "r" / "sweep.meta.txt"));

  ASSERT_EQ(run_cli(dir, "run periods " + flags + " --max-final-len 6"), 0);
  const std::string periods = read_file((dir / "r" / "periods.csv").string());
  EXPECT_EQ(periods.substr(0, periods.find('\n')), "period,main_fraction,final_len,f1,n_novels");
  EXPECT_TRUE(fs::exists(dir / "r" / "periods.svg"));
  EXPECT_TRUE(fs::exists(dir / "r" / "periods.meta.txt"));

  ASSERT_EQ(run_cli(dir, "run baselines " + flags), 0);
  EXPECT_EQ(read_file((dir / "r" / "baselines.csv").string()),
            "random_accuracy,majority_accuracy,random_f1\n0.500000,0.500000,0.500000\n");
}

TEST(CliRun, ProfileCacheGivesSameSweep) {
  testutil::TempDir dir;
  ASSERT_EQ(run_cli(dir, "synth --seed 3 --novels 40 --tokens 1500 --out " + (dir / "c").string()), 0);
  ASSERT_EQ(run_cli(dir, "featurize " + corpus_flags(dir / "c") + " --out " + (dir / "f").string()), 0);
  const std::string common = " --out OUT --epochs 40 --max-final-len 8";
  auto with_out = [&](std::string s, const std::string& out) { return s.replace(s.find("OUT"), 3, out); };
  ASSERT_EQ(run_cli(dir, "run sweep " + corpus_flags(dir / "c") + with_out(common, (dir / "r1").string())), 0);
  ASSERT_EQ(run_cli(dir, "run sweep --metadata " + (dir / "c" / "metadata.tsv").string() + " --profiles " +
                             (dir / "f" / "profiles.csv").string() + with_out(common, (dir / "r2").string())),
            0);
  EXPECT_EQ(read_file((dir / "r1" / "sweep.csv").string()), read_file((dir / "r2" / "sweep.csv").string()));
  ASSERT_EQ(run_cli(dir, "run baselines --metadata " + (dir / "c" / "metadata.tsv").string() + " --profiles " +
                             (dir / "f" / "profiles.csv").string() + " --out " + (dir / "r2").string()),
            0);
  EXPECT_EQ(read_file((dir / "r2" / "baselines.csv").string()),
            "random_accuracy,majority_accuracy,random_f1\n0.500000,0.500000,0.500000\n");
}

TEST(CliRun, DryRunPrintsConfigAndWritesNothing) {
  testutil::TempDir dir;
  EXPECT_EQ(run_cli(dir, "run sweep --corpus x --metadata y --lexicon z --dry-run --out " + (dir / "r").string()), 0);
  EXPECT_FALSE(fs::exists(dir / "r"));
  const std::string out = read_file((dir / "stdout.txt").string());
  EXPECT_NE(out.find("experiment=sweep"), std::string::npos);
  EXPECT_NE(out.find("epochs=200"), std::string::npos);
}

TEST(CliRun, InvalidInputsFail) {
  testutil::TempDir dir;
  EXPECT_EQ(run_cli(dir, "run nonsense"), 2);
  EXPECT_EQ(run_cli(dir, "run ladder --final-len 80 --dry-run"), 2);
  EXPECT_EQ(run_cli(dir, "run sweep --fractions 0.999 --dry-run"), 2);
  EXPECT_EQ(run_cli(dir, "run ladder --out " + (dir / "r").string()), 2);  // no corpus
  EXPECT_EQ(run_cli(dir, ""), 2);
}
