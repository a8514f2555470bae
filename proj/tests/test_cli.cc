// tests/test_cli.cc

// Copyright 2026  The senan authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <filesystem>
#include <sstream>

#include "cli/commands.h"
#include "cli/svg.h"
#include "doctest.h"
#include "util/io.h"
#include "util/rng.h"

using namespace senan;

namespace {

// Independent quadratic oracle for the edit counts: full DP matrix over the
// same lexicographic (total, substitutions, deletions) objective.
struct OracleCell {
  int total, sub, del;
};

EditCounts OracleAlign(const std::vector<int> &ref,
                       const std::vector<int> &hyp) {
  int n = static_cast<int>(ref.size()), m = static_cast<int>(hyp.size());
  std::vector<std::vector<OracleCell>> dp(
      static_cast<size_t>(n) + 1,
      std::vector<OracleCell>(static_cast<size_t>(m) + 1));
  auto less = [](const OracleCell &a, const OracleCell &b) {
    if (a.total != b.total) return a.total < b.total;
    if (a.sub != b.sub) return a.sub < b.sub;
    return a.del < b.del;
  };
  for (int j = 0; j <= m; ++j) dp[0][static_cast<size_t>(j)] = {j, 0, 0};
  for (int i = 1; i <= n; ++i) {
    dp[static_cast<size_t>(i)][0] = {i, 0, i};
    for (int j = 1; j <= m; ++j) {
      int s = ref[static_cast<size_t>(i - 1)] == hyp[static_cast<size_t>(j - 1)] ? 0 : 1;
      OracleCell best = dp[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)];
      best.total += s;
      best.sub += s;
      OracleCell del = dp[static_cast<size_t>(i - 1)][static_cast<size_t>(j)];
      del.total += 1;
      del.del += 1;
      OracleCell ins = dp[static_cast<size_t>(i)][static_cast<size_t>(j - 1)];
      ins.total += 1;
      if (less(del, best)) best = del;
      if (less(ins, best)) best = ins;
      dp[static_cast<size_t>(i)][static_cast<size_t>(j)] = best;
    }
  }
  OracleCell c = dp[static_cast<size_t>(n)][static_cast<size_t>(m)];
  EditCounts out;
  out.sub = c.sub;
  out.del = c.del;
  out.ins = c.total - c.sub - c.del;
  out.ref_len = n;
  return out;
}

ExperimentConfig MicroConfig() {
  ExperimentConfig cfg;
  cfg.corpus_num_train = 5;
  cfg.corpus_num_test = 2;
  cfg.corpus_num_speakers = 2;
  cfg.corpus_num_phones = 3;
  cfg.corpus_min_phones = 3;
  cfg.corpus_max_phones = 3;
  cfg.corpus_min_segment_ms = 80.0;
  cfg.corpus_max_segment_ms = 100.0;
  cfg.corpus_seed = 99;
  cfg.features_n_mels = 20;
  cfg.features_n_ceps = 12;
  cfg.features_spk_dim = 3;
  cfg.senan_h_first = 6;
  cfg.senan_h_last = 10;
  cfg.am_layers = 2;
  cfg.am_hidden = 8;
  cfg.am_bottleneck = 3;
  cfg.am_final_bottleneck = 4;
  cfg.am_conv_filters = "2";
  cfg.train_epochs = 2;
  cfg.train_batch_size = 3;
  cfg.train_seed = 3;
  cfg.specaug_max_time_width = 5;
  cfg.specaug_max_feat_width = 3;
  return cfg;
}

}  // namespace

TEST_CASE("levenshtein hand cases") {
  CHECK(AlignLevenshtein({1, 2, 3}, {1, 2, 3}).Total() == 0);
  EditCounts sub = AlignLevenshtein({0, 1, 2}, {0, 9, 2});
  CHECK(sub.sub == 1);
  CHECK(sub.del == 0);
  CHECK(sub.ins == 0);
  ScoreReport rep = ScoreHypotheses({{{0, 1, 2}, {0, 9, 2}}});
  CHECK(rep.wer == doctest::Approx(33.33).epsilon(0.01));
  ScoreReport perfect = ScoreHypotheses({{{0, 1, 2}, {0, 1, 2}}});
  CHECK(perfect.wer == 0.0);
  // empty hypothesis: all deletions
  EditCounts dels = AlignLevenshtein({4, 4, 4}, {});
  CHECK(dels.del == 3);
  CHECK(dels.Total() == 3);
}

TEST_CASE("edit counts match the quadratic oracle exactly") {
  Rng rng(123);
  for (int rep = 0; rep < 300; ++rep) {
    int n = rng.UniformInt(0, 12), m = rng.UniformInt(0, 12);
    std::vector<int> ref(static_cast<size_t>(n)), hyp(static_cast<size_t>(m));
    for (auto &v : ref) v = rng.UniformInt(0, 4);
    for (auto &v : hyp) v = rng.UniformInt(0, 4);
    EditCounts fast = AlignLevenshtein(ref, hyp);
    EditCounts oracle = OracleAlign(ref, hyp);
    CHECK(fast.sub == oracle.sub);
    CHECK(fast.del == oracle.del);
    CHECK(fast.ins == oracle.ins);
  }
}

TEST_CASE("svg output is deterministic and well formed") {
  std::string svg = SvgBarChart("t", {"a", "b"}, {1.0, 2.0}, "%");
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg == SvgBarChart("t", {"a", "b"}, {1.0, 2.0}, "%"));
  std::string line = SvgLineChart("t", {"s"}, {{1.0, 2.0, 3.0}});
  CHECK(line.find("polyline") != std::string::npos);
}

TEST_CASE("config files parse, dump and reject unknown keys") {
  ExperimentConfig cfg;
  CHECK_THROWS_AS(cfg.Apply("nonsense.key", "1"), Error);
  CHECK_THROWS_AS(cfg.Apply("train.epochs", "abc"), Error);
  CHECK_THROWS_AS(cfg.Apply("specaug.enabled", "maybe"), Error);
  cfg.Apply("train.epochs", "7");
  CHECK(cfg.train_epochs == 7);

  std::string path = "/tmp/senan_test_cfg.conf";
  WriteTextFile(path, "train.epochs = 9\n# comment\nagg.nse=sat\n\n");
  ExperimentConfig loaded;
  loaded.LoadFile(path);
  CHECK(loaded.train_epochs == 9);
  CHECK(loaded.agg_nse == "sat");

  // canonical dump round-trips through the parser
  std::string dump = MicroConfig().ToString();
  WriteTextFile(path, dump);
  ExperimentConfig again;
  again.LoadFile(path);
  CHECK(again.ToString() == dump);
}

TEST_CASE("full pipeline: gen-corpus, train, decode, score") {
  std::string root = "/tmp/senan_test_pipeline";
  std::filesystem::remove_all(root);
  ExperimentConfig cfg = MicroConfig();
  std::ostringstream log;

  std::string corpus_dir = JoinPath(root, "corpus");
  CmdGenCorpus(cfg, corpus_dir, log);
  CHECK(std::filesystem::exists(JoinPath(corpus_dir, "train/manifest.tsv")));
  CHECK(std::filesystem::exists(JoinPath(corpus_dir, "test/manifest.tsv")));
  CHECK(std::filesystem::exists(JoinPath(corpus_dir, "config.used")));

  // same seed reruns emit byte-identical manifests
  std::string manifest =
      ReadTextFile(JoinPath(corpus_dir, "train/manifest.tsv"));
  std::string corpus_dir2 = JoinPath(root, "corpus2");
  CmdGenCorpus(cfg, corpus_dir2, log);
  CHECK(ReadTextFile(JoinPath(corpus_dir2, "train/manifest.tsv")) == manifest);

  std::string run_dir = JoinPath(root, "run");
  std::vector<EpochMetrics> metrics = CmdTrain(cfg, corpus_dir, run_dir, log);
  CHECK(static_cast<int>(metrics.size()) == cfg.train_epochs);
  CHECK(std::filesystem::exists(JoinPath(run_dir, "final.ckpt")));
  CHECK(std::filesystem::exists(JoinPath(run_dir, "best.ckpt")));
  CHECK(std::filesystem::exists(JoinPath(run_dir, "metrics.csv")));

  // deterministic training given config + seed
  std::string run_dir2 = JoinPath(root, "run2");
  CmdTrain(cfg, corpus_dir, run_dir2, log);
  CHECK(ReadTextFile(JoinPath(run_dir2, "metrics.csv")) ==
        ReadTextFile(JoinPath(run_dir, "metrics.csv")));

  std::string hyps = JoinPath(run_dir, "hyps.tsv");
  CmdDecode(run_dir, corpus_dir, "test", hyps, log);
  CHECK(std::filesystem::exists(hyps));
  CHECK(std::filesystem::exists(hyps + ".frames"));

  ScoreReport report =
      CmdScore(hyps, JoinPath(corpus_dir, "test/manifest.tsv"), log);
  CHECK(report.num_utterances == cfg.corpus_num_test);
  CHECK(report.wer >= 0.0);
  CHECK(report.frame_accuracy >= 0.0);

  // scoring is symmetric under hypothesis reordering
  std::string reversed = JoinPath(root, "hyps_reversed.tsv");
  {
    std::istringstream lines(ReadTextFile(hyps));
    std::vector<std::string> all;
    std::string line;
    while (std::getline(lines, line))
      if (!line.empty()) all.push_back(line);
    std::reverse(all.begin(), all.end());
    std::ostringstream out;
    for (const auto &l : all) out << l << "\n";
    WriteTextFile(reversed, out.str());
  }
  ScoreReport report2 =
      CmdScore(reversed, JoinPath(corpus_dir, "test/manifest.tsv"), log);
  CHECK(report2.wer == report.wer);
  CHECK(report2.counts.sub == report.counts.sub);

  // report generation
  CmdReport(run_dir, log);
  CHECK(std::filesystem::exists(JoinPath(run_dir, "report.md")));
  CHECK(std::filesystem::exists(JoinPath(run_dir, "loss_curves.svg")));
}

TEST_CASE("decode of an empty split writes an empty file") {
  std::string root = "/tmp/senan_test_empty";
  std::filesystem::remove_all(root);
  ExperimentConfig cfg = MicroConfig();
  cfg.corpus_num_test = 0;
  std::ostringstream log;
  std::string corpus_dir = JoinPath(root, "corpus");
  CmdGenCorpus(cfg, corpus_dir, log);
  std::string run_dir = JoinPath(root, "run");
  CmdTrain(cfg, corpus_dir, run_dir, log);
  std::string hyps = JoinPath(root, "hyps.tsv");
  CmdDecode(run_dir, corpus_dir, "test", hyps, log);
  CHECK(ReadTextFile(hyps).empty());
}

TEST_CASE("missing hypotheses and corrupt checkpoints are data errors") {
  std::string root = "/tmp/senan_test_errors";
  std::filesystem::remove_all(root);
  ExperimentConfig cfg = MicroConfig();
  std::ostringstream log;
  std::string corpus_dir = JoinPath(root, "corpus");
  CmdGenCorpus(cfg, corpus_dir, log);

  // hypotheses file lacking an utterance
  WriteTextFile(JoinPath(root, "hyps.tsv"), "tr000000\t0 1\n");
  try {
    CmdScore(JoinPath(root, "hyps.tsv"),
             JoinPath(corpus_dir, "train/manifest.tsv"), log);
    CHECK(false);
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::kMissingUtterance);
  }

  // corrupt checkpoint
  std::string run_dir = JoinPath(root, "run");
  CmdTrain(cfg, corpus_dir, run_dir, log);
  WriteTextFile(JoinPath(run_dir, "final.ckpt"), "not a checkpoint");
  try {
    CmdDecode(run_dir, corpus_dir, "test", JoinPath(root, "h.tsv"), log);
    CHECK(false);
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::kIoError);
  }
}

TEST_CASE("unwritable output directory raises an io error") {
  ExperimentConfig cfg = MicroConfig();
  std::ostringstream log;
  try {
    CmdGenCorpus(cfg, "/proc/senan_not_writable/corpus", log);
    CHECK(false);
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::kIoError);
  }
}

TEST_CASE("ablation emits the ladder and the aggregator sweep") {
  std::string root = "/tmp/senan_test_ablate";
  std::filesystem::remove_all(root);
  ExperimentConfig cfg = MicroConfig();
  cfg.train_epochs = 1;
  std::ostringstream log;
  std::string corpus_dir = JoinPath(root, "corpus");
  CmdGenCorpus(cfg, corpus_dir, log);
  std::string out_dir = JoinPath(root, "ablation");
  CmdAblate(cfg, corpus_dir, out_dir, 1, log);

  std::istringstream ladder(
      ReadTextFile(JoinPath(out_dir, "ablation_ladder.csv")));
  std::string line;
  std::getline(ladder, line);
  CHECK(line == "variant,wer,rel_change");
  std::vector<std::string> rows;
  while (std::getline(ladder, line))
    if (!line.empty()) rows.push_back(line);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0].substr(0, 9) == "baseline,");
  CHECK(rows[1].substr(0, 5) == "+enh,");
  CHECK(rows[2].substr(0, 9) == "+enh_agg,");
  CHECK(rows[3].substr(0, 15) == "+enh_noise_agg,");
  CHECK(rows[4].substr(0, 9) == "+specaug,");
  CHECK(rows[5].substr(0, 11) == "+cnn_tdnnf,");
  // the first row is its own reference
  CHECK(rows[0].substr(rows[0].rfind(',') + 1) == "0.00");

  std::istringstream sweep(
      ReadTextFile(JoinPath(out_dir, "ablation_aggregators.csv")));
  std::getline(sweep, line);
  rows.clear();
  while (std::getline(sweep, line))
    if (!line.empty()) rows.push_back(line);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].substr(0, 4) == "cur,");
  CHECK(rows[1].substr(0, 5) == "cont,");
  CHECK(rows[2].substr(0, 5) == "stat,");
  CHECK(rows[3].substr(0, 4) == "sat,");

  CHECK(std::filesystem::exists(JoinPath(out_dir, "ablation_ladder.svg")));
  CHECK(std::filesystem::exists(
      JoinPath(out_dir, "ablation_aggregators.svg")));
}
