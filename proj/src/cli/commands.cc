// cli/commands.cc

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

#include "cli/commands.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <sstream>

#include "cli/svg.h"
#include "util/io.h"

namespace senan {

namespace {

// Keys that must travel with a generated corpus: anything that defines the
// label space, the waveforms or the frame grid of the stored alignments.
void ApplyCorpusMeta(ExperimentConfig *cfg, const std::string &corpus_dir) {
  std::string meta = JoinPath(corpus_dir, "config.used");
  if (!std::filesystem::exists(meta)) return;
  ExperimentConfig stored;
  stored.LoadFile(meta);
  cfg->corpus_num_phones = stored.corpus_num_phones;
  cfg->corpus_states_per_phone = stored.corpus_states_per_phone;
  cfg->corpus_num_speakers = stored.corpus_num_speakers;
  cfg->corpus_sample_rate = stored.corpus_sample_rate;
  cfg->corpus_seed = stored.corpus_seed;
  cfg->features_frame_ms = stored.features_frame_ms;
  cfg->features_hop_ms = stored.features_hop_ms;
}

std::string FormatWer(double wer) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", wer);
  return buf;
}

}  // namespace

void CmdGenCorpus(const ExperimentConfig &cfg, const std::string &out_dir,
                  std::ostream &log) {
  cfg.Validate();
  EnsureDirectory(out_dir);
  WriteTextFile(JoinPath(out_dir, "config.used"), cfg.ToString());

  Corpus train = GenerateCorpus(cfg.MakeCorpusConfig(cfg.corpus_num_train),
                                Split::kTrain);
  if (cfg.corpus_augment)
    train = TripleCorpus(train, cfg.MakeCorpusConfig(cfg.corpus_num_train));
  SaveCorpus(train, JoinPath(out_dir, "train"));

  Corpus test;
  test.split = Split::kTest;
  test.seed = cfg.corpus_seed;
  if (cfg.corpus_num_test > 0)
    test = GenerateCorpus(cfg.MakeCorpusConfig(cfg.corpus_num_test),
                          Split::kTest);
  SaveCorpus(test, JoinPath(out_dir, "test"));

  auto summarize = [&log](const Corpus &c, const std::string &name) {
    double snr_min = 1e300, snr_max = -1e300, snr_sum = 0.0;
    for (const Utterance &u : c.utterances) {
      snr_min = std::min(snr_min, u.snr_db);
      snr_max = std::max(snr_max, u.snr_db);
      snr_sum += u.snr_db;
    }
    log << name << ": " << c.utterances.size() << " utterances";
    if (!c.utterances.empty()) {
      char buf[96];
      std::snprintf(buf, sizeof(buf), ", snr %.2f..%.2f dB (mean %.2f)",
                    snr_min, snr_max,
                    snr_sum / static_cast<double>(c.utterances.size()));
      log << buf;
    }
    log << "\n";
  };
  summarize(train, "train");
  summarize(test, "test");
}

std::vector<EpochMetrics> CmdTrain(ExperimentConfig cfg,
                                   const std::string &corpus_dir,
                                   const std::string &out_dir,
                                   std::ostream &log) {
  ApplyCorpusMeta(&cfg, corpus_dir);
  cfg.Validate();
  Corpus train = LoadCorpus(JoinPath(corpus_dir, "train"), Split::kTrain);
  Trainer trainer(cfg, train);
  EnsureDirectory(out_dir);
  WriteTextFile(JoinPath(out_dir, "config.used"), cfg.ToString());
  std::vector<EpochMetrics> metrics = trainer.Run(out_dir);
  for (const EpochMetrics &m : metrics) {
    char buf[200];
    std::snprintf(buf, sizeof(buf),
                  "epoch %d  L=%.4f  ce=%.4f  mmi=%.4f  enh=%.4f  nse=%.4f  "
                  "skipped=%d\n",
                  m.epoch, m.l_total, m.l_ce, m.f_mmi, m.l_enh, m.l_nse,
                  m.skipped);
    log << buf;
  }
  return metrics;
}

std::vector<DecodedUtterance> DecodeCorpus(const ExperimentConfig &cfg,
                                           JointModel *model,
                                           const Corpus &split_corpus,
                                           const Corpus &train_corpus) {
  DataPipeline pipeline(cfg);
  std::vector<std::vector<int>> transcripts;
  for (const Utterance &u : train_corpus.utterances)
    transcripts.push_back(u.transcript);
  PhoneLm lm = PhoneLm::Train(transcripts, cfg.corpus_num_phones);
  Graph decode_graph = BuildDenominatorGraph(lm, pipeline.inventory());

  std::vector<DecodedUtterance> out;
  out.reserve(split_corpus.utterances.size());
  for (const Utterance &utt : split_corpus.utterances) {
    PreparedUtterance prep = pipeline.Prepare(utt, nullptr);
    JointModel::UttForward fwd =
        model->Forward(prep.x_nsy, &prep.y_clean, &prep.y_nse);
    DecodedUtterance dec;
    dec.id = utt.id;
    try {
      DecodeResult res = ViterbiDecode(decode_graph, fwd.logits->tensor);
      dec.phones = res.phones;
      dec.frame_labels = res.labels;
    } catch (const Error &e) {
      if (e.code() != ErrorCode::kNoPath) throw;
      dec.no_path = true;
    }
    out.push_back(std::move(dec));
  }
  return out;
}

double EvaluateWer(const ExperimentConfig &cfg, JointModel *model,
                   const Corpus &split_corpus, const Corpus &train_corpus) {
  std::vector<DecodedUtterance> decoded =
      DecodeCorpus(cfg, model, split_corpus, train_corpus);
  std::vector<std::pair<std::vector<int>, std::vector<int>>> pairs;
  for (size_t i = 0; i < decoded.size(); ++i)
    pairs.emplace_back(split_corpus.utterances[i].transcript,
                       decoded[i].phones);
  return ScoreHypotheses(pairs).wer;
}

void CmdDecode(const std::string &run_dir, const std::string &corpus_dir,
               const std::string &split, const std::string &out_path,
               std::ostream &log) {
  SENAN_CHECK(split == "train" || split == "test", ErrorCode::kInvalidConfig,
              "split must be train or test");
  ExperimentConfig cfg;
  std::string cfg_path = JoinPath(run_dir, "config.used");
  SENAN_CHECK(std::filesystem::exists(cfg_path), ErrorCode::kIoError,
              "run directory has no config.used: " + run_dir);
  cfg.LoadFile(cfg_path);
  ApplyCorpusMeta(&cfg, corpus_dir);

  JointModel model(cfg, ParseTrainMode(cfg.train_mode));
  model.params().Load(JoinPath(run_dir, "final.ckpt"));

  Corpus train_corpus = LoadCorpus(JoinPath(corpus_dir, "train"),
                                   Split::kTrain);
  Corpus split_corpus =
      split == "train" ? train_corpus
                       : LoadCorpus(JoinPath(corpus_dir, "test"),
                                    Split::kTest);

  std::vector<DecodedUtterance> decoded =
      DecodeCorpus(cfg, &model, split_corpus, train_corpus);
  std::ostringstream hyps, frames;
  int no_path = 0;
  for (const DecodedUtterance &d : decoded) {
    hyps << d.id << "\t";
    for (size_t i = 0; i < d.phones.size(); ++i)
      hyps << (i ? " " : "") << d.phones[i];
    hyps << "\n";
    frames << d.id << "\t";
    for (size_t i = 0; i < d.frame_labels.size(); ++i)
      frames << (i ? " " : "") << d.frame_labels[i];
    frames << "\n";
    if (d.no_path) {
      ++no_path;
      log << "warning: no path for " << d.id << ", empty hypothesis\n";
    }
  }
  WriteTextFile(out_path, hyps.str());
  WriteTextFile(out_path + ".frames", frames.str());
  log << "decoded " << decoded.size() << " utterances (" << no_path
      << " without path) -> " << out_path << "\n";
}

namespace {

std::map<std::string, std::vector<int>> ParseIdSeqFile(
    const std::string &path) {
  std::map<std::string, std::vector<int>> out;
  std::istringstream lines(ReadTextFile(path));
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    auto fields = SplitString(line, '\t');
    SENAN_CHECK(fields.size() >= 1, ErrorCode::kIoError,
                "malformed line: " + line);
    std::vector<int> seq;
    if (fields.size() > 1) {
      std::istringstream ss(fields[1]);
      int v;
      while (ss >> v) seq.push_back(v);
    }
    out[fields[0]] = std::move(seq);
  }
  return out;
}

}  // namespace

ScoreReport CmdScore(const std::string &hyps_path,
                     const std::string &manifest_path, std::ostream &log) {
  auto hyps = ParseIdSeqFile(hyps_path);
  std::string manifest_dir =
      std::filesystem::path(manifest_path).parent_path().string();

  std::vector<std::pair<std::vector<int>, std::vector<int>>> pairs;
  std::vector<std::pair<std::string, std::string>> ali_paths;  // id, path
  std::istringstream lines(ReadTextFile(manifest_path));
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    auto fields = SplitString(line, '\t');
    SENAN_CHECK(fields.size() == 8, ErrorCode::kIoError,
                "malformed manifest line: " + line);
    const std::string &id = fields[0];
    auto it = hyps.find(id);
    SENAN_CHECK(it != hyps.end(), ErrorCode::kMissingUtterance,
                "no hypothesis for utterance " + id);
    std::vector<int> ref;
    std::istringstream tr(fields[3]);
    int v;
    while (tr >> v) ref.push_back(v);
    pairs.emplace_back(std::move(ref), it->second);
    ali_paths.emplace_back(id, JoinPath(manifest_dir, fields[7]));
  }
  ScoreReport report = ScoreHypotheses(pairs);

  // frame state accuracy from the decode sidecar, when present
  std::string frames_path = hyps_path + ".frames";
  if (std::filesystem::exists(frames_path)) {
    auto frame_hyps = ParseIdSeqFile(frames_path);
    int64_t correct = 0, total = 0;
    for (const auto &[id, ali_path] : ali_paths) {
      auto it = frame_hyps.find(id);
      if (it == frame_hyps.end()) continue;
      std::vector<int> ref;
      std::istringstream ss(ReadTextFile(ali_path));
      int v;
      while (ss >> v) ref.push_back(v);
      size_t n = std::min(ref.size(), it->second.size());
      for (size_t i = 0; i < n; ++i)
        if (ref[i] == it->second[i]) ++correct;
      total += static_cast<int64_t>(ref.size());
    }
    if (total > 0) {
      report.frame_accuracy =
          100.0 * static_cast<double>(correct) / static_cast<double>(total);
      report.frames_scored = total;
    }
  }
  log << report.ToString();
  return report;
}

namespace {

struct AblationRow {
  std::string variant;
  double wer;
};

std::string AblationCsv(const std::vector<AblationRow> &rows) {
  std::ostringstream os;
  os << "variant,wer,rel_change\n";
  double base = rows.empty() ? 0.0 : rows.front().wer;
  for (const AblationRow &r : rows) {
    double rel = base > 0.0 ? 100.0 * (base - r.wer) / base : 0.0;
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%s,%.2f,%.2f\n", r.variant.c_str(),
                  r.wer, rel);
    os << buf;
  }
  return os.str();
}

}  // namespace

void CmdAblate(const ExperimentConfig &base, const std::string &corpus_dir,
               const std::string &out_dir, int num_seeds, std::ostream &log) {
  SENAN_CHECK(num_seeds >= 1, ErrorCode::kInvalidConfig,
              "need at least one seed");
  ExperimentConfig cfg = base;
  ApplyCorpusMeta(&cfg, corpus_dir);
  cfg.Validate();
  EnsureDirectory(out_dir);
  Corpus train = LoadCorpus(JoinPath(corpus_dir, "train"), Split::kTrain);
  Corpus test = LoadCorpus(JoinPath(corpus_dir, "test"), Split::kTest);

  auto run_variant = [&](const ExperimentConfig &vcfg) {
    double wer_sum = 0.0;
    for (int s = 0; s < num_seeds; ++s) {
      ExperimentConfig scfg = vcfg;
      scfg.train_seed = vcfg.train_seed + static_cast<uint64_t>(s);
      Trainer trainer(scfg, train);
      trainer.Run("");
      wer_sum += EvaluateWer(scfg, &trainer.model(), test, train);
    }
    return wer_sum / num_seeds;
  };

  // Component ladder, accumulating as in the ablation table.
  std::vector<AblationRow> ladder;
  {
    ExperimentConfig v = cfg;
    v.train_mode = "baseline";
    v.specaug_enabled = false;
    v.am_arch = "tdnnf";
    ladder.push_back({"baseline", run_variant(v)});
    log << "ladder baseline: " << FormatWer(ladder.back().wer) << "\n";

    v.train_mode = "proposed";
    v.senan_nse_enabled = false;
    v.agg_enh = "cur";
    ladder.push_back({"+enh", run_variant(v)});
    log << "ladder +enh: " << FormatWer(ladder.back().wer) << "\n";

    v.agg_enh = cfg.agg_enh;
    ladder.push_back({"+enh_agg", run_variant(v)});
    log << "ladder +enh_agg: " << FormatWer(ladder.back().wer) << "\n";

    v.senan_nse_enabled = true;
    ladder.push_back({"+enh_noise_agg", run_variant(v)});
    log << "ladder +enh_noise_agg: " << FormatWer(ladder.back().wer) << "\n";

    v.specaug_enabled = true;
    ladder.push_back({"+specaug", run_variant(v)});
    log << "ladder +specaug: " << FormatWer(ladder.back().wer) << "\n";

    v.am_arch = "cnn_tdnnf";
    ladder.push_back({"+cnn_tdnnf", run_variant(v)});
    log << "ladder +cnn_tdnnf: " << FormatWer(ladder.back().wer) << "\n";
  }
  WriteTextFile(JoinPath(out_dir, "ablation_ladder.csv"), AblationCsv(ladder));
  {
    std::vector<std::string> labels;
    std::vector<double> values;
    for (const AblationRow &r : ladder) {
      labels.push_back(r.variant);
      values.push_back(r.wer);
    }
    WriteTextFile(JoinPath(out_dir, "ablation_ladder.svg"),
                  SvgBarChart("component ladder, test WER", labels, values,
                              "%"));
  }

  // Noise-stream aggregation sweep on the full wiring.
  std::vector<AblationRow> sweep;
  for (const char *kind_cstr : {"cur", "cont", "stat", "sat"}) {
    std::string kind = kind_cstr;
    ExperimentConfig v = cfg;
    v.train_mode = "proposed";
    v.senan_nse_enabled = true;
    v.agg_nse = kind;
    sweep.push_back({kind, run_variant(v)});
    log << "agg." << kind << ": " << FormatWer(sweep.back().wer) << "\n";
  }
  WriteTextFile(JoinPath(out_dir, "ablation_aggregators.csv"),
                AblationCsv(sweep));
  {
    std::vector<std::string> labels;
    std::vector<double> values;
    for (const AblationRow &r : sweep) {
      labels.push_back(r.variant);
      values.push_back(r.wer);
    }
    WriteTextFile(JoinPath(out_dir, "ablation_aggregators.svg"),
                  SvgBarChart("noise aggregation sweep, test WER", labels,
                              values, "%"));
  }
}

void CmdReport(const std::string &run_dir, std::ostream &log) {
  std::string metrics_path = JoinPath(run_dir, "metrics.csv");
  SENAN_CHECK(std::filesystem::exists(metrics_path), ErrorCode::kIoError,
              "no metrics.csv under " + run_dir);
  std::istringstream lines(ReadTextFile(metrics_path));
  std::string line;
  std::getline(lines, line);  // header
  std::vector<double> l_total, l_ce, f_mmi, l_enh, l_nse;
  std::string last_row;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    auto fields = SplitString(line, ',');
    SENAN_CHECK(fields.size() == 9, ErrorCode::kIoError,
                "malformed metrics row: " + line);
    l_total.push_back(std::stod(fields[3]));
    l_ce.push_back(std::stod(fields[4]));
    f_mmi.push_back(std::stod(fields[5]));
    l_enh.push_back(std::stod(fields[6]));
    l_nse.push_back(std::stod(fields[7]));
    last_row = line;
  }
  WriteTextFile(JoinPath(run_dir, "loss_curves.svg"),
                SvgLineChart("training losses per epoch",
                             {"L_total", "L_ce", "F_mmi", "L_enh", "L_nse"},
                             {l_total, l_ce, f_mmi, l_enh, l_nse}));
  std::ostringstream md;
  md << "# Training run report\n\n";
  md << "Epochs: " << l_total.size() << "\n\n";
  if (!l_total.empty()) {
    size_t best = 0;
    for (size_t i = 1; i < l_total.size(); ++i)
      if (l_total[i] < l_total[best]) best = i;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "Final per-frame loss: %.6f\n\nBest epoch: %zu (%.6f)\n\n",
                  l_total.back(), best + 1, l_total[best]);
    md << buf;
  }
  md << "![loss curves](loss_curves.svg)\n";
  WriteTextFile(JoinPath(run_dir, "report.md"), md.str());
  log << "report written to " << JoinPath(run_dir, "report.md") << "\n";
}

}  // namespace senan
