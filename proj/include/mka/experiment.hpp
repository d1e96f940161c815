#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mka/conversation.hpp"
#include "mka/generator.hpp"
#include "mka/metrics.hpp"

namespace mka {

struct SplitRatios {
  double train = 0.8;
  double validation = 0.1;
  double test = 0.1;
};

struct PipelineConfig {
  MatchConfig match;
  std::string separator = kDefaultSeparator;
  double smoothing_k = 0.01;
  size_t max_len = 30;
  uint64_t seed = 42;
  SplitRatios split;
};

// JSON config file; absent keys keep their defaults.
PipelineConfig load_config_file(const std::string& path);

struct Split {
  std::vector<Conversation> train;
  std::vector<Conversation> validation;
  std::vector<Conversation> test;
};

// Seeded shuffle, then contiguous partitions. Validation and test take
// max(1, floor(ratio * N)) conversations each; train takes the rest.
Split split_dataset(std::vector<Conversation> convs, const PipelineConfig& cfg);

enum class GeneratorKind { Retrieval, Trigram };

std::string_view to_string(GeneratorKind k);

struct ExperimentOptions {
  bool no_knowledge = false;
  bool feed_ground_truth = false;
};

struct ExperimentResult {
  MetricReport report;
  std::vector<std::string> trace_lines;  // one per evaluated turn
  size_t test_turns = 0;
};

// Full pipeline: load everything, split, train the baseline on the training
// partition, run the conversation loop over the test partition, score, and
// (when out_dir is non-empty) write report.txt, trace.txt and baseline.txt.
ExperimentResult run_experiment(const std::string& kg_path,
                                const std::string& corpus_path,
                                const std::string& kps_path,
                                const PipelineConfig& cfg, GeneratorKind kind,
                                const ExperimentOptions& opt = {},
                                const std::string& out_dir = "");

}  // namespace mka
