#include "mka/experiment.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

namespace mka {

std::string_view to_string(GeneratorKind k) {
  return k == GeneratorKind::Retrieval ? "retrieval" : "trigram";
}

PipelineConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::FileError, "cannot open config file: " + path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ParseError, path + ": " + e.what());
  }
  PipelineConfig cfg;
  if (doc.contains("match")) {
    const auto& m = doc.at("match");
    cfg.match.alpha = m.value("alpha", cfg.match.alpha);
    cfg.match.beta = m.value("beta", cfg.match.beta);
    cfg.match.delta = m.value("delta", cfg.match.delta);
  }
  cfg.separator = doc.value("separator", cfg.separator);
  cfg.smoothing_k = doc.value("smoothing_k", cfg.smoothing_k);
  cfg.max_len = doc.value("max_len", cfg.max_len);
  cfg.seed = doc.value("seed", cfg.seed);
  if (doc.contains("split")) {
    const auto& s = doc.at("split");
    cfg.split.train = s.value("train", cfg.split.train);
    cfg.split.validation = s.value("validation", cfg.split.validation);
    cfg.split.test = s.value("test", cfg.split.test);
  }
  if (cfg.match.delta < 0.0 || cfg.match.delta > 1.0)
    throw Error(ErrorKind::ParseError, path + ": delta must lie in [0,1]");
  const double ratio_sum =
      cfg.split.train + cfg.split.validation + cfg.split.test;
  if (cfg.split.train <= 0.0 || cfg.split.validation <= 0.0 ||
      cfg.split.test <= 0.0 || std::abs(ratio_sum - 1.0) > 1e-9)
    throw Error(ErrorKind::ParseError,
                path + ": split ratios must be positive and sum to 1");
  return cfg;
}

Split split_dataset(std::vector<Conversation> convs,
                    const PipelineConfig& cfg) {
  const size_t n = convs.size();
  if (n < 3)
    throw Error(ErrorKind::TooFewConversations,
                "need at least 3 conversations to split, got " +
                    std::to_string(n));
  // Hand-rolled Fisher-Yates so the permutation is stable across standard
  // library implementations.
  std::mt19937_64 rng(cfg.seed);
  for (size_t i = n - 1; i > 0; --i) {
    const size_t j = static_cast<size_t>(rng() % (i + 1));
    std::swap(convs[i], convs[j]);
  }
  size_t n_val = std::max<size_t>(
      1, static_cast<size_t>(std::floor(cfg.split.validation * n)));
  size_t n_test = std::max<size_t>(
      1, static_cast<size_t>(std::floor(cfg.split.test * n)));
  const size_t n_train = n - n_val - n_test;
  Split out;
  out.train.assign(convs.begin(), convs.begin() + n_train);
  out.validation.assign(convs.begin() + n_train,
                        convs.begin() + n_train + n_val);
  out.test.assign(convs.begin() + n_train + n_val, convs.end());
  return out;
}

namespace {

std::string join(const std::vector<std::string>& tokens,
                 const char* sep = " ") {
  std::string out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += sep;
    out += tokens[i];
  }
  return out;
}

std::string trace_line(size_t conv, size_t turn, size_t subgraph_facts,
                       const TurnTrace& t) {
  std::ostringstream line;
  line << "conv=" << conv << " turn=" << turn
       << " subgraph_facts=" << subgraph_facts << " topics=[";
  for (size_t i = 0; i < t.topics.size(); ++i) {
    if (i) line << ",";
    line << to_string(t.topics[i]);
  }
  line << "] anchors=[";
  std::vector<std::string> anchor_names;
  if (t.mki.anchors.eps1) anchor_names.push_back(t.mki.anchors.eps1->name);
  if (t.mki.anchors.eps2) anchor_names.push_back(t.mki.anchors.eps2->name);
  line << join(anchor_names, ",") << "] knowledge=["
       << join(t.mki.knowledge, ",") << "] input=" << join(t.input.flat())
       << " output=" << join(t.response);
  return line.str();
}

}  // namespace

ExperimentResult run_experiment(const std::string& kg_path,
                                const std::string& corpus_path,
                                const std::string& kps_path,
                                const PipelineConfig& cfg, GeneratorKind kind,
                                const ExperimentOptions& opt,
                                const std::string& out_dir) {
  const KnowledgeGraph base = load_kg_file(kg_path);
  const std::vector<Conversation> corpus = load_corpus_file(corpus_path);
  const KeyPhraseSets kps = load_kps_file(kps_path);
  const Split split = split_dataset(corpus, cfg);
  if (split.train.empty())
    throw Error(ErrorKind::EmptyCorpus, "training partition is empty");

  std::unique_ptr<Generator> generator;
  if (kind == GeneratorKind::Retrieval) {
    generator = std::make_unique<RetrievalGenerator>(
        RetrievalGenerator::train(split.train));
  } else {
    generator = std::make_unique<TrigramGenerator>(
        TrigramGenerator::train(split.train, cfg.smoothing_k));
  }

  RunOptions run_opt;
  run_opt.separator = cfg.separator;
  run_opt.max_len = cfg.max_len;
  run_opt.no_knowledge = opt.no_knowledge;
  run_opt.feed_ground_truth = opt.feed_ground_truth;

  ExperimentResult result;
  std::vector<TokenList> candidates;
  std::vector<TokenList> references;
  std::vector<ModelInput> inputs;
  for (size_t ci = 0; ci < split.test.size(); ++ci) {
    const Conversation& conv = split.test[ci];
    const size_t subgraph_facts =
        generate_subgraph(conv.self_report, base, cfg.match).graph.facts().size();
    const auto traces = run_conversation_traced(conv, base, kps, *generator,
                                                cfg.match, run_opt);
    for (size_t ti = 0; ti < traces.size(); ++ti) {
      candidates.push_back(traces[ti].response);
      references.push_back(tokenize(conv.turns[ti].doctor_response));
      inputs.push_back(traces[ti].input);
      result.trace_lines.push_back(
          trace_line(ci, ti, subgraph_facts, traces[ti]));
      ++result.test_turns;
    }
  }

  result.report = evaluate_corpus(candidates, references, inputs, *generator);

  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    const auto dir = std::filesystem::path(out_dir);
    std::ofstream report(dir / "report.txt");
    if (!report)
      throw Error(ErrorKind::FileError, "cannot write report in " + out_dir);
    report << result.report.to_text();
    std::ofstream trace(dir / "trace.txt");
    for (const std::string& line : result.trace_lines) trace << line << "\n";
    std::ofstream baseline(dir / "baseline.txt");
    if (kind == GeneratorKind::Retrieval) {
      static_cast<const RetrievalGenerator&>(*generator).save(baseline);
    } else {
      static_cast<const TrigramGenerator&>(*generator).save(baseline);
    }
  }
  return result;
}

}  // namespace mka
