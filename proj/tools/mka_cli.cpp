#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mka/experiment.hpp"

namespace {

using namespace mka;

std::string join(const std::vector<std::string>& tokens,
                 const char* sep = " ") {
  std::string out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += sep;
    out += tokens[i];
  }
  return out;
}

PipelineConfig resolve_config(const std::string& config_path,
                              std::optional<uint64_t> seed) {
  PipelineConfig cfg;
  if (!config_path.empty()) cfg = load_config_file(config_path);
  if (seed) cfg.seed = *seed;
  return cfg;
}

PatientSelfReport make_psr(const std::string& department,
                           const std::string& disease_symptom) {
  PatientSelfReport psr;
  if (!department.empty()) psr.department = department;
  if (!disease_symptom.empty()) psr.disease_symptom = disease_symptom;
  return psr;
}

void print_graph(const KnowledgeGraph& g) {
  std::cout << "entities=" << g.entities().size()
            << " facts=" << g.facts().size() << "\n";
  for (const FactTuple& f : g.facts()) {
    std::cout << f.head.name << " [" << to_string(f.head.etype) << "] --"
              << to_string(f.relation) << "--> " << f.tail.name << " ["
              << to_string(f.tail.etype) << "]\n";
  }
}

void print_anchors(const Anchors& a) {
  std::cout << "anchors: eps1="
            << (a.eps1 ? a.eps1->name : std::string("(none)"))
            << " eps2=" << (a.eps2 ? a.eps2->name : std::string("(none)"))
            << "\n";
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Knowledge-assisted medical dialogue preprocessing and "
               "evaluation toolkit"};
  app.require_subcommand(1);

  std::string kg_path;
  std::string corpus_path;
  std::string kps_path;
  std::string config_path;
  std::string out_dir = "out";
  std::string generator_name = "retrieval";
  std::string department;
  std::string disease_symptom;
  std::string question;
  std::string prev_dr;
  std::optional<uint64_t> seed;
  bool no_knowledge = false;
  bool feed_ground_truth = false;

  auto* ingest = app.add_subcommand("ingest", "Load and validate a KG file, "
                                              "print its statistics");
  ingest->add_option("--kg", kg_path, "KG file")->required();

  auto* split = app.add_subcommand("split", "Deterministically split a corpus "
                                            "into train/validation/test");
  split->add_option("--corpus", corpus_path, "corpus file")->required();
  split->add_option("--config", config_path, "pipeline config file");
  split->add_option("--seed", seed, "shuffle seed (overrides config)");
  split->add_option("--out-dir", out_dir, "output directory");

  auto* run = app.add_subcommand("run", "Run a full experiment: train, "
                                        "generate on the test split, score");
  run->add_option("--kg", kg_path, "KG file")->required();
  run->add_option("--corpus", corpus_path, "corpus file")->required();
  run->add_option("--kps", kps_path, "key phrase sets file")->required();
  run->add_option("--config", config_path, "pipeline config file");
  run->add_option("--seed", seed, "shuffle seed (overrides config)");
  run->add_option("--generator", generator_name, "retrieval|trigram")
      ->check(CLI::IsMember({"retrieval", "trigram"}));
  run->add_flag("--no-knowledge", no_knowledge,
                "ablation: skip the knowledge segments");
  run->add_flag("--feed-ground-truth", feed_ground_truth,
                "feed the reference doctor response between turns");
  run->add_option("--out-dir", out_dir, "output directory");

  auto* inspect = app.add_subcommand("inspect", "Run one pipeline stage and "
                                                "print its output");
  inspect->require_subcommand(1);
  auto add_psr_opts = [&](CLI::App* cmd) {
    cmd->add_option("--department", department, "self-report department blank");
    cmd->add_option("--disease-symptom", disease_symptom,
                    "self-report disease/symptom blank");
  };
  auto* i_sub = inspect->add_subcommand("subgraph", "Alg. 1 subgraph");
  i_sub->add_option("--kg", kg_path, "KG file")->required();
  i_sub->add_option("--config", config_path, "pipeline config file");
  add_psr_opts(i_sub);
  auto* i_topics = inspect->add_subcommand("topics", "question topics");
  i_topics->add_option("--kps", kps_path, "key phrase sets file")->required();
  i_topics->add_option("--question", question, "patient question")->required();
  i_topics->add_option("--config", config_path, "pipeline config file");
  auto* i_extract = inspect->add_subcommand("extract", "knowledge tuple");
  i_extract->add_option("--kg", kg_path, "KG file")->required();
  i_extract->add_option("--kps", kps_path, "key phrase sets file")->required();
  i_extract->add_option("--question", question, "patient question")->required();
  i_extract->add_option("--config", config_path, "pipeline config file");
  add_psr_opts(i_extract);
  auto* i_prepare = inspect->add_subcommand("prepare", "flat model input");
  i_prepare->add_option("--kg", kg_path, "KG file")->required();
  i_prepare->add_option("--kps", kps_path, "key phrase sets file")->required();
  i_prepare->add_option("--question", question, "patient question")->required();
  i_prepare->add_option("--prev-dr", prev_dr, "previous doctor response");
  i_prepare->add_option("--config", config_path, "pipeline config file");
  add_psr_opts(i_prepare);

  CLI11_PARSE(app, argc, argv);

  const PipelineConfig cfg = resolve_config(config_path, seed);

  if (*ingest) {
    const KnowledgeGraph g = load_kg_file(kg_path);
    std::cout << "entities=" << g.entities().size() << "\n";
    for (EntityType t : kEntityTypes) {
      std::cout << "entities." << to_string(t) << "="
                << g.entities_of_type(t).size() << "\n";
    }
    std::cout << "facts=" << g.facts().size() << "\n";
    std::map<RelationType, size_t> by_rel;
    for (const FactTuple& f : g.facts()) ++by_rel[f.relation];
    for (RelationType r : kRelationTypes)
      std::cout << "facts." << to_string(r) << "=" << by_rel[r] << "\n";
    return 0;
  }

  if (*split) {
    const auto convs = load_corpus_file(corpus_path);
    const Split parts = split_dataset(convs, cfg);
    std::filesystem::create_directories(out_dir);
    const auto dir = std::filesystem::path(out_dir);
    save_corpus_file((dir / "train.json").string(), parts.train);
    save_corpus_file((dir / "validation.json").string(), parts.validation);
    save_corpus_file((dir / "test.json").string(), parts.test);
    std::cout << "train=" << parts.train.size()
              << " validation=" << parts.validation.size()
              << " test=" << parts.test.size() << "\n";
    return 0;
  }

  if (*run) {
    const GeneratorKind kind = generator_name == "retrieval"
                                   ? GeneratorKind::Retrieval
                                   : GeneratorKind::Trigram;
    ExperimentOptions opt;
    opt.no_knowledge = no_knowledge;
    opt.feed_ground_truth = feed_ground_truth;
    const ExperimentResult result =
        run_experiment(kg_path, corpus_path, kps_path, cfg, kind, opt, out_dir);
    std::cout << result.report.to_text();
    std::cout << "test_turns=" << result.test_turns << "\n";
    return 0;
  }

  if (*i_sub) {
    const KnowledgeGraph base = load_kg_file(kg_path);
    const SubgraphResult sub =
        generate_subgraph(make_psr(department, disease_symptom), base, cfg.match);
    print_anchors(sub.anchors);
    print_graph(sub.graph);
    return 0;
  }

  if (*i_topics) {
    const KeyPhraseSets kps = load_kps_file(kps_path);
    const QuestionTopicTuple qt = detect_topics(question, kps, cfg.match);
    for (Topic t : qt) std::cout << to_string(t) << "\n";
    return 0;
  }

  if (*i_extract || *i_prepare) {
    const KnowledgeGraph base = load_kg_file(kg_path);
    const KeyPhraseSets kps = load_kps_file(kps_path);
    const SubgraphResult sub =
        generate_subgraph(make_psr(department, disease_symptom), base, cfg.match);
    const QuestionTopicTuple qt = detect_topics(question, kps, cfg.match);
    const MedicalKnowledgeInfoTuple mki =
        extract_knowledge(sub.graph, qt, sub.anchors);
    if (*i_extract) {
      print_anchors(mki.anchors);
      std::cout << "knowledge: " << join(mki.knowledge, ", ") << "\n";
    } else {
      const ModelInput input =
          build_model_input(mki, prev_dr, question, cfg.separator);
      std::cout << join(input.flat()) << "\n";
    }
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const mka::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
