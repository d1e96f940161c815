#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mka/kg.hpp"
#include "mka/text_match.hpp"

namespace mka {

struct PatientSelfReport {
  std::optional<std::string> department;
  std::optional<std::string> disease_symptom;
};

struct Anchors {
  std::optional<Entity> eps1;  // Department anchor
  std::optional<Entity> eps2;  // Disease or Symptom anchor

  bool operator==(const Anchors&) const = default;
};

enum class Topic {
  Disease,
  Symptom,
  Drug,
  Check,
  RecommendedFood,
  NotRecommendedFood
};

inline constexpr Topic kTopics[] = {
    Topic::Disease,         Topic::Symptom, Topic::Drug,
    Topic::Check,           Topic::RecommendedFood,
    Topic::NotRecommendedFood};

std::string_view to_string(Topic t);
std::optional<Topic> parse_topic(std::string_view s);

// All six topics must be present; phrases are non-empty and unique per topic.
struct KeyPhraseSets {
  std::map<Topic, std::vector<std::string>> phrases;

  static KeyPhraseSets from_map(std::map<Topic, std::vector<std::string>> m);
};

using QuestionTopicTuple = std::vector<Topic>;

struct MedicalKnowledgeInfoTuple {
  Anchors anchors;
  std::vector<std::string> knowledge;  // entity names, anchors excluded

  bool operator==(const MedicalKnowledgeInfoTuple&) const = default;
};

struct SubgraphResult {
  KnowledgeGraph graph;
  Anchors anchors;
};

// Builds the per-case subgraph from the self-report blanks: the department
// anchor contributes its disease and symptom edges; the disease/symptom
// anchor contributes its symptom, drug, check and food edges (for a symptom
// anchor, via the diseases that list it).
SubgraphResult generate_subgraph(const PatientSelfReport& psr,
                                 const KnowledgeGraph& base,
                                 const MatchConfig& c);

// A topic fires when one of its phrases is a substring of the question or is
// similar (above c.delta) to some same-length window of the question.
QuestionTopicTuple detect_topics(std::string_view question,
                                 const KeyPhraseSets& kps,
                                 const MatchConfig& c);

// Anchors first, then per fired topic the matching subgraph entities, in
// topic order then lexicographic, deduplicated.
MedicalKnowledgeInfoTuple extract_knowledge(const KnowledgeGraph& sub,
                                            const QuestionTopicTuple& qt,
                                            const Anchors& a);

}  // namespace mka
