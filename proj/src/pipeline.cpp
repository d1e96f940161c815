#include "mka/pipeline.hpp"

#include <algorithm>
#include <set>

#include "mka/unicode.hpp"

namespace mka {

std::string_view to_string(Topic t) {
  switch (t) {
    case Topic::Disease: return "disease";
    case Topic::Symptom: return "symptom";
    case Topic::Drug: return "drug";
    case Topic::Check: return "check";
    case Topic::RecommendedFood: return "recommended_food";
    case Topic::NotRecommendedFood: return "not_recommended_food";
  }
  return "?";
}

std::optional<Topic> parse_topic(std::string_view s) {
  for (Topic t : kTopics)
    if (s == to_string(t)) return t;
  return std::nullopt;
}

KeyPhraseSets KeyPhraseSets::from_map(
    std::map<Topic, std::vector<std::string>> m) {
  for (Topic t : kTopics) {
    if (!m.count(t)) {
      throw Error(ErrorKind::ParseError,
                  "key phrase sets missing topic '" +
                      std::string(to_string(t)) + "'");
    }
    std::set<std::string> seen;
    for (const std::string& p : m[t]) {
      if (trim(p).empty())
        throw Error(ErrorKind::EmptyName, "empty key phrase for topic '" +
                                              std::string(to_string(t)) + "'");
      if (!seen.insert(p).second)
        throw Error(ErrorKind::ParseError,
                    "duplicate key phrase '" + p + "' for topic '" +
                        std::string(to_string(t)) + "'");
    }
  }
  KeyPhraseSets kps;
  kps.phrases = std::move(m);
  return kps;
}

namespace {

constexpr RelationType kNeedRelations[] = {
    RelationType::NeedDrug, RelationType::NeedCheck, RelationType::NeedFood,
    RelationType::NoFood};

void add_fact(std::set<FactTuple>& facts, std::set<Entity>& entities,
              const Entity& head, RelationType r, const Entity& tail) {
  facts.insert(FactTuple{head, r, tail});
  entities.insert(head);
  entities.insert(tail);
}

// All (head, r, *) facts of the base graph.
void add_out_edges(const KnowledgeGraph& base, const Entity& head,
                   RelationType r, std::set<FactTuple>& facts,
                   std::set<Entity>& entities) {
  for (const Entity& tail : base.neighbors(head, r))
    add_fact(facts, entities, head, r, tail);
}

void add_need_edges(const KnowledgeGraph& base, const Entity& head,
                    std::set<FactTuple>& facts, std::set<Entity>& entities) {
  for (RelationType r : kNeedRelations) add_out_edges(base, head, r, facts, entities);
}

}  // namespace

SubgraphResult generate_subgraph(const PatientSelfReport& psr,
                                 const KnowledgeGraph& base,
                                 const MatchConfig& c) {
  std::set<Entity> entities;
  std::set<FactTuple> facts;
  Anchors anchors;

  if (psr.department) {
    const auto pool = base.entities_of_type(EntityType::Department);
    if (pool.empty()) {
      throw Error(ErrorKind::NoMatchableEntity,
                  "self-report names a department but the graph has none");
    }
    const Entity eps1 = best_match(*psr.department, pool, c);
    anchors.eps1 = eps1;
    entities.insert(eps1);
    for (const Entity& disease :
         base.neighbors(eps1, RelationType::HasDisease)) {
      add_fact(facts, entities, eps1, RelationType::HasDisease, disease);
      add_out_edges(base, disease, RelationType::HasSymptom, facts, entities);
    }
  }

  if (psr.disease_symptom) {
    std::vector<Entity> pool = base.entities_of_type(EntityType::Disease);
    const auto symptoms = base.entities_of_type(EntityType::Symptom);
    pool.insert(pool.end(), symptoms.begin(), symptoms.end());
    if (pool.empty()) {
      throw Error(ErrorKind::NoMatchableEntity,
                  "self-report names a disease/symptom but the graph has "
                  "neither diseases nor symptoms");
    }
    const Entity eps2 = best_match(*psr.disease_symptom, pool, c);
    anchors.eps2 = eps2;
    entities.insert(eps2);
    if (eps2.etype == EntityType::Disease) {
      add_out_edges(base, eps2, RelationType::HasSymptom, facts, entities);
      add_need_edges(base, eps2, facts, entities);
      for (const Entity& symptom :
           base.neighbors(eps2, RelationType::HasSymptom))
        add_need_edges(base, symptom, facts, entities);
    } else {
      // The diseases listing this symptom, traversed in reverse.
      for (const FactTuple& f : base.facts()) {
        if (f.relation == RelationType::HasSymptom && f.tail == eps2) {
          add_fact(facts, entities, f.head, f.relation, f.tail);
          add_out_edges(base, f.head, RelationType::HasSymptom, facts,
                        entities);
          add_need_edges(base, f.head, facts, entities);
        }
      }
      add_need_edges(base, eps2, facts, entities);
    }
  }

  return SubgraphResult{
      KnowledgeGraph::make(std::move(entities), std::move(facts)), anchors};
}

QuestionTopicTuple detect_topics(std::string_view question,
                                 const KeyPhraseSets& kps,
                                 const MatchConfig& c) {
  const std::u32string q = decode_utf8(question);
  QuestionTopicTuple out;
  for (Topic t : kTopics) {
    bool fired = false;
    for (const std::string& phrase : kps.phrases.at(t)) {
      if (question.find(phrase) != std::string_view::npos) {
        fired = true;
        break;
      }
      if (q.empty()) continue;
      const std::u32string p = decode_utf8(phrase);
      const size_t win = std::min(p.size(), q.size());
      for (size_t i = 0; i + win <= q.size(); ++i) {
        const std::u32string_view window(q.data() + i, win);
        if (normalized_similarity(encode_utf8(window), phrase, c) > c.delta) {
          fired = true;
          break;
        }
      }
      if (fired) break;
    }
    if (fired) out.push_back(t);
  }
  return out;
}

namespace {

std::vector<std::string> topic_entities(const KnowledgeGraph& sub, Topic t,
                                        const Anchors& a) {
  std::set<std::string> names;
  switch (t) {
    case Topic::Disease:
      for (const Entity& e : sub.entities_of_type(EntityType::Disease))
        if (!(a.eps2 && e == *a.eps2)) names.insert(e.name);
      break;
    case Topic::Symptom:
      for (const Entity& e : sub.entities_of_type(EntityType::Symptom))
        if (!(a.eps2 && e == *a.eps2)) names.insert(e.name);
      break;
    case Topic::Drug:
      for (const Entity& e : sub.entities_of_type(EntityType::Drug))
        names.insert(e.name);
      break;
    case Topic::Check:
      for (const Entity& e : sub.entities_of_type(EntityType::Check))
        names.insert(e.name);
      break;
    case Topic::RecommendedFood:
      for (const FactTuple& f : sub.facts())
        if (f.relation == RelationType::NeedFood) names.insert(f.tail.name);
      break;
    case Topic::NotRecommendedFood:
      for (const FactTuple& f : sub.facts())
        if (f.relation == RelationType::NoFood) names.insert(f.tail.name);
      break;
  }
  return {names.begin(), names.end()};
}

}  // namespace

MedicalKnowledgeInfoTuple extract_knowledge(const KnowledgeGraph& sub,
                                            const QuestionTopicTuple& qt,
                                            const Anchors& a) {
  MedicalKnowledgeInfoTuple mki;
  mki.anchors = a;
  std::set<std::string> taken;
  if (a.eps1) taken.insert(a.eps1->name);
  if (a.eps2) taken.insert(a.eps2->name);
  for (Topic t : qt) {
    for (const std::string& name : topic_entities(sub, t, a)) {
      if (taken.insert(name).second) mki.knowledge.push_back(name);
    }
  }
  return mki;
}

}  // namespace mka
