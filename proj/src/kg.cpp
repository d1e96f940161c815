#include "mka/kg.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "mka/unicode.hpp"

namespace mka {

std::string_view to_string(EntityType t) {
  switch (t) {
    case EntityType::Department: return "Department";
    case EntityType::Disease: return "Disease";
    case EntityType::Symptom: return "Symptom";
    case EntityType::Food: return "Food";
    case EntityType::Check: return "Check";
    case EntityType::Drug: return "Drug";
  }
  return "?";
}

std::string_view to_string(RelationType r) {
  switch (r) {
    case RelationType::HasDisease: return "HasDisease";
    case RelationType::HasSymptom: return "HasSymptom";
    case RelationType::NeedDrug: return "NeedDrug";
    case RelationType::NeedCheck: return "NeedCheck";
    case RelationType::NeedFood: return "NeedFood";
    case RelationType::NoFood: return "NoFood";
  }
  return "?";
}

std::optional<EntityType> parse_entity_type(std::string_view s) {
  for (EntityType t : kEntityTypes)
    if (s == to_string(t)) return t;
  return std::nullopt;
}

std::optional<RelationType> parse_relation_type(std::string_view s) {
  for (RelationType r : kRelationTypes)
    if (s == to_string(r)) return r;
  return std::nullopt;
}

EndpointRule endpoint_rule(RelationType r) {
  switch (r) {
    case RelationType::HasDisease: return {false, EntityType::Disease};
    case RelationType::HasSymptom: return {true, EntityType::Symptom};
    case RelationType::NeedDrug: return {true, EntityType::Drug};
    case RelationType::NeedCheck: return {true, EntityType::Check};
    case RelationType::NeedFood: return {true, EntityType::Food};
    case RelationType::NoFood: return {true, EntityType::Food};
  }
  return {true, EntityType::Food};
}

namespace {

void validate_fact(const FactTuple& f, size_t line) {
  const EndpointRule rule = endpoint_rule(f.relation);
  std::ostringstream where;
  if (line > 0) where << " (record at line " << line << ")";
  if (f.head == f.tail) {
    throw Error(ErrorKind::TypeViolation,
                "self-loop on entity '" + f.head.name + "'" + where.str());
  }
  if (!rule.head_ok(f.head.etype) || f.tail.etype != rule.tail) {
    throw Error(ErrorKind::TypeViolation,
                "fact (" + f.head.name + ", " +
                    std::string(to_string(f.relation)) + ", " + f.tail.name +
                    ") violates the endpoint rule for " +
                    std::string(to_string(f.relation)) + where.str());
  }
}

Entity make_entity(const std::string& raw_name, EntityType t, size_t line) {
  const std::string name = trim(raw_name);
  if (name.empty()) {
    std::ostringstream msg;
    msg << "empty entity name";
    if (line > 0) msg << " at line " << line;
    throw Error(ErrorKind::EmptyName, msg.str());
  }
  return Entity{name, t};
}

}  // namespace

KnowledgeGraph KnowledgeGraph::load(const std::vector<FactRecord>& records) {
  std::set<Entity> entities;
  std::set<FactTuple> facts;
  for (const FactRecord& rec : records) {
    const auto ht = parse_entity_type(rec.head_type);
    const auto tt = parse_entity_type(rec.tail_type);
    const auto rel = parse_relation_type(rec.relation);
    if (!ht || !tt || !rel) {
      std::ostringstream msg;
      msg << "unknown type or relation label";
      if (rec.line > 0) msg << " at line " << rec.line;
      msg << ": '" << rec.head_type << "' / '" << rec.relation << "' / '"
          << rec.tail_type << "'";
      throw Error(ErrorKind::ParseError, msg.str());
    }
    FactTuple f{make_entity(rec.head, *ht, rec.line), *rel,
                make_entity(rec.tail, *tt, rec.line)};
    validate_fact(f, rec.line);
    entities.insert(f.head);
    entities.insert(f.tail);
    facts.insert(f);
  }
  KnowledgeGraph g;
  g.entities_ = std::move(entities);
  g.facts_ = std::move(facts);
  g.rebuild_indexes();
  return g;
}

KnowledgeGraph KnowledgeGraph::make(std::set<Entity> entities,
                                    std::set<FactTuple> facts) {
  for (const FactTuple& f : facts) {
    validate_fact(f, 0);
    if (!entities.count(f.head) || !entities.count(f.tail)) {
      throw Error(ErrorKind::UnknownEntity,
                  "fact endpoint missing from entity set: (" + f.head.name +
                      ", " + std::string(to_string(f.relation)) + ", " +
                      f.tail.name + ")");
    }
  }
  for (const Entity& e : entities) {
    if (trim(e.name).empty())
      throw Error(ErrorKind::EmptyName, "empty entity name");
  }
  KnowledgeGraph g;
  g.entities_ = std::move(entities);
  g.facts_ = std::move(facts);
  g.rebuild_indexes();
  return g;
}

void KnowledgeGraph::rebuild_indexes() {
  by_type_.clear();
  adjacency_.clear();
  for (const Entity& e : entities_) by_type_[e.etype].push_back(e);
  for (const FactTuple& f : facts_)
    adjacency_[{f.head, f.relation}].push_back(f.tail);
  // std::set iteration is already lexicographic; the vectors inherit it.
}

std::vector<Entity> KnowledgeGraph::entities_of_type(EntityType t) const {
  auto it = by_type_.find(t);
  if (it == by_type_.end()) return {};
  return it->second;
}

std::vector<Entity> KnowledgeGraph::neighbors(const Entity& e,
                                              RelationType r) const {
  if (!contains(e)) {
    throw Error(ErrorKind::UnknownEntity,
                "entity '" + e.name + "' is not in the graph");
  }
  auto it = adjacency_.find({e, r});
  if (it == adjacency_.end()) return {};
  return it->second;
}

KnowledgeGraph unite(const KnowledgeGraph& a, const KnowledgeGraph& b) {
  std::set<Entity> entities = a.entities_;
  entities.insert(b.entities_.begin(), b.entities_.end());
  std::set<FactTuple> facts = a.facts_;
  facts.insert(b.facts_.begin(), b.facts_.end());
  return KnowledgeGraph::make(std::move(entities), std::move(facts));
}

std::vector<FactRecord> parse_kg_records(std::istream& in) {
  std::vector<FactRecord> records;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    size_t start = 0;
    while (true) {
      size_t tab = line.find('\t', start);
      fields.push_back(line.substr(start, tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    if (fields.size() != 5) {
      std::ostringstream msg;
      msg << "expected 5 tab-separated fields at line " << lineno << ", got "
          << fields.size();
      throw Error(ErrorKind::ParseError, msg.str());
    }
    records.push_back(FactRecord{fields[0], fields[1], fields[2], fields[3],
                                 fields[4], lineno});
  }
  return records;
}

KnowledgeGraph load_kg_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::FileError, "cannot open KG file: " + path);
  return KnowledgeGraph::load(parse_kg_records(in));
}

}  // namespace mka
