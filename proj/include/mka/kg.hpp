#pragma once

#include <compare>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mka/error.hpp"

namespace mka {

enum class EntityType { Department, Disease, Symptom, Food, Check, Drug };
enum class RelationType {
  HasDisease,
  HasSymptom,
  NeedDrug,
  NeedCheck,
  NeedFood,
  NoFood
};

inline constexpr EntityType kEntityTypes[] = {
    EntityType::Department, EntityType::Disease, EntityType::Symptom,
    EntityType::Food,       EntityType::Check,   EntityType::Drug};
inline constexpr RelationType kRelationTypes[] = {
    RelationType::HasDisease, RelationType::HasSymptom, RelationType::NeedDrug,
    RelationType::NeedCheck,  RelationType::NeedFood,   RelationType::NoFood};

std::string_view to_string(EntityType t);
std::string_view to_string(RelationType r);
std::optional<EntityType> parse_entity_type(std::string_view s);
std::optional<RelationType> parse_relation_type(std::string_view s);

// Table-2 endpoint rule for one relation type.
struct EndpointRule {
  bool disease_or_symptom_head;  // else Department-only head
  EntityType tail;

  bool head_ok(EntityType t) const {
    if (disease_or_symptom_head)
      return t == EntityType::Disease || t == EntityType::Symptom;
    return t == EntityType::Department;
  }
};

EndpointRule endpoint_rule(RelationType r);

struct Entity {
  std::string name;
  EntityType etype;

  auto operator<=>(const Entity&) const = default;
};

struct FactTuple {
  Entity head;
  RelationType relation;
  Entity tail;

  auto operator<=>(const FactTuple&) const = default;
};

// One raw line of the KG interchange file.
struct FactRecord {
  std::string head;
  std::string head_type;
  std::string relation;
  std::string tail;
  std::string tail_type;
  size_t line = 0;  // 1-based source line, 0 when synthetic
};

// Immutable after construction; all queries return lexicographic order.
class KnowledgeGraph {
 public:
  KnowledgeGraph() = default;

  static KnowledgeGraph load(const std::vector<FactRecord>& records);
  // Entities must cover every fact endpoint; facts must be schema-valid.
  static KnowledgeGraph make(std::set<Entity> entities,
                             std::set<FactTuple> facts);

  const std::set<Entity>& entities() const { return entities_; }
  const std::set<FactTuple>& facts() const { return facts_; }
  bool contains(const Entity& e) const { return entities_.count(e) > 0; }
  bool empty() const { return entities_.empty() && facts_.empty(); }

  std::vector<Entity> entities_of_type(EntityType t) const;
  std::vector<Entity> neighbors(const Entity& e, RelationType r) const;

  bool operator==(const KnowledgeGraph& other) const {
    return entities_ == other.entities_ && facts_ == other.facts_;
  }

  friend KnowledgeGraph unite(const KnowledgeGraph& a, const KnowledgeGraph& b);

 private:
  void rebuild_indexes();

  std::set<Entity> entities_;
  std::set<FactTuple> facts_;
  std::map<EntityType, std::vector<Entity>> by_type_;
  std::map<std::pair<Entity, RelationType>, std::vector<Entity>> adjacency_;
};

KnowledgeGraph unite(const KnowledgeGraph& a, const KnowledgeGraph& b);

// Tab-separated KG file: head, head_type, relation, tail, tail_type.
// Lines beginning with '#' and blank lines are ignored.
std::vector<FactRecord> parse_kg_records(std::istream& in);
KnowledgeGraph load_kg_file(const std::string& path);

}  // namespace mka
