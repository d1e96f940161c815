#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "mka/kg.hpp"

using namespace mka;
using namespace mka::testing;

TEST_SUITE_BEGIN("kg");

TEST_CASE("golden subgraph fixture loads to 9 entities and 9 facts") {
  std::vector<FactRecord> records;
  for (const FactTuple& f : golden_subgraph_facts()) {
    records.push_back(FactRecord{f.head.name, std::string(to_string(f.head.etype)),
                                 std::string(to_string(f.relation)), f.tail.name,
                                 std::string(to_string(f.tail.etype)), 0});
  }
  const KnowledgeGraph g = KnowledgeGraph::load(records);
  CHECK(g.entities().size() == 9);
  CHECK(g.facts().size() == 9);
}

TEST_CASE("toy base graph loads with entities created on first mention") {
  const KnowledgeGraph g = toy_base();
  CHECK(g.entities().size() == 10);
  CHECK(g.facts().size() == 10);
}

TEST_CASE("endpoint rule violations are rejected with the offending record") {
  std::vector<FactRecord> records = {
      {"cardiology", "Department", "NeedDrug", "aspirin", "Drug", 7}};
  try {
    KnowledgeGraph::load(records);
    FAIL("expected TypeViolation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TypeViolation);
    CHECK(std::string(e.what()).find("line 7") != std::string::npos);
  }
}

TEST_CASE("empty names are rejected") {
  std::vector<FactRecord> records = {
      {"  ", "Department", "HasDisease", "angina", "Disease", 1}};
  CHECK_THROWS_AS(KnowledgeGraph::load(records), Error);
}

TEST_CASE("self-loops are rejected") {
  // No endpoint rule is type-compatible with a self-loop, so build the fact
  // directly and go through make().
  const Entity x{"x", EntityType::Disease};
  try {
    KnowledgeGraph::make({x}, {FactTuple{x, RelationType::NeedFood, x}});
    FAIL("expected TypeViolation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TypeViolation);
    CHECK(std::string(e.what()).find("self-loop") != std::string::npos);
  }
}

TEST_CASE("duplicate facts collapse") {
  auto records = toy_base_records();
  records.push_back(records.front());
  const KnowledgeGraph g = KnowledgeGraph::load(records);
  CHECK(g == toy_base());
}

TEST_CASE("load is idempotent under record duplication") {
  auto records = toy_base_records();
  auto doubled = records;
  doubled.insert(doubled.end(), records.begin(), records.end());
  CHECK(KnowledgeGraph::load(records) == KnowledgeGraph::load(doubled));
}

TEST_CASE("entities_of_type is lexicographic and exact") {
  const KnowledgeGraph g = toy_base();
  const auto departments = g.entities_of_type(EntityType::Department);
  REQUIRE(departments.size() == 1);
  CHECK(departments[0].name == "cardiology");
  const auto drugs = g.entities_of_type(EntityType::Drug);
  REQUIRE(drugs.size() == 2);
  CHECK(drugs[0].name == "beta blocker");
  CHECK(drugs[1].name == "nitroglycerin");
  CHECK(KnowledgeGraph().entities_of_type(EntityType::Food).empty());
}

TEST_CASE("neighbors returns ordered tails") {
  const KnowledgeGraph g = toy_base();
  const Entity cardiology{"cardiology", EntityType::Department};
  const auto diseases = g.neighbors(cardiology, RelationType::HasDisease);
  REQUIRE(diseases.size() == 2);
  CHECK(diseases[0].name == "angina");
  CHECK(diseases[1].name == "arrhythmia");

  const Entity angina{"angina", EntityType::Disease};
  const auto no_food = g.neighbors(angina, RelationType::NoFood);
  REQUIRE(no_food.size() == 1);
  CHECK(no_food[0].name == "fried food");
  CHECK(g.neighbors(angina, RelationType::NeedFood).size() == 1);
  CHECK(g.neighbors(Entity{"arrhythmia", EntityType::Disease},
                    RelationType::NeedFood)
            .empty());
}

TEST_CASE("neighbors of an unknown entity throws") {
  const KnowledgeGraph g = toy_base();
  try {
    g.neighbors(Entity{"nonexistent", EntityType::Drug},
                RelationType::NeedDrug);
    FAIL("expected UnknownEntity");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnknownEntity);
  }
}

TEST_CASE("union identity and idempotence") {
  const KnowledgeGraph g = toy_base();
  CHECK(unite(g, KnowledgeGraph()) == g);
  CHECK(unite(g, g) == g);
}

TEST_CASE("union is commutative and associative") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    const KnowledgeGraph a = random_graph(rng);
    const KnowledgeGraph b = random_graph(rng);
    const KnowledgeGraph c = random_graph(rng);
    CHECK(unite(a, b) == unite(b, a));
    CHECK(unite(unite(a, b), c) == unite(a, unite(b, c)));
  }
}

TEST_CASE("random record lists always build schema-valid graphs") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    const KnowledgeGraph g = random_graph(rng);
    for (const FactTuple& f : g.facts()) {
      const EndpointRule rule = endpoint_rule(f.relation);
      CHECK(rule.head_ok(f.head.etype));
      CHECK(f.tail.etype == rule.tail);
      CHECK(g.contains(f.head));
      CHECK(g.contains(f.tail));
    }
  }
}

TEST_CASE("indexes are rebuildable from the entity and fact sets") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 30; ++i) {
    const KnowledgeGraph g = random_graph(rng);
    const KnowledgeGraph rebuilt =
        KnowledgeGraph::make(g.entities(), g.facts());
    CHECK(rebuilt == g);
    for (EntityType t : kEntityTypes)
      CHECK(rebuilt.entities_of_type(t) == g.entities_of_type(t));
    for (const Entity& e : g.entities())
      for (RelationType r : kRelationTypes)
        CHECK(rebuilt.neighbors(e, r) == g.neighbors(e, r));
  }
}

TEST_CASE("kg file round trip with comments and blank lines") {
  std::istringstream in(
      "# comment\n"
      "\n"
      "cardiology\tDepartment\tHasDisease\tangina\tDisease\n");
  const auto records = parse_kg_records(in);
  REQUIRE(records.size() == 1);
  CHECK(records[0].line == 3);
  const KnowledgeGraph g = KnowledgeGraph::load(records);
  CHECK(g.facts().size() == 1);
}

TEST_CASE("bundled toy KG file loads") {
  const KnowledgeGraph g = load_kg_file(std::string(MKA_DATA_DIR) + "/toy_kg.tsv");
  CHECK(g.facts().size() == 17);
  CHECK(g.entities_of_type(EntityType::Department).size() == 1);
}

TEST_SUITE_END();
