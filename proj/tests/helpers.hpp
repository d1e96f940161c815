#pragma once

// Test-only fixtures, random generators and independent oracle
// implementations shared by the unit suites and the acceptance runner.

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "mka/kg.hpp"
#include "mka/metrics.hpp"
#include "mka/pipeline.hpp"
#include "mka/text_match.hpp"
#include "mka/unicode.hpp"

namespace mka::testing {

// ---- toy cardiology fixture ----

inline std::vector<FactRecord> toy_base_records() {
  auto rec = [](const char* h, const char* ht, const char* r, const char* t,
                const char* tt) {
    return FactRecord{h, ht, r, t, tt, 0};
  };
  return {
      rec("cardiology", "Department", "HasDisease", "angina", "Disease"),
      rec("cardiology", "Department", "HasDisease", "arrhythmia", "Disease"),
      rec("angina", "Disease", "HasSymptom", "chest pain", "Symptom"),
      rec("arrhythmia", "Disease", "HasSymptom", "palpitations", "Symptom"),
      rec("angina", "Disease", "NeedDrug", "nitroglycerin", "Drug"),
      rec("angina", "Disease", "NeedCheck", "ecg", "Check"),
      rec("angina", "Disease", "NeedFood", "oatmeal", "Food"),
      rec("angina", "Disease", "NoFood", "fried food", "Food"),
      rec("chest pain", "Symptom", "NeedDrug", "nitroglycerin", "Drug"),
      rec("arrhythmia", "Disease", "NeedDrug", "beta blocker", "Drug"),
  };
}

inline KnowledgeGraph toy_base() {
  return KnowledgeGraph::load(toy_base_records());
}

// The Alg. 1 golden trace for PSR (cardiology, angina).
inline std::set<FactTuple> golden_subgraph_facts() {
  auto e = [](const char* name, EntityType t) { return Entity{name, t}; };
  const Entity cardiology = e("cardiology", EntityType::Department);
  const Entity angina = e("angina", EntityType::Disease);
  const Entity arrhythmia = e("arrhythmia", EntityType::Disease);
  const Entity chest_pain = e("chest pain", EntityType::Symptom);
  const Entity palpitations = e("palpitations", EntityType::Symptom);
  const Entity nitroglycerin = e("nitroglycerin", EntityType::Drug);
  const Entity ecg = e("ecg", EntityType::Check);
  const Entity oatmeal = e("oatmeal", EntityType::Food);
  const Entity fried_food = e("fried food", EntityType::Food);
  return {
      {cardiology, RelationType::HasDisease, angina},
      {cardiology, RelationType::HasDisease, arrhythmia},
      {angina, RelationType::HasSymptom, chest_pain},
      {arrhythmia, RelationType::HasSymptom, palpitations},
      {angina, RelationType::NeedDrug, nitroglycerin},
      {angina, RelationType::NeedCheck, ecg},
      {angina, RelationType::NeedFood, oatmeal},
      {angina, RelationType::NoFood, fried_food},
      {chest_pain, RelationType::NeedDrug, nitroglycerin},
  };
}

// Exact-match-wins config (see text-match invariants).
inline MatchConfig positive_config() { return MatchConfig{0.1, 1.0, 0.7}; }
inline MatchConfig paper_config() { return MatchConfig{0.1, -1.0, 0.7}; }

// ---- random input generators ----

inline std::string random_string(std::mt19937_64& rng, size_t max_len,
                                 bool unicode = true) {
  static const char32_t ascii[] = U"abcdefghijklmnopqrstuvwxyz ";
  static const char32_t wide[] = U"abcxyz 头痛发热咳嗽药检查";
  std::uniform_int_distribution<size_t> len_dist(0, max_len);
  const size_t len = len_dist(rng);
  std::u32string s;
  if (unicode) {
    std::uniform_int_distribution<size_t> pick(0, std::size(wide) - 2);
    for (size_t i = 0; i < len; ++i) s.push_back(wide[pick(rng)]);
  } else {
    std::uniform_int_distribution<size_t> pick(0, std::size(ascii) - 2);
    for (size_t i = 0; i < len; ++i) s.push_back(ascii[pick(rng)]);
  }
  return encode_utf8(s);
}

inline std::vector<std::string> random_tokens(std::mt19937_64& rng,
                                              size_t max_len,
                                              size_t vocab_size = 6) {
  std::uniform_int_distribution<size_t> len_dist(0, max_len);
  std::uniform_int_distribution<size_t> pick(0, vocab_size - 1);
  std::vector<std::string> out;
  const size_t len = len_dist(rng);
  for (size_t i = 0; i < len; ++i)
    out.push_back(std::string(1, static_cast<char>('a' + pick(rng))));
  return out;
}

// Random schema-valid graph over a small name pool.
inline KnowledgeGraph random_graph(std::mt19937_64& rng) {
  auto name = [&](const char* prefix) {
    std::uniform_int_distribution<int> d(0, 4);
    return std::string(prefix) + std::to_string(d(rng));
  };
  std::vector<FactRecord> records;
  std::uniform_int_distribution<int> count_dist(0, 14);
  std::uniform_int_distribution<int> rel_dist(0, 5);
  std::uniform_int_distribution<int> head_dist(0, 1);
  const int count = count_dist(rng);
  for (int i = 0; i < count; ++i) {
    const RelationType r = kRelationTypes[rel_dist(rng)];
    FactRecord rec;
    rec.relation = std::string(to_string(r));
    switch (r) {
      case RelationType::HasDisease:
        rec.head = name("dept");
        rec.head_type = "Department";
        rec.tail = name("dis");
        rec.tail_type = "Disease";
        break;
      case RelationType::HasSymptom:
        rec.head = name("dis");
        rec.head_type = "Disease";
        rec.tail = name("sym");
        rec.tail_type = "Symptom";
        break;
      default: {
        const bool disease_head = head_dist(rng) == 0;
        rec.head = disease_head ? name("dis") : name("sym");
        rec.head_type = disease_head ? "Disease" : "Symptom";
        const EntityType tail = endpoint_rule(r).tail;
        rec.tail_type = std::string(to_string(tail));
        rec.tail = name(tail == EntityType::Drug
                            ? "drug"
                            : tail == EntityType::Check ? "check" : "food");
        break;
      }
    }
    records.push_back(std::move(rec));
  }
  return KnowledgeGraph::load(records);
}

// ---- independent oracles ----

// Full DP-table Levenshtein, kept deliberately naive.
inline size_t lev_oracle(const std::u32string& a, const std::u32string& b) {
  const size_t m = a.size();
  const size_t n = b.size();
  std::vector<std::vector<size_t>> table(m + 1, std::vector<size_t>(n + 1, 0));
  for (size_t i = 0; i <= m; ++i) table[i][0] = i;
  for (size_t j = 0; j <= n; ++j) table[0][j] = j;
  for (size_t i = 1; i <= m; ++i) {
    for (size_t j = 1; j <= n; ++j) {
      const size_t sub = table[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      table[i][j] = std::min({table[i - 1][j] + 1, table[i][j - 1] + 1, sub});
    }
  }
  return table[m][n];
}

inline size_t hamming_oracle(const std::u32string& a, const std::u32string& b) {
  size_t d = 0;
  const size_t shared = std::min(a.size(), b.size());
  for (size_t i = 0; i < shared; ++i)
    if (a[i] != b[i]) ++d;
  return d + (a.size() > b.size() ? a.size() - b.size() : b.size() - a.size());
}

// Linear-scan argmin with the documented tie rule.
inline Entity best_match_oracle(const std::string& query,
                                const std::vector<Entity>& candidates,
                                const MatchConfig& c) {
  std::vector<std::pair<double, Entity>> scored;
  for (const Entity& e : candidates)
    scored.emplace_back(combined_dist(query, e.name, c), e);
  std::stable_sort(scored.begin(), scored.end(),
                   [](const auto& x, const auto& y) {
                     if (x.first != y.first) return x.first < y.first;
                     if (x.second.name != y.second.name)
                       return x.second.name < y.second.name;
                     return x.second.etype < y.second.etype;
                   });
  return scored.front().second;
}

// Brute-force knowledge re-derivation: scan every entity and fact.
inline MedicalKnowledgeInfoTuple extract_oracle(const KnowledgeGraph& sub,
                                                const QuestionTopicTuple& qt,
                                                const Anchors& a) {
  MedicalKnowledgeInfoTuple out;
  out.anchors = a;
  std::set<std::string> seen;
  if (a.eps1) seen.insert(a.eps1->name);
  if (a.eps2) seen.insert(a.eps2->name);
  for (Topic t : qt) {
    std::set<std::string> names;
    for (const Entity& e : sub.entities()) {
      const bool anchor2 = a.eps2 && e == *a.eps2;
      if (t == Topic::Disease && e.etype == EntityType::Disease && !anchor2)
        names.insert(e.name);
      if (t == Topic::Symptom && e.etype == EntityType::Symptom && !anchor2)
        names.insert(e.name);
      if (t == Topic::Drug && e.etype == EntityType::Drug) names.insert(e.name);
      if (t == Topic::Check && e.etype == EntityType::Check)
        names.insert(e.name);
    }
    for (const FactTuple& f : sub.facts()) {
      if (t == Topic::RecommendedFood && f.relation == RelationType::NeedFood)
        names.insert(f.tail.name);
      if (t == Topic::NotRecommendedFood && f.relation == RelationType::NoFood)
        names.insert(f.tail.name);
    }
    for (const std::string& n : names)
      if (seen.insert(n).second) out.knowledge.push_back(n);
  }
  return out;
}

// ---- metric oracles (direct-formula, explicit count tables) ----

using TokenList = std::vector<std::string>;

inline std::map<std::string, size_t> count_grams(const TokenList& t, size_t n) {
  std::map<std::string, size_t> counts;
  for (size_t i = 0; i + n <= t.size(); ++i) {
    std::string key;
    for (size_t k = 0; k < n; ++k) key += t[i + k] + "\x1f";
    ++counts[key];
  }
  return counts;
}

inline double bleu_oracle(const TokenList& cand, const TokenList& ref,
                          size_t n) {
  double geo = 1.0;
  for (size_t m = 1; m <= n; ++m) {
    const auto cc = count_grams(cand, m);
    const auto rc = count_grams(ref, m);
    size_t match = 0;
    size_t total = 0;
    for (const auto& [g, c] : cc) {
      total += c;
      auto it = rc.find(g);
      if (it != rc.end()) match += std::min(c, it->second);
    }
    const double p = match == 0
                         ? 1.0 / static_cast<double>(total + 1)
                         : static_cast<double>(match) / static_cast<double>(total);
    geo *= std::pow(p, 1.0 / static_cast<double>(n));
  }
  const double bp = cand.size() >= ref.size()
                        ? 1.0
                        : std::exp(1.0 - static_cast<double>(ref.size()) /
                                             static_cast<double>(cand.size()));
  return bp * geo;
}

inline double nist_oracle(const std::vector<TokenList>& cands,
                          const std::vector<TokenList>& refs, size_t n) {
  std::vector<std::map<std::string, size_t>> ref_tables(n + 1);
  size_t unigrams = 0;
  for (const TokenList& r : refs) {
    unigrams += r.size();
    for (size_t m = 1; m <= n; ++m)
      for (const auto& [g, c] : count_grams(r, m)) ref_tables[m][g] += c;
  }
  double total_score = 0.0;
  for (size_t m = 1; m <= n; ++m) {
    double info_sum = 0.0;
    size_t denom = 0;
    for (size_t s = 0; s < cands.size(); ++s) {
      const auto cc = count_grams(cands[s], m);
      const auto rc = count_grams(refs[s], m);
      for (const auto& [g, c] : cc) {
        denom += c;
        auto it = rc.find(g);
        if (it == rc.end()) continue;
        double prefix_count;
        if (m == 1) {
          prefix_count = static_cast<double>(unigrams);
        } else {
          // Strip the final token from the joined key.
          std::string prefix = g;
          prefix.pop_back();  // trailing separator
          prefix.erase(prefix.rfind('\x1f') + 1);
          prefix_count = static_cast<double>(ref_tables[m - 1].at(prefix));
        }
        const double info =
            std::log2(prefix_count / static_cast<double>(ref_tables[m].at(g)));
        info_sum += info * static_cast<double>(std::min(c, it->second));
      }
    }
    if (denom > 0) total_score += info_sum / static_cast<double>(denom);
  }
  size_t lc = 0;
  size_t lr = 0;
  for (const TokenList& c : cands) lc += c.size();
  for (const TokenList& r : refs) lr += r.size();
  double bf = 1.0;
  if (lc > 0 && lr > 0) {
    const double beta = std::log(0.5) / std::pow(std::log(2.0 / 3.0), 2);
    const double ratio = std::min(1.0, static_cast<double>(lc) / lr);
    bf = std::exp(beta * std::log(ratio) * std::log(ratio));
  }
  return total_score * bf;
}

inline double meteor_oracle(const TokenList& cand, const TokenList& ref) {
  std::vector<int> match_ref(cand.size(), -1);
  std::vector<bool> used(ref.size(), false);
  for (size_t i = 0; i < cand.size(); ++i) {
    for (size_t j = 0; j < ref.size(); ++j) {
      if (!used[j] && cand[i] == ref[j]) {
        match_ref[i] = static_cast<int>(j);
        used[j] = true;
        break;
      }
    }
  }
  size_t m = 0;
  for (int j : match_ref)
    if (j >= 0) ++m;
  if (m == 0) return 0.0;
  const double precision = static_cast<double>(m) / cand.size();
  const double recall = static_cast<double>(m) / ref.size();
  const double fmean = 10.0 * precision * recall / (recall + 9.0 * precision);
  size_t chunks = 0;
  int prev_i = -10;
  int prev_j = -10;
  for (size_t i = 0; i < cand.size(); ++i) {
    if (match_ref[i] < 0) continue;
    if (static_cast<int>(i) != prev_i + 1 || match_ref[i] != prev_j + 1)
      ++chunks;
    prev_i = static_cast<int>(i);
    prev_j = match_ref[i];
  }
  const double frag = static_cast<double>(chunks) / static_cast<double>(m);
  return fmean * (1.0 - 0.5 * frag * frag * frag);
}

inline double entropy_oracle(const std::vector<TokenList>& responses,
                             size_t n) {
  std::map<std::string, size_t> table;
  size_t total = 0;
  for (const TokenList& r : responses)
    for (const auto& [g, c] : count_grams(r, n)) {
      table[g] += c;
      total += c;
    }
  double h = 0.0;
  for (const auto& [g, c] : table) {
    const double p = static_cast<double>(c) / total;
    h -= p * std::log(p);
  }
  return h;
}

inline double dist_oracle(const std::vector<TokenList>& responses, size_t n) {
  std::map<std::string, size_t> table;
  size_t total = 0;
  for (const TokenList& r : responses)
    for (const auto& [g, c] : count_grams(r, n)) {
      table[g] += c;
      total += c;
    }
  return static_cast<double>(table.size()) / static_cast<double>(total);
}

}  // namespace mka::testing
