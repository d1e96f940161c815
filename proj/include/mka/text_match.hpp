#pragma once

#include <string_view>
#include <vector>

#include "mka/kg.hpp"

namespace mka {

struct MatchConfig {
  double alpha = 0.1;  // Levenshtein weight
  double beta = -1.0;  // Hamming weight
  double delta = 0.7;  // similarity threshold for topic detection
};

// Edit distance over Unicode scalar values.
size_t levenshtein(std::u32string_view u, std::u32string_view v);
size_t levenshtein(std::string_view u, std::string_view v);

// Positional mismatches over the shared prefix plus the length difference.
size_t hamming_ext(std::u32string_view u, std::u32string_view v);
size_t hamming_ext(std::string_view u, std::string_view v);

// alpha * Levenshtein + beta * Hamming; may be negative when beta < 0.
double combined_dist(std::string_view u, std::string_view v,
                     const MatchConfig& c);

// 1 - (|alpha| * Lev + |beta| * Ham) / ((|alpha| + |beta|) * max(|u|, |v|)),
// clamped to [0, 1]. Throws BothEmpty when both strings are empty.
double normalized_similarity(std::string_view u, std::string_view v,
                             const MatchConfig& c);

// Argmin of combined_dist over the candidates; ties broken by name, then by
// entity-type enum order. Throws EmptyCandidateSet.
Entity best_match(std::string_view query, const std::vector<Entity>& candidates,
                  const MatchConfig& c);

}  // namespace mka
