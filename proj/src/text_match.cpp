#include "mka/text_match.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mka/error.hpp"
#include "mka/unicode.hpp"

namespace mka {

size_t levenshtein(std::u32string_view u, std::u32string_view v) {
  const size_t m = u.size();
  const size_t n = v.size();
  if (m == 0) return n;
  if (n == 0) return m;

  std::vector<size_t> row(n + 1);
  std::iota(row.begin(), row.end(), size_t{0});
  for (size_t i = 0; i < m; ++i) {
    size_t corner = row[0];
    row[0] = i + 1;
    for (size_t j = 0; j < n; ++j) {
      const size_t upper = row[j + 1];
      if (u[i] == v[j]) {
        row[j + 1] = corner;
      } else {
        row[j + 1] = std::min({upper, corner, row[j]}) + 1;
      }
      corner = upper;
    }
  }
  return row[n];
}

size_t levenshtein(std::string_view u, std::string_view v) {
  return levenshtein(decode_utf8(u), decode_utf8(v));
}

size_t hamming_ext(std::u32string_view u, std::u32string_view v) {
  const size_t shared = std::min(u.size(), v.size());
  size_t mismatches = 0;
  for (size_t i = 0; i < shared; ++i)
    if (u[i] != v[i]) ++mismatches;
  return mismatches + (std::max(u.size(), v.size()) - shared);
}

size_t hamming_ext(std::string_view u, std::string_view v) {
  return hamming_ext(decode_utf8(u), decode_utf8(v));
}

double combined_dist(std::string_view u, std::string_view v,
                     const MatchConfig& c) {
  const std::u32string cu = decode_utf8(u);
  const std::u32string cv = decode_utf8(v);
  return c.alpha * static_cast<double>(levenshtein(cu, cv)) +
         c.beta * static_cast<double>(hamming_ext(cu, cv));
}

double normalized_similarity(std::string_view u, std::string_view v,
                             const MatchConfig& c) {
  const std::u32string cu = decode_utf8(u);
  const std::u32string cv = decode_utf8(v);
  const size_t max_len = std::max(cu.size(), cv.size());
  if (max_len == 0)
    throw Error(ErrorKind::BothEmpty, "normalized_similarity of two empty texts");
  const double wsum = std::abs(c.alpha) + std::abs(c.beta);
  if (wsum == 0.0) return cu == cv ? 1.0 : 0.0;
  const double wa = std::abs(c.alpha) / wsum;
  const double wb = std::abs(c.beta) / wsum;
  const double lev = static_cast<double>(levenshtein(cu, cv));
  const double ham = static_cast<double>(hamming_ext(cu, cv));
  const double sim = 1.0 - (wa * lev + wb * ham) / static_cast<double>(max_len);
  return std::clamp(sim, 0.0, 1.0);
}

Entity best_match(std::string_view query, const std::vector<Entity>& candidates,
                  const MatchConfig& c) {
  if (candidates.empty())
    throw Error(ErrorKind::EmptyCandidateSet, "best_match over no candidates");
  const Entity* best = nullptr;
  double best_dist = 0.0;
  for (const Entity& cand : candidates) {
    const double d = combined_dist(query, cand.name, c);
    if (best == nullptr || d < best_dist ||
        (d == best_dist && (cand.name < best->name ||
                            (cand.name == best->name &&
                             cand.etype < best->etype)))) {
      best = &cand;
      best_dist = d;
    }
  }
  return *best;
}

}  // namespace mka
