#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "mka/pipeline.hpp"

namespace mka {

enum class SegmentKind {
  KnowledgeUnseen,
  AnchorsSeen,
  PrevDoctorResponse,
  PatientQuestion
};

inline constexpr size_t kSegmentCount = 4;
inline constexpr const char* kDefaultSeparator = "<sep>";

// Knowledge-augmented input sequence. Segment order is fixed; flat() joins
// the non-empty segments with one separator token between adjacent ones.
struct ModelInput {
  std::array<std::vector<std::string>, kSegmentCount> segments;
  std::string separator = kDefaultSeparator;

  const std::vector<std::string>& segment(SegmentKind k) const {
    return segments[static_cast<size_t>(k)];
  }
  std::vector<std::string>& segment(SegmentKind k) {
    return segments[static_cast<size_t>(k)];
  }

  std::vector<std::string> flat() const;

  bool operator==(const ModelInput&) const = default;
};

// Whitespace-delimited tokens; a text without whitespace is split into
// per-character tokens when it contains non-ASCII characters (so unspaced
// Chinese text tokenizes by character) and kept whole otherwise.
std::vector<std::string> tokenize(std::string_view text);

ModelInput build_model_input(const MedicalKnowledgeInfoTuple& mki,
                             std::string_view prev_dr,
                             std::string_view question,
                             const std::string& sep = kDefaultSeparator);

// Same policy with a pre-tokenized previous doctor response.
ModelInput build_model_input(const MedicalKnowledgeInfoTuple& mki,
                             const std::vector<std::string>& prev_dr_tokens,
                             std::string_view question,
                             const std::string& sep = kDefaultSeparator);

// Splits a flat sequence on the separator; yields the non-empty segments in
// order (empty segments leave no trace in the flat form).
std::vector<std::vector<std::string>> split_on_separator(
    const std::vector<std::string>& flat, const std::string& sep);

}  // namespace mka
