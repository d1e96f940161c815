#pragma once

#include <string>
#include <vector>

#include "mka/pipeline.hpp"

namespace mka {

struct Turn {
  std::string patient_question;
  std::string doctor_response;

  bool operator==(const Turn&) const = default;
};

struct Conversation {
  PatientSelfReport self_report;
  std::vector<Turn> turns;
};

// JSON array of conversations; see data/toy_corpus.json for the shape.
std::vector<Conversation> load_corpus_file(const std::string& path);
void save_corpus_file(const std::string& path,
                      const std::vector<Conversation>& convs);

// JSON object mapping the six topic labels to phrase arrays.
KeyPhraseSets load_kps_file(const std::string& path);

}  // namespace mka
