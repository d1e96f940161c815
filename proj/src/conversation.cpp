#include "mka/conversation.hpp"

#include <fstream>

#include <json.hpp>

#include "mka/unicode.hpp"

namespace mka {

namespace {

using nlohmann::json;

json open_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::FileError, "cannot open file: " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, path + ": " + e.what());
  }
}

}  // namespace

std::vector<Conversation> load_corpus_file(const std::string& path) {
  const json doc = open_json(path);
  if (!doc.is_array())
    throw Error(ErrorKind::ParseError, path + ": expected a JSON array");
  std::vector<Conversation> convs;
  size_t idx = 0;
  for (const json& jc : doc) {
    Conversation conv;
    if (jc.contains("self_report")) {
      const json& sr = jc.at("self_report");
      if (sr.contains("department") && !sr.at("department").is_null()) {
        const std::string d = trim(sr.at("department").get<std::string>());
        if (!d.empty()) conv.self_report.department = d;
      }
      if (sr.contains("disease_symptom") && !sr.at("disease_symptom").is_null()) {
        const std::string d = trim(sr.at("disease_symptom").get<std::string>());
        if (!d.empty()) conv.self_report.disease_symptom = d;
      }
    }
    if (!jc.contains("turns") || !jc.at("turns").is_array() ||
        jc.at("turns").empty()) {
      throw Error(ErrorKind::ParseError,
                  path + ": conversation " + std::to_string(idx) +
                      " needs a non-empty turns array");
    }
    for (const json& jt : jc.at("turns")) {
      Turn turn;
      turn.patient_question = jt.at("patient_question").get<std::string>();
      if (trim(turn.patient_question).empty()) {
        throw Error(ErrorKind::ParseError,
                    path + ": empty patient_question in conversation " +
                        std::to_string(idx));
      }
      if (jt.contains("doctor_response"))
        turn.doctor_response = jt.at("doctor_response").get<std::string>();
      conv.turns.push_back(std::move(turn));
    }
    convs.push_back(std::move(conv));
    ++idx;
  }
  return convs;
}

void save_corpus_file(const std::string& path,
                      const std::vector<Conversation>& convs) {
  json doc = json::array();
  for (const Conversation& conv : convs) {
    json jc;
    json sr = json::object();
    if (conv.self_report.department) sr["department"] = *conv.self_report.department;
    if (conv.self_report.disease_symptom)
      sr["disease_symptom"] = *conv.self_report.disease_symptom;
    jc["self_report"] = sr;
    json turns = json::array();
    for (const Turn& t : conv.turns) {
      turns.push_back({{"patient_question", t.patient_question},
                       {"doctor_response", t.doctor_response}});
    }
    jc["turns"] = turns;
    doc.push_back(jc);
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::FileError, "cannot write file: " + path);
  out << doc.dump(2) << "\n";
}

KeyPhraseSets load_kps_file(const std::string& path) {
  const json doc = open_json(path);
  if (!doc.is_object())
    throw Error(ErrorKind::ParseError, path + ": expected a JSON object");
  std::map<Topic, std::vector<std::string>> m;
  for (Topic t : kTopics) {
    const std::string key(to_string(t));
    if (!doc.contains(key))
      throw Error(ErrorKind::ParseError, path + ": missing topic key '" + key + "'");
    m[t] = doc.at(key).get<std::vector<std::string>>();
  }
  return KeyPhraseSets::from_map(std::move(m));
}

}  // namespace mka
