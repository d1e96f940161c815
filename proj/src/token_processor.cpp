#include "mka/token_processor.hpp"

#include <algorithm>

#include "mka/error.hpp"
#include "mka/unicode.hpp"

namespace mka {

std::vector<std::string> tokenize(std::string_view text) {
  const std::u32string chars = decode_utf8(text);
  auto is_space = [](char32_t c) {
    return c == U' ' || c == U'\t' || c == U'\n' || c == U'\r' ||
           c == U'\x0b' || c == U'\x0c' || c == U'　';
  };
  const bool has_space = std::any_of(chars.begin(), chars.end(), is_space);
  std::vector<std::string> tokens;
  if (has_space) {
    std::u32string cur;
    for (char32_t c : chars) {
      if (is_space(c)) {
        if (!cur.empty()) tokens.push_back(encode_utf8(cur));
        cur.clear();
      } else {
        cur.push_back(c);
      }
    }
    if (!cur.empty()) tokens.push_back(encode_utf8(cur));
    return tokens;
  }
  if (chars.empty()) return tokens;
  const bool ascii = std::all_of(chars.begin(), chars.end(),
                                 [](char32_t c) { return c < 0x80; });
  if (ascii) {
    tokens.push_back(std::string(text));
  } else {
    for (char32_t c : chars) tokens.push_back(encode_utf8(std::u32string(1, c)));
  }
  return tokens;
}

namespace {

ModelInput assemble(const MedicalKnowledgeInfoTuple& mki,
                    std::vector<std::string> prev_dr_tokens,
                    std::string_view question, const std::string& sep) {
  if (sep.empty())
    throw Error(ErrorKind::SeparatorCollision, "separator token is empty");
  ModelInput input;
  input.separator = sep;
  input.segment(SegmentKind::KnowledgeUnseen) = mki.knowledge;
  auto& anchors = input.segment(SegmentKind::AnchorsSeen);
  if (mki.anchors.eps1) anchors.push_back(mki.anchors.eps1->name);
  if (mki.anchors.eps2) anchors.push_back(mki.anchors.eps2->name);
  input.segment(SegmentKind::PrevDoctorResponse) = std::move(prev_dr_tokens);
  input.segment(SegmentKind::PatientQuestion) = tokenize(question);
  for (const auto& seg : input.segments) {
    for (const std::string& tok : seg) {
      if (tok == sep)
        throw Error(ErrorKind::SeparatorCollision,
                    "separator '" + sep + "' occurs as a content token");
    }
  }
  return input;
}

}  // namespace

ModelInput build_model_input(const MedicalKnowledgeInfoTuple& mki,
                             std::string_view prev_dr,
                             std::string_view question,
                             const std::string& sep) {
  return assemble(mki, tokenize(prev_dr), question, sep);
}

ModelInput build_model_input(const MedicalKnowledgeInfoTuple& mki,
                             const std::vector<std::string>& prev_dr_tokens,
                             std::string_view question,
                             const std::string& sep) {
  return assemble(mki, prev_dr_tokens, question, sep);
}

std::vector<std::string> ModelInput::flat() const {
  std::vector<std::string> out;
  for (const auto& seg : segments) {
    if (seg.empty()) continue;
    if (!out.empty()) out.push_back(separator);
    out.insert(out.end(), seg.begin(), seg.end());
  }
  return out;
}

std::vector<std::vector<std::string>> split_on_separator(
    const std::vector<std::string>& flat, const std::string& sep) {
  std::vector<std::vector<std::string>> out;
  std::vector<std::string> cur;
  for (const std::string& tok : flat) {
    if (tok == sep) {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(tok);
    }
  }
  if (!cur.empty() || !out.empty()) out.push_back(std::move(cur));
  if (out.size() == 1 && out[0].empty()) out.clear();
  return out;
}

}  // namespace mka
