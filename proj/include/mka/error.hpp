#pragma once

#include <stdexcept>
#include <string>

namespace mka {

enum class ErrorKind {
  TypeViolation,
  EmptyName,
  UnknownEntity,
  BothEmpty,
  EmptyCandidateSet,
  NoMatchableEntity,
  SeparatorCollision,
  EmptyTarget,
  EmptyCandidate,
  EmptyCorpus,
  NoNgrams,
  TooFewConversations,
  ParseError,
  FileError,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace mka
