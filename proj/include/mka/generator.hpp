#pragma once

#include <iosfwd>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "mka/conversation.hpp"
#include "mka/token_processor.hpp"

namespace mka {

inline const std::string kEndToken = "<eos>";
inline const std::string kUnkToken = "<unk>";
inline const std::string kBosToken = "<s>";

// Autoregressive generator contract: a next-token distribution over a fixed
// vocabulary (end token included) and deterministic decoding.
class Generator {
 public:
  virtual ~Generator() = default;

  virtual std::map<std::string, double> next_token_distribution(
      const std::vector<std::string>& context) const = 0;

  // Deterministic; the end token, when produced, is the last element.
  virtual std::vector<std::string> generate(const ModelInput& x,
                                            size_t max_len) const = 0;

  // Fixed after training; contains the end and unknown tokens.
  virtual const std::set<std::string>& vocabulary() const = 0;
};

// Sum over t of ln p(y_t | x, y_<t); tokens outside the vocabulary are scored
// as the unknown token. Throws EmptyTarget.
double sequence_log_likelihood(const ModelInput& x,
                               const std::vector<std::string>& y,
                               const Generator& g);

// Assigns 1/|V| to every vocabulary token regardless of context.
class UniformGenerator : public Generator {
 public:
  explicit UniformGenerator(std::set<std::string> vocab);

  std::map<std::string, double> next_token_distribution(
      const std::vector<std::string>& context) const override;
  std::vector<std::string> generate(const ModelInput& x,
                                    size_t max_len) const override;
  const std::set<std::string>& vocabulary() const override { return vocab_; }

 private:
  std::set<std::string> vocab_;
};

// Nearest-question retrieval over the training pairs. Matching always uses
// pure Levenshtein weights (alpha=1, beta=0) so an exact question hit
// returns its own stored response; ties keep the earliest stored pair.
class RetrievalGenerator : public Generator {
 public:
  struct Pair {
    std::string question;  // normalized: tokenized and space-joined
    std::vector<std::string> response;
  };

  static RetrievalGenerator train(const std::vector<Conversation>& corpus);

  std::map<std::string, double> next_token_distribution(
      const std::vector<std::string>& context) const override;
  std::vector<std::string> generate(const ModelInput& x,
                                    size_t max_len) const override;
  const std::set<std::string>& vocabulary() const override { return vocab_; }

  const std::vector<Pair>& pairs() const { return pairs_; }

  void save(std::ostream& out) const;

 private:
  std::vector<Pair> pairs_;
  std::set<std::string> vocab_;
  friend std::unique_ptr<Generator> load_baseline(std::istream&);
};

// Add-k smoothed trigram model over doctor responses with greedy decoding.
class TrigramGenerator : public Generator {
 public:
  static TrigramGenerator train(const std::vector<Conversation>& corpus,
                                double k = 0.01);

  std::map<std::string, double> next_token_distribution(
      const std::vector<std::string>& context) const override;
  std::vector<std::string> generate(const ModelInput& x,
                                    size_t max_len) const override;
  const std::set<std::string>& vocabulary() const override { return vocab_; }

  double smoothing() const { return k_; }

  void save(std::ostream& out) const;

 private:
  using Context = std::pair<std::string, std::string>;

  Context context_of(const std::vector<std::string>& tokens) const;

  double k_ = 0.01;
  std::set<std::string> vocab_;
  std::map<Context, std::map<std::string, size_t>> trigram_counts_;
  std::map<Context, size_t> context_totals_;
  friend std::unique_ptr<Generator> load_baseline(std::istream&);
};

// Versioned plain-text serialization of the two baselines.
std::unique_ptr<Generator> load_baseline(std::istream& in);

struct RunOptions {
  std::string separator = kDefaultSeparator;
  size_t max_len = 30;
  bool no_knowledge = false;      // skip the MKA segments entirely
  bool feed_ground_truth = false; // feed reference DR_{i-1} instead of generated
};

struct TurnTrace {
  QuestionTopicTuple topics;
  MedicalKnowledgeInfoTuple mki;
  ModelInput input;
  std::vector<std::string> response;  // trailing end token stripped
};

// Subgraph once per conversation, then per turn: topics, knowledge tuple,
// model input, generation; the previous response feeds the next turn.
std::vector<TurnTrace> run_conversation_traced(const Conversation& conv,
                                               const KnowledgeGraph& base,
                                               const KeyPhraseSets& kps,
                                               const Generator& g,
                                               const MatchConfig& c,
                                               const RunOptions& opt = {});

std::vector<std::vector<std::string>> run_conversation(
    const Conversation& conv, const KnowledgeGraph& base,
    const KeyPhraseSets& kps, const Generator& g, const MatchConfig& c,
    const RunOptions& opt = {});

}  // namespace mka
