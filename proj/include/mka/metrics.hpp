#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mka/generator.hpp"

namespace mka {

using TokenList = std::vector<std::string>;

struct MetricReport {
  double perplexity = 1.0;
  double bleu2 = 0.0;
  double bleu4 = 0.0;
  double nist2 = 0.0;
  double nist4 = 0.0;
  double meteor = 0.0;
  double entropy4 = 0.0;
  double dist1 = 0.0;
  double dist2 = 0.0;

  // Flat key=value lines, fixed 6-decimal formatting.
  std::string to_text() const;
};

// exp of the mean negative log-likelihood per reference token.
double perplexity(const std::vector<std::pair<ModelInput, TokenList>>& pairs,
                  const Generator& g);

// Sentence-level BLEU-n: brevity penalty times the geometric mean of the
// clipped m-gram precisions, add-one smoothed on zero-match orders.
double bleu_n(const TokenList& candidate, const TokenList& reference, size_t n);

// Corpus-level NIST-n with information weights from the reference side and
// the Doddington brevity factor.
double nist_n(const std::vector<TokenList>& candidates,
              const std::vector<TokenList>& references, size_t n);

// Exact-match METEOR: greedy unigram alignment, harmonic mean weighted
// toward recall, cubic chunk fragmentation penalty.
double meteor(const TokenList& candidate, const TokenList& reference);

// Shannon entropy (nats) of the pooled empirical n-gram distribution.
double entropy_n(const std::vector<TokenList>& responses, size_t n);

// Distinct n-grams over total n-grams, pooled.
double dist_n(const std::vector<TokenList>& responses, size_t n);

MetricReport evaluate_corpus(const std::vector<TokenList>& candidates,
                             const std::vector<TokenList>& references,
                             const std::vector<ModelInput>& inputs,
                             const Generator& g);

}  // namespace mka
