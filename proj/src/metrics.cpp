#include "mka/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace mka {

namespace {

using Ngram = std::vector<std::string>;

std::map<Ngram, size_t> ngram_counts(const TokenList& tokens, size_t n) {
  std::map<Ngram, size_t> counts;
  if (tokens.size() < n) return counts;
  for (size_t i = 0; i + n <= tokens.size(); ++i)
    ++counts[Ngram(tokens.begin() + i, tokens.begin() + i + n)];
  return counts;
}

}  // namespace

std::string MetricReport::to_text() const {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(6);
  out << "perplexity=" << perplexity << "\n"
      << "bleu2=" << bleu2 << "\n"
      << "bleu4=" << bleu4 << "\n"
      << "nist2=" << nist2 << "\n"
      << "nist4=" << nist4 << "\n"
      << "meteor=" << meteor << "\n"
      << "entropy4=" << entropy4 << "\n"
      << "dist1=" << dist1 << "\n"
      << "dist2=" << dist2 << "\n";
  return out.str();
}

double perplexity(const std::vector<std::pair<ModelInput, TokenList>>& pairs,
                  const Generator& g) {
  size_t total_tokens = 0;
  double total_ll = 0.0;
  for (const auto& [input, reference] : pairs) {
    if (reference.empty()) continue;
    total_ll += sequence_log_likelihood(input, reference, g);
    total_tokens += reference.size();
  }
  if (total_tokens == 0)
    throw Error(ErrorKind::EmptyCorpus, "perplexity over zero reference tokens");
  return std::exp(-total_ll / static_cast<double>(total_tokens));
}

double bleu_n(const TokenList& candidate, const TokenList& reference, size_t n) {
  if (candidate.empty())
    throw Error(ErrorKind::EmptyCandidate, "BLEU of an empty candidate");
  double log_prec_sum = 0.0;
  for (size_t m = 1; m <= n; ++m) {
    const auto cand = ngram_counts(candidate, m);
    const auto ref = ngram_counts(reference, m);
    size_t matched = 0;
    size_t total = 0;
    for (const auto& [gram, count] : cand) {
      total += count;
      const auto it = ref.find(gram);
      if (it != ref.end()) matched += std::min(count, it->second);
    }
    double p;
    if (matched == 0) {
      p = 1.0 / static_cast<double>(total + 1);  // add-one smoothing
    } else {
      p = static_cast<double>(matched) / static_cast<double>(total);
    }
    log_prec_sum += std::log(p);
  }
  const double bp =
      std::min(1.0, std::exp(1.0 - static_cast<double>(reference.size()) /
                                       static_cast<double>(candidate.size())));
  return bp * std::exp(log_prec_sum / static_cast<double>(n));
}

double nist_n(const std::vector<TokenList>& candidates,
              const std::vector<TokenList>& references, size_t n) {
  if (candidates.empty() || candidates.size() != references.size())
    throw Error(ErrorKind::EmptyCorpus, "NIST needs aligned non-empty lists");

  // Reference-corpus m-gram counts for the information weights.
  std::vector<std::map<Ngram, size_t>> ref_counts(n + 1);
  size_t ref_unigram_total = 0;
  for (const TokenList& ref : references) {
    for (size_t m = 1; m <= n; ++m) {
      for (const auto& [gram, count] : ngram_counts(ref, m))
        ref_counts[m][gram] += count;
    }
    ref_unigram_total += ref.size();
  }

  auto info = [&](const Ngram& gram) {
    const size_t full = ref_counts[gram.size()].at(gram);
    double prefix;
    if (gram.size() == 1) {
      prefix = static_cast<double>(ref_unigram_total);
    } else {
      const Ngram head(gram.begin(), gram.end() - 1);
      prefix = static_cast<double>(ref_counts[gram.size() - 1].at(head));
    }
    return std::log2(prefix / static_cast<double>(full));
  };

  double score = 0.0;
  for (size_t m = 1; m <= n; ++m) {
    double info_sum = 0.0;
    size_t cand_total = 0;
    for (size_t s = 0; s < candidates.size(); ++s) {
      const auto cand = ngram_counts(candidates[s], m);
      const auto ref = ngram_counts(references[s], m);
      for (const auto& [gram, count] : cand) {
        cand_total += count;
        const auto it = ref.find(gram);
        if (it != ref.end())
          info_sum += info(gram) *
                      static_cast<double>(std::min(count, it->second));
      }
    }
    if (cand_total > 0) score += info_sum / static_cast<double>(cand_total);
  }

  size_t cand_len = 0;
  size_t ref_len = 0;
  for (const TokenList& c : candidates) cand_len += c.size();
  for (const TokenList& r : references) ref_len += r.size();
  double bf = 1.0;
  if (ref_len > 0 && cand_len > 0) {
    const double ratio =
        std::min(1.0, static_cast<double>(cand_len) / static_cast<double>(ref_len));
    // Calibrated so the factor is 0.5 when the candidate is 2/3 as long.
    const double beta = std::log(0.5) / std::pow(std::log(2.0 / 3.0), 2);
    bf = std::exp(beta * std::pow(std::log(ratio), 2));
  }
  return score * bf;
}

double meteor(const TokenList& candidate, const TokenList& reference) {
  if (candidate.empty() || reference.empty()) return 0.0;
  // Greedy left-to-right alignment on surface forms.
  std::vector<bool> ref_used(reference.size(), false);
  std::vector<std::pair<size_t, size_t>> matches;  // (cand index, ref index)
  for (size_t i = 0; i < candidate.size(); ++i) {
    for (size_t j = 0; j < reference.size(); ++j) {
      if (!ref_used[j] && candidate[i] == reference[j]) {
        ref_used[j] = true;
        matches.emplace_back(i, j);
        break;
      }
    }
  }
  if (matches.empty()) return 0.0;
  const double m = static_cast<double>(matches.size());
  const double precision = m / static_cast<double>(candidate.size());
  const double recall = m / static_cast<double>(reference.size());
  const double fmean = 10.0 * precision * recall / (recall + 9.0 * precision);
  size_t chunks = 1;
  for (size_t i = 1; i < matches.size(); ++i) {
    if (matches[i].first != matches[i - 1].first + 1 ||
        matches[i].second != matches[i - 1].second + 1)
      ++chunks;
  }
  const double penalty = 0.5 * std::pow(static_cast<double>(chunks) / m, 3.0);
  return fmean * (1.0 - penalty);
}

double entropy_n(const std::vector<TokenList>& responses, size_t n) {
  std::map<Ngram, size_t> pooled;
  size_t total = 0;
  for (const TokenList& r : responses) {
    for (const auto& [gram, count] : ngram_counts(r, n)) {
      pooled[gram] += count;
      total += count;
    }
  }
  if (total == 0)
    throw Error(ErrorKind::NoNgrams,
                "no response long enough for " + std::to_string(n) + "-grams");
  double h = 0.0;
  for (const auto& [gram, count] : pooled) {
    const double p = static_cast<double>(count) / static_cast<double>(total);
    h -= p * std::log(p);
  }
  return h;
}

double dist_n(const std::vector<TokenList>& responses, size_t n) {
  std::map<Ngram, size_t> pooled;
  size_t total = 0;
  for (const TokenList& r : responses) {
    for (const auto& [gram, count] : ngram_counts(r, n)) {
      pooled[gram] += count;
      total += count;
    }
  }
  if (total == 0)
    throw Error(ErrorKind::NoNgrams,
                "no response long enough for " + std::to_string(n) + "-grams");
  return static_cast<double>(pooled.size()) / static_cast<double>(total);
}

MetricReport evaluate_corpus(const std::vector<TokenList>& candidates,
                             const std::vector<TokenList>& references,
                             const std::vector<ModelInput>& inputs,
                             const Generator& g) {
  if (candidates.empty() || candidates.size() != references.size() ||
      candidates.size() != inputs.size())
    throw Error(ErrorKind::EmptyCorpus,
                "evaluate_corpus needs aligned non-empty lists");
  MetricReport report;
  double bleu2_sum = 0.0;
  double bleu4_sum = 0.0;
  double meteor_sum = 0.0;
  for (size_t i = 0; i < candidates.size(); ++i) {
    bleu2_sum += bleu_n(candidates[i], references[i], 2);
    bleu4_sum += bleu_n(candidates[i], references[i], 4);
    meteor_sum += meteor(candidates[i], references[i]);
  }
  const double count = static_cast<double>(candidates.size());
  report.bleu2 = bleu2_sum / count;
  report.bleu4 = bleu4_sum / count;
  report.meteor = meteor_sum / count;
  report.nist2 = nist_n(candidates, references, 2);
  report.nist4 = nist_n(candidates, references, 4);
  report.entropy4 = entropy_n(candidates, 4);
  report.dist1 = dist_n(candidates, 1);
  report.dist2 = dist_n(candidates, 2);
  std::vector<std::pair<ModelInput, TokenList>> pairs;
  for (size_t i = 0; i < inputs.size(); ++i)
    pairs.emplace_back(inputs[i], references[i]);
  report.perplexity = perplexity(pairs, g);
  return report;
}

}  // namespace mka
