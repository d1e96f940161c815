#include "mka/generator.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "mka/text_match.hpp"
#include "mka/unicode.hpp"

namespace mka {

namespace {

std::string join(const std::vector<std::string>& tokens) {
  std::string out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += tokens[i];
  }
  return out;
}

std::vector<std::string> split_tab(const std::string& line) {
  std::vector<std::string> fields;
  size_t start = 0;
  while (true) {
    size_t tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return fields;
}

}  // namespace

double sequence_log_likelihood(const ModelInput& x,
                               const std::vector<std::string>& y,
                               const Generator& g) {
  if (y.empty())
    throw Error(ErrorKind::EmptyTarget, "log-likelihood of an empty sequence");
  const std::set<std::string>& vocab = g.vocabulary();
  std::vector<std::string> context = x.flat();
  double total = 0.0;
  for (const std::string& tok : y) {
    const std::string scored = vocab.count(tok) ? tok : kUnkToken;
    const auto dist = g.next_token_distribution(context);
    const auto it = dist.find(scored);
    const double p = it == dist.end() ? 0.0 : it->second;
    total += std::log(p);
    context.push_back(scored);
  }
  return total;
}

// ---- UniformGenerator ----

UniformGenerator::UniformGenerator(std::set<std::string> vocab)
    : vocab_(std::move(vocab)) {
  if (vocab_.empty())
    throw Error(ErrorKind::EmptyCorpus, "uniform generator needs a vocabulary");
}

std::map<std::string, double> UniformGenerator::next_token_distribution(
    const std::vector<std::string>&) const {
  std::map<std::string, double> dist;
  const double p = 1.0 / static_cast<double>(vocab_.size());
  for (const std::string& tok : vocab_) dist[tok] = p;
  return dist;
}

std::vector<std::string> UniformGenerator::generate(const ModelInput&,
                                                    size_t) const {
  // Greedy argmax on a flat distribution: the lexicographically first token.
  if (*vocab_.begin() == kEndToken) return {kEndToken};
  return {*vocab_.begin()};
}

// ---- RetrievalGenerator ----

RetrievalGenerator RetrievalGenerator::train(
    const std::vector<Conversation>& corpus) {
  if (corpus.empty())
    throw Error(ErrorKind::EmptyCorpus, "retrieval training corpus is empty");
  RetrievalGenerator g;
  for (const Conversation& conv : corpus) {
    for (const Turn& turn : conv.turns) {
      Pair p;
      p.question = join(tokenize(turn.patient_question));
      p.response = tokenize(turn.doctor_response);
      for (const std::string& tok : p.response) g.vocab_.insert(tok);
      g.pairs_.push_back(std::move(p));
    }
  }
  g.vocab_.insert(kEndToken);
  g.vocab_.insert(kUnkToken);
  return g;
}

std::map<std::string, double> RetrievalGenerator::next_token_distribution(
    const std::vector<std::string>&) const {
  std::map<std::string, double> dist;
  const double p = 1.0 / static_cast<double>(vocab_.size());
  for (const std::string& tok : vocab_) dist[tok] = p;
  return dist;
}

std::vector<std::string> RetrievalGenerator::generate(const ModelInput& x,
                                                      size_t max_len) const {
  const MatchConfig lev_only{1.0, 0.0, 0.7};
  const std::string query = join(x.segment(SegmentKind::PatientQuestion));
  const Pair* best = nullptr;
  double best_dist = 0.0;
  for (const Pair& p : pairs_) {
    const double d = combined_dist(query, p.question, lev_only);
    if (best == nullptr || d < best_dist) {
      best = &p;
      best_dist = d;
    }
  }
  if (best == nullptr) return {};
  std::vector<std::string> out = best->response;
  if (out.size() > max_len) out.resize(max_len);
  return out;
}

void RetrievalGenerator::save(std::ostream& out) const {
  out << "mka-baseline\tv1\tretrieval\n";
  for (const Pair& p : pairs_)
    out << "pair\t" << p.question << "\t" << join(p.response) << "\n";
}

// ---- TrigramGenerator ----

TrigramGenerator TrigramGenerator::train(const std::vector<Conversation>& corpus,
                                         double k) {
  if (corpus.empty())
    throw Error(ErrorKind::EmptyCorpus, "trigram training corpus is empty");
  if (!(k > 0.0))
    throw Error(ErrorKind::ParseError, "trigram smoothing k must be positive");
  TrigramGenerator g;
  g.k_ = k;
  for (const Conversation& conv : corpus) {
    for (const Turn& turn : conv.turns) {
      std::vector<std::string> tokens = tokenize(turn.doctor_response);
      for (const std::string& tok : tokens) g.vocab_.insert(tok);
      tokens.push_back(kEndToken);
      std::string u = kBosToken;
      std::string v = kBosToken;
      for (const std::string& w : tokens) {
        Context ctx{u, v};
        ++g.trigram_counts_[ctx][w];
        ++g.context_totals_[ctx];
        u = std::move(v);
        v = w;
      }
    }
  }
  g.vocab_.insert(kEndToken);
  g.vocab_.insert(kUnkToken);
  return g;
}

TrigramGenerator::Context TrigramGenerator::context_of(
    const std::vector<std::string>& tokens) const {
  auto normalized = [&](size_t back) -> std::string {
    if (tokens.size() < back) return kBosToken;
    const std::string& tok = tokens[tokens.size() - back];
    return vocab_.count(tok) ? tok : kUnkToken;
  };
  return {normalized(2), normalized(1)};
}

std::map<std::string, double> TrigramGenerator::next_token_distribution(
    const std::vector<std::string>& context) const {
  const Context ctx = context_of(context);
  const double vsize = static_cast<double>(vocab_.size());
  const auto totals_it = context_totals_.find(ctx);
  const double total =
      totals_it == context_totals_.end() ? 0.0
                                         : static_cast<double>(totals_it->second);
  const auto counts_it = trigram_counts_.find(ctx);
  std::map<std::string, double> dist;
  const double denom = total + k_ * vsize;
  for (const std::string& tok : vocab_) {
    double count = 0.0;
    if (counts_it != trigram_counts_.end()) {
      const auto it = counts_it->second.find(tok);
      if (it != counts_it->second.end()) count = static_cast<double>(it->second);
    }
    dist[tok] = (count + k_) / denom;
  }
  return dist;
}

std::vector<std::string> TrigramGenerator::generate(const ModelInput& x,
                                                    size_t max_len) const {
  Context ctx = context_of(x.flat());
  // A context never seen in training carries no signal; restart from the
  // response-initial state instead of argmaxing a flat distribution.
  if (!context_totals_.count(ctx)) ctx = {kBosToken, kBosToken};
  std::vector<std::string> out;
  while (out.size() < max_len) {
    const auto counts_it = trigram_counts_.find(ctx);
    // First maximum in map order = lexicographically smallest argmax.
    std::string best_tok = *vocab_.begin();
    size_t best_count = 0;
    if (counts_it != trigram_counts_.end()) {
      for (const auto& [tok, count] : counts_it->second) {
        if (count > best_count) {
          best_tok = tok;
          best_count = count;
        }
      }
    }
    out.push_back(best_tok);
    if (best_tok == kEndToken) break;
    ctx = {ctx.second, best_tok};
  }
  return out;
}

void TrigramGenerator::save(std::ostream& out) const {
  out << "mka-baseline\tv1\ttrigram\tk=" << k_ << "\n";
  for (const std::string& tok : vocab_) {
    if (tok != kEndToken && tok != kUnkToken) out << "vocab\t" << tok << "\n";
  }
  for (const auto& [ctx, counts] : trigram_counts_) {
    for (const auto& [tok, count] : counts) {
      out << "tri\t" << ctx.first << "\t" << ctx.second << "\t" << tok << "\t"
          << count << "\n";
    }
  }
}

std::unique_ptr<Generator> load_baseline(std::istream& in) {
  std::string line;
  if (!std::getline(in, line))
    throw Error(ErrorKind::ParseError, "empty baseline file");
  auto header = split_tab(line);
  if (header.size() < 3 || header[0] != "mka-baseline" || header[1] != "v1")
    throw Error(ErrorKind::ParseError, "unrecognized baseline header: " + line);
  if (header[2] == "retrieval") {
    auto g = std::unique_ptr<RetrievalGenerator>(new RetrievalGenerator());
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      auto fields = split_tab(line);
      if (fields.size() != 3 || fields[0] != "pair")
        throw Error(ErrorKind::ParseError, "bad retrieval record: " + line);
      RetrievalGenerator::Pair p;
      p.question = fields[1];
      p.response = tokenize(fields[2]);
      for (const std::string& tok : p.response) g->vocab_.insert(tok);
      g->pairs_.push_back(std::move(p));
    }
    g->vocab_.insert(kEndToken);
    g->vocab_.insert(kUnkToken);
    return g;
  }
  if (header[2] == "trigram") {
    if (header.size() != 4 || header[3].rfind("k=", 0) != 0)
      throw Error(ErrorKind::ParseError, "trigram header missing k: " + line);
    auto g = std::unique_ptr<TrigramGenerator>(new TrigramGenerator());
    g->k_ = std::stod(header[3].substr(2));
    g->vocab_.insert(kEndToken);
    g->vocab_.insert(kUnkToken);
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      auto fields = split_tab(line);
      if (fields.size() == 2 && fields[0] == "vocab") {
        g->vocab_.insert(fields[1]);
      } else if (fields.size() == 5 && fields[0] == "tri") {
        const size_t count = static_cast<size_t>(std::stoull(fields[4]));
        g->trigram_counts_[{fields[1], fields[2]}][fields[3]] += count;
        g->context_totals_[{fields[1], fields[2]}] += count;
      } else {
        throw Error(ErrorKind::ParseError, "bad trigram record: " + line);
      }
    }
    return g;
  }
  throw Error(ErrorKind::ParseError, "unknown baseline kind: " + header[2]);
}

// ---- conversation loop ----

std::vector<TurnTrace> run_conversation_traced(const Conversation& conv,
                                               const KnowledgeGraph& base,
                                               const KeyPhraseSets& kps,
                                               const Generator& g,
                                               const MatchConfig& c,
                                               const RunOptions& opt) {
  if (conv.turns.empty())
    throw Error(ErrorKind::EmptyCorpus, "conversation has no turns");
  const SubgraphResult sub = generate_subgraph(conv.self_report, base, c);
  std::vector<TurnTrace> traces;
  std::vector<std::string> prev_dr;
  for (size_t i = 0; i < conv.turns.size(); ++i) {
    const Turn& turn = conv.turns[i];
    TurnTrace trace;
    trace.topics = detect_topics(turn.patient_question, kps, c);
    MedicalKnowledgeInfoTuple mki;
    if (!opt.no_knowledge)
      mki = extract_knowledge(sub.graph, trace.topics, sub.anchors);
    trace.mki = mki;
    trace.input =
        build_model_input(mki, prev_dr, turn.patient_question, opt.separator);
    std::vector<std::string> response = g.generate(trace.input, opt.max_len);
    if (!response.empty() && response.back() == kEndToken) response.pop_back();
    trace.response = response;
    prev_dr = opt.feed_ground_truth ? tokenize(turn.doctor_response)
                                    : std::move(response);
    traces.push_back(std::move(trace));
  }
  return traces;
}

std::vector<std::vector<std::string>> run_conversation(
    const Conversation& conv, const KnowledgeGraph& base,
    const KeyPhraseSets& kps, const Generator& g, const MatchConfig& c,
    const RunOptions& opt) {
  std::vector<std::vector<std::string>> responses;
  for (TurnTrace& t : run_conversation_traced(conv, base, kps, g, c, opt))
    responses.push_back(std::move(t.response));
  return responses;
}

}  // namespace mka
