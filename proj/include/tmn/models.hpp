#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tmn/core.hpp"
#include "tmn/hints.hpp"
#include "tmn/textscore.hpp"

namespace tmn::models {

struct ScoredAnswer {
  std::string text;
  double score = 0.0;
  bool no_answer = false;  // abstention; text empty when set
};

struct Sampling {
  double top_p = 0.95;
  int top_k = 10;
  int max_len = 40;  // tokens
};

/// Conditioning payload for the sub-question generator service.
struct GenRequest {
  std::string context;
  std::string answer;
  std::vector<std::string> vocabulary;
  int count = 5;
  Sampling sampling;
  std::optional<std::uint64_t> seed;
};

struct RawCandidate {
  std::string text;  // prefixed surface form, e.g. "(SQUAD) Who ...?"
  double logprob = 0.0;
};

struct NextGenCandidate {
  ModelId model = ModelId::Eoq;
  std::string question;  // empty iff model == Eoq
  double logprob = 0.0;
};

// --- service interfaces -------------------------------------------------------

struct QaService {
  virtual ~QaService() = default;
  virtual ScoredAnswer answer(const std::string& question, const std::string& context) = 0;
};

struct GeneratorService {
  virtual ~GeneratorService() = default;
  virtual std::vector<std::string> generate(const GenRequest& request) = 0;
};

struct NextGenService {
  virtual ~NextGenService() = default;
  virtual std::vector<RawCandidate> next(const std::string& history, int count,
                                         const Sampling& sampling,
                                         std::optional<std::uint64_t> seed) = 0;
};

struct ScorerService {
  virtual ~ScorerService() = default;
  virtual double negative_prob(const std::string& history) = 0;
};

// --- deterministic mocks --------------------------------------------------------

/// Exact question -> answer table, optionally also keyed by the normalized
/// question form. Unknown questions abstain.
class TableQa : public QaService {
 public:
  TableQa() = default;
  static TableQa from_json(const nlohmann::json& fixture);
  static TableQa from_file(const std::string& path);

  void add(const std::string& question, const std::string& answer, double score = 1.0);
  void set_fuzzy(bool fuzzy) { fuzzy_ = fuzzy; }

  ScoredAnswer answer(const std::string& question, const std::string& context) override;

 private:
  std::map<std::string, ScoredAnswer> exact_;
  std::map<std::string, ScoredAnswer> normalized_;
  bool fuzzy_ = true;
};

/// Rule list keyed by expected answer; question templates may reference
/// "{answer}". Rules without an answer key apply to every request.
class TemplateGenerator : public GeneratorService {
 public:
  struct Rule {
    std::optional<std::string> answer;
    std::vector<std::string> questions;
  };

  TemplateGenerator() = default;
  static TemplateGenerator from_json(const nlohmann::json& fixture);
  static TemplateGenerator from_file(const std::string& path);

  void add_rule(Rule rule) { rules_.push_back(std::move(rule)); }

  std::vector<std::string> generate(const GenRequest& request) override;

 private:
  std::vector<Rule> rules_;
};

/// Decision tree keyed on the exact serialized history. Unknown histories
/// yield no candidates.
class ScriptedNextGen : public NextGenService {
 public:
  ScriptedNextGen() = default;
  static ScriptedNextGen from_json(const nlohmann::json& fixture);
  static ScriptedNextGen from_file(const std::string& path);

  void add(const std::string& history, std::vector<RawCandidate> candidates);

  std::vector<RawCandidate> next(const std::string& history, int count,
                                 const Sampling& sampling,
                                 std::optional<std::uint64_t> seed) override;

 private:
  std::map<std::string, std::vector<RawCandidate>> steps_;
};

/// Scores keyed by the FNV-1a hash of the history (hex), with a default.
class HashScorer : public ScorerService {
 public:
  HashScorer() = default;
  explicit HashScorer(double default_score) : default_(default_score) {}
  static HashScorer from_json(const nlohmann::json& fixture);
  static HashScorer from_file(const std::string& path);

  void add(const std::string& history, double score);
  static std::string history_key(const std::string& history);

  double negative_prob(const std::string& history) override;

 private:
  std::map<std::string, double> scores_;
  double default_ = 0.0;
};

/// Always 0: reduces chain scoring to the word-overlap term alone.
class NullScorer : public ScorerService {
 public:
  double negative_prob(const std::string&) override { return 0.0; }
};

// --- HTTP clients ----------------------------------------------------------------

struct RetryPolicy {
  int attempts = 3;
  std::chrono::milliseconds base_backoff{100};  // doubled per retry
};

std::unique_ptr<QaService> make_http_qa(const std::string& base_url, RetryPolicy retry = {});
std::unique_ptr<GeneratorService> make_http_generator(const std::string& base_url,
                                                      RetryPolicy retry = {});
std::unique_ptr<NextGenService> make_http_nextgen(const std::string& base_url,
                                                  RetryPolicy retry = {});
std::unique_ptr<ScorerService> make_http_scorer(const std::string& base_url,
                                                RetryPolicy retry = {});

// --- registry and routed operations ----------------------------------------------

/// The pluggable sub-model set. The calculator is always the in-process
/// evaluator; only the neural services are swappable.
struct ModelRegistry {
  std::shared_ptr<QaService> squad_qa;
  std::shared_ptr<GeneratorService> squad_gen;
  std::shared_ptr<NextGenService> nextgen;
  std::shared_ptr<ScorerService> scorer;
  text::TextConfig text;
};

/// Routes a question to its sub-model. SQUAD runs once per context and keeps
/// the best non-abstaining answer; CALC parses and evaluates in process with
/// score 1.0, mapping parse/eval failures to abstention.
ScoredAnswer answer(const ModelRegistry& registry, ModelId model, const std::string& question,
                    const std::vector<Context>& contexts);

/// The filtered sub-question generator G: draws `count` raw candidates and
/// keeps those whose answer against the hint context overlaps the hint
/// answer (exact normalized equality for CALC).
std::vector<std::string> generate_subquestions(const ModelRegistry& registry, ModelId model,
                                               const hints::Hint& hint,
                                               const std::vector<Context>& contexts, int count,
                                               std::optional<std::uint64_t> seed);

/// Queries the next-question generator and parses the prefixed surface forms;
/// unparseable outputs are dropped with a warning on stderr.
std::vector<NextGenCandidate> next_candidates(const ModelRegistry& registry,
                                              const std::string& history, int count,
                                              std::optional<std::uint64_t> seed,
                                              const Sampling& sampling = {});

/// Chain-scorer probability for a complete chain. Throws NotComplete.
double score_chain(const ModelRegistry& registry, const Chain& chain);

/// Values and entity strings reconstructed from a calculator hint vocabulary.
struct CalcHintView {
  std::vector<calc::CalcValue> values;
  std::optional<std::pair<std::string, std::string>> entity_pair;
  std::optional<calc::Unit> unit;
};
CalcHintView parse_calc_hint(const hints::Hint& hint);

}  // namespace tmn::models
