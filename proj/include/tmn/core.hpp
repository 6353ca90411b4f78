#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tmn/errors.hpp"

namespace tmn {

/// Routing target for a generated sub-question. Eoq is the end-of-questions
/// marker; it terminates a chain and never answers anything.
enum class ModelId { Squad, Calc, Eoq };

std::string_view to_string(ModelId id);
std::optional<ModelId> model_from_string(std::string_view name);

/// A context paragraph, optionally titled (two-document datasets use titles
/// to identify the supporting documents).
struct Context {
  std::optional<std::string> title;
  std::string text;

  bool operator==(const Context&) const = default;
};

/// A complex input question with its context paragraphs.
struct ComplexQuestion {
  std::string id;
  std::string text;
  std::vector<Context> contexts;
  std::optional<std::string> gold_answer;
  std::optional<std::string> dataset_tag;

  bool operator==(const ComplexQuestion&) const = default;
};

/// Throws Error if the question violates its invariants (blank text, no
/// contexts, or a blank context paragraph).
void validate(const ComplexQuestion& question);

struct ChainStep {
  ModelId model = ModelId::Squad;
  std::string question;
  std::string answer;
  double answer_score = 1.0;  // sub-model confidence; 1.0 for the calculator

  bool operator==(const ChainStep&) const = default;
};

/// A (partial) decomposition: ordered sub-question/answer steps plus the
/// running new-word score. Chains are immutable values; append_step and
/// mark_complete return fresh chains.
struct Chain {
  ComplexQuestion question;
  std::vector<ChainStep> steps;
  bool complete = false;
  double theta = 0.0;
  std::optional<double> delta;  // scorer negative-class prob, set on completion

  bool operator==(const Chain&) const = default;

  const std::string& final_answer() const;  // throws EmptyChain
};

Chain make_chain(ComplexQuestion question);

/// Appends a step. theta_new is the recomputed running new-word score and may
/// not decrease. Throws AlreadyComplete on a completed chain.
Chain append_step(const Chain& chain, ChainStep step, double theta_new);

/// Marks the chain complete with the scorer's negative-class probability.
/// Throws EmptyChain when the chain has no steps.
Chain mark_complete(const Chain& chain, double delta);

// --- history serialization -------------------------------------------------
//
// Canonical transcript "QC: <qc> Q: <q1> A: <a1> ..." used both as the
// next-question generator input and in training files. Literal "QC:", "Q:",
// "A:" tokens and backslashes inside fields are backslash-escaped so the
// format round-trips on arbitrary strings.

std::string escape_field(std::string_view field);
std::string unescape_field(std::string_view field);

std::string render_history(const std::string& qc,
                           const std::vector<std::pair<std::string, std::string>>& qa_pairs);
std::string render_history(const Chain& chain);

struct History {
  std::string qc;
  std::vector<std::pair<std::string, std::string>> qa_pairs;

  bool operator==(const History&) const = default;
};

History parse_history(std::string_view serialized);  // throws ParseError

// --- model-prefixed question surface form ----------------------------------
//
// Generated questions carry their target model as a prefix: "(SQUAD) ...",
// "(CALC) ...", or the bare terminator "[EOQ]".

inline constexpr std::string_view kEoqToken = "[EOQ]";

std::string render_prefixed(ModelId model, std::string_view question);

/// Parses the prefixed surface form; nullopt for anything unparseable.
std::optional<std::pair<ModelId, std::string>> parse_prefixed(std::string_view raw);

}  // namespace tmn
