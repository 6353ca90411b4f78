#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tmn/core.hpp"
#include "tmn/models.hpp"

namespace tmn::search {

struct SearchConfig {
  int n0 = 15;          // candidates sampled at depth 0
  double decay = 0.5;   // per-depth decay of the sampling schedule
  double lambda = 10.0; // weight of the scorer term in the chain score
  int max_steps = 5;
  bool greedy = false;  // take the single most likely candidate, no frontier
  int budget = 500;     // total sub-model calls allowed per question
  std::optional<std::uint64_t> seed;
  models::Sampling sampling;
};

/// n_i = max(1, floor(n0 * decay^depth)).
int sampling_schedule(const SearchConfig& config, int depth);

/// theta + lambda * delta; the scorer term joins only at completion and the
/// result is interpreted lower-is-better.
double chain_score(const Chain& chain, double lambda);

struct SearchResult {
  std::string answer;
  Chain chain;
  double score = 0.0;
  int explored = 0;  // frontier expansions performed
};

/// Optional instrumentation: every expansion with its extensions, plus every
/// completed chain with its final score.
struct SearchTrace {
  struct Expansion {
    Chain popped;
    std::vector<Chain> children;
  };
  std::vector<Expansion> expansions;
  std::vector<std::pair<Chain, double>> completed;
};

/// Best-first search over decomposition chains. Partial chains are keyed by
/// theta (FIFO on ties); candidates answering no_answer are dropped; partials
/// whose theta exceeds the best complete score are pruned. Greedy mode asks
/// for one candidate per step and fails on the first dead end.
/// Throws NoChainFound when no complete chain exists within budget.
SearchResult answer_question(const ComplexQuestion& question,
                             const models::ModelRegistry& registry,
                             const SearchConfig& config,
                             SearchTrace* trace = nullptr);

struct EvalItem {
  std::string id;
  double em = 0.0;
  double f1 = 0.0;
};

struct EvalResult {
  double em = 0.0;
  double f1 = 0.0;
  std::vector<EvalItem> per_question;
};

/// Mean EM/F1 over prediction ids; a prediction id absent from gold is an
/// error. Null answers (no chain found) score zero against non-empty gold.
EvalResult evaluate(
    const std::vector<std::pair<std::string, std::optional<std::string>>>& predictions,
    const std::vector<std::pair<std::string, std::string>>& gold);

}  // namespace tmn::search
