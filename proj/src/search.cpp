#include "tmn/search.hpp"

#include <cmath>
#include <map>
#include <queue>
#include <unordered_map>

#include "tmn/errors.hpp"
#include "tmn/textscore.hpp"

namespace tmn::search {
namespace {

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t counter) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ull * (counter + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

struct CallBudget {
  int limit;
  int used = 0;

  bool available() const { return used < limit; }
  void spend() { ++used; }
};

class Searcher {
 public:
  Searcher(const ComplexQuestion& question, const models::ModelRegistry& registry,
           const SearchConfig& config, SearchTrace* trace)
      : question_(question),
        registry_(registry),
        config_(config),
        trace_(trace),
        budget_{config.budget},
        base_seed_(config.seed.value_or(0)) {}

  SearchResult run() { return config_.greedy ? run_greedy() : run_best_first(); }

 private:
  std::optional<std::uint64_t> next_seed() {
    if (!config_.seed) return std::nullopt;
    return mix_seed(base_seed_, static_cast<std::uint64_t>(budget_.used));
  }

  std::vector<models::NextGenCandidate> ask_nextgen(const Chain& chain, int count) {
    auto seed = next_seed();
    budget_.spend();
    return models::next_candidates(registry_, render_history(chain), count, seed,
                                   config_.sampling);
  }

  // finalizes a popped chain on an EOQ candidate; returns its score
  std::pair<Chain, double> finalize(const Chain& chain) {
    Chain provisional = mark_complete(chain, 0.0);
    budget_.spend();
    double delta = models::score_chain(registry_, provisional);
    Chain completed = mark_complete(chain, delta);
    double score = chain_score(completed, config_.lambda);
    if (trace_) trace_->completed.emplace_back(completed, score);
    return {std::move(completed), score};
  }

  std::optional<Chain> extend(const Chain& chain, const models::NextGenCandidate& candidate) {
    budget_.spend();
    models::ScoredAnswer reply =
        models::answer(registry_, candidate.model, candidate.question, question_.contexts);
    if (reply.no_answer) return std::nullopt;
    Chain draft = chain;
    draft.steps.push_back(
        ChainStep{candidate.model, candidate.question, reply.text, reply.score});
    double theta_new = text::theta(draft, registry_.text);
    return append_step(chain, draft.steps.back(), theta_new);
  }

  SearchResult make_result(Chain chain, double score, int explored) const {
    SearchResult result;
    result.answer = chain.final_answer();
    result.chain = std::move(chain);
    result.score = score;
    result.explored = explored;
    return result;
  }

  SearchResult run_best_first() {
    struct Entry {
      double theta;
      std::uint64_t seq;
      Chain chain;
    };
    auto later = [](const Entry& a, const Entry& b) {
      if (a.theta != b.theta) return a.theta > b.theta;
      return a.seq > b.seq;
    };
    std::priority_queue<Entry, std::vector<Entry>, decltype(later)> frontier(later);
    std::uint64_t seq = 0;
    frontier.push(Entry{0.0, seq++, make_chain(question_)});

    std::optional<std::pair<Chain, double>> best;
    int explored = 0;
    bool exhausted = false;

    while (!frontier.empty() && !exhausted) {
      Entry entry = frontier.top();
      frontier.pop();
      // monotone pruning: theta only grows along a branch, so a partial that
      // already scores above the best complete chain cannot win
      if (best && entry.theta > best->second) continue;
      if (!budget_.available()) break;

      int depth = static_cast<int>(entry.chain.steps.size());
      std::vector<models::NextGenCandidate> candidates =
          ask_nextgen(entry.chain, sampling_schedule(config_, depth));
      ++explored;
      SearchTrace::Expansion* expansion = nullptr;
      if (trace_) {
        trace_->expansions.push_back(SearchTrace::Expansion{entry.chain, {}});
        expansion = &trace_->expansions.back();
      }

      for (const models::NextGenCandidate& candidate : candidates) {
        if (candidate.model == ModelId::Eoq) {
          if (entry.chain.steps.empty()) continue;
          if (!budget_.available()) {
            exhausted = true;
            break;
          }
          auto [completed, score] = finalize(entry.chain);
          if (!best || score < best->second) best = {std::move(completed), score};
          continue;
        }
        if (depth >= config_.max_steps) continue;
        if (!budget_.available()) {
          exhausted = true;
          break;
        }
        std::optional<Chain> child = extend(entry.chain, candidate);
        if (!child) continue;
        if (expansion) expansion->children.push_back(*child);
        frontier.push(Entry{child->theta, seq++, std::move(*child)});
      }
    }

    if (!best) throw NoChainFound();
    return make_result(std::move(best->first), best->second, explored);
  }

  SearchResult run_greedy() {
    Chain chain = make_chain(question_);
    int explored = 0;
    while (true) {
      if (!budget_.available()) throw NoChainFound();
      std::vector<models::NextGenCandidate> candidates = ask_nextgen(chain, 1);
      ++explored;
      if (trace_) trace_->expansions.push_back(SearchTrace::Expansion{chain, {}});
      if (candidates.empty()) throw NoChainFound();

      const models::NextGenCandidate& top = candidates.front();
      if (top.model == ModelId::Eoq) {
        if (chain.steps.empty()) throw NoChainFound();
        if (!budget_.available()) throw NoChainFound();
        auto [completed, score] = finalize(chain);
        return make_result(std::move(completed), score, explored);
      }
      if (static_cast<int>(chain.steps.size()) >= config_.max_steps) throw NoChainFound();
      if (!budget_.available()) throw NoChainFound();
      std::optional<Chain> next = extend(chain, top);
      if (!next) throw NoChainFound();  // greedy cannot recover from a dead end
      if (trace_) trace_->expansions.back().children.push_back(*next);
      chain = std::move(*next);
    }
  }

  const ComplexQuestion& question_;
  const models::ModelRegistry& registry_;
  const SearchConfig& config_;
  SearchTrace* trace_;
  CallBudget budget_;
  std::uint64_t base_seed_;
};

}  // namespace

int sampling_schedule(const SearchConfig& config, int depth) {
  double value = config.n0 * std::pow(config.decay, depth);
  int count = static_cast<int>(std::floor(value + 1e-9));
  return count < 1 ? 1 : count;
}

double chain_score(const Chain& chain, double lambda) {
  double delta = chain.complete && chain.delta ? *chain.delta : 0.0;
  return chain.theta + lambda * delta;
}

SearchResult answer_question(const ComplexQuestion& question,
                             const models::ModelRegistry& registry,
                             const SearchConfig& config,
                             SearchTrace* trace) {
  Searcher searcher(question, registry, config, trace);
  return searcher.run();
}

EvalResult evaluate(
    const std::vector<std::pair<std::string, std::optional<std::string>>>& predictions,
    const std::vector<std::pair<std::string, std::string>>& gold) {
  std::unordered_map<std::string, std::string> gold_by_id;
  for (const auto& [id, answer] : gold) gold_by_id[id] = answer;

  EvalResult result;
  for (const auto& [id, answer] : predictions) {
    auto it = gold_by_id.find(id);
    if (it == gold_by_id.end()) throw Error("prediction id not in gold: " + id);
    std::string prediction = answer.value_or("");
    EvalItem item;
    item.id = id;
    item.em = text::answer_em(prediction, it->second);
    item.f1 = text::answer_f1(prediction, it->second);
    result.per_question.push_back(std::move(item));
  }
  if (!result.per_question.empty()) {
    for (const EvalItem& item : result.per_question) {
      result.em += item.em;
      result.f1 += item.f1;
    }
    result.em /= static_cast<double>(result.per_question.size());
    result.f1 /= static_cast<double>(result.per_question.size());
  }
  return result;
}

}  // namespace tmn::search
