#include "tmn/models.hpp"

#include <iostream>

#include "tmn/calculator.hpp"
#include "tmn/errors.hpp"

namespace tmn::models {

ScoredAnswer answer(const ModelRegistry& registry, ModelId model, const std::string& question,
                    const std::vector<Context>& contexts) {
  if (model == ModelId::Eoq) throw Error("EOQ is not answerable");

  if (model == ModelId::Calc) {
    try {
      std::string result = calc::eval_calc(calc::parse_calc_question(question));
      return ScoredAnswer{std::move(result), 1.0, false};
    } catch (const ParseError&) {
      return ScoredAnswer{"", 0.0, true};
    } catch (const UnitMismatch&) {
      return ScoredAnswer{"", 0.0, true};
    } catch (const IncomparableOperands&) {
      return ScoredAnswer{"", 0.0, true};
    }
  }

  if (!registry.squad_qa) throw ServiceUnavailable("no QA service configured");
  ScoredAnswer best{"", 0.0, true};
  if (contexts.empty()) {
    best = registry.squad_qa->answer(question, "");
  }
  for (const Context& context : contexts) {
    ScoredAnswer candidate = registry.squad_qa->answer(question, context.text);
    if (candidate.no_answer) continue;
    if (best.no_answer || candidate.score > best.score) best = std::move(candidate);
  }
  return best;
}

std::vector<std::string> generate_subquestions(const ModelRegistry& registry, ModelId model,
                                               const hints::Hint& hint,
                                               const std::vector<Context>& contexts, int count,
                                               std::optional<std::uint64_t> seed) {
  if (hint.target != model) throw Error("hint targets a different model");

  if (model == ModelId::Calc) {
    CalcHintView view = parse_calc_hint(hint);
    std::vector<std::string> questions = calc::enumerate_calc_questions(
        view.values, view.entity_pair, hint.answer, view.unit);
    if (questions.size() > static_cast<std::size_t>(count)) questions.resize(count);
    return questions;
  }

  if (!registry.squad_gen) throw ServiceUnavailable("no generator service configured");
  GenRequest request;
  if (hint.context_index) {
    if (*hint.context_index < 0 ||
        static_cast<std::size_t>(*hint.context_index) >= contexts.size()) {
      throw Error("hint context index out of range");
    }
    request.context = contexts[*hint.context_index].text;
  }
  request.answer = hint.answer;
  request.vocabulary = hint.vocabulary.items();
  request.count = count;
  request.seed = seed;

  std::vector<Context> hint_context;
  if (hint.context_index) hint_context.push_back(contexts[*hint.context_index]);

  std::vector<std::string> kept;
  for (std::string& question : registry.squad_gen->generate(request)) {
    ScoredAnswer reply = answer(registry, ModelId::Squad, question, hint_context);
    if (reply.no_answer) continue;
    if (!text::overlaps(reply.text, hint.answer, registry.text)) continue;
    kept.push_back(std::move(question));
    if (kept.size() == static_cast<std::size_t>(count)) break;
  }
  return kept;
}

std::vector<NextGenCandidate> next_candidates(const ModelRegistry& registry,
                                              const std::string& history, int count,
                                              std::optional<std::uint64_t> seed,
                                              const Sampling& sampling) {
  if (!registry.nextgen) throw ServiceUnavailable("no next-question service configured");
  std::vector<NextGenCandidate> out;
  for (const RawCandidate& raw : registry.nextgen->next(history, count, sampling, seed)) {
    auto parsed = parse_prefixed(raw.text);
    if (!parsed) {
      std::cerr << "warning: dropping unparseable candidate: " << raw.text << "\n";
      continue;
    }
    out.push_back(NextGenCandidate{parsed->first, std::move(parsed->second), raw.logprob});
  }
  return out;
}

double score_chain(const ModelRegistry& registry, const Chain& chain) {
  if (!chain.complete) throw NotComplete();
  if (!registry.scorer) return 0.0;
  return registry.scorer->negative_prob(render_history(chain));
}

CalcHintView parse_calc_hint(const hints::Hint& hint) {
  CalcHintView view;
  std::vector<std::string> entities;
  for (const std::string& element : hint.vocabulary) {
    if (element == "diff" || element == "not" || element == "if_then") continue;
    if (auto unit = calc::unit_from_string(element)) {
      view.unit = *unit;
      continue;
    }
    if (auto value = calc::parse_operand(element)) {
      if (!std::holds_alternative<calc::TextValue>(*value)) {
        view.values.push_back(std::move(*value));
        continue;
      }
    }
    entities.push_back(element);
  }
  if (entities.size() >= 2) view.entity_pair = std::make_pair(entities[0], entities[1]);
  return view;
}

}  // namespace tmn::models
