#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tmn/calculator.hpp"
#include "tmn/core.hpp"
#include "tmn/textscore.hpp"

namespace tmn::hints {

enum class QuestionClass {
  Difference,
  Comparison,
  Complementation,
  Composition,
  Conjunction,
  OutOfScope,
};

using ClassSet = std::set<QuestionClass>;

std::string_view class_name(QuestionClass cls);
std::optional<QuestionClass> class_from_name(std::string_view name);

/// A date or number found in a context paragraph. The surface substring
/// re-parses to the same value.
struct ValueMention {
  calc::CalcValue value;
  std::size_t begin = 0;
  std::size_t end = 0;
  int context_index = 0;
  std::string surface;
};

/// Distant-supervision tuple for one reasoning step: the context to ask
/// against (nullopt -> the empty context), the expected answer, and the
/// vocabulary conditioning the sub-question generator. Calculator hints
/// keep operands and entities as whole vocabulary elements so the
/// exhaustive generator can rebuild them.
struct Hint {
  std::optional<int> context_index;  // nullopt = empty context
  std::string answer;
  text::TokenSet vocabulary;
  ModelId target = ModelId::Squad;
  int step_index = 1;

  bool empty_context() const { return !context_index.has_value(); }
};

struct HintChain {
  std::vector<Hint> hints;
};

struct HintConfig {
  int proximity_window = 20;  // tokens, for comparison value extraction
  int difference_cap = 50;    // (n1, n2, unit) triples per question
  text::TextConfig text;
};

/// Regex- and context-based question classification. Difference, comparison and
/// complementation come from the question text alone; composition and
/// conjunction need two contexts plus the gold answer. OutOfScope when
/// nothing applies.
ClassSet classify(const ComplexQuestion& question, const HintConfig& config = {});

/// Comparison entity pair e1/e2 from the "...: X or Y?" pattern, in original
/// casing. Nullopt when the pattern does not match.
std::optional<std::pair<std::string, std::string>> comparison_entities(
    std::string_view question);

/// Scans a paragraph for date and number mentions. Bare four-digit years are
/// emitted both as a number and as an imputed date over the same span. When
/// near_entity is given, only mentions within `window` tokens of one of its
/// occurrences survive.
std::vector<ValueMention> extract_values(const Context& context,
                                         const std::optional<std::string>& near_entity,
                                         int window,
                                         int context_index = 0);

/// Emits every consistent hint chain for the classified reasoning patterns.
/// Throws NoGoldAnswer when the question has none.
std::vector<HintChain> extract_hints(const ComplexQuestion& question,
                                     const ClassSet& classes,
                                     const HintConfig& config = {});

bool in_scope(const ComplexQuestion& question, const HintConfig& config = {});

nlohmann::json hint_to_json(const Hint& hint);
Hint hint_from_json(const nlohmann::json& record);
nlohmann::json classification_record(const ComplexQuestion& question, const ClassSet& classes,
                                     const std::vector<HintChain>& chains);

}  // namespace tmn::hints
