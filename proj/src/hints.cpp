#include "tmn/hints.hpp"

#include <algorithm>
#include <cctype>
#include <regex>
#include <unordered_set>

#include "tmn/errors.hpp"

namespace tmn::hints {
namespace {

using calc::CalcValue;
using calc::CivilDate;
using calc::Number;
using calc::Unit;

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string trim_entity(std::string s) {
  auto issp = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
  while (!s.empty() && (issp(s.back()) || s.back() == '?' || s.back() == '.')) s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && issp(s[i])) ++i;
  return s.substr(i);
}

// difference-question patterns, matched against the lowercased question
const std::vector<std::regex>& difference_must_match() {
  static const std::vector<std::regex> patterns = [] {
    std::vector<std::regex> out;
    for (const char* p : {
             ".*how many (days|months|years).*",
             ".*how many.*(days|months|years).* between .*",
             ".*how many.* shorter .+ than .*",
             ".*how many.* shorter .+ compar.*",
             ".*how many.* longer .+ than .*",
             ".*how many.* longer .+ compar.*",
             ".*how many.* less .+ than .*",
             ".*how many.* less .+ compar.*",
             ".*how many.* more .+ than .*",
             ".*how many.* more .+ compar.*",
             ".*difference.*",
         }) {
      out.emplace_back(p);
    }
    return out;
  }();
  return patterns;
}

const std::vector<std::regex>& difference_should_not_match() {
  static const std::vector<std::regex> patterns = [] {
    std::vector<std::regex> out;
    for (const char* p : {
             ".*minimum.*", ".*maximum.*", ".*longest.*", ".*shortest.*",
             ".*highest.*", ".*lowest.*", ".*first.*", ".*last.*",
             ".*second.*", ".*third.*", ".*fourth.*",
             ".*how many touchdown.*", ".*how many field goal.*",
             ".*how many point.*", ".*more touchdown.*",
             ".*more field goal.*", ".*more point.*",
         }) {
      out.emplace_back(p);
    }
    return out;
  }();
  return patterns;
}

const std::regex& comparison_pattern() {
  static const std::regex pattern("([^,]+)[:,](.*) or (.*)\\?", std::regex::icase);
  return pattern;
}

const std::regex& complementation_pattern() {
  static const std::regex pattern("^(.*percent.*)(\\Wnot\\W|n't\\W)(.*)$");
  return pattern;
}

bool is_difference_question(const std::string& low) {
  bool fired = false;
  for (const std::regex& pattern : difference_must_match()) {
    if (std::regex_match(low, pattern)) {
      fired = true;
      break;
    }
  }
  if (!fired) return false;
  for (const std::regex& pattern : difference_should_not_match()) {
    if (std::regex_match(low, pattern)) return false;
  }
  return true;
}

bool contains_answer(const std::string& text, const std::string& answer) {
  std::string hay = lower(text);
  std::string needle = lower(answer);
  if (needle.empty()) return false;
  return hay.find(needle) != std::string::npos;
}

// case-insensitive longest token-prefix of `title` occurring in `text`;
// returns the matched span in original casing
std::optional<std::string> title_mention(const std::string& title, const std::string& text) {
  std::vector<std::string> title_tokens = text::tokenize(title);
  std::vector<text::Token> doc = text::tokenize_spans(text);
  for (std::size_t len = title_tokens.size(); len >= 1; --len) {
    for (std::size_t start = 0; start + len <= doc.size(); ++start) {
      bool match = true;
      for (std::size_t k = 0; k < len && match; ++k) {
        match = doc[start + k].text == title_tokens[k];
      }
      if (match) {
        std::size_t begin = doc[start].begin;
        std::size_t end = doc[start + len - 1].end;
        return text.substr(begin, end - begin);
      }
    }
  }
  return std::nullopt;
}

// ---- value scanning ---------------------------------------------------------

const std::string kMonthAlt =
    "(?:january|february|march|april|may|june|july|august|september|october|"
    "november|december)";

struct Candidate {
  std::size_t begin;
  std::size_t end;
  bool is_date;
};

void collect_matches(const std::string& text, const std::regex& pattern, bool is_date,
                     std::vector<Candidate>& out) {
  auto begin = std::sregex_iterator(text.begin(), text.end(), pattern);
  for (auto it = begin; it != std::sregex_iterator(); ++it) {
    out.push_back(Candidate{static_cast<std::size_t>(it->position()),
                            static_cast<std::size_t>(it->position() + it->length()), is_date});
  }
}

bool word_start(const std::string& text, std::size_t pos) {
  if (pos == 0) return true;
  unsigned char prev = static_cast<unsigned char>(text[pos - 1]);
  return !(std::isalnum(prev) || prev == '.' || prev == '_' || prev == ',');
}

bool word_end(const std::string& text, std::size_t pos) {
  if (pos >= text.size()) return true;
  unsigned char next = static_cast<unsigned char>(text[pos]);
  return !(std::isalnum(next) || next == '_');
}

}  // namespace

std::string_view class_name(QuestionClass cls) {
  switch (cls) {
    case QuestionClass::Difference: return "difference";
    case QuestionClass::Comparison: return "comparison";
    case QuestionClass::Complementation: return "complementation";
    case QuestionClass::Composition: return "composition";
    case QuestionClass::Conjunction: return "conjunction";
    case QuestionClass::OutOfScope: return "out_of_scope";
  }
  return "out_of_scope";
}

std::optional<QuestionClass> class_from_name(std::string_view name) {
  for (QuestionClass cls : {QuestionClass::Difference, QuestionClass::Comparison,
                            QuestionClass::Complementation, QuestionClass::Composition,
                            QuestionClass::Conjunction, QuestionClass::OutOfScope}) {
    if (class_name(cls) == name) return cls;
  }
  return std::nullopt;
}

std::optional<std::pair<std::string, std::string>> comparison_entities(
    std::string_view question) {
  std::match_results<std::string_view::const_iterator> m;
  if (!std::regex_search(question.begin(), question.end(), m, comparison_pattern())) {
    return std::nullopt;
  }
  std::string e1 = trim_entity(m[2].str());
  std::string e2 = trim_entity(m[3].str());
  if (e1.empty() || e2.empty()) return std::nullopt;
  return std::make_pair(e1, e2);
}

ClassSet classify(const ComplexQuestion& question, const HintConfig& config) {
  (void)config;
  ClassSet classes;
  const std::string low = lower(question.text);

  if (is_difference_question(low)) classes.insert(QuestionClass::Difference);
  if (comparison_entities(question.text)) classes.insert(QuestionClass::Comparison);
  if (std::regex_match(low, complementation_pattern())) {
    classes.insert(QuestionClass::Complementation);
  }

  if (question.gold_answer && question.contexts.size() >= 2) {
    const std::string& gold = *question.gold_answer;
    for (std::size_t i = 0; i < question.contexts.size(); ++i) {
      for (std::size_t j = 0; j < question.contexts.size(); ++j) {
        if (i == j) continue;
        const Context& d1 = question.contexts[i];
        const Context& d2 = question.contexts[j];
        if (i < j && contains_answer(d1.text, gold) && contains_answer(d2.text, gold)) {
          classes.insert(QuestionClass::Conjunction);
        }
        if (d2.title && contains_answer(d2.text, gold) && !contains_answer(d1.text, gold) &&
            title_mention(*d2.title, d1.text)) {
          classes.insert(QuestionClass::Composition);
        }
      }
    }
  }

  if (classes.empty()) classes.insert(QuestionClass::OutOfScope);
  return classes;
}

std::vector<ValueMention> extract_values(const Context& context,
                                         const std::optional<std::string>& near_entity,
                                         int window,
                                         int context_index) {
  const std::string& text = context.text;
  static const std::regex full_day_first("\\d{1,2}\\s+" + kMonthAlt + "\\s+\\d{4}",
                                         std::regex::icase);
  static const std::regex full_month_first(kMonthAlt + "\\s+\\d{1,2},\\s*\\d{4}",
                                           std::regex::icase);
  static const std::regex month_year(kMonthAlt + "\\s+\\d{4}", std::regex::icase);
  static const std::regex number("\\d{1,3}(?:,\\d{3})+(?:\\.\\d+)?%?|\\d+(?:\\.\\d+)?%?");

  std::vector<Candidate> candidates;
  collect_matches(text, full_day_first, true, candidates);
  collect_matches(text, full_month_first, true, candidates);
  collect_matches(text, month_year, true, candidates);
  collect_matches(text, number, false, candidates);

  // longest-first sweep; dates shadow the numbers inside them
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.begin != b.begin) return a.begin < b.begin;
    if (a.end != b.end) return a.end > b.end;
    return a.is_date && !b.is_date;
  });

  std::vector<ValueMention> mentions;
  std::size_t covered_until = 0;
  for (const Candidate& candidate : candidates) {
    if (candidate.begin < covered_until) continue;
    if (!word_start(text, candidate.begin) || !word_end(text, candidate.end)) continue;
    std::string surface = text.substr(candidate.begin, candidate.end - candidate.begin);

    if (candidate.is_date) {
      auto date = calc::parse_date(surface);
      if (!date) continue;
      mentions.push_back(ValueMention{CalcValue(*date), candidate.begin, candidate.end,
                                      context_index, surface});
    } else {
      Number num;
      std::string body = surface;
      if (!body.empty() && body.back() == '%') {
        num.percent = true;
        body.pop_back();
      }
      auto dec = calc::Decimal::parse(body);
      if (!dec) continue;
      num.value = *dec;
      mentions.push_back(ValueMention{CalcValue(num), candidate.begin, candidate.end,
                                      context_index, surface});
      // bare years double as imputed dates over the same span
      bool four_digits = surface.size() == 4 &&
                         std::all_of(surface.begin(), surface.end(), [](unsigned char c) {
                           return std::isdigit(c) != 0;
                         });
      if (four_digits && !num.percent && dec->is_integer() && dec->units() >= 1000) {
        CivilDate year{static_cast<int>(dec->units()), 1, 1, true, true};
        mentions.push_back(ValueMention{CalcValue(year), candidate.begin, candidate.end,
                                        context_index, surface});
      }
    }
    covered_until = candidate.end;
  }

  if (!near_entity) return mentions;

  // token-distance filter against every occurrence of the entity
  std::vector<text::Token> tokens = text::tokenize_spans(text);
  std::vector<std::string> entity_tokens = text::tokenize(*near_entity);
  if (entity_tokens.empty()) return {};

  std::vector<std::pair<std::size_t, std::size_t>> occurrences;  // token ranges
  for (std::size_t start = 0; start + entity_tokens.size() <= tokens.size(); ++start) {
    bool match = true;
    for (std::size_t k = 0; k < entity_tokens.size() && match; ++k) {
      match = tokens[start + k].text == entity_tokens[k];
    }
    if (match) occurrences.emplace_back(start, start + entity_tokens.size() - 1);
  }
  if (occurrences.empty()) return {};

  auto token_range = [&](const ValueMention& mention) {
    std::size_t first = tokens.size();
    std::size_t last = 0;
    for (std::size_t t = 0; t < tokens.size(); ++t) {
      if (tokens[t].end <= mention.begin || tokens[t].begin >= mention.end) continue;
      first = std::min(first, t);
      last = std::max(last, t);
    }
    return std::make_pair(first, last);
  };

  std::vector<ValueMention> near;
  for (ValueMention& mention : mentions) {
    auto [first, last] = token_range(mention);
    if (first == tokens.size()) continue;
    bool close = false;
    for (auto [occ_first, occ_last] : occurrences) {
      std::size_t gap = 0;
      if (occ_last < first) {
        gap = first - occ_last;
      } else if (last < occ_first) {
        gap = occ_first - last;
      }
      if (static_cast<int>(gap) <= window) {
        close = true;
        break;
      }
    }
    if (close) near.push_back(std::move(mention));
  }
  return near;
}

namespace {

struct ChainBuilder {
  std::vector<HintChain> chains;
  std::unordered_set<std::string> seen;

  void add(std::vector<Hint> hints) {
    for (std::size_t i = 0; i < hints.size(); ++i) {
      hints[i].step_index = static_cast<int>(i) + 1;
    }
    std::string key;
    for (const Hint& hint : hints) {
      key += hint.context_index ? std::to_string(*hint.context_index) : "e";
      key += '\x1f';
      key += hint.answer;
      key += '\x1f';
      for (const std::string& token : hint.vocabulary) {
        key += token;
        key += '\x1e';
      }
      key += to_string(hint.target);
      key += '\x1f';
    }
    if (seen.insert(key).second) chains.push_back(HintChain{std::move(hints)});
  }
};

text::TokenSet phi_minus(const text::TokenSet& phi, const std::string& entity) {
  std::unordered_set<std::string> drop;
  for (const std::string& token : text::tokenize(entity)) drop.insert(token);
  text::TokenSet out;
  for (const std::string& token : phi) {
    if (!drop.count(token)) out.insert(token);
  }
  return out;
}

text::TokenSet with_tokens(const text::TokenSet& base, const std::string& extra) {
  text::TokenSet out = base;
  for (std::string& token : text::tokenize(extra)) out.insert(std::move(token));
  return out;
}

std::string render_lower(const CalcValue& value) { return lower(calc::render_value(value)); }

bool eval_matches(const std::string& question, const std::string& gold) {
  try {
    return text::normalize_answer(calc::eval_calc(calc::parse_calc_question(question))) ==
           text::normalize_answer(gold);
  } catch (const Error&) {
    return false;
  }
}

Hint squad_hint(int context_index, std::string answer, text::TokenSet vocabulary) {
  Hint hint;
  hint.context_index = context_index;
  hint.answer = std::move(answer);
  hint.vocabulary = std::move(vocabulary);
  hint.target = ModelId::Squad;
  return hint;
}

Hint calc_hint(std::string answer, std::vector<std::string> vocabulary) {
  Hint hint;
  hint.context_index = std::nullopt;
  hint.answer = std::move(answer);
  for (std::string& token : vocabulary) hint.vocabulary.insert(std::move(token));
  hint.target = ModelId::Calc;
  return hint;
}

}  // namespace

std::vector<HintChain> extract_hints(const ComplexQuestion& question,
                                     const ClassSet& classes,
                                     const HintConfig& config) {
  if (!question.gold_answer) throw NoGoldAnswer();
  const std::string& gold = *question.gold_answer;
  ChainBuilder builder;
  const text::TokenSet phi_qc = text::essential_words(question.text, config.text);

  std::vector<ValueMention> all_values;
  for (std::size_t c = 0; c < question.contexts.size(); ++c) {
    for (ValueMention& mention :
         extract_values(question.contexts[c], std::nullopt, 0, static_cast<int>(c))) {
      all_values.push_back(std::move(mention));
    }
  }

  if (classes.count(QuestionClass::Difference)) {
    struct Triple {
      const ValueMention* n1;
      const ValueMention* n2;
      std::optional<Unit> unit;
      std::size_t gap;
    };
    std::vector<Triple> triples;
    for (std::size_t i = 0; i < all_values.size(); ++i) {
      for (std::size_t j = i + 1; j < all_values.size(); ++j) {
        const ValueMention& a = all_values[i];
        const ValueMention& b = all_values[j];
        bool numbers = std::holds_alternative<Number>(a.value) &&
                       std::holds_alternative<Number>(b.value);
        bool dates = std::holds_alternative<CivilDate>(a.value) &&
                     std::holds_alternative<CivilDate>(b.value);
        if (!numbers && !dates) continue;
        std::size_t gap = a.context_index == b.context_index
                              ? (a.begin < b.begin ? b.begin - a.begin : a.begin - b.begin)
                              : 1000000 + a.begin + b.begin;
        std::vector<std::optional<Unit>> units;
        if (numbers) {
          units.push_back(std::nullopt);
        } else {
          units = {Unit::Days, Unit::Months, Unit::Years};
        }
        for (std::optional<Unit> unit : units) {
          try {
            if (text::normalize_answer(calc::eval_calc(calc::Diff{a.value, b.value, unit})) !=
                text::normalize_answer(gold)) {
              continue;
            }
          } catch (const Error&) {
            continue;
          }
          triples.push_back(Triple{&a, &b, unit, gap});
        }
      }
    }
    std::stable_sort(triples.begin(), triples.end(),
                     [](const Triple& a, const Triple& b) { return a.gap < b.gap; });
    if (triples.size() > static_cast<std::size_t>(config.difference_cap)) {
      triples.resize(config.difference_cap);
    }
    for (const Triple& triple : triples) {
      for (bool swapped : {false, true}) {
        const ValueMention& first = swapped ? *triple.n2 : *triple.n1;
        const ValueMention& second = swapped ? *triple.n1 : *triple.n2;
        std::vector<std::string> vocab = {"diff", render_lower(first.value),
                                          render_lower(second.value)};
        if (triple.unit) vocab.push_back(std::string(calc::to_string(*triple.unit)));
        builder.add({squad_hint(first.context_index, first.surface, phi_qc),
                     squad_hint(second.context_index, second.surface, phi_qc),
                     calc_hint(gold, std::move(vocab))});
      }
    }
  }

  if (classes.count(QuestionClass::Comparison)) {
    if (auto entities = comparison_entities(question.text)) {
      const auto& [e1, e2] = *entities;
      std::vector<ValueMention> near_e1, near_e2;
      for (std::size_t c = 0; c < question.contexts.size(); ++c) {
        for (ValueMention& mention : extract_values(
                 question.contexts[c], e1, config.proximity_window, static_cast<int>(c))) {
          near_e1.push_back(std::move(mention));
        }
        for (ValueMention& mention : extract_values(
                 question.contexts[c], e2, config.proximity_window, static_cast<int>(c))) {
          near_e2.push_back(std::move(mention));
        }
      }
      for (const ValueMention& n1 : near_e1) {
        for (const ValueMention& n2 : near_e2) {
          if (n1.context_index == n2.context_index && n1.begin == n2.begin) continue;
          std::string r1 = calc::render_value(n1.value);
          std::string r2 = calc::render_value(n2.value);
          bool consistent = false;
          for (const char* op : {"<", ">", "≠"}) {
            consistent = eval_matches(
                "if_then(" + r1 + " " + op + " " + r2 + ", " + e1 + ", " + e2 + ")", gold);
            if (consistent) break;
          }
          if (!consistent) continue;
          builder.add({squad_hint(n1.context_index, n1.surface, phi_minus(phi_qc, e2)),
                       squad_hint(n2.context_index, n2.surface, phi_minus(phi_qc, e1)),
                       calc_hint(gold, {"if_then", render_lower(n1.value),
                                        render_lower(n2.value), lower(e1), lower(e2)})});
        }
      }
    }
  }

  if (classes.count(QuestionClass::Complementation)) {
    for (const ValueMention& mention : all_values) {
      const Number* num = std::get_if<Number>(&mention.value);
      if (!num) continue;
      if (!eval_matches("not(" + num->value.to_string() + ")", gold)) continue;
      builder.add({squad_hint(mention.context_index, mention.surface, phi_qc),
                   calc_hint(gold, {"not", render_lower(mention.value)})});
    }
  }

  if (classes.count(QuestionClass::Composition)) {
    for (std::size_t i = 0; i < question.contexts.size(); ++i) {
      for (std::size_t j = 0; j < question.contexts.size(); ++j) {
        if (i == j) continue;
        const Context& d1 = question.contexts[i];
        const Context& d2 = question.contexts[j];
        if (!d2.title) continue;
        if (!contains_answer(d2.text, gold) || contains_answer(d1.text, gold)) continue;
        auto mention = title_mention(*d2.title, d1.text);
        if (!mention) continue;  // no bridge entity: the question is skipped
        text::TokenSet v1 = text::zeta(question.text, d1, d2, config.text);
        text::TokenSet v2 =
            with_tokens(text::zeta(question.text, d2, d1, config.text), *mention);
        builder.add({squad_hint(static_cast<int>(i), *mention, std::move(v1)),
                     squad_hint(static_cast<int>(j), gold, std::move(v2))});
      }
    }
  }

  if (classes.count(QuestionClass::Conjunction)) {
    for (std::size_t i = 0; i < question.contexts.size(); ++i) {
      for (std::size_t j = i + 1; j < question.contexts.size(); ++j) {
        const Context& d1 = question.contexts[i];
        const Context& d2 = question.contexts[j];
        if (!contains_answer(d1.text, gold) || !contains_answer(d2.text, gold)) continue;
        builder.add({squad_hint(static_cast<int>(i), gold,
                                text::zeta(question.text, d1, d2, config.text)),
                     squad_hint(static_cast<int>(j), gold,
                                text::zeta(question.text, d2, d1, config.text))});
      }
    }
  }

  return std::move(builder.chains);
}

bool in_scope(const ComplexQuestion& question, const HintConfig& config) {
  ClassSet classes = classify(question, config);
  if (classes.size() == 1 && classes.count(QuestionClass::OutOfScope)) return false;
  if (!question.gold_answer) return false;
  return !extract_hints(question, classes, config).empty();
}

nlohmann::json hint_to_json(const Hint& hint) {
  nlohmann::json record;
  if (hint.context_index) {
    record["context_index"] = *hint.context_index;
  } else {
    record["empty"] = true;
  }
  record["answer"] = hint.answer;
  record["vocab"] = hint.vocabulary.items();
  record["target"] = std::string(to_string(hint.target));
  return record;
}

Hint hint_from_json(const nlohmann::json& record) {
  Hint hint;
  if (record.contains("context_index")) {
    hint.context_index = record.at("context_index").get<int>();
  }
  hint.answer = record.at("answer").get<std::string>();
  for (const auto& token : record.at("vocab")) {
    hint.vocabulary.insert(token.get<std::string>());
  }
  auto target = model_from_string(record.at("target").get<std::string>());
  if (!target) throw Error("bad hint target");
  hint.target = *target;
  return hint;
}

nlohmann::json classification_record(const ComplexQuestion& question, const ClassSet& classes,
                                     const std::vector<HintChain>& chains) {
  nlohmann::json record;
  record["id"] = question.id;
  nlohmann::json class_list = nlohmann::json::array();
  for (QuestionClass cls : classes) class_list.push_back(std::string(class_name(cls)));
  record["classes"] = class_list;
  nlohmann::json chain_list = nlohmann::json::array();
  for (const HintChain& chain : chains) {
    nlohmann::json hint_list = nlohmann::json::array();
    for (const Hint& hint : chain.hints) hint_list.push_back(hint_to_json(hint));
    chain_list.push_back(hint_list);
  }
  record["chains"] = chain_list;
  return record;
}

}  // namespace tmn::hints
