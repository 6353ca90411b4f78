#include <fstream>

#include "tmn/errors.hpp"
#include "tmn/models.hpp"
#include "tmn/textscore.hpp"

namespace tmn::models {
namespace {

nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open fixture: " + path);
  nlohmann::json fixture;
  try {
    in >> fixture;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("bad fixture " + path + ": " + e.what());
  }
  return fixture;
}

std::string substitute_answer(std::string question, const std::string& answer) {
  const std::string placeholder = "{answer}";
  std::size_t pos;
  while ((pos = question.find(placeholder)) != std::string::npos) {
    question.replace(pos, placeholder.size(), answer);
  }
  return question;
}

}  // namespace

// --- TableQa -------------------------------------------------------------------

TableQa TableQa::from_json(const nlohmann::json& fixture) {
  TableQa qa;
  if (fixture.contains("fuzzy_keys")) qa.fuzzy_ = fixture.at("fuzzy_keys").get<bool>();
  for (const auto& [question, value] : fixture.at("answers").items()) {
    if (value.is_null()) continue;  // explicit abstention entry
    if (value.is_string()) {
      qa.add(question, value.get<std::string>());
    } else {
      qa.add(question, value.at("answer").get<std::string>(),
             value.value("score", 1.0));
    }
  }
  return qa;
}

TableQa TableQa::from_file(const std::string& path) { return from_json(load_json_file(path)); }

void TableQa::add(const std::string& question, const std::string& answer, double score) {
  ScoredAnswer entry{answer, score, false};
  exact_[question] = entry;
  normalized_[text::normalize_answer(question)] = entry;
}

ScoredAnswer TableQa::answer(const std::string& question, const std::string&) {
  if (auto it = exact_.find(question); it != exact_.end()) return it->second;
  if (fuzzy_) {
    if (auto it = normalized_.find(text::normalize_answer(question)); it != normalized_.end()) {
      return it->second;
    }
  }
  return ScoredAnswer{"", 0.0, true};
}

// --- TemplateGenerator -----------------------------------------------------------

TemplateGenerator TemplateGenerator::from_json(const nlohmann::json& fixture) {
  TemplateGenerator gen;
  for (const auto& entry : fixture.at("rules")) {
    Rule rule;
    if (entry.contains("answer")) rule.answer = entry.at("answer").get<std::string>();
    for (const auto& question : entry.at("questions")) {
      rule.questions.push_back(question.get<std::string>());
    }
    gen.rules_.push_back(std::move(rule));
  }
  return gen;
}

TemplateGenerator TemplateGenerator::from_file(const std::string& path) {
  return from_json(load_json_file(path));
}

std::vector<std::string> TemplateGenerator::generate(const GenRequest& request) {
  std::vector<std::string> out;
  for (const Rule& rule : rules_) {
    if (rule.answer &&
        text::normalize_answer(*rule.answer) != text::normalize_answer(request.answer)) {
      continue;
    }
    for (const std::string& question : rule.questions) {
      out.push_back(substitute_answer(question, request.answer));
      if (out.size() == static_cast<std::size_t>(request.count)) return out;
    }
  }
  return out;
}

// --- ScriptedNextGen -------------------------------------------------------------

ScriptedNextGen ScriptedNextGen::from_json(const nlohmann::json& fixture) {
  ScriptedNextGen gen;
  for (const auto& [history, candidates] : fixture.at("steps").items()) {
    std::vector<RawCandidate> list;
    for (const auto& entry : candidates) {
      if (entry.is_string()) {
        // rank order doubles as likelihood when no explicit logprob is given
        list.push_back(RawCandidate{entry.get<std::string>(),
                                    -static_cast<double>(list.size())});
      } else {
        list.push_back(RawCandidate{entry.at("text").get<std::string>(),
                                    entry.value("logprob", 0.0)});
      }
    }
    gen.add(history, std::move(list));
  }
  return gen;
}

ScriptedNextGen ScriptedNextGen::from_file(const std::string& path) {
  return from_json(load_json_file(path));
}

void ScriptedNextGen::add(const std::string& history, std::vector<RawCandidate> candidates) {
  steps_[history] = std::move(candidates);
}

std::vector<RawCandidate> ScriptedNextGen::next(const std::string& history, int count,
                                                const Sampling&,
                                                std::optional<std::uint64_t>) {
  auto it = steps_.find(history);
  if (it == steps_.end()) return {};
  std::vector<RawCandidate> out = it->second;
  if (out.size() > static_cast<std::size_t>(count)) out.resize(count);
  return out;
}

// --- HashScorer ------------------------------------------------------------------

HashScorer HashScorer::from_json(const nlohmann::json& fixture) {
  HashScorer scorer;
  scorer.default_ = fixture.value("default", 0.0);
  if (fixture.contains("scores")) {
    for (const auto& [key, value] : fixture.at("scores").items()) {
      scorer.scores_[key] = value.get<double>();
    }
  }
  return scorer;
}

HashScorer HashScorer::from_file(const std::string& path) {
  return from_json(load_json_file(path));
}

std::string HashScorer::history_key(const std::string& history) {
  std::uint64_t hash = 14695981039346656037ull;
  for (char c : history) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 1099511628211ull;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016llx", static_cast<unsigned long long>(hash));
  return std::string(buffer);
}

void HashScorer::add(const std::string& history, double score) {
  scores_[history_key(history)] = score;
}

double HashScorer::negative_prob(const std::string& history) {
  auto it = scores_.find(history_key(history));
  return it == scores_.end() ? default_ : it->second;
}

}  // namespace tmn::models
