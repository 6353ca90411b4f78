#include "tmn/core.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace tmn {
namespace {

bool is_blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isspace(c) != 0; });
}

// Markers escaped inside history fields, longest first so "QC:" wins over "Q:".
constexpr std::array<std::string_view, 3> kMarkers = {"QC:", "Q:", "A:"};

bool marker_at(std::string_view s, std::size_t pos, std::string_view marker) {
  return pos <= s.size() && s.size() - pos >= marker.size() &&
         s.substr(pos, marker.size()) == marker;
}

}  // namespace

std::string_view to_string(ModelId id) {
  switch (id) {
    case ModelId::Squad: return "SQUAD";
    case ModelId::Calc: return "CALC";
    case ModelId::Eoq: return "EOQ";
  }
  return "SQUAD";
}

std::optional<ModelId> model_from_string(std::string_view name) {
  if (name == "SQUAD") return ModelId::Squad;
  if (name == "CALC") return ModelId::Calc;
  if (name == "EOQ") return ModelId::Eoq;
  return std::nullopt;
}

void validate(const ComplexQuestion& question) {
  if (is_blank(question.text)) throw Error("question text is empty");
  if (question.contexts.empty()) throw Error("question has no contexts");
  for (const Context& context : question.contexts) {
    if (is_blank(context.text)) throw Error("context text is empty");
  }
}

const std::string& Chain::final_answer() const {
  if (steps.empty()) throw EmptyChain();
  return steps.back().answer;
}

Chain make_chain(ComplexQuestion question) {
  Chain chain;
  chain.question = std::move(question);
  return chain;
}

Chain append_step(const Chain& chain, ChainStep step, double theta_new) {
  if (chain.complete) throw AlreadyComplete();
  if (step.model == ModelId::Eoq) throw Error("step model cannot be EOQ");
  if (step.question.empty()) throw Error("step question is empty");
  if (theta_new < chain.theta) throw Error("theta may not decrease");
  Chain next = chain;
  next.steps.push_back(std::move(step));
  next.theta = theta_new;
  return next;
}

Chain mark_complete(const Chain& chain, double delta) {
  if (chain.steps.empty()) throw EmptyChain();
  if (delta < 0.0 || delta > 1.0) throw Error("delta must be in [0, 1]");
  Chain next = chain;
  next.complete = true;
  next.delta = delta;
  return next;
}

std::string escape_field(std::string_view field) {
  std::string out;
  out.reserve(field.size());
  for (std::size_t i = 0; i < field.size();) {
    if (field[i] == '\\') {
      out += "\\\\";
      ++i;
      continue;
    }
    bool matched = false;
    for (std::string_view marker : kMarkers) {
      if (marker_at(field, i, marker)) {
        out += '\\';
        out += marker;
        i += marker.size();
        matched = true;
        break;
      }
    }
    if (!matched) {
      out += field[i];
      ++i;
    }
  }
  return out;
}

std::string unescape_field(std::string_view field) {
  std::string out;
  out.reserve(field.size());
  for (std::size_t i = 0; i < field.size();) {
    if (field[i] != '\\') {
      out += field[i];
      ++i;
      continue;
    }
    if (i + 1 < field.size() && field[i + 1] == '\\') {
      out += '\\';
      i += 2;
      continue;
    }
    bool matched = false;
    for (std::string_view marker : kMarkers) {
      if (marker_at(field, i + 1, marker)) {
        out += marker;
        i += 1 + marker.size();
        matched = true;
        break;
      }
    }
    if (!matched) {
      out += '\\';
      ++i;
    }
  }
  return out;
}

std::string render_history(
    const std::string& qc,
    const std::vector<std::pair<std::string, std::string>>& qa_pairs) {
  std::string out = "QC: " + escape_field(qc);
  for (const auto& [q, a] : qa_pairs) {
    out += " Q: " + escape_field(q);
    out += " A: " + escape_field(a);
  }
  return out;
}

std::string render_history(const Chain& chain) {
  std::vector<std::pair<std::string, std::string>> qa_pairs;
  qa_pairs.reserve(chain.steps.size());
  for (const ChainStep& step : chain.steps) {
    qa_pairs.emplace_back(step.question, step.answer);
  }
  return render_history(chain.question.text, qa_pairs);
}

History parse_history(std::string_view serialized) {
  if (!marker_at(serialized, 0, "QC:")) {
    throw ParseError(0, "history must start with \"QC:\"");
  }

  // Delimiter positions: " Q: " / " A: " whose marker is not escaped. Escaping
  // always inserts a backslash between the space and a literal marker, so a
  // space directly followed by "Q:"/"A:" is necessarily a delimiter.
  struct Cut {
    std::size_t pos;  // index of the space before the marker
    bool is_question;
  };
  std::vector<Cut> cuts;
  for (std::size_t i = 0; i + 1 < serialized.size(); ++i) {
    if (serialized[i] != ' ') continue;
    // "QC:" only opens a history, never delimits one.
    if (marker_at(serialized, i + 1, "QC:")) continue;
    bool is_question = marker_at(serialized, i + 1, "Q:");
    bool is_answer = !is_question && marker_at(serialized, i + 1, "A:");
    if (!is_question && !is_answer) continue;
    cuts.push_back({i, is_question});
  }

  auto field_between = [&](std::size_t begin, std::size_t end) {
    // Tolerate a missing space after the marker for empty fields.
    std::string_view raw = serialized.substr(begin, end - begin);
    if (!raw.empty() && raw.front() == ' ') raw.remove_prefix(1);
    return unescape_field(raw);
  };

  History history;
  std::size_t field_start = 3;  // past "QC:"
  bool expect_question = true;
  std::size_t prev_end = serialized.size();
  if (!cuts.empty()) prev_end = cuts.front().pos;
  history.qc = field_between(field_start, prev_end);

  for (std::size_t c = 0; c < cuts.size(); ++c) {
    if (cuts[c].is_question != expect_question) {
      throw ParseError(cuts[c].pos, expect_question ? "expected \"Q:\"" : "expected \"A:\"");
    }
    std::size_t begin = cuts[c].pos + 3;  // past " Q:" / " A:", at the field's space
    std::size_t end = (c + 1 < cuts.size()) ? cuts[c + 1].pos : serialized.size();
    std::string value = field_between(begin, end);
    if (expect_question) {
      history.qa_pairs.emplace_back(std::move(value), std::string());
    } else {
      history.qa_pairs.back().second = std::move(value);
    }
    expect_question = !expect_question;
  }
  if (!expect_question) {
    throw ParseError(serialized.size(), "question without an answer");
  }
  return history;
}

std::string render_prefixed(ModelId model, std::string_view question) {
  if (model == ModelId::Eoq) return std::string(kEoqToken);
  std::string out = "(";
  out += to_string(model);
  out += ") ";
  out += question;
  return out;
}

std::optional<std::pair<ModelId, std::string>> parse_prefixed(std::string_view raw) {
  // Trim surrounding whitespace first; generator output is often padded.
  while (!raw.empty() && std::isspace(static_cast<unsigned char>(raw.front()))) raw.remove_prefix(1);
  while (!raw.empty() && std::isspace(static_cast<unsigned char>(raw.back()))) raw.remove_suffix(1);

  if (raw == kEoqToken) return std::make_pair(ModelId::Eoq, std::string());
  if (raw.size() < 3 || raw.front() != '(') return std::nullopt;
  std::size_t close = raw.find(')');
  if (close == std::string_view::npos) return std::nullopt;
  auto model = model_from_string(raw.substr(1, close - 1));
  if (!model || *model == ModelId::Eoq) return std::nullopt;
  std::string_view rest = raw.substr(close + 1);
  while (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
  if (rest.empty()) return std::nullopt;
  return std::make_pair(*model, std::string(rest));
}

}  // namespace tmn
