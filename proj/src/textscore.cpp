#include "tmn/textscore.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <unordered_map>

#include "tmn/calculator.hpp"
#include "tmn/errors.hpp"

namespace tmn::text {
namespace {

bool is_word_byte(unsigned char c) {
  return std::isalnum(c) != 0 || c == '_' || c >= 0x80;
}

char lower(unsigned char c) { return static_cast<char>(std::tolower(c)); }

const std::unordered_set<std::string>& whitelist() {
  static const std::unordered_set<std::string> set = [] {
    std::unordered_set<std::string> s(calc::calculator_keywords().begin(),
                                      calc::calculator_keywords().end());
    s.insert("≠");
    return s;
  }();
  return set;
}

std::unordered_set<std::string> token_index(std::string_view input) {
  std::unordered_set<std::string> out;
  for (std::string& token : tokenize(input)) out.insert(std::move(token));
  return out;
}

bool content_tag(PosClass tag) {
  switch (tag) {
    case PosClass::Noun:
    case PosClass::Verb:
    case PosClass::Num:
    case PosClass::Propn:
    case PosClass::Adj:
    case PosClass::Adv:
      return true;
    case PosClass::Other:
      return false;
  }
  return false;
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::string current;
  for (char c : s) {
    if (c == ' ') {
      if (!current.empty()) out.push_back(std::move(current));
      current.clear();
    } else {
      current += c;
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

}  // namespace

std::vector<Token> tokenize_spans(std::string_view input) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < input.size()) {
    unsigned char c = static_cast<unsigned char>(input[i]);
    if (!is_word_byte(c)) {
      ++i;
      continue;
    }
    std::size_t begin = i;
    std::string token;
    while (i < input.size()) {
      unsigned char cur = static_cast<unsigned char>(input[i]);
      if (is_word_byte(cur)) {
        token += lower(cur);
        ++i;
        continue;
      }
      // keep decimal points inside numbers: "12.6" is one token
      if (cur == '.' && i + 1 < input.size() && i > begin &&
          std::isdigit(static_cast<unsigned char>(input[i - 1])) &&
          std::isdigit(static_cast<unsigned char>(input[i + 1]))) {
        token += '.';
        ++i;
        continue;
      }
      break;
    }
    out.push_back(Token{std::move(token), begin, i});
  }
  return out;
}

std::vector<std::string> tokenize(std::string_view input) {
  std::vector<std::string> out;
  for (Token& token : tokenize_spans(input)) out.push_back(std::move(token.text));
  return out;
}

bool TokenSet::insert(std::string token) {
  if (index_.count(token)) return false;
  index_.insert(token);
  items_.push_back(std::move(token));
  return true;
}

bool TokenSet::contains(std::string_view token) const {
  return index_.count(std::string(token)) > 0;
}

std::uint64_t stopword_list_hash(const std::vector<std::string>& words) {
  std::uint64_t hash = 14695981039346656037ull;
  auto mix = [&](char c) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 1099511628211ull;
  };
  for (const std::string& word : words) {
    for (char c : word) mix(c);
    mix('\n');
  }
  return hash;
}

std::vector<std::string> load_stopword_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open stopword file: " + path);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty()) continue;
    for (char& c : line) c = lower(static_cast<unsigned char>(c));
    out.push_back(line);
  }
  return out;
}

Lexicon::Lexicon(const std::vector<std::string>& stopwords)
    : stopwords_(stopwords.begin(), stopwords.end()) {}

bool Lexicon::is_stopword(std::string_view token) const {
  return stopwords_.count(std::string(token)) > 0;
}

const Lexicon& Lexicon::defaults() {
  static const Lexicon instance;
  return instance;
}

TokenSet essential_words(std::string_view input, const TextConfig& config) {
  TokenSet out;
  for (std::string& token : tokenize(input)) {
    if (config.lexicon->is_stopword(token)) continue;
    if (config.tagger && !content_tag(config.tagger->tag(token))) continue;
    out.insert(std::move(token));
  }
  return out;
}

TokenSet zeta(std::string_view question, const Context& own_doc, const Context& other_doc,
              const TextConfig& config) {
  TokenSet phi = essential_words(question, config);
  auto own = token_index(own_doc.text);
  auto other = token_index(other_doc.text);
  TokenSet out;
  for (const std::string& word : phi) {
    bool other_exclusive = other.count(word) > 0 && own.count(word) == 0;
    bool keep = config.zeta_mode == ZetaMode::PruneOtherExclusive ? !other_exclusive
                                                                  : other_exclusive;
    if (keep) out.insert(word);
  }
  return out;
}

double theta(const Chain& chain, const TextConfig& config) {
  TokenSet phi_qc = essential_words(chain.question.text, config);
  if (phi_qc.empty()) throw EmptyQuestion();

  std::unordered_set<std::string> new_words;
  std::unordered_set<std::string> prior_answer_tokens;
  for (const ChainStep& step : chain.steps) {
    for (const std::string& word : essential_words(step.question, config)) {
      if (whitelist().count(word)) continue;
      if (phi_qc.contains(word)) continue;
      if (prior_answer_tokens.count(word)) continue;
      new_words.insert(word);
    }
    for (std::string& token : tokenize(step.answer)) {
      prior_answer_tokens.insert(std::move(token));
    }
  }
  return static_cast<double>(new_words.size()) / static_cast<double>(phi_qc.size());
}

double mu(const Chain& chain, const TextConfig& config) {
  TokenSet phi_qc = essential_words(chain.question.text, config);
  if (phi_qc.empty()) throw EmptyQuestion();

  std::unordered_set<std::string> covered;
  for (const ChainStep& step : chain.steps) {
    for (const std::string& word : essential_words(step.question, config)) {
      covered.insert(word);
    }
  }
  std::size_t uncovered = 0;
  for (const std::string& word : phi_qc) {
    if (!covered.count(word)) ++uncovered;
  }
  return static_cast<double>(uncovered) / static_cast<double>(phi_qc.size());
}

int nu(const Chain& chain) {
  if (chain.steps.size() <= 1) return 0;
  std::unordered_set<std::string> final_tokens = token_index(chain.steps.back().answer);

  int unused = 0;
  for (std::size_t i = 0; i + 1 < chain.steps.size(); ++i) {
    bool used = false;
    for (const std::string& token : tokenize(chain.steps[i].answer)) {
      if (final_tokens.count(token)) {
        used = true;
        break;
      }
      for (std::size_t j = i + 1; j < chain.steps.size() && !used; ++j) {
        if (token_index(chain.steps[j].question).count(token)) used = true;
      }
      if (used) break;
    }
    if (!used) ++unused;
  }
  return unused;
}

ChainMetrics compute_metrics(const Chain& chain, const TextConfig& config) {
  return ChainMetrics{theta(chain, config), mu(chain, config), nu(chain)};
}

std::string normalize_answer(std::string_view answer) {
  std::string mapped;
  mapped.reserve(answer.size());
  for (std::size_t i = 0; i < answer.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(answer[i]);
    if (std::isalnum(c) || c >= 0x80) {
      mapped += lower(c);
    } else if (c == '.' && i > 0 && i + 1 < answer.size() &&
               std::isdigit(static_cast<unsigned char>(answer[i - 1])) &&
               std::isdigit(static_cast<unsigned char>(answer[i + 1]))) {
      mapped += '.';
    } else {
      mapped += ' ';
    }
  }
  std::string out;
  for (const std::string& word : split_ws(mapped)) {
    if (word == "a" || word == "an" || word == "the") continue;
    if (!out.empty()) out += ' ';
    out += word;
  }
  return out;
}

double answer_f1(std::string_view prediction, std::string_view gold) {
  std::vector<std::string> pred = split_ws(normalize_answer(prediction));
  std::vector<std::string> ref = split_ws(normalize_answer(gold));
  if (pred.empty() && ref.empty()) return 1.0;
  if (pred.empty() || ref.empty()) return 0.0;

  std::unordered_map<std::string, int> counts;
  for (const std::string& token : ref) ++counts[token];
  std::int64_t common = 0;
  for (const std::string& token : pred) {
    auto it = counts.find(token);
    if (it != counts.end() && it->second > 0) {
      --it->second;
      ++common;
    }
  }
  // 2PR/(P+R) reduces to this exact integer ratio
  return 2.0 * static_cast<double>(common) /
         static_cast<double>(pred.size() + ref.size());
}

int answer_em(std::string_view prediction, std::string_view gold) {
  return normalize_answer(prediction) == normalize_answer(gold) ? 1 : 0;
}

bool overlaps(std::string_view prediction, std::string_view target,
              const TextConfig& config) {
  return answer_f1(prediction, target) >= config.overlap_threshold;
}

}  // namespace tmn::text
