#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "tmn/core.hpp"

namespace tmn::text {

struct Token {
  std::string text;
  std::size_t begin = 0;
  std::size_t end = 0;
};

/// Lowercased word tokens: runs of alphanumerics/underscores, with '.'
/// joining digits so decimals like "12.6" stay whole. Punctuation splits.
std::vector<std::string> tokenize(std::string_view input);
std::vector<Token> tokenize_spans(std::string_view input);

/// Ordered-insert set of lowercase tokens. Iteration follows first insertion.
class TokenSet {
 public:
  bool insert(std::string token);
  bool contains(std::string_view token) const;
  bool empty() const { return items_.empty(); }
  std::size_t size() const { return items_.size(); }
  const std::vector<std::string>& items() const { return items_; }

  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }

  bool operator==(const TokenSet& other) const { return items_ == other.items_; }

 private:
  std::vector<std::string> items_;
  std::unordered_set<std::string> index_;
};

// --- stopwords ---------------------------------------------------------------

/// The versioned stopword list embedded in the library (mirrored by the
/// data/stopwords.txt resource, one token per line).
const std::vector<std::string>& default_stopwords();

/// FNV-1a 64 over "token\n" per entry; pinned by tests against the resource.
std::uint64_t stopword_list_hash(const std::vector<std::string>& words);

std::vector<std::string> load_stopword_file(const std::string& path);

class Lexicon {
 public:
  Lexicon() : Lexicon(default_stopwords()) {}
  explicit Lexicon(const std::vector<std::string>& stopwords);

  bool is_stopword(std::string_view token) const;
  static const Lexicon& defaults();

 private:
  std::unordered_set<std::string> stopwords_;
};

// --- optional part-of-speech plug-in -----------------------------------------

enum class PosClass { Noun, Verb, Num, Propn, Adj, Adv, Other };

struct PosTagger {
  virtual ~PosTagger() = default;
  virtual PosClass tag(const std::string& token) const = 0;
};

enum class ZetaMode {
  PruneOtherExclusive,  // drop question terms that appear only in the other doc
  KeepOtherExclusive,   // the inverted literal reading, selectable for comparison
};

struct TextConfig {
  const Lexicon* lexicon = &Lexicon::defaults();
  const PosTagger* tagger = nullptr;  // when set, only content tag classes survive
  double overlap_threshold = 0.8;
  ZetaMode zeta_mode = ZetaMode::PruneOtherExclusive;
};

// --- essential words and vocabulary pruning ----------------------------------

/// Non-stopword content tokens of a text, in first-occurrence order.
TokenSet essential_words(std::string_view input, const TextConfig& config = {});

/// Question vocabulary pruned against the supporting documents: drops terms
/// that occur in other_doc but not in own_doc (default mode).
TokenSet zeta(std::string_view question, const Context& own_doc, const Context& other_doc,
              const TextConfig& config = {});

// --- chain metrics ------------------------------------------------------------

struct ChainMetrics {
  double theta = 0.0;
  double mu = 0.0;
  int nu = 0;
};

/// Proportion of new words introduced by the sub-questions: words in any
/// essential(q_i) that are neither essential words of qc nor tokens of an
/// earlier answer, over |essential(qc)|. Calculator surface keywords never
/// count as new. Throws EmptyQuestion when qc has no essential words.
double theta(const Chain& chain, const TextConfig& config = {});

/// Fraction of qc's essential words not covered by any sub-question.
double mu(const Chain& chain, const TextConfig& config = {});

/// Count of intermediate answers whose tokens appear in no later question
/// and not in the final answer.
int nu(const Chain& chain);

ChainMetrics compute_metrics(const Chain& chain, const TextConfig& config = {});

// --- answer comparison ---------------------------------------------------------

/// Lowercase, strip punctuation (decimal points inside numbers survive),
/// drop articles, collapse whitespace.
std::string normalize_answer(std::string_view answer);

/// Token-level F1 over normalized answers: 2*common/(|pred|+|gold|).
/// Both empty -> 1, exactly one empty -> 0.
double answer_f1(std::string_view prediction, std::string_view gold);
int answer_em(std::string_view prediction, std::string_view gold);

bool overlaps(std::string_view prediction, std::string_view target,
              const TextConfig& config = {});

}  // namespace tmn::text
