#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "tmn/core.hpp"
#include "tmn/models.hpp"

// Deterministic fixture builders shared by the unit and acceptance suites.
namespace synth {

// A self-contained mock universe for one question: a scripted candidate tree
// plus a QA table answering (a subset of) the scripted sub-questions.
struct MockWorld {
  tmn::ComplexQuestion question;
  std::shared_ptr<tmn::models::TableQa> qa;
  std::shared_ptr<tmn::models::ScriptedNextGen> nextgen;

  tmn::models::ModelRegistry registry() const;
};

/// Random candidate tree with mixed answerable/dead-end branches and EOQ
/// leaves; fully determined by the seed.
MockWorld random_world(std::uint64_t seed);

/// The dead-end fixture: the most likely first candidate is unanswerable
/// while its sibling leads to a complete chain answering `expected_answer`.
MockWorld two_branch_world();
extern const char* const kTwoBranchAnswer;

// One synthetic question with everything the pipeline needs to answer it.
struct CorpusEntry {
  tmn::ComplexQuestion question;
  std::string expected_class;
};

struct Corpus {
  std::vector<CorpusEntry> entries;
  nlohmann::json qa_fixture;         // models::TableQa
  nlohmann::json nextgen_fixture;    // models::ScriptedNextGen
  nlohmann::json generator_fixture;  // models::TemplateGenerator
};

/// Synthetic fact corpus: `per_class` questions for each of the five
/// reasoning classes over generated paragraphs, with mock fixtures whose
/// scripted chains answer every question exactly.
Corpus build_corpus(int per_class, std::uint64_t seed);

/// Materializes a corpus into dataset.jsonl + fixture files + a config file
/// under `directory`; returns the config path.
std::string write_corpus_files(const Corpus& corpus, const std::string& directory,
                               bool greedy = false);

}  // namespace synth
