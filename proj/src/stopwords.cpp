#include "tmn/textscore.hpp"

namespace tmn::text {

// Versioned list, one entry per token; data/stopwords.txt mirrors it verbatim.
const std::vector<std::string>& default_stopwords() {
  static const std::vector<std::string> words = {
      "i",
      "me",
      "my",
      "myself",
      "we",
      "our",
      "ours",
      "ourselves",
      "you",
      "your",
      "yours",
      "yourself",
      "yourselves",
      "he",
      "him",
      "his",
      "himself",
      "she",
      "her",
      "hers",
      "herself",
      "it",
      "its",
      "itself",
      "they",
      "them",
      "their",
      "theirs",
      "themselves",
      "what",
      "which",
      "who",
      "whom",
      "whose",
      "this",
      "that",
      "these",
      "those",
      "am",
      "is",
      "are",
      "was",
      "were",
      "be",
      "been",
      "being",
      "have",
      "has",
      "had",
      "having",
      "do",
      "does",
      "did",
      "doing",
      "a",
      "an",
      "the",
      "and",
      "but",
      "if",
      "or",
      "because",
      "as",
      "until",
      "while",
      "of",
      "at",
      "by",
      "for",
      "with",
      "about",
      "against",
      "between",
      "into",
      "through",
      "during",
      "before",
      "after",
      "above",
      "below",
      "to",
      "from",
      "up",
      "down",
      "in",
      "out",
      "on",
      "off",
      "over",
      "under",
      "again",
      "further",
      "then",
      "once",
      "here",
      "there",
      "when",
      "where",
      "why",
      "how",
      "all",
      "any",
      "both",
      "each",
      "few",
      "more",
      "most",
      "other",
      "some",
      "such",
      "no",
      "nor",
      "not",
      "only",
      "own",
      "same",
      "so",
      "than",
      "too",
      "very",
      "s",
      "t",
      "d",
      "ll",
      "m",
      "o",
      "re",
      "ve",
      "y",
      "can",
      "cannot",
      "will",
      "would",
      "could",
      "should",
      "might",
      "must",
      "shall",
      "ought",
      "just",
      "now",
      "don",
      "ain",
      "aren",
      "couldn",
      "didn",
      "doesn",
      "hadn",
      "hasn",
      "haven",
      "isn",
      "ma",
      "mightn",
      "mustn",
      "needn",
      "shan",
      "shouldn",
      "wasn",
      "weren",
      "won",
      "wouldn",
      "us",
      "also",
      "upon",
      "within",
      "without",
      "among",
      "onto",
      "toward",
      "towards",
      "via",
      "year",
  };
  return words;
}

}  // namespace tmn::text
