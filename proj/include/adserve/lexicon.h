// Copyright 2026 The adserve Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Text to term vectors. Keyword extraction runs four stages:
//
//   preprocess   NormalizeText: strip markup, lowercase, split, filter
//   select       unigram and bigram candidates without stopword edges
//   score        term frequency x inverse document frequency
//   postprocess  fold "xs" into "x" when both were seen, rank, cut to k
//
// All objects here are immutable after construction and safe to share
// across threads.

#ifndef ADSERVE_LEXICON_H_
#define ADSERVE_LEXICON_H_

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "adserve/inventory.h"

namespace adserve {

// Sparse term -> weight map with its cached L2 norm. Entries are kept in
// term order so iteration and serialization are deterministic.
class TermVector {
 public:
  TermVector() = default;
  // Keeps the weights as given; zero weights are dropped. Negative weights
  // are rejected with std::invalid_argument.
  explicit TermVector(std::map<std::string, double> weights);

  // Scaled to unit L2 norm; the empty vector stays empty.
  TermVector Normalized() const;
  TermVector Scaled(double factor) const;

  const std::map<std::string, double>& entries() const { return entries_; }
  double norm() const { return norm_; }
  bool empty() const { return entries_.empty(); }
  size_t size() const { return entries_.size(); }
  double weight(const std::string& term) const;

  bool operator==(const TermVector&) const = default;

 private:
  std::map<std::string, double> entries_;
  double norm_ = 0.0;
};

struct ScoredTerm {
  std::string term;
  double score = 0.0;

  bool operator==(const ScoredTerm&) const = default;
};

// Markup stripped, lowercased, split on runs of non-[a-z0-9] bytes; tokens
// shorter than two characters and all-digit tokens are dropped.
std::vector<std::string> NormalizeText(std::string_view text);

class Stopwords {
 public:
  // The list shipped in data/stopwords.txt, compiled in.
  static const Stopwords& Default();
  // One lowercase word per line; blank lines and '#' comments ignored.
  static Stopwords Load(const std::filesystem::path& path);

  explicit Stopwords(std::vector<std::string> words);

  bool contains(std::string_view word) const;
  size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

// Background document frequencies for IDF, over unigrams and adjacent
// bigrams ("a b") of each normalized document.
class Corpus {
 public:
  // One document per line.
  static Corpus Load(const std::filesystem::path& path);
  static Corpus FromDocuments(std::span<const std::string> documents);

  size_t documents() const { return documents_; }
  size_t document_frequency(const std::string& term) const;
  // ln((N + 1) / (df + 1)) + 1; always positive.
  double Idf(const std::string& term) const;

 private:
  size_t documents_ = 0;
  std::unordered_map<std::string, size_t> df_;
};

// Field weights used by AdVector.
inline constexpr double kKeywordWeight = 3.0;
inline constexpr double kTitleWeight = 2.0;
inline constexpr double kDescriptionWeight = 1.0;

// Bigram candidates must occur at least this often in a document.
inline constexpr int kMinBigramFrequency = 2;

class Lexicon {
 public:
  Lexicon();
  Lexicon(Stopwords stopwords, std::optional<Corpus> corpus);

  // Highest-scoring keyword candidates, score descending then term
  // ascending; at most k entries. Without a corpus the score is the raw
  // frequency. `k` must be at least 1.
  std::vector<ScoredTerm> ExtractKeywords(std::span<const std::string> tokens,
                                          size_t k) const;

  // TF (x IDF when a corpus is loaded) over every non-stopword token of
  // the text, normalized. Empty text gives the empty vector.
  TermVector PageVector(std::string_view text) const;

  // Keywords (3.0 each), title tokens (2.0), description tokens (1.0),
  // summed per term and normalized.
  TermVector AdVector(const Ad& ad) const;

  const Stopwords& stopwords() const { return stopwords_; }
  bool has_corpus() const { return corpus_.has_value(); }

 private:
  double Idf(const std::string& term) const;

  Stopwords stopwords_;
  std::optional<Corpus> corpus_;
};

}  // namespace adserve

#endif  // ADSERVE_LEXICON_H_
