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

#include "adserve/lexicon.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "stopwords_data.h"

namespace adserve {

namespace {

bool IsAlnum(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9');
}

char ToLower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

bool AllDigits(const std::string& s) {
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}

bool StartsWithTag(std::string_view text, size_t pos, std::string_view name) {
  if (pos + 1 + name.size() > text.size()) return false;
  for (size_t i = 0; i < name.size(); ++i) {
    if (ToLower(text[pos + 1 + i]) != name[i]) return false;
  }
  size_t after = pos + 1 + name.size();
  return after == text.size() || !IsAlnum(text[after]);
}

// Position just past the closing tag of a raw-text element, or npos.
size_t SkipRawElement(std::string_view text, size_t from,
                      std::string_view name) {
  for (size_t p = text.find("</", from); p != std::string_view::npos;
       p = text.find("</", p + 2)) {
    bool match = p + 2 + name.size() <= text.size();
    for (size_t i = 0; match && i < name.size(); ++i) {
      match = ToLower(text[p + 2 + i]) == name[i];
    }
    if (match) {
      size_t close = text.find('>', p);
      return close == std::string_view::npos ? text.size() : close + 1;
    }
  }
  return text.size();
}

}  // namespace

// ---------------------------------------------------------------------------
// TermVector

TermVector::TermVector(std::map<std::string, double> weights) {
  double sum = 0.0;
  for (auto& [term, w] : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("term weight must be finite and >= 0: " +
                                  term);
    }
    if (w == 0.0) continue;
    sum += w * w;
    entries_.emplace(term, w);
  }
  norm_ = std::sqrt(sum);
}

TermVector TermVector::Normalized() const {
  if (norm_ == 0.0) return TermVector();
  return Scaled(1.0 / norm_);
}

TermVector TermVector::Scaled(double factor) const {
  std::map<std::string, double> scaled;
  for (const auto& [term, w] : entries_) scaled.emplace(term, w * factor);
  return TermVector(std::move(scaled));
}

double TermVector::weight(const std::string& term) const {
  auto it = entries_.find(term);
  return it == entries_.end() ? 0.0 : it->second;
}

// ---------------------------------------------------------------------------
// Preprocessing

std::vector<std::string> NormalizeText(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (current.size() >= 2 && !AllDigits(current)) {
      tokens.push_back(current);
    }
    current.clear();
  };

  size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == '<') {
      size_t close = text.find('>', i);
      if (close == std::string_view::npos) {
        flush();
        ++i;
        continue;
      }
      flush();
      bool raw = StartsWithTag(text, i, "script") ||
                 StartsWithTag(text, i, "style");
      if (raw && text[close - 1] != '/') {
        std::string_view name =
            StartsWithTag(text, i, "script") ? "script" : "style";
        i = SkipRawElement(text, close + 1, name);
      } else {
        i = close + 1;
      }
      continue;
    }
    if (c == '&') {
      // Character references act as separators.
      size_t j = i + 1;
      while (j < text.size() && j - i <= 10 &&
             (IsAlnum(text[j]) || text[j] == '#')) {
        ++j;
      }
      if (j < text.size() && text[j] == ';' && j > i + 1) {
        flush();
        i = j + 1;
        continue;
      }
    }
    if (IsAlnum(c)) {
      current.push_back(ToLower(c));
    } else {
      flush();
    }
    ++i;
  }
  flush();
  return tokens;
}

// ---------------------------------------------------------------------------
// Stopwords

const Stopwords& Stopwords::Default() {
  static const Stopwords* kDefault = [] {
    std::vector<std::string> words;
    for (const char* w : kBuiltinStopwords) words.emplace_back(w);
    return new Stopwords(std::move(words));
  }();
  return *kDefault;
}

Stopwords Stopwords::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot read stopword file " + path.string());
  }
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream fields(line.substr(0, line.find('#')));
    for (std::string w; fields >> w;) {
      for (char& c : w) c = ToLower(c);
      words.push_back(std::move(w));
    }
  }
  return Stopwords(std::move(words));
}

Stopwords::Stopwords(std::vector<std::string> words)
    : words_(std::make_move_iterator(words.begin()),
             std::make_move_iterator(words.end())) {}

bool Stopwords::contains(std::string_view word) const {
  return words_.count(std::string(word)) > 0;
}

// ---------------------------------------------------------------------------
// Corpus

Corpus Corpus::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read corpus file " + path.string());
  std::vector<std::string> docs;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) docs.push_back(std::move(line));
  }
  return FromDocuments(docs);
}

Corpus Corpus::FromDocuments(std::span<const std::string> documents) {
  Corpus corpus;
  corpus.documents_ = documents.size();
  for (const std::string& doc : documents) {
    auto tokens = NormalizeText(doc);
    std::unordered_set<std::string> seen;
    for (size_t i = 0; i < tokens.size(); ++i) {
      seen.insert(tokens[i]);
      if (i + 1 < tokens.size()) seen.insert(tokens[i] + " " + tokens[i + 1]);
    }
    for (const std::string& term : seen) ++corpus.df_[term];
  }
  return corpus;
}

size_t Corpus::document_frequency(const std::string& term) const {
  auto it = df_.find(term);
  return it == df_.end() ? 0 : it->second;
}

double Corpus::Idf(const std::string& term) const {
  double n = static_cast<double>(documents_);
  double df = static_cast<double>(document_frequency(term));
  return std::log((n + 1.0) / (df + 1.0)) + 1.0;
}

// ---------------------------------------------------------------------------
// Lexicon

Lexicon::Lexicon() : Lexicon(Stopwords::Default(), std::nullopt) {}

Lexicon::Lexicon(Stopwords stopwords, std::optional<Corpus> corpus)
    : stopwords_(std::move(stopwords)), corpus_(std::move(corpus)) {}

double Lexicon::Idf(const std::string& term) const {
  return corpus_ ? corpus_->Idf(term) : 1.0;
}

std::vector<ScoredTerm> Lexicon::ExtractKeywords(
    std::span<const std::string> tokens, size_t k) const {
  if (k == 0) throw std::invalid_argument("k must be at least 1");

  // Candidate selection.
  std::map<std::string, int> unigrams;
  std::map<std::string, int> bigrams;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (stopwords_.contains(tokens[i])) continue;
    ++unigrams[tokens[i]];
    if (i + 1 < tokens.size() && tokens[i + 1] != tokens[i] &&
        !stopwords_.contains(tokens[i + 1])) {
      ++bigrams[tokens[i] + " " + tokens[i + 1]];
    }
  }
  std::map<std::string, int> counts = std::move(unigrams);
  for (auto& [bigram, n] : bigrams) {
    if (n >= kMinBigramFrequency) counts.emplace(bigram, n);
  }

  // Plural folding: "lenses" joins "lense" only if "lense" was itself a
  // candidate, so a lone "lens" is left alone.
  std::map<std::string, int> folded;
  for (const auto& [term, n] : counts) {
    std::string root = term;
    while (root.size() > 2 && root.back() == 's' &&
           counts.count(root.substr(0, root.size() - 1))) {
      root.pop_back();
    }
    folded[root] += n;
  }

  std::vector<ScoredTerm> scored;
  scored.reserve(folded.size());
  for (const auto& [term, n] : folded) {
    scored.push_back({term, static_cast<double>(n) * Idf(term)});
  }
  std::sort(scored.begin(), scored.end(),
            [](const ScoredTerm& a, const ScoredTerm& b) {
              if (a.score != b.score) return a.score > b.score;
              return a.term < b.term;
            });
  if (scored.size() > k) scored.resize(k);
  return scored;
}

TermVector Lexicon::PageVector(std::string_view text) const {
  std::map<std::string, double> tf;
  for (const std::string& token : NormalizeText(text)) {
    if (!stopwords_.contains(token)) tf[token] += 1.0;
  }
  if (corpus_) {
    for (auto& [term, w] : tf) w *= corpus_->Idf(term);
  }
  return TermVector(std::move(tf)).Normalized();
}

TermVector Lexicon::AdVector(const Ad& ad) const {
  std::map<std::string, double> weights;
  auto add = [&](std::string_view text, double w) {
    for (const std::string& token : NormalizeText(text)) {
      if (!stopwords_.contains(token)) weights[token] += w;
    }
  };
  for (const std::string& keyword : ad.keywords) add(keyword, kKeywordWeight);
  add(ad.title, kTitleWeight);
  add(ad.description, kDescriptionWeight);
  return TermVector(std::move(weights)).Normalized();
}

}  // namespace adserve
