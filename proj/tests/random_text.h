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

#ifndef ADSERVE_TESTS_RANDOM_TEXT_H_
#define ADSERVE_TESTS_RANDOM_TEXT_H_

#include <array>
#include <random>
#include <string>

namespace adserve::testing {

// Mixed-case words, stopwords, numbers, markup and punctuation.
inline std::string RandomDocument(std::mt19937& rng) {
  static constexpr std::array<const char*, 40> kWords = {
      "camera", "Lens", "tripod", "WEDDING", "bridal", "gown", "portrait",
      "studio", "photo", "photos", "review", "reviews", "mirrorless",
      "flash", "the", "and", "of", "to", "with", "is", "a", "I", "x",
      "2013", "5d", "f/2.8", "bouquet", "venue", "newborn", "family",
      "headshot", "graduation", "memory", "card", "bag", "strap", "gear",
      "price", "shoot", "album"};
  static constexpr std::array<const char*, 8> kGlue = {
      " ", " ", " ", ", ", ". ", " - ", "<b>", "</p> "};
  std::uniform_int_distribution<int> len(0, 60);
  std::uniform_int_distribution<size_t> word(0, kWords.size() - 1);
  std::uniform_int_distribution<size_t> glue(0, kGlue.size() - 1);
  std::string doc;
  int n = len(rng);
  for (int i = 0; i < n; ++i) {
    doc += kWords[word(rng)];
    doc += kGlue[glue(rng)];
  }
  return doc;
}

}  // namespace adserve::testing

#endif  // ADSERVE_TESTS_RANDOM_TEXT_H_
