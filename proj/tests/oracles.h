// Copyright 2026 The boundkit Authors.
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


// Independent reference implementations used by the tests. Nothing here
// shares code with the library beyond the public types.

#ifndef BOUNDKIT_TESTS_ORACLES_H_
#define BOUNDKIT_TESTS_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace oracle {

// Exhaustive segmentation search. Every split into vocabulary pieces is
// scored left to right; a single code point that is not itself a piece may
// be covered by an unknown piece. Best = highest score, then fewer pieces,
// then the lexicographically smallest piece sequence.
struct Segmentation {
  std::vector<std::u32string> pieces;
  double score = -INFINITY;
  bool found = false;
};

inline Segmentation best_segmentation(
    const std::u32string& word, const std::map<std::u32string, double>& vocab,
    double unk_score) {
  Segmentation best;
  std::vector<std::u32string> current;
  std::function<void(size_t, double)> walk = [&](size_t pos, double score) {
    if (pos == word.size()) {
      bool better = !best.found || score > best.score;
      if (!better && score == best.score) {
        better = current.size() < best.pieces.size() ||
                 (current.size() == best.pieces.size() && current < best.pieces);
      }
      if (better) {
        best.pieces = current;
        best.score = score;
        best.found = true;
      }
      return;
    }
    for (size_t len = 1; pos + len <= word.size(); ++len) {
      const std::u32string piece = word.substr(pos, len);
      double s;
      if (auto it = vocab.find(piece); it != vocab.end()) {
        s = it->second;
      } else if (len == 1) {
        s = unk_score;
      } else {
        continue;
      }
      current.push_back(piece);
      walk(pos + len, score + s);
      current.pop_back();
    }
  };
  walk(0, 0.0);
  return best;
}

// Every split of `word` into pieces from `vocab`, as sequences.
inline std::vector<std::vector<std::u32string>> all_segmentations(
    const std::u32string& word, const std::set<std::u32string>& vocab) {
  std::vector<std::vector<std::u32string>> out;
  std::vector<std::u32string> current;
  std::function<void(size_t)> walk = [&](size_t pos) {
    if (pos == word.size()) {
      out.push_back(current);
      return;
    }
    for (size_t len = 1; pos + len <= word.size(); ++len) {
      const std::u32string piece = word.substr(pos, len);
      if (!vocab.contains(piece)) continue;
      current.push_back(piece);
      walk(pos + len);
      current.pop_back();
    }
  };
  walk(0);
  return out;
}

// Occurrence counts of all substrings up to max_len, weighted by frequency.
inline std::map<std::u32string, uint64_t> substring_counts(
    const std::vector<std::pair<std::u32string, uint64_t>>& words,
    size_t max_len) {
  std::map<std::u32string, uint64_t> counts;
  for (const auto& [w, f] : words) {
    for (size_t b = 0; b < w.size(); ++b) {
      for (size_t e = b + 1; e <= w.size() && e - b <= max_len; ++e) {
        counts[w.substr(b, e - b)] += f;
      }
    }
  }
  return counts;
}

// Solves (X'X) beta = X'y by Gauss-Jordan elimination with partial pivoting.
inline std::vector<double> normal_equations(const std::vector<double>& x,
                                            const std::vector<double>& y,
                                            size_t k) {
  const size_t n = y.size();
  std::vector<std::vector<double>> a(k, std::vector<double>(k + 1, 0.0));
  for (size_t i = 0; i < n; ++i) {
    for (size_t r = 0; r < k; ++r) {
      for (size_t c = 0; c < k; ++c) a[r][c] += x[i * k + r] * x[i * k + c];
      a[r][k] += x[i * k + r] * y[i];
    }
  }
  for (size_t col = 0; col < k; ++col) {
    size_t pivot = col;
    for (size_t r = col + 1; r < k; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    std::swap(a[col], a[pivot]);
    for (size_t r = 0; r < k; ++r) {
      if (r == col) continue;
      const double f = a[r][col] / a[col][col];
      for (size_t c = col; c <= k; ++c) a[r][c] -= f * a[col][c];
    }
  }
  std::vector<double> beta(k);
  for (size_t r = 0; r < k; ++r) beta[r] = a[r][k] / a[r][r];
  return beta;
}

inline double entropy_bits(const std::vector<double>& weights) {
  double total = 0.0;
  for (double w : weights) total += w;
  double h = 0.0;
  for (double w : weights) {
    if (w > 0) h -= (w / total) * std::log2(w / total);
  }
  return h;
}

// Random text with varied scripts, punctuation and whitespace runs. Avoids
// U+FDD0, which the encoder reserves for escaping the meta symbol.
inline std::string random_line(std::mt19937_64& rng) {
  static const std::vector<std::u32string> kPools = {
      U"abcdefghijklmnopqrstuvwxyz",
      U"ABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789",
      U".,;:!?'\"()[]{}-‐…¿¡「」",
      U"éèüñçßāć",
      U"中文日本語한국어",
      U"абвгдαβγאבا",
      U"\U0001F600\U0001F680\U00010348▁▁",
      U"#$%&*+/<=>@\\^_`|~",
  };
  static const std::u32string kSpaces = U"  \t 　 ";
  std::uniform_int_distribution<int> words(0, 12);
  std::uniform_int_distribution<int> len(1, 8);
  std::uniform_int_distribution<size_t> pool(0, kPools.size() - 1);
  std::u32string out;
  if (rng() % 5 == 0) out += kSpaces[rng() % kSpaces.size()];
  const int n = words(rng);
  for (int w = 0; w < n; ++w) {
    if (w > 0) {
      const int runs = 1 + static_cast<int>(rng() % 3 == 0);
      for (int r = 0; r < runs; ++r) out += kSpaces[rng() % kSpaces.size()];
    }
    const int l = len(rng);
    for (int i = 0; i < l; ++i) {
      const std::u32string& p = kPools[rng() % 3 == 0 ? pool(rng) : 0];
      out += p[rng() % p.size()];
    }
  }
  if (rng() % 5 == 0) out += kSpaces[rng() % kSpaces.size()];
  std::string utf8;
  for (char32_t c : out) {
    if (c < 0x80) {
      utf8 += static_cast<char>(c);
    } else if (c < 0x800) {
      utf8 += static_cast<char>(0xC0 | (c >> 6));
      utf8 += static_cast<char>(0x80 | (c & 0x3F));
    } else if (c < 0x10000) {
      utf8 += static_cast<char>(0xE0 | (c >> 12));
      utf8 += static_cast<char>(0x80 | ((c >> 6) & 0x3F));
      utf8 += static_cast<char>(0x80 | (c & 0x3F));
    } else {
      utf8 += static_cast<char>(0xF0 | (c >> 18));
      utf8 += static_cast<char>(0x80 | ((c >> 12) & 0x3F));
      utf8 += static_cast<char>(0x80 | ((c >> 6) & 0x3F));
      utf8 += static_cast<char>(0x80 | (c & 0x3F));
    }
  }
  return utf8;
}

}  // namespace oracle

#endif  // BOUNDKIT_TESTS_ORACLES_H_
