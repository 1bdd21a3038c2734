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

#ifndef BOUNDKIT_VOCAB_H_
#define BOUNDKIT_VOCAB_H_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace boundkit {

// Which edge piece of a word carries the boundary mark.
enum class MarkingScheme { kInit, kFin };

std::string_view to_string(MarkingScheme scheme);
// Accepts "init" / "fin". Throws UsageError otherwise.
MarkingScheme parse_marking_scheme(std::string_view text);

// U+2581 LOWER ONE EIGHTH BLOCK.
inline constexpr char32_t kDefaultMetaSymbol = U'\u2581';

// Reserved unknown piece. Its score is (lowest trained score) - kUnkPenalty.
inline constexpr std::string_view kUnkSurface = "<unk>";
inline constexpr double kUnkPenalty = 10.0;

struct Piece {
  std::string surface;  // UTF-8
  double score = 0.0;   // natural-log probability

  bool operator==(const Piece&) const = default;
};

enum class PositionClass { kWordInitial, kWordFinal, kInternal };

std::string_view to_string(PositionClass position);

struct StrippedPiece {
  std::string bare;
  PositionClass position = PositionClass::kInternal;

  bool operator==(const StrippedPiece&) const = default;
};

// Removes the boundary mark from the scheme's edge of a piece surface. Init
// pieces are marked on the left, Fin pieces on the right.
StrippedPiece strip_mark(std::string_view surface, MarkingScheme scheme,
                         char32_t meta_symbol = kDefaultMetaSymbol);

// An immutable, validated set of scored pieces.
//
// Pieces are kept in canonical order: descending score, ties broken by
// surface (byte order, which equals code point order for UTF-8). The reserved
// unknown piece is stored separately and excluded from pieces().
//
// Fin vocabularies store surfaces in reading order with the mark on the
// right edge, e.g. "ing▁".
class Vocabulary {
 public:
  // Throws DataError when pieces is empty, a surface is empty or duplicated,
  // a surface equals kUnkSurface, or a score is positive or not finite.
  Vocabulary(std::vector<Piece> pieces, MarkingScheme scheme,
             char32_t meta_symbol = kDefaultMetaSymbol,
             std::optional<double> unk_score = std::nullopt);

  std::span<const Piece> pieces() const { return pieces_; }
  size_t size() const { return pieces_.size(); }
  MarkingScheme scheme() const { return scheme_; }
  char32_t meta_symbol() const { return meta_symbol_; }

  // Score of the reserved unknown piece, when the vocabulary carries one.
  std::optional<double> unk_score() const { return unk_score_; }
  // unk_score() if present, otherwise min score - kUnkPenalty.
  double effective_unk_score() const;

  const Piece* find(std::string_view surface) const;
  double min_score() const { return pieces_.back().score; }

  // Sum of exp(score) over non-reserved pieces.
  double probability_mass() const;

  bool operator==(const Vocabulary& other) const;

 private:
  std::vector<Piece> pieces_;
  MarkingScheme scheme_;
  char32_t meta_symbol_;
  std::optional<double> unk_score_;
  std::unordered_map<std::string, size_t> index_;
};

// Vocab file: "#scheme: init|fin", "#meta: <hex>", then "surface\tscore"
// lines in canonical order. The unknown piece, if any, is written last as
// "<unk>\tscore".
void save_vocab(const Vocabulary& vocab, std::ostream& out);
void save_vocab(const Vocabulary& vocab, const std::filesystem::path& path);

// Throws ParseError naming the line on malformed input.
Vocabulary load_vocab(std::istream& in);
Vocabulary load_vocab(const std::filesystem::path& path);

// Shortest decimal form that reads back to the same double.
std::string format_score(double score);

}  // namespace boundkit

#endif  // BOUNDKIT_VOCAB_H_
