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

#ifndef BOUNDKIT_SEGMENTER_H_
#define BOUNDKIT_SEGMENTER_H_

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "boundkit/pretokenizer.h"
#include "boundkit/vocab.h"

namespace boundkit {

// Literal meta symbols in input text are replaced by this noncharacter before
// marking and restored on decode.
inline constexpr char32_t kEscapedMeta = U'\uFDD0';

// Prepends (Init) or appends (Fin) the meta symbol. No escaping.
std::string mark_word(std::string_view word, MarkingScheme scheme,
                      char32_t meta_symbol = kDefaultMetaSymbol);

std::u32string escape_meta(std::u32string_view word, char32_t meta_symbol);
std::u32string unescape_meta(std::u32string_view word, char32_t meta_symbol);

// Maps a bare word into the space where lattices are built: escaped,
// code-point reversed for Fin, then marked on the left. Both schemes are
// decoded as Init over this space; Fin pieces are reversed back afterwards.
std::u32string to_lattice_space(std::u32string_view word, MarkingScheme scheme,
                                char32_t meta_symbol);

// Prefix trie over piece surfaces.
class PieceIndex {
 public:
  PieceIndex() = default;
  // Piece ids are positions in surfaces. Surfaces must be non-empty and
  // unique.
  explicit PieceIndex(std::span<const std::u32string> surfaces);

  // Calls fn(piece_id, end) for every piece equal to text[begin, end), in
  // increasing end order.
  template <typename Fn>
  void for_each_prefix(std::u32string_view text, size_t begin, Fn&& fn) const {
    int32_t node = 0;
    for (size_t i = begin; i < text.size() && !nodes_.empty(); ++i) {
      node = child(node, text[i]);
      if (node < 0) return;
      if (nodes_[node].piece >= 0) fn(nodes_[node].piece, i + 1);
    }
  }

  // Piece id or -1.
  int32_t find(std::u32string_view surface) const;
  size_t max_piece_length() const { return max_length_; }

 private:
  struct Node {
    std::vector<std::pair<char32_t, int32_t>> children;  // sorted
    int32_t piece = -1;
  };

  int32_t child(int32_t node, char32_t cp) const;

  std::vector<Node> nodes_;
  size_t max_length_ = 0;
};

inline constexpr int32_t kUnkPiece = -1;
inline constexpr int32_t kNoExclusion = -2;

struct LatticeEdge {
  uint32_t begin = 0;
  uint32_t end = 0;
  int32_t piece = kUnkPiece;
  double score = 0.0;
};

// All vocabulary matches over the code points of one marked word. A single
// code point with no matching piece gets an unknown edge so that a full path
// always exists.
class Lattice {
 public:
  Lattice(std::u32string word, const PieceIndex& index,
          std::span<const double> scores, double unk_score);

  const std::u32string& word() const { return word_; }
  size_t length() const { return word_.size(); }
  std::span<const LatticeEdge> edges() const { return edges_; }
  // Indexes into edges().
  std::span<const uint32_t> edges_ending_at(size_t pos) const {
    return ending_at_[pos];
  }
  std::u32string_view surface(const LatticeEdge& edge) const {
    return std::u32string_view(word_).substr(edge.begin, edge.end - edge.begin);
  }

 private:
  std::u32string word_;
  std::vector<LatticeEdge> edges_;
  std::vector<std::vector<uint32_t>> ending_at_;
};

// Lattice of a marked word against a vocabulary as stored. Piece ids index
// vocab.pieces().
Lattice build_lattice(std::string_view marked_word, const Vocabulary& vocab);

struct Segmentation {
  std::vector<uint32_t> edges;  // indexes into Lattice::edges(), in order
  double score = -std::numeric_limits<double>::infinity();

  bool found() const { return !edges.empty(); }
};

// Highest-scoring path. Ties on the exact score prefer fewer pieces, then
// the lexicographically smallest piece sequence. Edges of excluded_piece are
// skipped; if that disconnects the lattice the result is empty.
Segmentation viterbi(const Lattice& lattice,
                     int32_t excluded_piece = kNoExclusion);

std::vector<std::u32string> segment_surfaces(const Lattice& lattice,
                                             const Segmentation& path);

// Encodes text with a fixed vocabulary. Holds a bounded per-word cache, so
// an Encoder is not safe for concurrent use; give each worker its own.
class Encoder {
 public:
  explicit Encoder(const Vocabulary& vocab, size_t cache_capacity = 1 << 16);

  // Pieces of one bare word (no whitespace), in reading order.
  const std::vector<std::string>& encode_word(std::string_view word);
  std::vector<std::string> encode_line(std::string_view line, PretokMode mode);

  const Vocabulary& vocab() const { return vocab_; }

 private:
  std::vector<std::string> segment(std::u32string_view word) const;

  Vocabulary vocab_;
  PieceIndex index_;
  std::vector<double> scores_;
  double unk_score_;
  size_t cache_capacity_;
  std::unordered_map<std::string, std::vector<std::string>> cache_;
};

std::vector<std::string> encode_line(std::string_view line,
                                     const Vocabulary& vocab, PretokMode mode);

// Joins pieces back into words separated by single spaces.
std::string decode(std::span<const std::string> pieces, MarkingScheme scheme,
                   char32_t meta_symbol = kDefaultMetaSymbol);

}  // namespace boundkit

#endif  // BOUNDKIT_SEGMENTER_H_
