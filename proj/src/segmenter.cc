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

#include "boundkit/segmenter.h"

#include <algorithm>

#include "boundkit/error.h"
#include "boundkit/unicode.h"

namespace boundkit {

std::string mark_word(std::string_view word, MarkingScheme scheme,
                      char32_t meta_symbol) {
  std::string meta;
  unicode::append_utf8(meta_symbol, &meta);
  return scheme == MarkingScheme::kInit ? meta + std::string(word)
                                        : std::string(word) + meta;
}

std::u32string escape_meta(std::u32string_view word, char32_t meta_symbol) {
  std::u32string out(word);
  std::replace(out.begin(), out.end(), meta_symbol, kEscapedMeta);
  return out;
}

std::u32string unescape_meta(std::u32string_view word, char32_t meta_symbol) {
  std::u32string out(word);
  std::replace(out.begin(), out.end(), kEscapedMeta, meta_symbol);
  return out;
}

std::u32string to_lattice_space(std::u32string_view word, MarkingScheme scheme,
                                char32_t meta_symbol) {
  std::u32string out;
  out.reserve(word.size() + 1);
  out.push_back(meta_symbol);
  if (scheme == MarkingScheme::kInit) {
    out.append(word);
  } else {
    out.append(word.rbegin(), word.rend());
  }
  std::replace(out.begin() + 1, out.end(), meta_symbol, kEscapedMeta);
  return out;
}

PieceIndex::PieceIndex(std::span<const std::u32string> surfaces) {
  nodes_.emplace_back();
  for (size_t id = 0; id < surfaces.size(); ++id) {
    const std::u32string& s = surfaces[id];
    if (s.empty()) throw DataError("empty piece surface in index");
    int32_t node = 0;
    for (char32_t cp : s) {
      auto& children = nodes_[node].children;
      auto it = std::lower_bound(
          children.begin(), children.end(), cp,
          [](const auto& entry, char32_t value) { return entry.first < value; });
      if (it != children.end() && it->first == cp) {
        node = it->second;
        continue;
      }
      const auto next = static_cast<int32_t>(nodes_.size());
      children.insert(it, {cp, next});
      nodes_.emplace_back();
      node = next;
    }
    if (nodes_[node].piece >= 0) {
      throw DataError("duplicate piece surface in index");
    }
    nodes_[node].piece = static_cast<int32_t>(id);
    max_length_ = std::max(max_length_, s.size());
  }
}

int32_t PieceIndex::child(int32_t node, char32_t cp) const {
  const auto& children = nodes_[node].children;
  auto it = std::lower_bound(
      children.begin(), children.end(), cp,
      [](const auto& entry, char32_t value) { return entry.first < value; });
  return (it != children.end() && it->first == cp) ? it->second : -1;
}

int32_t PieceIndex::find(std::u32string_view surface) const {
  if (nodes_.empty() || surface.empty()) return -1;
  int32_t node = 0;
  for (char32_t cp : surface) {
    node = child(node, cp);
    if (node < 0) return -1;
  }
  return nodes_[node].piece;
}

Lattice::Lattice(std::u32string word, const PieceIndex& index,
                 std::span<const double> scores, double unk_score)
    : word_(std::move(word)), ending_at_(word_.size() + 1) {
  const auto n = static_cast<uint32_t>(word_.size());
  for (uint32_t begin = 0; begin < n; ++begin) {
    bool has_single = false;
    index.for_each_prefix(word_, begin, [&](int32_t id, size_t end) {
      edges_.push_back({begin, static_cast<uint32_t>(end), id, scores[id]});
      if (end == begin + 1) has_single = true;
    });
    if (!has_single) edges_.push_back({begin, begin + 1, kUnkPiece, unk_score});
  }
  for (uint32_t e = 0; e < edges_.size(); ++e) {
    ending_at_[edges_[e].end].push_back(e);
  }
}

Lattice build_lattice(std::string_view marked_word, const Vocabulary& vocab) {
  std::vector<std::u32string> surfaces;
  std::vector<double> scores;
  surfaces.reserve(vocab.size());
  scores.reserve(vocab.size());
  for (const Piece& p : vocab.pieces()) {
    surfaces.push_back(unicode::decode_utf8(p.surface));
    scores.push_back(p.score);
  }
  const PieceIndex index(surfaces);
  return Lattice(unicode::decode_utf8(marked_word), index, scores,
                 vocab.effective_unk_score());
}

namespace {

std::vector<uint32_t> backtrack(std::span<const LatticeEdge> edges,
                                std::span<const int64_t> back, size_t pos) {
  std::vector<uint32_t> path;
  while (pos > 0) {
    const auto e = static_cast<uint32_t>(back[pos]);
    path.push_back(e);
    pos = edges[e].begin;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

bool sequence_less(const Lattice& lattice, std::span<const uint32_t> a,
                   std::span<const uint32_t> b) {
  const auto edges = lattice.edges();
  return std::lexicographical_compare(
      a.begin(), a.end(), b.begin(), b.end(), [&](uint32_t x, uint32_t y) {
        return lattice.surface(edges[x]) < lattice.surface(edges[y]);
      });
}

}  // namespace

Segmentation viterbi(const Lattice& lattice, int32_t excluded_piece) {
  const size_t n = lattice.length();
  const auto edges = lattice.edges();
  std::vector<double> best(n + 1, 0.0);
  std::vector<uint32_t> count(n + 1, 0);
  std::vector<int64_t> back(n + 1, -1);
  std::vector<bool> reached(n + 1, false);
  reached[0] = true;

  for (size_t pos = 1; pos <= n; ++pos) {
    for (uint32_t e : lattice.edges_ending_at(pos)) {
      const LatticeEdge& edge = edges[e];
      if (edge.piece == excluded_piece || !reached[edge.begin]) continue;
      const double score = best[edge.begin] + edge.score;
      const uint32_t pieces = count[edge.begin] + 1;
      bool take = !reached[pos] || score > best[pos];
      if (!take && score == best[pos]) {
        if (pieces != count[pos]) {
          take = pieces < count[pos];
        } else {
          auto candidate = backtrack(edges, back, edge.begin);
          candidate.push_back(e);
          take = sequence_less(lattice, candidate, backtrack(edges, back, pos));
        }
      }
      if (take) {
        reached[pos] = true;
        best[pos] = score;
        count[pos] = pieces;
        back[pos] = e;
      }
    }
  }

  Segmentation result;
  if (n == 0 || !reached[n]) return result;
  result.edges = backtrack(edges, back, n);
  result.score = best[n];
  return result;
}

std::vector<std::u32string> segment_surfaces(const Lattice& lattice,
                                             const Segmentation& path) {
  std::vector<std::u32string> out;
  out.reserve(path.edges.size());
  for (uint32_t e : path.edges) {
    out.emplace_back(lattice.surface(lattice.edges()[e]));
  }
  return out;
}

Encoder::Encoder(const Vocabulary& vocab, size_t cache_capacity)
    : vocab_(vocab),
      unk_score_(vocab.effective_unk_score()),
      cache_capacity_(std::max<size_t>(cache_capacity, 1)) {
  std::vector<std::u32string> surfaces;
  surfaces.reserve(vocab.size());
  scores_.reserve(vocab.size());
  for (const Piece& p : vocab.pieces()) {
    auto s = unicode::decode_utf8(p.surface);
    if (vocab.scheme() == MarkingScheme::kFin) std::reverse(s.begin(), s.end());
    surfaces.push_back(std::move(s));
    scores_.push_back(p.score);
  }
  index_ = PieceIndex(surfaces);
}

std::vector<std::string> Encoder::segment(std::u32string_view word) const {
  const Lattice lattice(
      to_lattice_space(word, vocab_.scheme(), vocab_.meta_symbol()), index_,
      scores_, unk_score_);
  auto pieces = segment_surfaces(lattice, viterbi(lattice));
  if (vocab_.scheme() == MarkingScheme::kFin) {
    for (auto& p : pieces) std::reverse(p.begin(), p.end());
    std::reverse(pieces.begin(), pieces.end());
  }
  std::vector<std::string> out;
  out.reserve(pieces.size());
  for (const auto& p : pieces) out.push_back(unicode::encode_utf8(p));
  return out;
}

const std::vector<std::string>& Encoder::encode_word(std::string_view word) {
  std::string key(word);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  if (cache_.size() >= cache_capacity_) cache_.clear();
  auto pieces = segment(unicode::decode_utf8(word));
  return cache_.emplace(std::move(key), std::move(pieces)).first->second;
}

std::vector<std::string> Encoder::encode_line(std::string_view line,
                                              PretokMode mode) {
  std::vector<std::string> out;
  for (const auto& word : pretokenize(line, mode)) {
    const auto& pieces = encode_word(word);
    out.insert(out.end(), pieces.begin(), pieces.end());
  }
  return out;
}

std::vector<std::string> encode_line(std::string_view line,
                                     const Vocabulary& vocab, PretokMode mode) {
  Encoder encoder(vocab);
  return encoder.encode_line(line, mode);
}

std::string decode(std::span<const std::string> pieces, MarkingScheme scheme,
                   char32_t meta_symbol) {
  std::u32string text;
  bool word_ended = false;
  for (const std::string& piece : pieces) {
    std::u32string p = unicode::decode_utf8(piece);
    if (scheme == MarkingScheme::kInit) {
      if (!p.empty() && p.front() == meta_symbol) {
        if (!text.empty()) text.push_back(U' ');
        p.erase(p.begin());
      }
      text += unescape_meta(p, meta_symbol);
    } else {
      if (word_ended) {
        text.push_back(U' ');
        word_ended = false;
      }
      if (!p.empty() && p.back() == meta_symbol) {
        p.pop_back();
        word_ended = true;
      }
      text += unescape_meta(p, meta_symbol);
    }
  }
  return unicode::encode_utf8(text);
}

}  // namespace boundkit
