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

#include "boundkit/vocab.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "boundkit/error.h"
#include "boundkit/unicode.h"

namespace boundkit {

std::string_view to_string(MarkingScheme scheme) {
  return scheme == MarkingScheme::kInit ? "init" : "fin";
}

MarkingScheme parse_marking_scheme(std::string_view text) {
  if (text == "init") return MarkingScheme::kInit;
  if (text == "fin") return MarkingScheme::kFin;
  throw UsageError("unknown marking scheme '" + std::string(text) +
                   "' (expected init or fin)");
}

std::string_view to_string(PositionClass position) {
  switch (position) {
    case PositionClass::kWordInitial:
      return "initial";
    case PositionClass::kWordFinal:
      return "final";
    case PositionClass::kInternal:
      break;
  }
  return "internal";
}

StrippedPiece strip_mark(std::string_view surface, MarkingScheme scheme,
                         char32_t meta_symbol) {
  std::string meta;
  unicode::append_utf8(meta_symbol, &meta);
  if (scheme == MarkingScheme::kInit && surface.starts_with(meta)) {
    return {std::string(surface.substr(meta.size())),
            PositionClass::kWordInitial};
  }
  if (scheme == MarkingScheme::kFin && surface.ends_with(meta)) {
    return {std::string(surface.substr(0, surface.size() - meta.size())),
            PositionClass::kWordFinal};
  }
  return {std::string(surface), PositionClass::kInternal};
}

Vocabulary::Vocabulary(std::vector<Piece> pieces, MarkingScheme scheme,
                       char32_t meta_symbol, std::optional<double> unk_score)
    : pieces_(std::move(pieces)),
      scheme_(scheme),
      meta_symbol_(meta_symbol),
      unk_score_(unk_score) {
  if (pieces_.empty()) throw DataError("empty vocabulary");
  if (unk_score_ && !std::isfinite(*unk_score_)) {
    throw DataError("unknown piece score is not finite");
  }
  std::sort(pieces_.begin(), pieces_.end(),
            [](const Piece& a, const Piece& b) {
              if (a.score != b.score) return a.score > b.score;
              return a.surface < b.surface;
            });
  index_.reserve(pieces_.size());
  for (size_t i = 0; i < pieces_.size(); ++i) {
    const Piece& p = pieces_[i];
    if (p.surface.empty()) throw DataError("empty piece surface");
    if (p.surface == kUnkSurface) {
      throw DataError("reserved surface <unk> used as a regular piece");
    }
    if (!std::isfinite(p.score) || p.score > 0.0) {
      throw DataError("piece '" + p.surface + "' has invalid score " +
                      format_score(p.score));
    }
    if (!index_.emplace(p.surface, i).second) {
      throw DataError("duplicate piece '" + p.surface + "'");
    }
  }
}

double Vocabulary::effective_unk_score() const {
  return unk_score_ ? *unk_score_ : min_score() - kUnkPenalty;
}

const Piece* Vocabulary::find(std::string_view surface) const {
  const auto it = index_.find(std::string(surface));
  return it == index_.end() ? nullptr : &pieces_[it->second];
}

double Vocabulary::probability_mass() const {
  double sum = 0.0;
  for (const Piece& p : pieces_) sum += std::exp(p.score);
  return sum;
}

bool Vocabulary::operator==(const Vocabulary& other) const {
  return scheme_ == other.scheme_ && meta_symbol_ == other.meta_symbol_ &&
         unk_score_ == other.unk_score_ && pieces_ == other.pieces_;
}

std::string format_score(double score) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), score);
  return std::string(buf, result.ptr);
}

void save_vocab(const Vocabulary& vocab, std::ostream& out) {
  out << "#scheme: " << to_string(vocab.scheme()) << '\n';
  out << "#meta: " << unicode::to_hex(vocab.meta_symbol()) << '\n';
  for (const Piece& p : vocab.pieces()) {
    out << p.surface << '\t' << format_score(p.score) << '\n';
  }
  if (vocab.unk_score()) {
    out << kUnkSurface << '\t' << format_score(*vocab.unk_score()) << '\n';
  }
  if (!out) throw DataError("failed to write vocabulary");
}

void save_vocab(const Vocabulary& vocab, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
  save_vocab(vocab, out);
  out.close();
  if (!out) throw DataError("failed to write '" + path.string() + "'");
}

namespace {

double parse_score(std::string_view text, size_t line_no) {
  double value = 0.0;
  // from_chars rejects a leading '+', which is what we want for scores.
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError(line_no, "malformed score '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

Vocabulary load_vocab(std::istream& in) {
  std::optional<MarkingScheme> scheme;
  std::optional<char32_t> meta;
  std::optional<double> unk;
  std::vector<Piece> pieces;
  std::unordered_map<std::string, size_t> seen;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      std::string_view header(line);
      if (header.starts_with("#scheme: ")) {
        try {
          scheme = parse_marking_scheme(header.substr(9));
        } catch (const Error& e) {
          throw ParseError(line_no, e.what());
        }
      } else if (header.starts_with("#meta: ")) {
        try {
          meta = unicode::from_hex(header.substr(7));
        } catch (const Error& e) {
          throw ParseError(line_no, e.what());
        }
      }
      continue;
    }
    if (!scheme || !meta) {
      throw ParseError(line_no, "missing #scheme or #meta header");
    }
    const size_t tab = line.find('\t');
    if (tab == std::string::npos) throw ParseError(line_no, "missing TAB");
    std::string surface = line.substr(0, tab);
    const double score =
        parse_score(std::string_view(line).substr(tab + 1), line_no);
    if (surface.empty()) throw ParseError(line_no, "empty piece surface");
    try {
      unicode::codepoint_length(surface);
    } catch (const Error& e) {
      throw ParseError(line_no, e.what());
    }
    if (surface == kUnkSurface) {
      if (unk) throw ParseError(line_no, "duplicate <unk>");
      unk = score;
      continue;
    }
    if (!std::isfinite(score) || score > 0.0) {
      throw ParseError(line_no, "score must be a finite log-probability <= 0");
    }
    if (!seen.emplace(surface, line_no).second) {
      throw ParseError(line_no, "duplicate piece '" + surface + "'");
    }
    pieces.push_back({std::move(surface), score});
  }
  if (!scheme || !meta) {
    throw ParseError(line_no, "missing #scheme or #meta header");
  }
  if (pieces.empty()) throw ParseError(line_no, "empty vocabulary");
  return Vocabulary(std::move(pieces), *scheme, *meta, unk);
}

Vocabulary load_vocab(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  return load_vocab(in);
}

}  // namespace boundkit
