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

#include "boundkit/io.h"

#include <fstream>

#include "boundkit/error.h"

namespace boundkit {

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  if (in.bad()) throw DataError("failed to read '" + path.string() + "'");
  return lines;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
  out << text;
  out.close();
  if (!out) throw DataError("failed to write '" + path.string() + "'");
}

std::vector<std::string> split_tokens(const std::string& line) {
  std::vector<std::string> tokens;
  size_t start = 0;
  while (start < line.size()) {
    size_t end = line.find(' ', start);
    if (end == std::string::npos) end = line.size();
    if (end > start) tokens.push_back(line.substr(start, end - start));
    start = end + 1;
  }
  return tokens;
}

std::vector<std::vector<std::string>> read_token_file(
    const std::filesystem::path& path) {
  std::vector<std::vector<std::string>> out;
  for (const std::string& line : read_lines(path)) {
    out.push_back(split_tokens(line));
  }
  return out;
}

void write_token_file(const std::filesystem::path& path,
                      std::span<const std::vector<std::string>> lines) {
  std::string text;
  for (const auto& line : lines) {
    for (size_t i = 0; i < line.size(); ++i) {
      if (i > 0) text.push_back(' ');
      text += line[i];
    }
    text.push_back('\n');
  }
  write_text(path, text);
}

}  // namespace boundkit
