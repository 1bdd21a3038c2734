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

#ifndef BOUNDKIT_IO_H_
#define BOUNDKIT_IO_H_

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace boundkit {

// Lines without their LF (and a trailing CR, if any). Throws DataError.
std::vector<std::string> read_lines(const std::filesystem::path& path);

void write_text(const std::filesystem::path& path, const std::string& text);

// Token files hold one encoded sentence per line, pieces separated by single
// spaces.
std::vector<std::vector<std::string>> read_token_file(
    const std::filesystem::path& path);
void write_token_file(const std::filesystem::path& path,
                      std::span<const std::vector<std::string>> lines);

std::vector<std::string> split_tokens(const std::string& line);

}  // namespace boundkit

#endif  // BOUNDKIT_IO_H_
