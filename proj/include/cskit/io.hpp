// Copyright 2026 The cskit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CSKIT_IO_HPP
#define CSKIT_IO_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace cskit {

std::vector<std::string> read_lines(const std::filesystem::path& path);
std::string read_file(const std::filesystem::path& path);

// Writes to <path>.tmp and renames, so readers never observe partial files.
void atomic_write(const std::filesystem::path& path, std::string_view content);

// Whitespace tokens: maximal runs of non-whitespace bytes.
std::vector<std::string> split_tokens(std::string_view text);
std::size_t count_tokens(std::string_view text);
std::string_view strip(std::string_view text);
std::string join_tokens(const std::vector<std::string>& tokens);

}  // namespace cskit

#endif  // CSKIT_IO_HPP
