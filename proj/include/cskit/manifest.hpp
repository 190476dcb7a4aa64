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

#ifndef CSKIT_MANIFEST_HPP
#define CSKIT_MANIFEST_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace cskit {

struct FileDigest {
  std::string path;
  std::string sha256;
};

// Reproduction record written next to every generated output set: the exact
// command, its seed, and input/output digests. Re-running `command` must
// reproduce the outputs byte-identically.
struct RunManifest {
  std::string tool;
  std::string version;
  std::vector<std::string> command;
  std::optional<std::uint64_t> seed;
  std::string created;  // UTC ISO-8601
  std::vector<FileDigest> inputs;
  std::vector<FileDigest> outputs;
};

RunManifest make_manifest(const std::vector<std::string>& command,
                          std::optional<std::uint64_t> seed,
                          const std::vector<std::filesystem::path>& inputs,
                          const std::vector<std::filesystem::path>& outputs);

void write_manifest(const std::filesystem::path& path,
                    const RunManifest& manifest);
RunManifest read_manifest(const std::filesystem::path& path);

}  // namespace cskit

#endif  // CSKIT_MANIFEST_HPP
