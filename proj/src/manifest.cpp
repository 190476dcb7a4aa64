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

#include "cskit/manifest.hpp"

#include <ctime>

#include <json.hpp>

#include "cskit/digest.hpp"
#include "cskit/error.hpp"
#include "cskit/io.hpp"
#include "cskit/version.hpp"

namespace cskit {

namespace {

using njson = nlohmann::ordered_json;

std::string utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::vector<FileDigest> digest_all(
    const std::vector<std::filesystem::path>& paths) {
  std::vector<FileDigest> digests;
  digests.reserve(paths.size());
  for (const auto& path : paths) {
    digests.push_back({path.string(), sha256_file(path)});
  }
  return digests;
}

}  // namespace

RunManifest make_manifest(const std::vector<std::string>& command,
                          std::optional<std::uint64_t> seed,
                          const std::vector<std::filesystem::path>& inputs,
                          const std::vector<std::filesystem::path>& outputs) {
  RunManifest m;
  m.tool = kToolName;
  m.version = kVersion;
  m.command = command;
  m.seed = seed;
  m.created = utc_now();
  m.inputs = digest_all(inputs);
  m.outputs = digest_all(outputs);
  return m;
}

void write_manifest(const std::filesystem::path& path,
                    const RunManifest& manifest) {
  njson j;
  j["tool"] = manifest.tool;
  j["version"] = manifest.version;
  j["command"] = manifest.command;
  if (manifest.seed) {
    j["seed"] = *manifest.seed;
  }
  j["created"] = manifest.created;
  auto files = [](const std::vector<FileDigest>& digests) {
    njson arr = njson::array();
    for (const auto& d : digests) {
      arr.push_back(njson{{"path", d.path}, {"sha256", d.sha256}});
    }
    return arr;
  };
  j["inputs"] = files(manifest.inputs);
  j["outputs"] = files(manifest.outputs);
  atomic_write(path, j.dump(2) + "\n");
}

RunManifest read_manifest(const std::filesystem::path& path) {
  njson j;
  try {
    j = njson::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("bad manifest " + path.string() + ": " + e.what());
  }
  RunManifest m;
  try {
    m.tool = j.at("tool").get<std::string>();
    m.version = j.at("version").get<std::string>();
    m.command = j.at("command").get<std::vector<std::string>>();
    if (j.contains("seed")) m.seed = j["seed"].get<std::uint64_t>();
    m.created = j.at("created").get<std::string>();
    for (const char* key : {"inputs", "outputs"}) {
      auto& list = std::string_view(key) == "inputs" ? m.inputs : m.outputs;
      for (const auto& f : j.at(key)) {
        list.push_back({f.at("path").get<std::string>(),
                        f.at("sha256").get<std::string>()});
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("bad manifest " + path.string() + ": " + e.what());
  }
  return m;
}

}  // namespace cskit
