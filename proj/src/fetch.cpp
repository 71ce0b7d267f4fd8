// Copyright 2026 The Novelscope Authors.
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

#include <fstream>

#include <fmt/format.h>
#include <httplib.h>
#include <spdlog/spdlog.h>

#include "novelscope/error.hpp"
#include "novelscope/ingest.hpp"

namespace novelscope {
namespace {

namespace fs = std::filesystem;

struct MirrorUrl {
  std::string origin;  // scheme://host[:port]
  std::string prefix;  // path below the origin, without trailing '/'
};

MirrorUrl split_mirror(std::string_view base) {
  auto scheme = base.find("://");
  if (scheme == std::string_view::npos) {
    throw Error(ErrorCode::kInvalidArgument, fmt::format("mirror URL '{}' has no scheme", base));
  }
  auto slash = base.find('/', scheme + 3);
  MirrorUrl url;
  url.origin = std::string(base.substr(0, slash));
  if (slash != std::string_view::npos) url.prefix = std::string(base.substr(slash));
  while (!url.prefix.empty() && url.prefix.back() == '/') url.prefix.pop_back();
  return url;
}

}  // namespace

fs::path fetch_gutenberg(int id, std::string_view mirror_base, const fs::path& dest) {
  if (id <= 0) throw Error(ErrorCode::kInvalidArgument, fmt::format("bad ebook id {}", id));
  const fs::path target = dest / fmt::format("pg{}.txt", id);
  std::error_code ec;
  if (fs::is_regular_file(target, ec) && fs::file_size(target, ec) > 0) {
    spdlog::info("pg{}: already present, skipping download", id);
    return target;
  }

  const MirrorUrl url = split_mirror(mirror_base);
  const std::string path = fmt::format("{}/cache/epub/{}/pg{}.txt", url.prefix, id, id);
  httplib::Client client(url.origin);
  client.set_follow_location(true);
  client.set_connection_timeout(10);
  client.set_read_timeout(60);
  auto response = client.Get(path);
  if (!response) {
    throw Error(ErrorCode::kHttp, fmt::format("GET {}{} failed: {}", url.origin, path,
                                              httplib::to_string(response.error())));
  }
  if (response->status == 404) {
    throw Error(ErrorCode::kNotFound, fmt::format("ebook {} not found at {}", id, url.origin));
  }
  if (response->status != 200) {
    throw Error(ErrorCode::kHttp,
                fmt::format("GET {}{} returned HTTP {}", url.origin, path, response->status));
  }

  fs::create_directories(dest);
  const fs::path partial = fs::path(target).concat(".part");
  {
    std::ofstream out(partial, std::ios::binary | std::ios::trunc);
    out.write(response->body.data(), static_cast<std::streamsize>(response->body.size()));
    if (!out) throw Error(ErrorCode::kIo, fmt::format("cannot write {}", partial.string()));
  }
  fs::rename(partial, target);
  return target;
}

}  // namespace novelscope
