/*
 * Copyright 2026 The Catalyst Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "catalyst/cli/mnist_fetch.h"

#include <curl/curl.h>
#include <openssl/evp.h>
#include <zlib.h>

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "catalyst/common/errors.h"
#include "catalyst/common/log.h"
#include "catalyst/numeric/idx.h"

namespace catalyst {
namespace {

size_t AppendBody(char* data, size_t size, size_t count, void* user) {
  auto* out = static_cast<std::vector<uint8_t>*>(user);
  out->insert(out->end(), data, data + size * count);
  return size * count;
}

absl::StatusOr<std::vector<uint8_t>> HttpGet(const std::string& url,
                                             long timeout_seconds) {
  static const CURLcode init = curl_global_init(CURL_GLOBAL_DEFAULT);
  if (init != CURLE_OK) return absl::UnavailableError("libcurl init failed");
  CURL* curl = curl_easy_init();
  if (curl == nullptr) return absl::UnavailableError("libcurl handle failed");
  std::vector<uint8_t> body;
  curl_easy_setopt(curl, CURLOPT_URL, url.c_str());
  curl_easy_setopt(curl, CURLOPT_FOLLOWLOCATION, 1L);
  curl_easy_setopt(curl, CURLOPT_FAILONERROR, 1L);
  curl_easy_setopt(curl, CURLOPT_TIMEOUT, timeout_seconds);
  curl_easy_setopt(curl, CURLOPT_CONNECTTIMEOUT, 20L);
  curl_easy_setopt(curl, CURLOPT_WRITEFUNCTION, AppendBody);
  curl_easy_setopt(curl, CURLOPT_WRITEDATA, &body);
  const CURLcode rc = curl_easy_perform(curl);
  curl_easy_cleanup(curl);
  if (rc != CURLE_OK) {
    return absl::UnavailableError(
        absl::StrCat("GET ", url, ": ", curl_easy_strerror(rc)));
  }
  return body;
}

absl::Status WriteAtomically(const std::string& path,
                             std::span<const uint8_t> bytes) {
  const std::string tmp = path + ".part";
  {
    std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
    if (!file) return UsageError(absl::StrCat("cannot write ", tmp));
    file.write(reinterpret_cast<const char*>(bytes.data()),
               static_cast<std::streamsize>(bytes.size()));
    if (!file) return UsageError(absl::StrCat("failed writing ", tmp));
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) return UsageError(absl::StrCat("cannot rename ", tmp, ": ", ec.message()));
  return absl::OkStatus();
}

absl::Status VerifyBytes(const std::string& label, std::span<const uint8_t> bytes,
                         const MnistFile& spec) {
  if (bytes.size() != spec.size) {
    return absl::DataLossError(absl::StrFormat(
        "%s: size %d, expected %d", label, bytes.size(), spec.size));
  }
  const uint32_t magic = (uint32_t{bytes[0]} << 24) | (uint32_t{bytes[1]} << 16) |
                         (uint32_t{bytes[2]} << 8) | uint32_t{bytes[3]};
  if (magic != spec.magic) {
    return absl::DataLossError(absl::StrFormat(
        "%s: bad magic 0x%08x at byte offset 0, expected 0x%08x", label, magic,
        spec.magic));
  }
  const std::string digest = Sha256Hex(bytes);
  if (digest != spec.sha256) {
    return absl::DataLossError(absl::StrFormat(
        "%s: SHA-256 %s does not match expected %s", label, digest,
        spec.sha256));
  }
  return absl::OkStatus();
}

}  // namespace

const std::vector<MnistFile>& MnistFiles() {
  static const std::vector<MnistFile> files = {
      {"train-images-idx3-ubyte", 47040016, kIdxImagesMagic,
       "ba891046e6505d7aadcbbe25680a0738ad16aec93bde7f9b65e87a2fc25776db"},
      {"train-labels-idx1-ubyte", 60008, kIdxLabelsMagic,
       "65a50cbbf4e906d70832878ad85ccda5333a97f0f4c3dd2ef09a8a9eef7101c5"},
      {"t10k-images-idx3-ubyte", 7840016, kIdxImagesMagic,
       "0fa7898d509279e482958e8ce81c8e77db3f2f8254e26661ceb7762c4d494ce7"},
      {"t10k-labels-idx1-ubyte", 10008, kIdxLabelsMagic,
       "ff7bcfd416de33731a308c3f266cc351222c34898ecbeaf847f06e48f7ec33f2"},
  };
  return files;
}

std::string Sha256Hex(std::span<const uint8_t> bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr);
  std::string hex;
  for (unsigned int i = 0; i < length; ++i) absl::StrAppendFormat(&hex, "%02x", digest[i]);
  return hex;
}

absl::StatusOr<std::vector<uint8_t>> Gunzip(std::span<const uint8_t> bytes) {
  z_stream stream{};
  if (inflateInit2(&stream, 16 + MAX_WBITS) != Z_OK) {
    return absl::InternalError("zlib init failed");
  }
  stream.next_in = const_cast<Bytef*>(bytes.data());
  stream.avail_in = static_cast<uInt>(bytes.size());
  std::vector<uint8_t> out;
  uint8_t chunk[1 << 16];
  int rc = Z_OK;
  while (rc != Z_STREAM_END) {
    stream.next_out = chunk;
    stream.avail_out = sizeof(chunk);
    rc = inflate(&stream, Z_NO_FLUSH);
    if (rc != Z_OK && rc != Z_STREAM_END) {
      inflateEnd(&stream);
      return ParseError(absl::StrFormat("gzip stream corrupt at input byte %d",
                                        stream.total_in));
    }
    out.insert(out.end(), chunk, chunk + (sizeof(chunk) - stream.avail_out));
    if (rc == Z_OK && stream.avail_in == 0 && stream.avail_out != 0) {
      inflateEnd(&stream);
      return ParseError("gzip stream truncated");
    }
  }
  inflateEnd(&stream);
  return out;
}

absl::StatusOr<std::vector<uint8_t>> ExtractTarEntry(
    std::span<const uint8_t> tar, const std::string& name) {
  size_t offset = 0;
  while (offset + 512 <= tar.size()) {
    const uint8_t* header = tar.data() + offset;
    if (header[0] == 0) break;  // end-of-archive block
    std::string entry(reinterpret_cast<const char*>(header),
                      strnlen(reinterpret_cast<const char*>(header), 100));
    const std::string prefix(reinterpret_cast<const char*>(header + 345),
                             strnlen(reinterpret_cast<const char*>(header + 345), 155));
    if (!prefix.empty()) entry = prefix + "/" + entry;
    const std::string size_field(reinterpret_cast<const char*>(header + 124), 12);
    const size_t size = std::strtoull(size_field.c_str(), nullptr, 8);
    const char type = static_cast<char>(header[156]);
    const size_t data = offset + 512;
    if (data + size > tar.size()) {
      return ParseError(absl::StrFormat("tar entry %s truncated at byte offset %d",
                                        entry, offset));
    }
    if (entry == name && (type == '0' || type == '\0')) {
      return std::vector<uint8_t>(tar.begin() + data, tar.begin() + data + size);
    }
    offset = data + (size + 511) / 512 * 512;
  }
  return absl::NotFoundError(absl::StrCat("tar archive has no entry ", name));
}

bool OfflineFromEnvironment() {
  const char* value = std::getenv(kOfflineEnvVar);
  return value != nullptr && value[0] != '\0' && std::string(value) != "0";
}

absl::Status VerifyMnistFile(const std::string& path, const MnistFile& spec) {
  CATALYST_ASSIGN_OR_RETURN(std::vector<uint8_t> bytes, ReadFileBytes(path));
  return VerifyBytes(path, bytes, spec);
}

absl::StatusOr<FetchReport> FetchMnist(const std::string& out_dir,
                                       const FetchOptions& options) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) return UsageError(absl::StrCat("cannot create ", out_dir, ": ", ec.message()));

  FetchReport report;
  std::vector<const MnistFile*> missing;
  for (const MnistFile& spec : MnistFiles()) {
    const std::string path = out_dir + "/" + spec.name;
    if (std::filesystem::exists(path)) {
      CATALYST_RETURN_IF_ERROR(VerifyMnistFile(path, spec));
      report.present.push_back(spec.name);
    } else {
      missing.push_back(&spec);
    }
  }
  if (missing.empty()) return report;
  if (options.offline) {
    std::vector<std::string> names;
    for (const MnistFile* spec : missing) names.push_back(spec->name);
    return absl::UnavailableError(absl::StrCat(
        "offline mode (", kOfflineEnvVar, "): missing ",
        absl::StrJoin(names, ", "), " in ", out_dir,
        "; place the files there or unset ", kOfflineEnvVar));
  }

  std::vector<std::string> failures;
  std::optional<std::vector<uint8_t>> tarball;
  for (const MnistFile* spec : missing) {
    std::optional<std::vector<uint8_t>> content;
    for (const std::string& mirror : options.gz_mirrors) {
      auto gz = HttpGet(mirror + spec->name + ".gz", options.timeout_seconds);
      if (!gz.ok()) {
        failures.push_back(std::string(gz.status().message()));
        continue;
      }
      auto raw = Gunzip(*gz);
      if (raw.ok() && VerifyBytes(spec->name, *raw, *spec).ok()) {
        content = std::move(*raw);
        break;
      }
      failures.push_back(absl::StrCat(mirror, spec->name, ".gz: invalid content"));
    }
    if (!content && !options.tarball_url.empty()) {
      if (!tarball) {
        auto tgz = HttpGet(options.tarball_url, options.timeout_seconds);
        if (tgz.ok()) {
          auto tar = Gunzip(*tgz);
          if (tar.ok()) tarball = std::move(*tar);
        } else {
          failures.push_back(std::string(tgz.status().message()));
        }
      }
      if (tarball) {
        auto raw = ExtractTarEntry(*tarball, "package/data/" + spec->name);
        if (raw.ok() && VerifyBytes(spec->name, *raw, *spec).ok()) {
          content = std::move(*raw);
        } else {
          failures.push_back(absl::StrCat(options.tarball_url, ": no valid ", spec->name));
        }
      }
    }
    if (!content) {
      return absl::UnavailableError(absl::StrCat(
          "could not download ", spec->name, " (", absl::StrJoin(failures, "; "),
          "); check network access and retry, or place the files in ", out_dir,
          " and set ", kOfflineEnvVar, "=1"));
    }
    CATALYST_RETURN_IF_ERROR(WriteAtomically(out_dir + "/" + spec->name, *content));
    Log(LogLevel::kInfo, absl::StrCat("fetched ", spec->name));
    report.downloaded.push_back(spec->name);
  }
  return report;
}

}  // namespace catalyst
