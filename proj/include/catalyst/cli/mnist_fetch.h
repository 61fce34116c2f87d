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

#ifndef CATALYST_CLI_MNIST_FETCH_H_
#define CATALYST_CLI_MNIST_FETCH_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace catalyst {

// Setting this environment variable to a non-empty value other than "0"
// forbids network access; files must already be in place.
inline constexpr char kOfflineEnvVar[] = "CATALYST_OFFLINE";

struct MnistFile {
  std::string name;  // e.g. "train-images-idx3-ubyte"
  size_t size;
  uint32_t magic;
  std::string sha256;  // lowercase hex
};

// The four files of the standard distribution.
const std::vector<MnistFile>& MnistFiles();

// Size, magic number and SHA-256 check of one file on disk. The error names
// the file.
absl::Status VerifyMnistFile(const std::string& path, const MnistFile& spec);

struct FetchOptions {
  bool offline = false;
  // Base URLs serving "<name>.gz".
  std::vector<std::string> gz_mirrors = {
      "https://storage.googleapis.com/cvdf-datasets/mnist/",
      "https://ossci-datasets.s3.amazonaws.com/mnist/",
  };
  // npm package tarball holding package/data/<name>.
  std::string tarball_url =
      "https://registry.npmjs.org/mnist-data/-/mnist-data-1.2.6.tgz";
  long timeout_seconds = 120;
};

// True when kOfflineEnvVar requests offline mode.
bool OfflineFromEnvironment();

struct FetchReport {
  std::vector<std::string> present;     // already valid, left untouched
  std::vector<std::string> downloaded;  // fetched and verified
};

// Ensures the four verified files exist in `out_dir`. A present but invalid
// file is an error (it is never silently replaced).
absl::StatusOr<FetchReport> FetchMnist(const std::string& out_dir,
                                       const FetchOptions& options);

// Exposed for tests.
std::string Sha256Hex(std::span<const uint8_t> bytes);
absl::StatusOr<std::vector<uint8_t>> Gunzip(std::span<const uint8_t> bytes);
// Contents of the regular file `name` in a ustar archive.
absl::StatusOr<std::vector<uint8_t>> ExtractTarEntry(
    std::span<const uint8_t> tar, const std::string& name);

}  // namespace catalyst

#endif  // CATALYST_CLI_MNIST_FETCH_H_
