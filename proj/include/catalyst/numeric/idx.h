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

// Reader for the IDX binary format used by the MNIST distribution.
//
// All integers are big-endian uint32.
//   images: magic 0x00000803, count, rows, cols, count*rows*cols bytes
//   labels: magic 0x00000801, count, count bytes
// Parse failures are reported as DataLoss statuses whose message names the
// byte offset of the offending field.

#ifndef CATALYST_NUMERIC_IDX_H_
#define CATALYST_NUMERIC_IDX_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "catalyst/numeric/dataset.h"

namespace catalyst {

inline constexpr uint32_t kIdxImagesMagic = 0x00000803;
inline constexpr uint32_t kIdxLabelsMagic = 0x00000801;

struct IdxImages {
  uint32_t count = 0;
  uint32_t rows = 0;
  uint32_t cols = 0;
  std::vector<uint8_t> pixels;  // count * rows * cols
};

absl::StatusOr<IdxImages> ParseIdxImages(std::span<const uint8_t> bytes);
absl::StatusOr<std::vector<uint8_t>> ParseIdxLabels(
    std::span<const uint8_t> bytes);

absl::StatusOr<std::vector<uint8_t>> ReadFileBytes(const std::string& path);

// Loads an image/label file pair; pixels scaled to [0, 1]. Labels must be
// below `num_classes`.
absl::StatusOr<Dataset> LoadIdx(const std::string& images_path,
                                const std::string& labels_path,
                                int num_classes = 10);

}  // namespace catalyst

#endif  // CATALYST_NUMERIC_IDX_H_
