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

#include "catalyst/numeric/idx.h"

#include <fstream>
#include <iterator>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "catalyst/common/errors.h"

namespace catalyst {
namespace {

absl::StatusOr<uint32_t> ReadU32(std::span<const uint8_t> bytes, size_t offset,
                                 const char* field) {
  if (bytes.size() < offset + 4) {
    return ParseError(absl::StrFormat(
        "truncated header: %s missing at byte offset %d (file has %d bytes)",
        field, offset, bytes.size()));
  }
  return (uint32_t{bytes[offset]} << 24) | (uint32_t{bytes[offset + 1]} << 16) |
         (uint32_t{bytes[offset + 2]} << 8) | uint32_t{bytes[offset + 3]};
}

absl::Status CheckMagic(uint32_t got, uint32_t want) {
  if (got == want) return absl::OkStatus();
  return ParseError(absl::StrFormat(
      "bad magic at byte offset 0: got 0x%08x, expected 0x%08x", got, want));
}

}  // namespace

absl::StatusOr<IdxImages> ParseIdxImages(std::span<const uint8_t> bytes) {
  CATALYST_ASSIGN_OR_RETURN(uint32_t magic, ReadU32(bytes, 0, "magic"));
  CATALYST_RETURN_IF_ERROR(CheckMagic(magic, kIdxImagesMagic));
  IdxImages out;
  CATALYST_ASSIGN_OR_RETURN(out.count, ReadU32(bytes, 4, "image count"));
  CATALYST_ASSIGN_OR_RETURN(out.rows, ReadU32(bytes, 8, "row count"));
  CATALYST_ASSIGN_OR_RETURN(out.cols, ReadU32(bytes, 12, "column count"));
  const uint64_t payload = uint64_t{out.count} * out.rows * out.cols;
  if (bytes.size() - 16 < payload) {
    return ParseError(absl::StrFormat(
        "truncated payload: %d pixel bytes expected from byte offset 16, "
        "file ends at byte offset %d",
        payload, bytes.size()));
  }
  out.pixels.assign(bytes.begin() + 16,
                    bytes.begin() + 16 + static_cast<std::ptrdiff_t>(payload));
  return out;
}

absl::StatusOr<std::vector<uint8_t>> ParseIdxLabels(
    std::span<const uint8_t> bytes) {
  CATALYST_ASSIGN_OR_RETURN(uint32_t magic, ReadU32(bytes, 0, "magic"));
  CATALYST_RETURN_IF_ERROR(CheckMagic(magic, kIdxLabelsMagic));
  CATALYST_ASSIGN_OR_RETURN(uint32_t count, ReadU32(bytes, 4, "label count"));
  if (bytes.size() - 8 < count) {
    return ParseError(absl::StrFormat(
        "truncated payload: %d label bytes expected from byte offset 8, "
        "file ends at byte offset %d",
        count, bytes.size()));
  }
  return std::vector<uint8_t>(bytes.begin() + 8,
                              bytes.begin() + 8 + static_cast<std::ptrdiff_t>(count));
}

absl::StatusOr<std::vector<uint8_t>> ReadFileBytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrFormat("cannot open %s", path));
  return std::vector<uint8_t>(std::istreambuf_iterator<char>(in),
                              std::istreambuf_iterator<char>());
}

absl::StatusOr<Dataset> LoadIdx(const std::string& images_path,
                                const std::string& labels_path,
                                int num_classes) {
  CATALYST_ASSIGN_OR_RETURN(std::vector<uint8_t> image_bytes,
                            ReadFileBytes(images_path));
  CATALYST_ASSIGN_OR_RETURN(std::vector<uint8_t> label_bytes,
                            ReadFileBytes(labels_path));
  auto images = ParseIdxImages(image_bytes);
  if (!images.ok()) {
    return ParseError(absl::StrCat(images_path, ": ", images.status().message()));
  }
  auto labels = ParseIdxLabels(label_bytes);
  if (!labels.ok()) {
    return ParseError(absl::StrCat(labels_path, ": ", labels.status().message()));
  }
  if (images->count != labels->size()) {
    return ParseError(absl::StrFormat(
        "count mismatch at byte offset 4: %d images vs %d labels",
        images->count, labels->size()));
  }
  for (size_t i = 0; i < labels->size(); ++i) {
    if ((*labels)[i] >= num_classes) {
      return ParseError(absl::StrFormat(
          "%s: label %d at byte offset %d outside [0, %d)", labels_path,
          (*labels)[i], 8 + i, num_classes));
    }
  }
  const size_t dim = size_t{images->rows} * images->cols;
  std::vector<double> features(images->pixels.size());
  for (size_t i = 0; i < features.size(); ++i) {
    features[i] = images->pixels[i] / 255.0;
  }
  std::vector<int> label_ints(labels->begin(), labels->end());
  return Dataset::Create(dim, num_classes, std::move(features),
                         std::move(label_ints));
}

}  // namespace catalyst
