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

#include "catalyst/server/event_log.h"

#include <fstream>

#include "absl/strings/str_cat.h"
#include "catalyst/common/errors.h"
#include "json.hpp"

namespace catalyst {

std::string EventToJson(const EventRecord& record) {
  nlohmann::ordered_json pending = nlohmann::ordered_json::object();
  for (const auto& [age, size] : record.pending_sizes) {
    pending[std::to_string(age)] = size;
  }
  nlohmann::ordered_json j;
  j["t_virtual"] = record.t_virtual;
  j["kind"] = std::string(UpdateKindName(record.kind));
  j["client"] = record.client;
  j["model_age"] = record.model_age;
  j["pending_sizes"] = std::move(pending);
  j["global_age"] = record.global_age;
  return j.dump();
}

std::string EventLog::ToJsonLines() const {
  std::string out;
  for (const EventRecord& r : records_) absl::StrAppend(&out, EventToJson(r), "\n");
  return out;
}

absl::Status EventLog::WriteTo(const std::string& path) const {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) return UsageError(absl::StrCat("cannot open ", path, " for writing"));
  file << ToJsonLines();
  if (!file) return UsageError(absl::StrCat("failed writing ", path));
  return absl::OkStatus();
}

}  // namespace catalyst
