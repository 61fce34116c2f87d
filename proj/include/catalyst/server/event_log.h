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

#ifndef CATALYST_SERVER_EVENT_LOG_H_
#define CATALYST_SERVER_EVENT_LOG_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "catalyst/server/protocol.h"

namespace catalyst {

// One processed update, as exported for trace comparison.
struct EventRecord {
  double t_virtual = 0.0;
  UpdateKind kind = UpdateKind::kFresh;
  int client = 0;
  int64_t model_age = 0;
  std::map<int64_t, size_t> pending_sizes;  // after the event
  int64_t global_age = 0;                   // after the event
};

// {"t_virtual":...,"kind":...,"client":...,"model_age":...,
//  "pending_sizes":{"<age>":n,...},"global_age":...} without a newline.
std::string EventToJson(const EventRecord& record);

class EventLog {
 public:
  void Append(EventRecord record) { records_.push_back(std::move(record)); }
  const std::vector<EventRecord>& records() const { return records_; }

  // JSON lines, each terminated by '\n'.
  std::string ToJsonLines() const;
  absl::Status WriteTo(const std::string& path) const;

 private:
  std::vector<EventRecord> records_;
};

}  // namespace catalyst

#endif  // CATALYST_SERVER_EVENT_LOG_H_
