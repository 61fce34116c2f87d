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

#include "catalyst/server/protocol.h"

namespace catalyst {

std::string_view UpdateKindName(UpdateKind kind) {
  switch (kind) {
    case UpdateKind::kDuplicate:
      return "duplicate";
    case UpdateKind::kFresh:
      return "fresh";
    case UpdateKind::kTrigger:
      return "trigger";
    case UpdateKind::kLate:
      return "late";
    case UpdateKind::kStale:
      return "stale";
    case UpdateKind::kDeferred:
      return "deferred";
    case UpdateKind::kRejected:
      return "rejected";
  }
  return "unknown";
}

}  // namespace catalyst
