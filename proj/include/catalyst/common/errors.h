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

#ifndef CATALYST_COMMON_ERRORS_H_
#define CATALYST_COMMON_ERRORS_H_

#include "absl/status/status.h"
#include "absl/strings/string_view.h"

namespace catalyst {

// Error categories used across the library. Each maps onto one absl code so
// callers can branch on the category with the absl::Is* predicates.
//
//   configuration error -> kInvalidArgument   (absl::IsInvalidArgument)
//   usage error         -> kFailedPrecondition (absl::IsFailedPrecondition)
//   parse error         -> kDataLoss           (absl::IsDataLoss)
inline absl::Status ConfigError(absl::string_view message) {
  return absl::InvalidArgumentError(message);
}

inline absl::Status UsageError(absl::string_view message) {
  return absl::FailedPreconditionError(message);
}

inline absl::Status ParseError(absl::string_view message) {
  return absl::DataLossError(message);
}

}  // namespace catalyst

// Propagates a non-OK status out of the enclosing function.
#define CATALYST_RETURN_IF_ERROR(expr)   \
  do {                                   \
    const absl::Status _status = (expr); \
    if (!_status.ok()) return _status;   \
  } while (0)

#define CATALYST_STATUS_CONCAT_INNER_(x, y) x##y
#define CATALYST_STATUS_CONCAT_(x, y) CATALYST_STATUS_CONCAT_INNER_(x, y)

// Binds the value of a StatusOr expression to `lhs`, or returns its status.
#define CATALYST_ASSIGN_OR_RETURN(lhs, expr)                               \
  CATALYST_ASSIGN_OR_RETURN_IMPL_(                                         \
      CATALYST_STATUS_CONCAT_(_status_or_, __LINE__), lhs, expr)

#define CATALYST_ASSIGN_OR_RETURN_IMPL_(tmp, lhs, expr) \
  auto tmp = (expr);                                    \
  if (!tmp.ok()) return tmp.status();                   \
  lhs = std::move(tmp).value()

#endif  // CATALYST_COMMON_ERRORS_H_
