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

#ifndef CATALYST_COMMON_LOG_H_
#define CATALYST_COMMON_LOG_H_

#include <string_view>

namespace catalyst {

enum class LogLevel { kDebug = 0, kInfo = 1, kWarning = 2, kError = 3, kOff = 4 };

// Process-wide threshold; messages below it are dropped. Defaults to kWarning.
void SetLogLevel(LogLevel level);
LogLevel GetLogLevel();

// Writes "[level] message" to stderr when `level` passes the threshold.
void Log(LogLevel level, std::string_view message);

}  // namespace catalyst

#endif  // CATALYST_COMMON_LOG_H_
