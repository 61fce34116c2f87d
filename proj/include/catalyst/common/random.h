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

#ifndef CATALYST_COMMON_RANDOM_H_
#define CATALYST_COMMON_RANDOM_H_

#include <cstdint>
#include <initializer_list>
#include <random>

namespace catalyst {

// All randomness in the library flows through this engine so that every run
// is reproducible from its integer seeds.
using Rng = std::mt19937_64;

// Mixes a base seed with a sequence of tags into an independent stream seed
// (splitmix64 finalizer chained over the tags).
uint64_t DeriveSeed(uint64_t base, std::initializer_list<uint64_t> tags);

inline Rng MakeRng(uint64_t seed) { return Rng(seed); }

}  // namespace catalyst

#endif  // CATALYST_COMMON_RANDOM_H_
