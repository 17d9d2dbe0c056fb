/*
 * Copyright (C) 2026 The apkscreen Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <vector>

#include "apkscreen/matrix.hpp"

namespace apkscreen {

/// Assignment of every sample to one of k folds.
struct FoldPlan {
    std::uint32_t k = 10;
    std::vector<std::uint32_t> assignments;  // per sample, in matrix order
    std::uint64_t seed = 0;

    bool operator==(const FoldPlan&) const = default;
};

/// Deterministic stratified folds: each class is shuffled by the seed, then
/// dealt round-robin with a fold cursor that carries over between classes,
/// so fold sizes differ by at most one both per class and overall.
/// Throws TooFewSamples when there are fewer than k samples; BadValue for k < 2.
FoldPlan make_folds(const SampleMatrix& m, std::uint32_t k, std::uint64_t seed);

}  // namespace apkscreen
