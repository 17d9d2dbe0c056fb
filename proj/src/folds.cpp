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

#include "apkscreen/folds.hpp"

#include "apkscreen/errors.hpp"
#include "apkscreen/rng.hpp"

namespace apkscreen {

FoldPlan make_folds(const SampleMatrix& m, std::uint32_t k, std::uint64_t seed) {
    if (k < 2) throw Error(ErrorCode::bad_value, "fold count must be at least 2");

    if (m.samples.size() < k) {
        throw Error(ErrorCode::too_few_samples,
                    std::to_string(m.samples.size()) + " samples cannot fill " + std::to_string(k) +
                        " folds");
    }

    FoldPlan plan;
    plan.k = k;
    plan.seed = seed;
    plan.assignments.resize(m.samples.size());

    Rng rng(seed);
    std::uint32_t cursor = 0;
    for (Label cls : {Label::suspicious, Label::benign}) {
        std::vector<std::uint32_t> members;
        for (std::uint32_t i = 0; i < m.samples.size(); ++i) {
            if (m.samples[i].label == cls) members.push_back(i);
        }
        rng.shuffle(members);
        for (std::uint32_t i : members) {
            plan.assignments[i] = cursor;
            cursor = (cursor + 1) % k;
        }
    }
    return plan;
}

}  // namespace apkscreen
