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

#include "apkscreen/matrix.hpp"

namespace apkscreen {

/// One classifier's two-class probability output.
struct Posterior {
    double p_sus = 0.5;
    double p_ben = 0.5;
};

/// Laplace-calibrated posterior from raw class counts:
/// P(c) = (n_c + 1) / (n + 2). Empty counts give (0.5, 0.5).
inline Posterior laplace_posterior(std::uint64_t n_sus, std::uint64_t n_ben) {
    const double total = static_cast<double>(n_sus + n_ben);
    return {(static_cast<double>(n_sus) + 1.0) / (total + 2.0),
            (static_cast<double>(n_ben) + 1.0) / (total + 2.0)};
}

/// Argmax class; exact ties resolve to benign.
inline Label verdict(const Posterior& p) {
    return p.p_sus > p.p_ben ? Label::suspicious : Label::benign;
}

}  // namespace apkscreen
