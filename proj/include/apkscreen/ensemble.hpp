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

#include <string_view>
#include <vector>

#include "apkscreen/matrix.hpp"
#include "apkscreen/posterior.hpp"

namespace apkscreen {

enum class Scheme { average, product, maximum, vote };

std::string_view scheme_name(Scheme s);        // "avg" / "prod" / "max" / "vote"
Scheme parse_scheme(std::string_view name);    // throws BadValue

/// Committee posteriors in classifier order NB, SL, DT, RIDOR, PART.
struct PosteriorSet {
    std::vector<Posterior> posteriors;
};

struct EnsembleVerdict {
    Label decision = Label::benign;
    double score_sus = 0.5;  // normalized so score > 0.5 <=> suspicious
    Scheme scheme = Scheme::average;
    PosteriorSet per_classifier;
};

/// Fuses an odd committee under one scheme. Exact ties in the deciding
/// comparison go benign, as do classifier-level vote ties.
EnsembleVerdict combine(const PosteriorSet& ps, Scheme scheme);

}  // namespace apkscreen
