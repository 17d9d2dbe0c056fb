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

#include "apkscreen/ensemble.hpp"

#include <algorithm>
#include <cmath>

#include "apkscreen/errors.hpp"

namespace apkscreen {

std::string_view scheme_name(Scheme s) {
    switch (s) {
        case Scheme::average: return "avg";
        case Scheme::product: return "prod";
        case Scheme::maximum: return "max";
        case Scheme::vote: return "vote";
    }
    return "?";
}

Scheme parse_scheme(std::string_view name) {
    if (name == "avg") return Scheme::average;
    if (name == "prod") return Scheme::product;
    if (name == "max") return Scheme::maximum;
    if (name == "vote") return Scheme::vote;
    throw Error(ErrorCode::bad_value, "unknown scheme '" + std::string(name) + "'");
}

namespace {

// Committee in a canonical order, so sums and products accumulate the same
// way no matter how the posteriors were listed (permutation invariance down
// to the last bit).
std::vector<Posterior> canonical(const PosteriorSet& ps) {
    std::vector<Posterior> sorted = ps.posteriors;
    std::sort(sorted.begin(), sorted.end(), [](const Posterior& a, const Posterior& b) {
        return a.p_sus != b.p_sus ? a.p_sus < b.p_sus : a.p_ben < b.p_ben;
    });
    return sorted;
}

}  // namespace

EnsembleVerdict combine(const PosteriorSet& ps, Scheme scheme) {
    EnsembleVerdict out;
    out.scheme = scheme;
    out.per_classifier = ps;
    const std::size_t n = ps.posteriors.size();

    switch (scheme) {
        case Scheme::average: {
            double sum_sus = 0.0, sum_ben = 0.0;
            for (const Posterior& p : canonical(ps)) {
                sum_sus += p.p_sus;
                sum_ben += p.p_ben;
            }
            out.decision = (sum_sus > sum_ben) ? Label::suspicious : Label::benign;
            out.score_sus = sum_sus / static_cast<double>(n);
            break;
        }
        case Scheme::product: {
            const std::vector<Posterior> sorted = canonical(ps);
            double prod_sus = 1.0, prod_ben = 1.0;
            bool zero_sus = false, zero_ben = false;
            for (const Posterior& p : sorted) {
                prod_sus *= p.p_sus;
                prod_ben *= p.p_ben;
                zero_sus = zero_sus || p.p_sus <= 0.0;
                zero_ben = zero_ben || p.p_ben <= 0.0;
            }
            if ((prod_sus > 0.0 || zero_sus) && (prod_ben > 0.0 || zero_ben)) {
                // No underflow: a zero product really had a zero factor.
                out.decision = (prod_sus > prod_ben) ? Label::suspicious : Label::benign;
                out.score_sus =
                    (prod_sus + prod_ben > 0.0) ? prod_sus / (prod_sus + prod_ben) : 0.5;
            } else if (zero_sus || zero_ben) {
                // One side has a literal zero, the other underflowed but is
                // mathematically positive.
                out.decision = zero_sus ? Label::benign : Label::suspicious;
                out.score_sus = zero_sus ? 0.0 : 1.0;
            } else {
                // All factors positive, at least one product underflowed:
                // redo the comparison on log sums.
                double log_sus = 0.0, log_ben = 0.0;
                for (const Posterior& p : sorted) {
                    log_sus += std::log(p.p_sus);
                    log_ben += std::log(p.p_ben);
                }
                out.decision = (log_sus > log_ben) ? Label::suspicious : Label::benign;
                out.score_sus = 1.0 / (1.0 + std::exp(log_ben - log_sus));
            }
            break;
        }
        case Scheme::maximum: {
            double max_sus = 0.0, max_ben = 0.0;
            for (const Posterior& p : ps.posteriors) {
                max_sus = std::max(max_sus, p.p_sus);
                max_ben = std::max(max_ben, p.p_ben);
            }
            out.decision = (max_sus > max_ben) ? Label::suspicious : Label::benign;
            out.score_sus = (max_sus + max_ben > 0.0) ? max_sus / (max_sus + max_ben) : 0.5;
            break;
        }
        case Scheme::vote: {
            std::size_t votes_sus = 0;
            for (const Posterior& p : ps.posteriors) {
                votes_sus += (verdict(p) == Label::suspicious) ? 1u : 0u;
            }
            out.decision = (2 * votes_sus > n) ? Label::suspicious : Label::benign;
            out.score_sus = static_cast<double>(votes_sus) / static_cast<double>(n);
            break;
        }
    }
    return out;
}

}  // namespace apkscreen
