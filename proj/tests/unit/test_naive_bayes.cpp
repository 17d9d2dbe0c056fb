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

#include <doctest.h>

#include <algorithm>
#include <vector>

#include "apkscreen/errors.hpp"
#include "apkscreen/naive_bayes.hpp"
#include "apkscreen/rng.hpp"
#include "../support/fixtures.hpp"

using namespace apkscreen;
namespace ts = apkscreen::testsupport;

namespace {

FeatureVector bits(std::vector<std::uint8_t> b) {
    FeatureVector v;
    v.bits = std::move(b);
    return v;
}

}  // namespace

TEST_CASE("hand-checkable one-feature model") {
    // Two suspicious samples with the bit set, two benign without it.
    const SampleMatrix m = ts::make_matrix(1, {{{1}, Label::suspicious},
                                               {{1}, Label::suspicious},
                                               {{0}, Label::benign},
                                               {{0}, Label::benign}});
    const NaiveBayesModel model = train_naive_bayes(m);
    CHECK(model.prior_sus == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(model.prior_ben == doctest::Approx(0.5).epsilon(1e-12));
    REQUIRE(model.cond_sus.size() == 1);
    CHECK(model.cond_sus[0] == doctest::Approx(3.0 / 4.0).epsilon(1e-12));
    CHECK(model.cond_ben[0] == doctest::Approx(1.0 / 4.0).epsilon(1e-12));

    const Posterior p1 = predict(model, bits({1}));
    CHECK(p1.p_sus == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(p1.p_ben == doctest::Approx(0.25).epsilon(1e-12));
    const Posterior p0 = predict(model, bits({0}));
    CHECK(p0.p_sus == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("zero features fall back to the priors") {
    const SampleMatrix m = ts::make_matrix(0, {{{}, Label::suspicious},
                                               {{}, Label::suspicious},
                                               {{}, Label::suspicious},
                                               {{}, Label::benign}});
    const NaiveBayesModel model = train_naive_bayes(m);
    const Posterior p = predict(model, bits({}));
    CHECK(p.p_sus == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(p.p_ben == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("single-class training data is rejected") {
    const SampleMatrix m =
        ts::make_matrix(1, {{{1}, Label::suspicious}, {{0}, Label::suspicious}});
    bool threw = false;
    try {
        (void)train_naive_bayes(m);
    } catch (const Error& e) {
        threw = true;
        CHECK(e.code() == ErrorCode::single_class_data);
    }
    CHECK(threw);
}

TEST_CASE("prediction rejects vectors of the wrong width") {
    const SampleMatrix m =
        ts::make_matrix(2, {{{1, 0}, Label::suspicious}, {{0, 1}, Label::benign}});
    const NaiveBayesModel model = train_naive_bayes(m);
    bool threw = false;
    try {
        (void)predict(model, bits({1}));
    } catch (const Error& e) {
        threw = true;
        CHECK(e.code() == ErrorCode::dimension_mismatch);
    }
    CHECK(threw);
}

TEST_CASE("posteriors are invariant under column permutation") {
    Rng rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        const int f = 2 + static_cast<int>(rng.below(4));
        const int n = 4 + static_cast<int>(rng.below(8));
        std::vector<std::pair<std::vector<std::uint8_t>, Label>> rows;
        for (int i = 0; i < n; ++i) {
            std::vector<std::uint8_t> b;
            for (int j = 0; j < f; ++j) b.push_back(rng.coin(0.5) ? 1 : 0);
            rows.emplace_back(std::move(b), i % 2 == 0 ? Label::suspicious : Label::benign);
        }
        std::vector<std::size_t> perm(static_cast<std::size_t>(f));
        for (std::size_t j = 0; j < perm.size(); ++j) perm[j] = j;
        rng.shuffle(perm);

        std::vector<std::pair<std::vector<std::uint8_t>, Label>> permuted = rows;
        for (auto& [b, label] : permuted) {
            std::vector<std::uint8_t> nb(b.size());
            for (std::size_t j = 0; j < perm.size(); ++j) nb[j] = b[perm[j]];
            b = std::move(nb);
        }

        const NaiveBayesModel a = train_naive_bayes(ts::make_matrix(f, rows));
        const NaiveBayesModel b = train_naive_bayes(ts::make_matrix(f, permuted));

        std::vector<std::uint8_t> probe;
        for (int j = 0; j < f; ++j) probe.push_back(rng.coin(0.5) ? 1 : 0);
        std::vector<std::uint8_t> probe_perm(probe.size());
        for (std::size_t j = 0; j < perm.size(); ++j) probe_perm[j] = probe[perm[j]];

        const Posterior pa = predict(a, bits(probe));
        const Posterior pb = predict(b, bits(probe_perm));
        CHECK(pa.p_sus == doctest::Approx(pb.p_sus).epsilon(1e-12));
        CHECK(pa.p_sus + pa.p_ben == doctest::Approx(1.0).epsilon(1e-12));
    }
}
