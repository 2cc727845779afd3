// Copyright 2026 The revsyn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <functional>
#include <set>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "revsyn/counting.hpp"

using namespace revsyn;

namespace {

/// Every index {k: i_k} with sum (k-1) i_k = n-1 and 2 <= k <= n.
std::vector<cycle_index> feasible_indices(uint32_t n) {
    std::vector<cycle_index> out;
    cycle_index cur;
    std::function<void(uint32_t, uint32_t)> rec = [&](uint32_t k, uint32_t left) {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        if (k > n) return;
        for (uint32_t i = 0; i * (k - 1) <= left; ++i) {
            if (i) cur[k] = i;
            rec(k + 1, left - i * (k - 1));
        }
        cur.erase(k);
    };
    rec(2, n - 1);
    return out;
}

cycle identity_cycle(uint32_t n) {
    std::vector<uint32_t> e(n);
    for (uint32_t i = 0; i < n; ++i) e[i] = i;
    return cycle(e);
}

}  // namespace

TEST(Counting, GoldenValues) {
    EXPECT_EQ(ndcm(18), 108);
    EXPECT_EQ(ndcm(13), 13);
    EXPECT_EQ(n5(19), 4u);
    EXPECT_EQ(max_disjoint(19), 3u);
}

TEST(Counting, SmallCases) {
    EXPECT_EQ(n5(5), 1u);
    EXPECT_EQ(n5(4), 0u);
    EXPECT_EQ(n5(8), 1u);
    EXPECT_EQ(n5(9), 2u);
    EXPECT_EQ(ndcm(6), 6);
    EXPECT_EQ(ndcm(10), 10);
    EXPECT_THROW(ndcm(5), domain_error);
    EXPECT_THROW(n5(1), domain_error);
}

TEST(Counting, FactorizationCountsMatchOracle) {
    for (uint32_t n = 2; n <= 5; ++n) {
        auto const c = identity_cycle(n);
        for (auto const& idx : feasible_indices(n)) {
            auto const ordered = oracle_enumerate(c, idx, false);
            auto const classes = oracle_enumerate(c, idx, true);
            EXPECT_EQ(factorization_count(n, idx), big_int(ordered.size())) << "n=" << n;
            EXPECT_EQ(inequivalent_factorization_count(n, idx), big_int(classes.size())) << "n=" << n;
        }
    }
}

TEST(Counting, InfeasibleIndexCountsZero) {
    EXPECT_EQ(factorization_count(4, {{2, 2}}), 0);
    EXPECT_EQ(inequivalent_factorization_count(4, {{3, 2}}), 0);
    EXPECT_TRUE(oracle_enumerate(identity_cycle(4), {{2, 2}}, false).empty());
}

TEST(Counting, TranspositionCountsMatchTernaryTrees) {
    auto const trees = oracle::ternary_trees(7);
    for (uint32_t n = 2; n <= 8; ++n) {
        EXPECT_EQ(catalan_inequivalent_2cycle_count(n), big_int(trees[n - 1])) << n;
        EXPECT_EQ(inequivalent_factorization_count(n, {{2, n - 1}}), big_int(trees[n - 1])) << n;
    }
    EXPECT_EQ(catalan_inequivalent_2cycle_count(3), 3);
    EXPECT_EQ(catalan_inequivalent_2cycle_count(4), 12);
    // brute force where the oracle reaches
    for (uint32_t n = 2; n <= 6; ++n) {
        auto const classes = oracle_enumerate(identity_cycle(n), {{2, n - 1}}, true);
        EXPECT_EQ(classes.size(), trees[n - 1]) << n;
    }
}

TEST(Counting, OrderedTranspositionCountIsCayley) {
    // n^(n-2) minimal transposition factorizations of an n-cycle
    for (uint32_t n = 2; n <= 9; ++n) {
        big_int want = 1;
        for (uint32_t i = 0; i + 2 < n; ++i) want *= n;
        EXPECT_EQ(factorization_count(n, {{2, n - 1}}), want);
    }
}

TEST(Counting, BlockSpaceSize) {
    EXPECT_EQ(block_space_size(block_type::s3, 2), 24);  // 4 * 3 * 2
    EXPECT_EQ(block_space_size(block_type::p22, 2), 24);
    EXPECT_THROW(block_space_size(block_type::p55, 3), domain_error);
    EXPECT_EQ(falling_factorial(10, 3), 720);
}

TEST(Counting, OracleRejectsLargeInput) {
    EXPECT_THROW(oracle_enumerate(identity_cycle(7), {{2, 6}}, false), too_large);
}
