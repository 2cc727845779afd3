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

#include <set>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "revsyn/counting.hpp"
#include "revsyn/decomposition.hpp"

using namespace revsyn;

namespace {

cycle range_cycle(uint32_t n, uint32_t first = 0) {
    std::vector<uint32_t> e(n);
    for (uint32_t i = 0; i < n; ++i) e[i] = first + i;
    return cycle(e);
}

// product over a 5-bit domain, independent of the library's product
bool oracle_product_is(decomposition const& d, cycle const& c) {
    std::vector<std::vector<uint32_t>> raw;
    for (auto const& f : d.factors) raw.emplace_back(f.elements().begin(), f.elements().end());
    std::vector<std::vector<uint32_t>> want{{c.elements().begin(), c.elements().end()}};
    return oracle::cycles_table(5, raw) == oracle::cycles_table(5, want);
}

}  // namespace

TEST(Decomposition, DetachLevel) {
    auto const lvl = detach_level(range_cycle(13), 0);
    ASSERT_EQ(lvl.blocks.size(), 2u);
    EXPECT_EQ(lvl.blocks[0], (cycle{0, 1, 2, 3, 4}));
    EXPECT_EQ(lvl.blocks[1], (cycle{5, 6, 7, 8, 9}));
    ASSERT_TRUE(lvl.residual);
    EXPECT_EQ(*lvl.residual, (cycle{10, 11, 12, 0, 5}));
    EXPECT_THROW(detach_level(range_cycle(5), 0), domain_error);
    EXPECT_THROW(detach_level(range_cycle(7), 7), domain_error);
}

TEST(Decomposition, NineteenCycleShape) {
    auto const c = range_cycle(19, 1);
    auto const ds = enumerate_decompositions(c, 1);
    ASSERT_EQ(ds.size(), 1u);
    auto const& d = ds.front();
    EXPECT_EQ(d.size(), 5u);
    EXPECT_TRUE(validate(d, c));
    std::size_t fives = 0;
    for (auto const& f : d.factors) fives += f.length() == 5;
    EXPECT_EQ(fives, 4u);
    EXPECT_TRUE(oracle_product_is(d, c));
}

TEST(Decomposition, EnumerationCountMatchesNdcm) {
    for (uint32_t n = 6; n <= 25; ++n) {
        auto const c = range_cycle(n);
        auto const all = enumerate_decompositions(c);
        EXPECT_EQ(big_int(all.size()), ndcm(n)) << n;
        std::set<std::vector<cycle>> distinct;
        for (auto const& d : all) {
            distinct.insert(d.factors);
            EXPECT_TRUE(validate(d, c));
            EXPECT_TRUE(oracle_product_is(d, c));
        }
        EXPECT_EQ(distinct.size(), all.size()) << n;
    }
}

TEST(Decomposition, LimitAndEarlyStop) {
    auto const c = range_cycle(18);
    EXPECT_EQ(enumerate_decompositions(c, 5).size(), 5u);
    EXPECT_EQ(enumerate_decompositions(c, 1000).size(), 108u);
    std::size_t seen = 0;
    foreach_decomposition(c, [&](decomposition const&) { return ++seen < 3; });
    EXPECT_EQ(seen, 3u);
}

TEST(Decomposition, ValidateRejectsBrokenDecompositions) {
    auto const c = range_cycle(9);
    auto d = enumerate_decompositions(c, 1).front();
    ASSERT_TRUE(validate(d, c));
    auto swapped = d;
    std::swap(swapped.factors.front(), swapped.factors.back());
    std::swap(swapped.levels.front(), swapped.levels.back());
    EXPECT_FALSE(validate(swapped, c));
    auto shortened = d;
    shortened.factors.pop_back();
    shortened.levels.pop_back();
    shortened.disjoint.pop_back();
    EXPECT_FALSE(validate(shortened, c));
    EXPECT_FALSE(validate(d, range_cycle(9, 1)));
}

TEST(Decomposition, Levels) {
    auto const d = enumerate_decompositions(range_cycle(13), 1).front();
    // 13 -> two disjoint 5-cycles, residual 5-cycle
    ASSERT_EQ(d.size(), 3u);
    EXPECT_EQ(d.levels, (std::vector<uint32_t>{1, 1, 2}));
    EXPECT_EQ(d.disjoint, (std::vector<bool>{true, true, false}));
}
