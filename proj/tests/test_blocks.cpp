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

#include <filesystem>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "revsyn/blocks.hpp"
#include "revsyn/cost.hpp"
#include "revsyn/peephole.hpp"

using namespace revsyn;

namespace {

uint32_t min_lines(block_type t) {
    uint32_t n = 1;
    while ((std::size_t{1} << n) < block_element_count(t)) ++n;
    return n;
}

block_instance random_block(std::mt19937_64& rng, block_type t, uint32_t n) {
    std::vector<uint32_t> pool(std::size_t{1} << n);
    std::iota(pool.begin(), pool.end(), 0u);
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<cycle> cycles;
    std::size_t at = 0;
    for (std::size_t len : block_lengths(t)) {
        cycles.emplace_back(std::vector<uint32_t>(pool.begin() + static_cast<std::ptrdiff_t>(at),
                                                  pool.begin() + static_cast<std::ptrdiff_t>(at + len)));
        at += len;
    }
    return block_instance::make(t, cycles, n);
}

std::vector<uint32_t> block_table(block_instance const& b) {
    std::vector<std::vector<uint32_t>> raw;
    for (auto const& c : b.cycles) raw.emplace_back(c.elements().begin(), c.elements().end());
    return oracle::cycles_table(b.n, raw);
}

}  // namespace

TEST(BlockType, Table) {
    EXPECT_EQ(block_element_count(block_type::p55), 10u);
    EXPECT_EQ(block_element_count(block_type::s3), 3u);
    EXPECT_EQ(block_for(4, 2), block_type::p42);
    EXPECT_EQ(block_for(2, 4), block_type::p42);
    EXPECT_EQ(block_for(5), block_type::s5);
    EXPECT_FALSE(block_for(2));
    EXPECT_FALSE(block_for(4));
    EXPECT_FALSE(block_for(5, 3));
}

TEST(Blocks, InstanceValidation) {
    EXPECT_THROW(block_instance::make(block_type::p33, {cycle{0, 1, 2}, cycle{2, 3, 4}}, 3), domain_error);
    EXPECT_THROW(block_instance::make(block_type::s3, {cycle{0, 1}}, 3), domain_error);
    EXPECT_THROW(block_instance::make(block_type::s3, {cycle{0, 1, 8}}, 3), domain_error);
    EXPECT_THROW(block_instance::make(block_type::p55, {cycle{0, 1, 2, 3, 4}, cycle{5, 6, 7, 8, 9}}, 3),
                 domain_error);
    auto const b = block_instance::make(block_type::p42, {cycle{0, 1}, cycle{2, 3, 4, 5}}, 3);
    EXPECT_EQ(b.cycles[0].length(), 4u);
}

TEST(Blocks, CanonicalTargets) {
    EXPECT_EQ(canonical_targets(block_type::s3, 3), (std::vector<uint32_t>{5, 6, 7}));
    EXPECT_EQ(canonical_targets(block_type::p22, 2), (std::vector<uint32_t>{0, 1, 2, 3}));
    EXPECT_THROW(canonical_targets(block_type::p44, 2), domain_error);
    auto const cc = canonical_cycles(block_type::p42, 4);
    EXPECT_EQ(cc[0], (cycle{10, 11, 12, 13}));
    EXPECT_EQ(cc[1], (cycle{14, 15}));
}

TEST(Blocks, KappaRealizesCanonicalPattern) {
    for (auto t : all_block_types) {
        for (uint32_t n = min_lines(t); n <= 12; ++n) {
            auto const k = kappa(t, n);
            EXPECT_EQ(k.lines(), n);
            std::vector<std::vector<uint32_t>> raw;
            for (auto const& c : canonical_cycles(t, n)) raw.emplace_back(c.elements().begin(), c.elements().end());
            EXPECT_EQ(oracle::table(k), oracle::cycles_table(n, raw)) << to_string(t) << " n=" << n;
        }
    }
}

TEST(Blocks, RouteSendsSourcesToTargets) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        uint32_t const n = 2 + static_cast<uint32_t>(rng() % 9);
        std::size_t const k = std::min<std::size_t>(std::size_t{1} << n, 1 + rng() % 10);
        std::vector<uint32_t> a(std::size_t{1} << n), b;
        std::iota(a.begin(), a.end(), 0u);
        b = a;
        std::shuffle(a.begin(), a.end(), rng);
        std::shuffle(b.begin(), b.end(), rng);
        a.resize(k);
        b.resize(k);
        auto const r = route(a, b, n);
        auto const t = oracle::table(r);
        for (std::size_t i = 0; i < k; ++i) EXPECT_EQ(t[a[i]], b[i]);
    }
    EXPECT_THROW(route({1, 1}, {2, 3}, 3), domain_error);
    EXPECT_THROW(route({1}, {2, 3}, 3), length_mismatch);
}

TEST(Blocks, SynthBlockSoundness) {
    std::mt19937_64 rng(2026);
    int checked = 0;
    for (int trial = 0; trial < 210; ++trial) {
        auto const t = all_block_types[static_cast<std::size_t>(trial) % all_block_types.size()];
        uint32_t const lo = std::max(3u, min_lines(t));
        uint32_t const n = lo + static_cast<uint32_t>(rng() % (10 - lo + 1));
        auto const b = random_block(rng, t, n);
        auto const c = synth_block(b);
        EXPECT_EQ(c.lines(), n);
        EXPECT_EQ(oracle::table(c), block_table(b)) << to_string(t) << " n=" << n;
        ++checked;
    }
    EXPECT_EQ(checked, 210);
}

TEST(Blocks, PairWeightIsSymmetricAndMinimal) {
    std::mt19937_64 rng(8);
    for (auto t : {block_type::p22, block_type::p33, block_type::p42, block_type::s5}) {
        uint32_t const n = 5;
        auto const b = random_block(rng, t, n);
        auto const one = b.cycles.size() == 2
                             ? pair_weight(b.cycles[0], b.cycles[1], t, n)
                             : pair_weight(b.cycles[0], std::nullopt, t, n);
        if (b.cycles.size() == 2) {
            auto const two = pair_weight(b.cycles[1], b.cycles[0], t, n);
            EXPECT_EQ(one.cost, two.cost);
            EXPECT_EQ(one.rotations.first, two.rotations.second);
        }
        // the reported rotation achieves the weight, and no rotation is cheaper
        std::vector<cycle> rotated{b.cycles[0].rotated(one.rotations.first)};
        if (b.cycles.size() == 2) rotated.push_back(b.cycles[1].rotated(one.rotations.second));
        auto const chosen = block_instance::make(t, rotated, n);
        EXPECT_EQ(circuit_cost(peephole_optimize(synth_block(chosen))), one.cost);
        std::size_t const r2 = b.cycles.size() == 2 ? b.cycles[1].length() : 1;
        EXPECT_EQ(one.candidates, b.cycles[0].length() * r2);
        for (std::size_t i = 0; i < b.cycles[0].length(); ++i) {
            std::vector<cycle> cs{b.cycles[0].rotated(i)};
            if (b.cycles.size() == 2) cs.push_back(b.cycles[1]);
            auto const c = peephole_optimize(synth_block(block_instance::make(t, cs, n)));
            EXPECT_GE(circuit_cost(c), one.cost);
        }
    }
    EXPECT_THROW(pair_weight(cycle{0, 1, 2}, cycle{3, 4}, block_type::p33, 4), domain_error);
}

TEST(Blocks, KappaCacheDirectory) {
    auto const dir = std::filesystem::temp_directory_path() / "revsyn-kappa-test";
    std::filesystem::remove_all(dir);
    {
        kappa_cache cache(dir);
        auto const k = cache.get(block_type::p33, 5);
        EXPECT_TRUE(std::filesystem::exists(dir / "kappa-P33-5.real"));
        kappa_cache again(dir);
        EXPECT_EQ(again.get(block_type::p33, 5), k);
    }
    {
        // a corrupted entry is regenerated
        std::ofstream(dir / "kappa-S3-4.real") << ".numvars 4\n.begin\nt1 x0\n.end\n";
        kappa_cache cache(dir);
        auto const k = cache.get(block_type::s3, 4);
        EXPECT_EQ(simulate(k), canonical_permutation(block_type::s3, 4));
    }
    std::filesystem::remove_all(dir);
}
