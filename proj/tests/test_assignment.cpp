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

#include <map>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "revsyn/assignment.hpp"
#include "revsyn/circuit.hpp"

using namespace revsyn;

namespace {

struct random_graph {
    pairing_graph g;
    std::map<std::pair<std::size_t, std::size_t>, uint64_t> w;
};

// Nodes of random classes on disjoint values, each its own origin, with
// random edges and weights.
random_graph make_random_graph(std::mt19937_64& rng, std::size_t nodes, int edge_percent) {
    random_graph r;
    r.g.n = 8;
    uint32_t next = 0;
    for (std::size_t i = 0; i < nodes; ++i) {
        std::size_t const len = std::vector<std::size_t>{2, 3, 4, 5}[rng() % 4];
        std::vector<uint32_t> e(len);
        for (auto& v : e) v = next++;
        auto const cls = *class_of(len);
        r.g.nodes.push_back({cycle(e), i, 0, 1, cls});
        r.g.single.push_back(allows_single(cls) ? std::optional<uint64_t>(10 + rng() % 90) : std::nullopt);
        r.g.single_rotation.push_back(0);
    }
    for (std::size_t a = 0; a < nodes; ++a) {
        for (std::size_t b = a + 1; b < nodes; ++b) {
            auto const& x = r.g.nodes[a];
            auto const& y = r.g.nodes[b];
            if (x.cls != y.cls || !block_for(x.factor.length(), y.factor.length())) continue;
            if (static_cast<int>(rng() % 100) >= edge_percent) continue;
            uint64_t const wt = 5 + rng() % 150;
            r.g.edges.push_back({a, b, wt, {0, 0}});
            r.w[{a, b}] = wt;
        }
    }
    return r;
}

std::optional<uint64_t> brute_force(random_graph const& r) {
    return oracle::best_cover(
        r.g.nodes.size(),
        [&](std::size_t i, std::size_t j) -> std::optional<uint64_t> {
            auto it = r.w.find({std::min(i, j), std::max(i, j)});
            if (it == r.w.end()) return std::nullopt;
            return it->second;
        },
        [&](std::size_t i) { return r.g.single[i]; });
}

void expect_valid_cover(random_graph const& r, matching const& m) {
    std::vector<int> seen(r.g.nodes.size(), 0);
    uint64_t total = 0;
    for (auto [a, b] : m.pairs) {
        ++seen[a];
        ++seen[b];
        ASSERT_TRUE(r.w.count({a, b}));
        total += r.w.at({a, b});
    }
    for (auto s : m.singles) {
        ++seen[s];
        ASSERT_TRUE(r.g.single[s]);
        total += *r.g.single[s];
    }
    for (int s : seen) EXPECT_EQ(s, 1);
    EXPECT_EQ(total, m.weight);
}

cycle range_cycle(uint32_t n, uint32_t first) {
    std::vector<uint32_t> e(n);
    for (uint32_t i = 0; i < n; ++i) e[i] = first + i;
    return cycle(e);
}

}  // namespace

TEST(Matching, EqualsBruteForceOnSmallGraphs) {
    std::mt19937_64 rng(99);
    int compared = 0;
    while (compared < 50) {
        auto const r = make_random_graph(rng, 1 + rng() % 8, 70);
        auto const want = brute_force(r);
        if (!want) {
            EXPECT_THROW(min_weight_matching(r.g), infeasible);
            continue;
        }
        auto const m = min_weight_matching(r.g);
        expect_valid_cover(r, m);
        EXPECT_EQ(m.weight, *want);
        ++compared;
    }
}

TEST(Matching, HeuristicFindsCoverWheneverOneExists) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 60; ++trial) {
        auto const r = make_random_graph(rng, 6 + rng() % 11, 30);
        auto const want = brute_force(r);
        if (!want) {
            EXPECT_THROW(min_weight_matching(r.g, 0), infeasible);
            continue;
        }
        auto const m = min_weight_matching(r.g, 0);
        expect_valid_cover(r, m);
        EXPECT_GE(m.weight, *want);
    }
}

TEST(Matching, OddTwoFourClassIsInfeasible) {
    std::mt19937_64 rng(1);
    pairing_graph g;
    g.n = 4;
    g.nodes.push_back({cycle{0, 1}, 0, 0, 1, length_class::two_four});
    g.single.push_back(std::nullopt);
    g.single_rotation.push_back(0);
    EXPECT_THROW(min_weight_matching(g), infeasible);
}

TEST(Graph, SameOriginCompatibility) {
    // 13 -> (0..4)(5..9) then the residual (10,11,12,0,5) overlaps both
    auto const c = range_cycle(13, 0);
    auto const d = enumerate_decompositions(c, 1).front();
    auto const g = build_graph({d}, 4);
    ASSERT_EQ(g.nodes.size(), 3u);
    bool first_two = false;
    for (auto const& e : g.edges) {
        auto const [a, b] = std::minmax(e.a, e.b);
        if (a == 0 && b == 1) first_two = true;
        EXPECT_FALSE(b == 2) << "the residual overlaps both earlier factors";
    }
    EXPECT_TRUE(first_two);
    ASSERT_TRUE(g.single[2]);
}

TEST(Graph, CrossOriginOverlapIsRejected) {
    auto const a = as_single_factor(cycle{0, 1, 2});
    auto const b = as_single_factor(cycle{2, 3, 4});
    EXPECT_THROW(build_graph({a, b}, 3), domain_error);
}

TEST(Graph, DisjointExample) {
    // an 18-cycle and a 13-cycle on disjoint values
    auto const d1 = enumerate_decompositions(range_cycle(18, 0), 1).front();
    auto const d2 = enumerate_decompositions(range_cycle(13, 18), 1).front();
    auto const g = build_graph({d1, d2}, 6);
    EXPECT_EQ(g.nodes.size(), d1.size() + d2.size());
    std::size_t level_one = 0;
    for (auto const& nd : g.nodes) level_one += nd.level == 1 && nd.cls == length_class::five;
    EXPECT_EQ(level_one, 5u);  // 3 + 2 disjoint 5-cycles
    for (auto const& e : g.edges) {
        EXPECT_EQ(g.nodes[e.a].cls, g.nodes[e.b].cls);
        EXPECT_TRUE(g.nodes[e.a].factor.disjoint(g.nodes[e.b].factor));
    }
}

TEST(Schedule, ProductOfBlocksEqualsProductOfInputCycles) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 10; ++trial) {
        uint32_t const n = 6;
        std::vector<uint32_t> pool(64);
        std::iota(pool.begin(), pool.end(), 0u);
        std::shuffle(pool.begin(), pool.end(), rng);
        std::vector<decomposition> decomps;
        std::vector<std::vector<uint32_t>> inputs;
        std::size_t at = 0;
        for (std::size_t len : {13u, 9u, 6u, 4u, 3u}) {
            std::vector<uint32_t> e(pool.begin() + static_cast<std::ptrdiff_t>(at),
                                    pool.begin() + static_cast<std::ptrdiff_t>(at + len));
            at += len;
            inputs.push_back(e);
            cycle const c(e);
            decomps.push_back(len > 5 ? enumerate_decompositions(c, 1 + rng() % 4).back() : as_single_factor(c));
        }
        for (bool matched : {true, false}) {
            graph_options opt;
            opt.consecutive_only = !matched;
            auto const g = build_graph(decomps, n, opt);
            auto m = matched ? min_weight_matching(g) : consecutive_matching(g);
            resolve_order_conflicts(g, m);
            std::vector<std::vector<uint32_t>> applied;
            for (auto const& b : schedule(g, m)) {
                for (auto const& c : b.cycles) applied.emplace_back(c.elements().begin(), c.elements().end());
            }
            EXPECT_EQ(oracle::cycles_table(n, applied), oracle::cycles_table(n, inputs));
        }
    }
}

TEST(Schedule, ConsecutiveMatchingPairsInOrder) {
    std::vector<decomposition> decomps{as_single_factor(cycle{0, 1}), as_single_factor(cycle{2, 3}),
                                       as_single_factor(cycle{4, 5, 6, 7}), as_single_factor(cycle{8, 9})};
    graph_options opt;
    opt.consecutive_only = true;
    auto const g = build_graph(decomps, 4, opt);
    auto const m = consecutive_matching(g);
    EXPECT_EQ(m.pairs, (std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {2, 3}}));
}
