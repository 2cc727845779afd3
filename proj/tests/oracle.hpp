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

// Reference implementations used by the tests. They share no code with the
// library beyond its plain data types.

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "revsyn/circuit.hpp"
#include "revsyn/permutation.hpp"

namespace oracle {

/// Truth table of a gate list, evaluated one bit at a time.
inline std::vector<uint32_t> table(uint32_t n, std::vector<revsyn::gate> const& gates) {
    std::vector<uint32_t> out(std::size_t{1} << n);
    for (uint32_t x = 0; x < out.size(); ++x) {
        std::vector<int> bit(n);
        for (uint32_t i = 0; i < n; ++i) bit[i] = (x >> i) & 1;
        for (auto const& g : gates) {
            bool fire = true;
            for (uint32_t i = 0; i < n; ++i) {
                if (((g.controls >> i) & 1) && !bit[i]) fire = false;
            }
            if (fire) bit[g.target] ^= 1;
        }
        uint32_t y = 0;
        for (uint32_t i = 0; i < n; ++i) y |= static_cast<uint32_t>(bit[i]) << i;
        out[x] = y;
    }
    return out;
}

inline std::vector<uint32_t> table(revsyn::circuit const& c) { return table(c.lines(), c.gates()); }

/// Images of x under cycles applied left to right, on 2^n points.
inline std::vector<uint32_t> cycles_table(uint32_t n, std::vector<std::vector<uint32_t>> const& cycles) {
    std::vector<uint32_t> out(std::size_t{1} << n);
    for (uint32_t x = 0; x < out.size(); ++x) {
        uint32_t y = x;
        for (auto const& c : cycles) {
            auto const it = std::find(c.begin(), c.end(), y);
            if (it != c.end()) y = (it + 1 == c.end()) ? c.front() : *(it + 1);
        }
        out[x] = y;
    }
    return out;
}

/// Parity by counting inversions.
inline bool is_even(std::vector<uint32_t> const& images) {
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < images.size(); ++i) {
        for (std::size_t j = i + 1; j < images.size(); ++j) inversions += images[i] > images[j];
    }
    return inversions % 2 == 0;
}

/// Literal transcription of the cost table, one branch per row.
inline uint64_t gate_cost(uint32_t m, uint32_t n) {
    if (m == 0 || m == 1) return 1;
    if (m == 2) return 5;
    if (m == n - 1) return (uint64_t{1} << n) - 3;
    if (m <= (n + 1) / 2) return 12 * uint64_t{m} - 22;
    uint64_t const linear = 24 * uint64_t{m} - 40;
    if (n == 5 || n == 6) return std::min<uint64_t>(linear, (uint64_t{1} << n) - 3);
    return linear;
}

inline std::vector<revsyn::gate> random_gates(std::mt19937_64& rng, uint32_t n, std::size_t count,
                                              uint32_t max_controls = 32) {
    std::vector<revsyn::gate> out;
    for (std::size_t i = 0; i < count; ++i) {
        uint32_t const target = static_cast<uint32_t>(rng() % n);
        uint32_t controls = 0;
        for (uint32_t b = 0; b < n; ++b) {
            if (b != target && rng() % 3 == 0) controls |= uint32_t{1} << b;
        }
        while (static_cast<uint32_t>(__builtin_popcount(controls)) > max_controls) controls &= controls - 1;
        out.push_back({controls, target});
    }
    return out;
}

/// Minimum total over all ways to split `nodes` into units: a pair (i, j)
/// costs pair(i, j) when present, a single i costs single(i) when present.
inline std::optional<uint64_t> best_cover(std::size_t m,
                                          std::function<std::optional<uint64_t>(std::size_t, std::size_t)> pair,
                                          std::function<std::optional<uint64_t>(std::size_t)> single) {
    std::vector<bool> used(m, false);
    std::optional<uint64_t> best;
    std::function<void(uint64_t)> rec = [&](uint64_t total) {
        std::size_t i = 0;
        while (i < m && used[i]) ++i;
        if (i == m) {
            if (!best || total < *best) best = total;
            return;
        }
        used[i] = true;
        if (auto s = single(i)) rec(total + *s);
        for (std::size_t j = i + 1; j < m; ++j) {
            if (used[j]) continue;
            if (auto w = pair(i, j)) {
                used[j] = true;
                rec(total + *w);
                used[j] = false;
            }
        }
        used[i] = false;
    };
    rec(0);
    return best;
}

/// a(k) with sum over i+j+l = k-1 of a(i) a(j) a(l), a(0) = 1: ternary
/// trees with k internal nodes.
inline std::vector<uint64_t> ternary_trees(std::size_t up_to) {
    std::vector<uint64_t> a(up_to + 1, 0);
    a[0] = 1;
    for (std::size_t k = 1; k <= up_to; ++k) {
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; i + j < k; ++j) a[k] += a[i] * a[j] * a[k - 1 - i - j];
        }
    }
    return a;
}

}  // namespace oracle
